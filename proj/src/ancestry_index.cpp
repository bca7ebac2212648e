#include "flca/ancestry_index.hpp"

#include <bit>
#include <cassert>

namespace flca {

namespace {

std::int32_t floor_log2(std::uint32_t x) {
  return static_cast<std::int32_t>(std::bit_width(x)) - 1;
}

}  // namespace

AncestryIndex::AncestryIndex(const RootedTree& tree)
    : tree_(&tree), tour_(euler_tour(tree)) {
  const auto len = static_cast<std::int32_t>(tour_.order.size());
  const std::int32_t rmq_levels = floor_log2(static_cast<std::uint32_t>(len)) + 1;

  rmq_.resize(rmq_levels);
  rmq_[0].resize(len);
  for (std::int32_t i = 0; i < len; ++i) rmq_[0][i] = i;
  for (std::int32_t k = 1; k < rmq_levels; ++k) {
    const std::int32_t span = 1 << k;
    rmq_[k].resize(len - span + 1);
    for (std::int32_t i = 0; i + span <= len; ++i) {
      const std::int32_t left = rmq_[k - 1][i];
      const std::int32_t right = rmq_[k - 1][i + span / 2];
      // <= keeps the leftmost position on equal depths.
      rmq_[k][i] = tour_.tour_depth[left] <= tour_.tour_depth[right] ? left : right;
    }
  }

  const std::int32_t n = tree.size();
  const std::int32_t jump_levels =
      n > 1 ? static_cast<std::int32_t>(std::bit_width(static_cast<std::uint32_t>(n - 1))) : 0;
  jump_.resize(jump_levels);
  if (jump_levels > 0) {
    jump_[0].resize(n);
    for (VertexId v = 0; v < n; ++v) jump_[0][v] = tree.parent(v);
    for (std::int32_t k = 1; k < jump_levels; ++k) {
      jump_[k].resize(n);
      for (VertexId v = 0; v < n; ++v) {
        const VertexId mid = jump_[k - 1][v];
        jump_[k][v] = mid == kNoVertex ? kNoVertex : jump_[k - 1][mid];
      }
    }
  }
}

std::int32_t AncestryIndex::rmq_argmin(std::int32_t lo, std::int32_t hi) const {
  assert(lo <= hi);
  const std::int32_t k = floor_log2(static_cast<std::uint32_t>(hi - lo + 1));
  const std::int32_t left = rmq_[k][lo];
  const std::int32_t right = rmq_[k][hi - (1 << k) + 1];
  return tour_.tour_depth[left] <= tour_.tour_depth[right] ? left : right;
}

std::optional<VertexId> AncestryIndex::anc(VertexId u, std::int32_t level) const {
  if (level < 0 || level > tree_->depth(u)) return std::nullopt;
  std::int32_t climb = tree_->depth(u) - level;
  for (std::int32_t k = 0; climb != 0; ++k, climb >>= 1) {
    if (climb & 1) u = jump_[k][u];
  }
  return u;
}

VertexId AncestryIndex::lca_of_set(std::span<const VertexId> set) const {
  if (set.empty()) {
    throw Error(Errc::empty_set, "lca_of_set requires a non-empty vertex set");
  }
  VertexId result = set.front();
  for (std::size_t i = 1; i < set.size(); ++i) result = lca(result, set[i]);
  return result;
}

}  // namespace flca
