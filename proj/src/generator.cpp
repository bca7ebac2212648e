#include "flca/generator.hpp"

#include <cassert>
#include <numeric>

namespace flca {

std::optional<TreeShape> parse_tree_shape(std::string_view token) {
  if (token == "path") return TreeShape::path;
  if (token == "star") return TreeShape::star;
  if (token == "binary") return TreeShape::binary;
  if (token == "random") return TreeShape::random;
  return std::nullopt;
}

std::vector<VertexId> make_parent_list(TreeShape shape, std::int32_t n,
                                       std::uint64_t seed) {
  assert(n >= 1);
  std::vector<VertexId> parents(static_cast<std::size_t>(n), kNoVertex);
  std::mt19937_64 rng(seed);
  for (std::int32_t v = 1; v < n; ++v) {
    switch (shape) {
      case TreeShape::path:
        parents[v] = v - 1;
        break;
      case TreeShape::star:
        parents[v] = 0;
        break;
      case TreeShape::binary:
        parents[v] = (v - 1) / 2;
        break;
      case TreeShape::random:
        parents[v] = static_cast<VertexId>(rng() % static_cast<std::uint64_t>(v));
        break;
    }
  }
  return parents;
}

std::vector<VertexId> sample_vertices(std::int32_t n, std::int32_t count,
                                      std::mt19937_64& rng) {
  assert(count >= 0 && count <= n);
  std::vector<VertexId> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (std::int32_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::int32_t>(
                           rng() % static_cast<std::uint64_t>(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

}  // namespace flca
