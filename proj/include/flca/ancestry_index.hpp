#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flca/tree.hpp"

namespace flca {

/// Preprocessed structure answering pairwise LCA and level-ancestor queries.
///
/// LCA is Euler tour + sparse-table RMQ over tour depths: O(n log n) build,
/// O(1) query. Level ancestors use binary lifting: O(n log n) build,
/// O(log n) query. The classical O(n)/O(1) constructions would fit behind the
/// same interface; the log factors are accepted and show up only in build
/// time and anc(), not in per-query scaling over mark-set size.
///
/// Holds a reference to the tree it indexes; the tree must outlive the index.
/// Immutable after construction; safe for unrestricted concurrent reads.
class AncestryIndex {
 public:
  explicit AncestryIndex(const RootedTree& tree);

  const RootedTree& tree() const { return *tree_; }
  const EulerTour& tour() const { return tour_; }

  /// Deepest common ancestor of u and v; lca(u, u) == u.
  VertexId lca(VertexId u, VertexId v) const {
    std::int32_t lo = tour_.first_occurrence[u];
    std::int32_t hi = tour_.first_occurrence[v];
    if (lo > hi) std::swap(lo, hi);
    return tour_.order[rmq_argmin(lo, hi)];
  }

  /// The ancestor of u at depth `level`, or nullopt when depth(u) < level.
  std::optional<VertexId> anc(VertexId u, std::int32_t level) const;

  /// LCA of a non-empty vertex set; throws Error(EmptySet) on empty input.
  VertexId lca_of_set(std::span<const VertexId> set) const;

  bool is_ancestor(VertexId a, VertexId b) const { return tour_.is_ancestor(a, b); }

  // Read-only views of the tables, for audits.
  const std::vector<std::vector<std::int32_t>>& rmq_table() const { return rmq_; }
  const std::vector<std::vector<VertexId>>& jump_table() const { return jump_; }

 private:
  // Position of the minimum tour depth on [lo, hi], leftmost on ties.
  std::int32_t rmq_argmin(std::int32_t lo, std::int32_t hi) const;

  const RootedTree* tree_;
  EulerTour tour_;
  // rmq_[k][i] = position of the minimum tour depth in [i, i + 2^k);
  // level 0 is the positions themselves.
  std::vector<std::vector<std::int32_t>> rmq_;
  // jump_[k][v] = 2^k-th ancestor of v, kNoVertex once past the root.
  std::vector<std::vector<VertexId>> jump_;
};

}  // namespace flca
