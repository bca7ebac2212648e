#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "flca/error.hpp"

namespace flca {

// Vertices are dense integers 0..n-1. String labels are a CLI concern and are
// mapped to ids at that boundary.
using VertexId = std::int32_t;

// Sentinel for "no vertex" (absent parent, null list head, ...).
inline constexpr VertexId kNoVertex = -1;

/// Immutable rooted tree over vertices 0..n-1.
///
/// Built from a parent array where exactly one entry is kNoVertex (the root).
/// Children are stored per vertex in ascending id order, which fixes the
/// Euler tour and every canonical output order. Immutable after construction;
/// safe for unrestricted concurrent reads.
class RootedTree {
 public:
  /// Validates and builds. Throws flca::Error with code:
  ///   no_root             - empty parent list
  ///   multiple_roots      - more than one kNoVertex entry
  ///   parent_out_of_range - a parent id outside [0, n)
  ///   cycle_detected      - parent links contain a cycle (including the
  ///                         no-absent-entry case, where a cycle is forced)
  static RootedTree from_parents(std::vector<VertexId> parents);

  std::int32_t size() const { return n_; }
  VertexId root() const { return root_; }
  bool contains(VertexId v) const { return v >= 0 && v < n_; }

  /// Parent of v, kNoVertex for the root.
  VertexId parent(VertexId v) const { return parent_[v]; }
  std::int32_t depth(VertexId v) const { return depth_[v]; }

  std::span<const VertexId> children(VertexId v) const {
    return {child_storage_.data() + child_begin_[v],
            child_storage_.data() + child_begin_[v + 1]};
  }

  /// True iff a lies on the root-to-b path. Reflexive: is_ancestor(v, v).
  /// Parent-chain walk, O(depth); the O(1) route lives on EulerTour.
  bool is_ancestor(VertexId a, VertexId b) const {
    while (depth_[b] > depth_[a]) b = parent_[b];
    return a == b;
  }

  const std::vector<VertexId>& parents() const { return parent_; }

 private:
  RootedTree() = default;

  std::int32_t n_ = 0;
  VertexId root_ = kNoVertex;
  std::vector<VertexId> parent_;
  std::vector<std::int32_t> depth_;
  // Children of all vertices, flattened; children(v) lives at
  // [child_begin_[v], child_begin_[v+1]).
  std::vector<VertexId> child_storage_;
  std::vector<std::int32_t> child_begin_;
};

/// Depth-first vertex sequence with re-entries: every internal vertex
/// reappears after each child subtree, so the sequence has length 2n-1 and
/// adjacent entries differ by exactly one level.
struct EulerTour {
  std::vector<VertexId> order;                  // length 2n-1
  std::vector<std::int32_t> first_occurrence;   // per vertex, position in order
  std::vector<std::int32_t> last_occurrence;    // per vertex, final position
  std::vector<std::int32_t> tour_depth;         // aligned with order

  /// O(1) reflexive ancestry: the occurrences of a span exactly the interval
  /// of a's subtree traversal, so b is below a iff b first appears inside it.
  bool is_ancestor(VertexId a, VertexId b) const {
    return first_occurrence[a] <= first_occurrence[b] &&
           first_occurrence[b] <= last_occurrence[a];
  }
};

EulerTour euler_tour(const RootedTree& tree);

}  // namespace flca
