#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "flca/ancestry_index.hpp"
#include "flca/tree.hpp"

namespace flca {

/// A deduplicated marked vertex set together with its fault budget f >= 1.
class QuerySet {
 public:
  /// Validates, deduplicates, and sorts. Throws Error with code
  /// empty_mark_set, invalid_vertex, or invalid_budget.
  static QuerySet make(std::vector<VertexId> marks, std::int32_t fault_budget,
                       const RootedTree& tree);

  std::span<const VertexId> marks() const { return marks_; }
  std::int32_t fault_budget() const { return fault_budget_; }

 private:
  QuerySet(std::vector<VertexId> marks, std::int32_t fault_budget)
      : marks_(std::move(marks)), fault_budget_(fault_budget) {}

  std::vector<VertexId> marks_;
  std::int32_t fault_budget_;
};

/// The minimum representative set for one query, in canonical order
/// (ascending Euler first occurrence), plus per-query statistics.
struct FlcaResult {
  std::vector<VertexId> representatives;
  std::int64_t recursion_calls = 0;
  std::int32_t max_branching = 0;
};

class QueryScratch;

/// Minimum representative set for the query's marks and budget. Touches only
/// the marks, never whole subtrees: each recursion level costs O(|M|) lca/anc
/// calls via the switch-bit bucketing in the scratch, and the recursion is at
/// most min(f - 1, |M| - 1) levels deep, so a fixed budget gives O(|M|) per
/// query after preprocessing. Throws Error (EmptyMarkSet, InvalidVertex,
/// InvalidBudget, ScratchDirty); the scratch must be sized for the indexed
/// tree and in its cleaned state.
FlcaResult compute_flca(const AncestryIndex& index, QueryScratch& scratch,
                        const QuerySet& query);

/// Per-query lookup-table state sized for one tree: a switch bit and a bucket
/// pointer per vertex, all reverted to the cleaned state (bits 0, pointers
/// absent) before every query returns. One scratch serves one in-flight query;
/// K concurrent queries over a shared index need K scratches.
class QueryScratch {
 public:
  explicit QueryScratch(const RootedTree& tree);

  std::int32_t size() const { return static_cast<std::int32_t>(switch_bits_.size()); }

  /// O(1) cleanliness check backed by a live-bucket counter.
  bool is_clean() const { return live_buckets_ == 0; }

  /// O(n) audit: every switch bit false and every bucket pointer absent.
  bool verify_clean() const;

  /// O(n) re-clean, for recovery after an aborted query.
  void reset();

  /// Test hook: flips one switch bit so the dirty-precondition path can be
  /// exercised. Never used by the library itself.
  void testing_mark_dirty(VertexId v);

 private:
  friend FlcaResult compute_flca(const AncestryIndex& index, QueryScratch& scratch,
                                 const QuerySet& query);

  struct Frame {
    VertexId bucket_head;
    std::int32_t budget;
  };

  std::vector<std::uint8_t> switch_bits_;  // per vertex
  std::vector<VertexId> bucket_head_;      // per vertex, kNoVertex = absent
  std::vector<VertexId> bucket_next_;      // list-node storage for bucket chains
  std::vector<VertexId> touched_;          // children dirtied at the current level
  std::vector<Frame> frames_;              // explicit work stack
  std::vector<VertexId> out_;              // result buffer
  std::int64_t live_buckets_ = 0;
};

/// Same output as compute_flca, computed by a single bottom-up-then-top-down
/// pass over the tree with no ancestry index: post-order accumulation of
/// marked-subtree flags, then a replay of the recursion that descends to each
/// branching vertex along precomputed marked-child lists. O(n) per call.
FlcaResult compute_flca_offline(const RootedTree& tree, const QuerySet& query);

/// Streaming aggregation: result for (carried representatives ∪ batch) under
/// the given budget. Carried state never exceeds the representative size
/// bound, so memory between batches stays bounded by it plus the batch.
FlcaResult aggregate(const AncestryIndex& index, QueryScratch& scratch,
                     const std::optional<FlcaResult>& state,
                     std::span<const VertexId> batch, std::int32_t fault_budget);

/// 2^(f-1), saturating to the maximum uint64 ("at least this large") once
/// f - 1 exceeds 63 bits.
inline std::uint64_t representative_size_bound(std::int32_t fault_budget) {
  if (fault_budget >= 64) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << (fault_budget - 1);
}

}  // namespace flca
