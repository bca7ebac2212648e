#pragma once
// Timing harness: one preprocessing measurement per tree size and one
// per-query measurement per mark-set size, both reported as medians over
// repeated runs. Rows are plain data so callers (CLI, tests) can check
// scaling ratios themselves.

#include <cstdint>
#include <vector>

#include "flca/generator.hpp"

namespace flca {

struct BenchOptions {
  std::int32_t n = 1'000'000;
  std::int32_t fault_budget = 4;
  std::vector<std::int32_t> mark_counts = {1'000, 10'000, 100'000};
  std::int32_t repeat = 5;
  std::uint64_t seed = 1;
  TreeShape shape = TreeShape::random;
};

struct BenchRow {
  std::int32_t n = 0;
  std::int32_t fault_budget = 0;
  std::int32_t marks = 0;
  std::int64_t build_ns = 0;  // tree + index construction, median
  std::int64_t query_ns = 0;  // one compute_flca call, median
};

// One row per entry of mark_counts, in order. Mark counts above n are
// clamped to n.
std::vector<BenchRow> run_bench(const BenchOptions& options);

}  // namespace flca
