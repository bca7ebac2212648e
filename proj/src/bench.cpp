#include "flca/bench.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <memory>
#include <random>

#include "flca/ancestry_index.hpp"
#include "flca/flca.hpp"
#include "flca/tree.hpp"

namespace flca {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() -
                                                              start)
      .count();
}

std::int64_t median(std::vector<std::int64_t> samples) {
  assert(!samples.empty());
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  assert(options.n >= 1 && options.repeat >= 1);
  const std::vector<VertexId> parents =
      make_parent_list(options.shape, options.n, options.seed);

  // Build timing: the full pipeline from parent list to query-ready index.
  // Three runs keep the cost bounded even when repeat is large; the final
  // run's index is the one queried below.
  std::unique_ptr<RootedTree> tree;
  std::unique_ptr<AncestryIndex> index;
  std::vector<std::int64_t> build_samples;
  const std::int32_t builds = std::min(options.repeat, 3);
  for (std::int32_t i = 0; i < builds; ++i) {
    index.reset();
    tree.reset();
    const auto start = Clock::now();
    tree = std::make_unique<RootedTree>(
        RootedTree::from_parents(parents));
    index = std::make_unique<AncestryIndex>(*tree);
    build_samples.push_back(elapsed_ns(start));
  }
  const std::int64_t build_ns = median(std::move(build_samples));

  QueryScratch scratch(*tree);
  std::mt19937_64 rng(options.seed);
  std::vector<BenchRow> rows;
  for (const std::int32_t requested : options.mark_counts) {
    const std::int32_t mark_count = std::min(requested, options.n);
    const std::vector<VertexId> marks =
        sample_vertices(options.n, mark_count, rng);
    const QuerySet query =
        QuerySet::make({marks.begin(), marks.end()}, options.fault_budget,
                       *tree);

    compute_flca(*index, scratch, query);  // warm the scratch pages
    std::vector<std::int64_t> query_samples;
    for (std::int32_t i = 0; i < options.repeat; ++i) {
      const auto start = Clock::now();
      const FlcaResult result = compute_flca(*index, scratch, query);
      query_samples.push_back(elapsed_ns(start));
      assert(!result.representatives.empty());
      (void)result;
    }
    rows.push_back({options.n, options.fault_budget, mark_count, build_ns,
                    median(std::move(query_samples))});
  }
  return rows;
}

}  // namespace flca
