#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "doctest.h"
#include "flca/ancestry_index.hpp"
#include "flca/flca.hpp"
#include "flca/generator.hpp"
#include "flca/oracle.hpp"
#include "flca/tree.hpp"
#include "test_support.hpp"

using flca::AncestryIndex;
using flca::compute_flca;
using flca::compute_flca_offline;
using flca::Errc;
using flca::FlcaResult;
using flca::kNoVertex;
using flca::QueryScratch;
using flca::QuerySet;
using flca::RootedTree;
using flca::TreeShape;
using flca::VertexId;
namespace oracle = flca::oracle;

namespace {

struct Fixture {
  RootedTree tree;
  AncestryIndex index;
  QueryScratch scratch;

  explicit Fixture(std::vector<VertexId> parents)
      : tree(RootedTree::from_parents(std::move(parents))),
        index(tree),
        scratch(tree) {}

  FlcaResult run(std::vector<VertexId> marks, std::int32_t f) {
    return compute_flca(index, scratch,
                        QuerySet::make(std::move(marks), f, tree));
  }
};

std::vector<VertexId> random_marks(std::int32_t n, std::mt19937_64& rng) {
  const auto count =
      static_cast<std::int32_t>(1 + rng() % static_cast<std::uint64_t>(n));
  return flca::sample_vertices(n, count, rng);
}

}  // namespace

TEST_CASE("query set construction") {
  const RootedTree tree = RootedTree::from_parents({kNoVertex, 0, 1});
  const QuerySet q = QuerySet::make({2, 1, 2, 1}, 2, tree);
  const std::vector<VertexId> marks(q.marks().begin(), q.marks().end());
  CHECK(marks == std::vector<VertexId>{1, 2});
  CHECK(q.fault_budget() == 2);

  CHECK(support::thrown_code([&] { QuerySet::make({}, 1, tree); }) ==
        Errc::empty_mark_set);
  CHECK(support::thrown_code([&] { QuerySet::make({1}, 0, tree); }) ==
        Errc::invalid_budget);
  CHECK(support::thrown_code([&] { QuerySet::make({3}, 1, tree); }) ==
        Errc::invalid_vertex);
  CHECK(support::thrown_code([&] { QuerySet::make({-1}, 1, tree); }) ==
        Errc::invalid_vertex);
}

TEST_CASE("budget one yields the plain LCA") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    const auto n = static_cast<std::int32_t>(1 + rng() % 40);
    Fixture fx(support::random_parents(n, rng));
    const std::vector<VertexId> marks = random_marks(n, rng);
    const FlcaResult result = fx.run(marks, 1);
    CHECK(result.representatives ==
          std::vector<VertexId>{fx.index.lca_of_set(marks)});
  }
}

TEST_CASE("full binary tree of height 3, all leaves, budget 3") {
  Fixture fx(flca::make_parent_list(TreeShape::binary, 15, 0));
  std::vector<VertexId> leaves;
  for (VertexId v = 7; v < 15; ++v) leaves.push_back(v);
  const FlcaResult result = fx.run(leaves, 3);
  CHECK(result.representatives == std::vector<VertexId>{3, 4, 5, 6});
}

TEST_CASE("singleton mark is its own answer") {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 50; ++round) {
    const auto n = static_cast<std::int32_t>(1 + rng() % 30);
    Fixture fx(support::random_parents(n, rng));
    const auto v = static_cast<VertexId>(rng() % n);
    const auto f = static_cast<std::int32_t>(1 + rng() % 6);
    CHECK(fx.run({v}, f).representatives == std::vector<VertexId>{v});
  }
}

TEST_CASE("star cutoff: more branches than budget") {
  Fixture fx(flca::make_parent_list(TreeShape::star, 6, 0));
  const FlcaResult result = fx.run({1, 2, 3, 4, 5}, 3);
  CHECK(result.representatives == std::vector<VertexId>{0});
  CHECK(result.max_branching == 5);
  CHECK(result.recursion_calls == 1);
}

TEST_CASE("two-child split within budget") {
  // 0 -> 1, with 2 and 3 children of 1
  Fixture fx({kNoVertex, 0, 1, 1});
  const FlcaResult result = fx.run({2, 3}, 2);
  CHECK(result.representatives == std::vector<VertexId>{2, 3});
  CHECK(result.recursion_calls == 3);  // split plus two singleton calls
  CHECK(result.max_branching == 2);
  CHECK(oracle::brute_force_flca(fx.tree, std::vector<VertexId>{2, 3}, 2)
            .representatives == std::vector<VertexId>{2, 3});

  // same split, budget 1: the LCA wins
  CHECK(fx.run({2, 3}, 1).representatives == std::vector<VertexId>{1});
}

TEST_CASE("result invariants on random instances") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 300; ++round) {
    const auto n = static_cast<std::int32_t>(1 + rng() % 12);
    Fixture fx(support::random_parents(n, rng));
    const std::vector<VertexId> marks = random_marks(n, rng);
    const auto f = static_cast<std::int32_t>(1 + rng() % 3);
    const QuerySet query = QuerySet::make(marks, f, fx.tree);
    const FlcaResult result = compute_flca(fx.index, fx.scratch, query);
    const auto& reps = result.representatives;

    REQUIRE(!reps.empty());
    CHECK(reps.size() <= query.marks().size());
    CHECK(reps.size() <= flca::representative_size_bound(f));

    // canonical order and pairwise ancestor-freeness
    for (std::size_t i = 0; i + 1 < reps.size(); ++i) {
      CHECK(fx.index.tour().first_occurrence[reps[i]] <
            fx.index.tour().first_occurrence[reps[i + 1]]);
    }
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (std::size_t j = i + 1; j < reps.size(); ++j) {
        CHECK_FALSE(fx.index.is_ancestor(reps[i], reps[j]));
        CHECK_FALSE(fx.index.is_ancestor(reps[j], reps[i]));
      }
    }

    // sandwiched between the set LCA and the marks
    const std::vector<VertexId> ell{fx.index.lca_of_set(query.marks())};
    CHECK(oracle::covers(fx.tree, ell, reps));
    CHECK(oracle::covers(fx.tree, reps, query.marks()));

    // each representative is the LCA of the marks below it
    for (const VertexId r : reps) {
      VertexId fold = kNoVertex;
      for (const VertexId m : query.marks()) {
        if (!fx.index.is_ancestor(r, m)) continue;
        fold = fold == kNoVertex ? m : fx.index.lca(fold, m);
      }
      CHECK(fold == r);
    }

    // exhaustive fault-set equivalence, and idempotence
    CHECK(oracle::equivalent(fx.tree, query.marks(), reps, f));
    CHECK(compute_flca(fx.index, fx.scratch, QuerySet::make(reps, f, fx.tree))
              .representatives == reps);
    CHECK(fx.scratch.verify_clean());
  }
}

TEST_CASE("matches the brute-force minimum uniquely") {
  std::mt19937_64 rng(14);
  for (int round = 0; round < 120; ++round) {
    const auto n = static_cast<std::int32_t>(1 + rng() % 10);
    Fixture fx(support::random_parents(n, rng));
    const std::vector<VertexId> marks = random_marks(n, rng);
    const auto f = static_cast<std::int32_t>(1 + rng() % 3);
    const FlcaResult result = fx.run(marks, f);
    const oracle::BruteForceResult best =
        oracle::brute_force_flca(fx.tree, marks, f);
    CHECK(support::sorted_ids(result.representatives) == best.representatives);
    CHECK(best.unique);
  }
}

TEST_CASE("determinism across repeated runs and fresh state") {
  std::mt19937_64 rng(15);
  for (int round = 0; round < 30; ++round) {
    const auto n = static_cast<std::int32_t>(1 + rng() % 200);
    const std::vector<VertexId> parents = support::random_parents(n, rng);
    const std::vector<VertexId> marks = random_marks(n, rng);
    const auto f = static_cast<std::int32_t>(1 + rng() % 5);

    Fixture fx(parents);
    const FlcaResult first = fx.run(marks, f);
    const FlcaResult second = fx.run(marks, f);
    Fixture fresh(parents);
    const FlcaResult third = fresh.run(marks, f);

    CHECK(first.representatives == second.representatives);
    CHECK(first.representatives == third.representatives);
    CHECK(first.recursion_calls == second.recursion_calls);
    CHECK(first.max_branching == second.max_branching);
  }
}

TEST_CASE("scratch hygiene and dirty detection") {
  Fixture fx({kNoVertex, 0, 1, 1});
  CHECK(fx.scratch.is_clean());
  CHECK(fx.scratch.verify_clean());

  fx.run({2, 3}, 2);
  CHECK(fx.scratch.verify_clean());

  fx.scratch.testing_mark_dirty(1);
  CHECK_FALSE(fx.scratch.is_clean());
  CHECK_FALSE(fx.scratch.verify_clean());
  CHECK(support::thrown_code([&] { fx.run({2, 3}, 2); }) ==
        Errc::scratch_dirty);
  fx.scratch.reset();
  CHECK(fx.scratch.verify_clean());
  CHECK(fx.run({2, 3}, 2).representatives == std::vector<VertexId>{2, 3});

  // scratch sized for a different tree
  const RootedTree other = RootedTree::from_parents({kNoVertex, 0});
  QueryScratch small(other);
  CHECK(support::thrown_code([&] {
          compute_flca(fx.index, small, QuerySet::make({2}, 1, fx.tree));
        }) == Errc::scratch_dirty);
}

TEST_CASE("oversized budgets clamp instead of overflowing") {
  Fixture fx(flca::make_parent_list(TreeShape::binary, 15, 0));
  std::vector<VertexId> leaves;
  for (VertexId v = 7; v < 15; ++v) leaves.push_back(v);
  const FlcaResult huge = fx.run(leaves, std::numeric_limits<std::int32_t>::max());
  const FlcaResult exact = fx.run(leaves, 15);
  CHECK(huge.representatives == exact.representatives);
  CHECK(huge.representatives == support::sorted_ids(leaves));

  CHECK(flca::representative_size_bound(4) == 8);
  CHECK(flca::representative_size_bound(64) ==
        std::numeric_limits<std::uint64_t>::max());
  CHECK(flca::representative_size_bound(1) == 1);
}

TEST_CASE("offline recomputation equals the online path, statistics included") {
  std::mt19937_64 rng(16);
  for (int round = 0; round < 1000; ++round) {
    const auto n = static_cast<std::int32_t>(1 + rng() % 60);
    Fixture fx(support::random_parents(n, rng));
    const std::vector<VertexId> marks = random_marks(n, rng);
    const auto f = static_cast<std::int32_t>(1 + rng() % 5);
    const QuerySet query = QuerySet::make(marks, f, fx.tree);

    const FlcaResult online = compute_flca(fx.index, fx.scratch, query);
    const FlcaResult offline = compute_flca_offline(fx.tree, query);
    CHECK(online.representatives == offline.representatives);
    CHECK(online.recursion_calls == offline.recursion_calls);
    CHECK(online.max_branching == offline.max_branching);
  }
}

TEST_CASE("offline handles a deep path without an index") {
  const std::int32_t n = 1'000'000;
  const RootedTree tree =
      RootedTree::from_parents(flca::make_parent_list(TreeShape::path, n, 0));
  const QuerySet query = QuerySet::make({n - 1}, 5, tree);
  const FlcaResult result = compute_flca_offline(tree, query);
  CHECK(result.representatives == std::vector<VertexId>{n - 1});
  CHECK(result.recursion_calls == 1);
}

TEST_CASE("aggregation") {
  std::mt19937_64 rng(17);

  // empty state is a plain query
  {
    Fixture fx(support::random_parents(20, rng));
    const std::vector<VertexId> batch{3, 7, 11};
    const FlcaResult via_aggregate =
        flca::aggregate(fx.index, fx.scratch, std::nullopt, batch, 2);
    const FlcaResult direct = fx.run(batch, 2);
    CHECK(via_aggregate.representatives == direct.representatives);

    // feeding a result back to itself changes nothing
    const FlcaResult again = flca::aggregate(
        fx.index, fx.scratch, via_aggregate, direct.representatives, 2);
    CHECK(again.representatives == direct.representatives);
  }

  // streamed batches equal the one-shot answer
  for (int round = 0; round < 300; ++round) {
    const auto n = static_cast<std::int32_t>(2 + rng() % 40);
    Fixture fx(support::random_parents(n, rng));
    const std::vector<VertexId> marks = random_marks(n, rng);
    const auto f = static_cast<std::int32_t>(1 + rng() % 4);
    const FlcaResult one_shot = fx.run(marks, f);

    const std::size_t cut = marks.size() / 2;
    std::optional<FlcaResult> state;
    if (cut > 0) {
      state = flca::aggregate(fx.index, fx.scratch, std::nullopt,
                              std::span(marks).first(cut), f);
      CHECK(state->representatives.size() <=
            flca::representative_size_bound(f));
    }
    const FlcaResult streamed = flca::aggregate(
        fx.index, fx.scratch, state, std::span(marks).subspan(cut), f);
    CHECK(streamed.representatives == one_shot.representatives);
  }

  // both sides empty is still an empty-mark-set error
  Fixture fx(support::random_parents(5, rng));
  CHECK(support::thrown_code([&] {
          flca::aggregate(fx.index, fx.scratch, std::nullopt, {}, 2);
        }) == Errc::empty_mark_set);
}

TEST_CASE("shared index, one scratch per thread") {
  std::mt19937_64 rng(18);
  const auto n = 3000;
  const std::vector<VertexId> parents = support::random_parents(n, rng);
  const RootedTree tree = RootedTree::from_parents(parents);
  const AncestryIndex index(tree);

  constexpr int kThreads = 4;
  constexpr int kQueries = 64;
  std::vector<std::vector<VertexId>> mark_sets;
  std::vector<std::int32_t> budgets;
  for (int q = 0; q < kQueries; ++q) {
    mark_sets.push_back(random_marks(n, rng));
    budgets.push_back(static_cast<std::int32_t>(1 + rng() % 5));
  }

  // serial reference answers
  std::vector<std::vector<VertexId>> expected;
  {
    QueryScratch scratch(tree);
    for (int q = 0; q < kQueries; ++q) {
      expected.push_back(
          compute_flca(index, scratch,
                       QuerySet::make(mark_sets[q], budgets[q], tree))
              .representatives);
    }
  }

  std::vector<std::vector<std::vector<VertexId>>> got(kThreads);
  std::vector<std::thread> workers;
  for (int t = 0; t < kThreads; ++t) {
    workers.emplace_back([&, t] {
      QueryScratch scratch(tree);
      for (int q = 0; q < kQueries; ++q) {
        got[t].push_back(
            compute_flca(index, scratch,
                         QuerySet::make(mark_sets[q], budgets[q], tree))
                .representatives);
      }
    });
  }
  for (auto& w : workers) w.join();
  for (int t = 0; t < kThreads; ++t) CHECK(got[t] == expected);
}
