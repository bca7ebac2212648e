#include "flca/verify.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "flca/ancestry_index.hpp"
#include "flca/error.hpp"
#include "flca/flca.hpp"
#include "flca/generator.hpp"
#include "flca/oracle.hpp"
#include "flca/tree.hpp"

namespace flca {

namespace {

struct Instance {
  std::vector<VertexId> parents;
  std::vector<VertexId> marks;
  std::int32_t fault_budget = 1;
};

enum class Check {
  invariants,
  f1_degenerate,
  offline_equality,
  equivalence,
  brute_force,
  edge_faults,
  aggregation,
};

constexpr std::array kCheckNames = {
    "invariants",  "f1-degenerate", "offline-equality", "equivalence",
    "brute-force", "edge-faults",   "aggregation",
};
using CheckCounts = std::array<std::int64_t, kCheckNames.size()>;

const char* check_name(Check c) { return kCheckNames[static_cast<int>(c)]; }

struct Failure {
  Check check;
  std::string detail;
};

std::string join_ids(std::span<const VertexId> ids) {
  std::string out;
  for (const VertexId v : ids) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

std::vector<VertexId> sorted_ids(std::span<const VertexId> ids) {
  std::vector<VertexId> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Runs every applicable check, in a fixed order, against one instance.
// counts (when given) gets one tick per check that ran and passed.
std::optional<Failure> check_instance(const Instance& inst,
                                      const VerifyOptions& options,
                                      CheckCounts* counts) {
  const RootedTree tree = RootedTree::from_parents(inst.parents);
  const AncestryIndex index(tree);
  QueryScratch scratch(tree);
  const QuerySet query = QuerySet::make(
      {inst.marks.begin(), inst.marks.end()}, inst.fault_budget, tree);
  const FlcaResult truth = compute_flca(index, scratch, query);

  FlcaResult answer = truth;
  if (options.corrupt) {
    // Swap in a wrong answer: the root, or (when the root is correct) the
    // deepest vertex. The sweep must then fail no later than the
    // offline-equality check.
    VertexId deepest = tree.root();
    for (VertexId v = 0; v < tree.size(); ++v) {
      if (tree.depth(v) > tree.depth(deepest)) deepest = v;
    }
    const bool truth_is_root = truth.representatives ==
                               std::vector<VertexId>{tree.root()};
    answer.representatives = {truth_is_root ? deepest : tree.root()};
  }
  const std::vector<VertexId>& reps = answer.representatives;

  const auto passed = [&](Check c) {
    if (counts) ++(*counts)[static_cast<int>(c)];
  };
  const auto fail = [](Check c, std::string detail) {
    return std::optional<Failure>(Failure{c, std::move(detail)});
  };

  // invariants: shape of the answer set itself
  if (reps.empty()) return fail(Check::invariants, "empty representative set");
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (index.is_ancestor(reps[i], reps[j]) ||
          index.is_ancestor(reps[j], reps[i])) {
        return fail(Check::invariants,
                    "representatives " + std::to_string(reps[i]) + " and " +
                        std::to_string(reps[j]) + " are related");
      }
    }
  }
  const std::uint64_t bound = representative_size_bound(inst.fault_budget);
  if (reps.size() > query.marks().size() || reps.size() > bound) {
    return fail(Check::invariants,
                "result size " + std::to_string(reps.size()) +
                    " exceeds min(|M|, 2^(f-1))");
  }
  const VertexId ell = index.lca_of_set(query.marks());
  const std::vector<VertexId> ell_set{ell};
  if (!oracle::covers(tree, ell_set, reps)) {
    return fail(Check::invariants, "result not below the marks' LCA " +
                                       std::to_string(ell));
  }
  if (!oracle::covers(tree, reps, query.marks())) {
    return fail(Check::invariants, "result does not cover the marks");
  }
  for (const VertexId r : reps) {
    VertexId fold = kNoVertex;
    for (const VertexId m : query.marks()) {
      if (!index.is_ancestor(r, m)) continue;
      fold = fold == kNoVertex ? m : index.lca(fold, m);
    }
    if (fold != r) {
      return fail(Check::invariants,
                  "representative " + std::to_string(r) +
                      " is not the LCA of the marks in its subtree (" +
                      std::to_string(fold) + ")");
    }
  }
  {
    const QuerySet again =
        QuerySet::make({reps.begin(), reps.end()}, inst.fault_budget, tree);
    const FlcaResult fixpoint = compute_flca(index, scratch, again);
    if (fixpoint.representatives != reps) {
      return fail(Check::invariants, "not idempotent: {" + join_ids(reps) +
                                         "} maps to {" +
                                         join_ids(fixpoint.representatives) +
                                         "}");
    }
  }
  if (!scratch.verify_clean()) {
    return fail(Check::invariants, "scratch left dirty after queries");
  }
  passed(Check::invariants);

  if (inst.fault_budget == 1) {
    if (reps != ell_set) {
      return fail(Check::f1_degenerate, "f = 1 result {" + join_ids(reps) +
                                            "} is not the LCA {" +
                                            join_ids(ell_set) + "}");
    }
    passed(Check::f1_degenerate);
  }

  {
    const FlcaResult offline = compute_flca_offline(tree, query);
    if (offline.representatives != reps) {
      return fail(Check::offline_equality,
                  "online {" + join_ids(reps) + "} vs offline {" +
                      join_ids(offline.representatives) + "}");
    }
    passed(Check::offline_equality);
  }

  if (!oracle::equivalent(tree, query.marks(), reps, inst.fault_budget)) {
    return fail(Check::equivalence,
                "result {" + join_ids(reps) +
                    "} is not fault-equivalent to the marks");
  }
  passed(Check::equivalence);

  if (tree.size() <= 10 && inst.fault_budget <= 3) {
    const oracle::BruteForceResult best =
        oracle::brute_force_flca(tree, query.marks(), inst.fault_budget);
    if (best.representatives != sorted_ids(reps)) {
      return fail(Check::brute_force,
                  "result {" + join_ids(reps) + "} vs brute-force minimum {" +
                      join_ids(best.representatives) + "}");
    }
    if (!best.unique) {
      return fail(Check::brute_force, "minimum {" +
                                          join_ids(best.representatives) +
                                          "} is not unique");
    }
    passed(Check::brute_force);
  }

  if (options.edge_faults) {
    if (!oracle::edge_fault_equivalent(tree, query.marks(), reps,
                                       inst.fault_budget)) {
      return fail(Check::edge_faults,
                  "result {" + join_ids(reps) +
                      "} differs from the marks under some mixed fault set");
    }
    passed(Check::edge_faults);
  }

  {
    const auto marks = query.marks();
    const std::size_t half = marks.size() / 2;
    std::optional<FlcaResult> state;
    if (half > 0) {
      state = aggregate(index, scratch, std::nullopt, marks.first(half),
                        inst.fault_budget);
      if (state->representatives.size() > bound) {
        return fail(Check::aggregation,
                    "carried state size " +
                        std::to_string(state->representatives.size()) +
                        " exceeds 2^(f-1)");
      }
    }
    const FlcaResult streamed =
        aggregate(index, scratch, state, marks.subspan(half), inst.fault_budget);
    if (streamed.representatives != reps) {
      return fail(Check::aggregation,
                  "streamed {" + join_ids(streamed.representatives) +
                      "} vs one-shot {" + join_ids(reps) + "}");
    }
    passed(Check::aggregation);
  }

  return std::nullopt;
}

Instance remove_leaf(const Instance& inst, VertexId leaf) {
  Instance out;
  out.fault_budget = inst.fault_budget;
  out.parents.reserve(inst.parents.size() - 1);
  const auto remap = [leaf](VertexId v) { return v > leaf ? v - 1 : v; };
  for (VertexId v = 0; v < static_cast<VertexId>(inst.parents.size()); ++v) {
    if (v == leaf) continue;
    const VertexId p = inst.parents[v];
    out.parents.push_back(p == kNoVertex ? kNoVertex : remap(p));
  }
  out.marks.reserve(inst.marks.size());
  for (const VertexId m : inst.marks) out.marks.push_back(remap(m));
  return out;
}

// Greedy shrinking: drop marks, then unmarked leaves, as long as the same
// check keeps failing; repeat to a fixpoint.
Instance minimize(Instance inst, Check check, const VerifyOptions& options) {
  const auto still_fails = [&](const Instance& candidate) {
    const auto failure = check_instance(candidate, options, nullptr);
    return failure && failure->check == check;
  };
  for (;;) {
    bool shrunk = false;
    for (std::size_t i = 0; i < inst.marks.size() && inst.marks.size() > 1;) {
      Instance candidate = inst;
      candidate.marks.erase(candidate.marks.begin() + i);
      if (still_fails(candidate)) {
        inst = std::move(candidate);
        shrunk = true;
      } else {
        ++i;
      }
    }
    const auto n = static_cast<VertexId>(inst.parents.size());
    for (VertexId v = n - 1; v >= 0 && n > 1; --v) {
      if (inst.parents[v] == kNoVertex) continue;  // root
      bool is_leaf = true;
      for (const VertexId p : inst.parents) is_leaf = is_leaf && p != v;
      bool is_marked = false;
      for (const VertexId m : inst.marks) is_marked = is_marked || m == v;
      if (!is_leaf || is_marked) continue;
      Instance candidate = remove_leaf(inst, v);
      if (still_fails(candidate)) {
        inst = std::move(candidate);
        shrunk = true;
        break;  // ids shifted; restart the scan
      }
    }
    if (!shrunk) return inst;
  }
}

void dump_instance(std::ostringstream& out, const Instance& inst) {
  out << "tree " << inst.parents.size() << " 0\n";
  for (std::size_t v = 0; v < inst.parents.size(); ++v) {
    if (inst.parents[v] == kNoVertex) continue;
    out << v << ' ' << inst.parents[v] << '\n';
  }
  out << "marks: " << join_ids(inst.marks) << '\n';
  out << "fault budget: " << inst.fault_budget << '\n';
}

}  // namespace

VerifyResult run_verification(const VerifyOptions& options) {
  if (!oracle::enumeration_feasible(options.n_max, options.f_max)) {
    throw Error(Errc::instance_too_large,
                "exhaustive equivalence is infeasible at n-max = " +
                    std::to_string(options.n_max) +
                    ", f-max = " + std::to_string(options.f_max));
  }
  if (options.edge_faults &&
      !oracle::enumeration_feasible(2 * static_cast<std::int64_t>(options.n_max) - 1,
                                    options.f_max)) {
    throw Error(Errc::instance_too_large,
                "mixed-fault enumeration is infeasible at n-max = " +
                    std::to_string(options.n_max) +
                    ", f-max = " + std::to_string(options.f_max));
  }

  std::ostringstream report;
  report << "verify: n-max=" << options.n_max << " f-max=" << options.f_max
         << " instances=" << options.instances << " seed=" << options.seed
         << " edge-faults=" << (options.edge_faults ? "on" : "off");
  if (options.corrupt) report << " corrupt=on";
  report << '\n';

  // The corrupt control needs a second vertex to differ from the truth.
  const std::int32_t n_floor = options.corrupt ? 2 : 1;
  const std::int32_t n_max = std::max(options.n_max, n_floor);

  std::mt19937_64 rng(options.seed);
  CheckCounts counts{};
  VerifyResult result;

  constexpr std::array kShapeMix = {TreeShape::path, TreeShape::star,
                                    TreeShape::binary, TreeShape::random,
                                    TreeShape::random, TreeShape::random,
                                    TreeShape::random, TreeShape::random};

  for (std::int32_t i = 0; i < options.instances; ++i) {
    Instance inst;
    const auto n = static_cast<std::int32_t>(
        n_floor + rng() % static_cast<std::uint64_t>(n_max - n_floor + 1));
    inst.parents =
        make_parent_list(kShapeMix[rng() % kShapeMix.size()], n, rng());
    const auto mark_count =
        static_cast<std::int32_t>(1 + rng() % static_cast<std::uint64_t>(n));
    inst.marks = sample_vertices(n, mark_count, rng);
    inst.fault_budget = static_cast<std::int32_t>(
        1 + rng() % static_cast<std::uint64_t>(options.f_max));

    const auto failure = check_instance(inst, options, &counts);
    ++result.instances_checked;
    if (!failure) continue;

    const Instance smallest = minimize(inst, failure->check, options);
    const auto confirmed = check_instance(smallest, options, nullptr);
    assert(confirmed && confirmed->check == failure->check);

    report << "FAIL: instance " << i << ", check " << check_name(failure->check)
           << '\n';
    report << "minimized counterexample:\n";
    dump_instance(report, smallest);
    report << "detail: " << (confirmed ? confirmed->detail : failure->detail)
           << '\n';
    for (const auto c : counts) result.checks_passed += c;
    result.ok = false;
    result.report = report.str();
    return result;
  }

  report << "checks:";
  for (std::size_t c = 0; c < kCheckNames.size(); ++c) {
    report << ' ' << kCheckNames[c] << '=' << counts[c];
    result.checks_passed += counts[c];
  }
  report << '\n';
  report << "PASS: " << result.instances_checked
         << " instances, zero discrepancies\n";
  result.ok = true;
  result.report = report.str();
  return result;
}

}  // namespace flca
