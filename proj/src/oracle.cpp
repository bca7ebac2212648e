#include "flca/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "flca/error.hpp"

namespace flca::oracle {

namespace {

constexpr std::uint64_t kEnumerationCap = 10'000'000;

void require_valid(const RootedTree& tree, std::span<const VertexId> vertices,
                   const char* what) {
  for (const VertexId v : vertices) {
    if (!tree.contains(v)) {
      throw Error(Errc::invalid_vertex,
                  std::string(what) + " vertex " + std::to_string(v) +
                      " is outside [0, " + std::to_string(tree.size()) + ")");
    }
  }
}

// Count of subsets of size at most k from the given universe, saturated just
// past the cap so callers can compare with >.
std::uint64_t subsets_up_to(std::int64_t universe, std::int32_t k,
                            std::uint64_t cap) {
  std::uint64_t total = 0;
  for (std::int32_t size = 0; size <= k; ++size) {
    if (size > universe) break;
    std::uint64_t c = 1;
    for (std::int32_t i = 0; i < size; ++i) {
      c = c * static_cast<std::uint64_t>(universe - i) / (i + 1);
      if (c > cap) return cap + 1;
    }
    total += c;
    if (total > cap) return cap + 1;
  }
  return total;
}

// Lexicographic k-combinations of {0, .., universe-1}. The callback returns
// false to stop early, and the return value mirrors that.
template <typename Callback>
bool for_each_combination(std::int32_t universe, std::int32_t k,
                          std::vector<std::int32_t>& items, Callback&& visit) {
  if (k > universe) return true;
  items.resize(static_cast<std::size_t>(k));
  for (std::int32_t i = 0; i < k; ++i) items[i] = i;
  for (;;) {
    if (!visit(std::span<const std::int32_t>(items))) return false;
    std::int32_t i = k - 1;
    while (i >= 0 && items[i] == universe - k + i) --i;
    if (i < 0) return true;
    ++items[i];
    for (std::int32_t j = i + 1; j < k; ++j) items[j] = items[j - 1] + 1;
  }
}

// Covering test against a membership bitmap: every target must see a set bit
// somewhere on its walk to the root, itself included.
bool covered_by(const RootedTree& tree, const std::vector<std::uint8_t>& in_set,
                std::span<const VertexId> targets) {
  for (const VertexId t : targets) {
    bool hit = false;
    for (VertexId v = t; v != kNoVertex; v = tree.parent(v)) {
      if (in_set[v]) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

void require_budget(std::int32_t fault_budget, std::int32_t least) {
  if (fault_budget < least) {
    throw Error(Errc::invalid_budget, "fault budget is " +
                                          std::to_string(fault_budget) +
                                          ", must be >= " +
                                          std::to_string(least));
  }
}

}  // namespace

bool enumeration_feasible(std::int64_t universe, std::int32_t fault_budget) {
  return fault_budget >= 0 &&
         subsets_up_to(universe, fault_budget, kEnumerationCap) <=
             kEnumerationCap;
}

bool covers(const RootedTree& tree, std::span<const VertexId> a,
            std::span<const VertexId> b) {
  require_valid(tree, a, "covering");
  require_valid(tree, b, "covered");
  std::vector<std::uint8_t> in_a(tree.size(), 0);
  for (const VertexId v : a) in_a[v] = 1;
  return covered_by(tree, in_a, b);
}

bool equivalent(const RootedTree& tree, std::span<const VertexId> m,
                std::span<const VertexId> n, std::int32_t fault_budget) {
  require_valid(tree, m, "marked");
  require_valid(tree, n, "candidate");
  require_budget(fault_budget, 0);
  if (subsets_up_to(tree.size(), fault_budget, kEnumerationCap) >
      kEnumerationCap) {
    throw Error(Errc::instance_too_large,
                "more than " + std::to_string(kEnumerationCap) +
                    " fault sets at n = " + std::to_string(tree.size()) +
                    ", f = " + std::to_string(fault_budget));
  }

  std::vector<std::uint8_t> in_f(tree.size(), 0);
  std::vector<std::int32_t> items;
  for (std::int32_t k = 0; k <= fault_budget; ++k) {
    const bool all_same = for_each_combination(
        tree.size(), k, items, [&](std::span<const std::int32_t> fault) {
          for (const std::int32_t v : fault) in_f[v] = 1;
          const bool same =
              covered_by(tree, in_f, m) == covered_by(tree, in_f, n);
          for (const std::int32_t v : fault) in_f[v] = 0;
          return same;
        });
    if (!all_same) return false;
  }
  return true;
}

BruteForceResult brute_force_flca(const RootedTree& tree,
                                  std::span<const VertexId> marks,
                                  std::int32_t fault_budget) {
  if (marks.empty()) {
    throw Error(Errc::empty_mark_set, "marked set must be non-empty");
  }
  require_valid(tree, marks, "marked");
  require_budget(fault_budget, 1);
  if (tree.size() > 10 || fault_budget > 3) {
    throw Error(Errc::instance_too_large,
                "subset search is limited to n <= 10 and f <= 3, got n = " +
                    std::to_string(tree.size()) +
                    ", f = " + std::to_string(fault_budget));
  }

  std::vector<VertexId> m(marks.begin(), marks.end());
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());

  // The empty set is never equivalent to a non-empty one (the empty fault
  // set covers the former but not the latter), so candidates start at one
  // vertex. M itself bounds the search, so the scan always finds something.
  BruteForceResult result;
  std::vector<std::int32_t> items;
  std::vector<VertexId> candidate;
  for (std::int32_t k = 1;
       k <= tree.size() && result.representatives.empty(); ++k) {
    for_each_combination(
        tree.size(), k, items, [&](std::span<const std::int32_t> ids) {
          candidate.assign(ids.begin(), ids.end());
          if (!equivalent(tree, m, candidate, fault_budget)) return true;
          if (result.representatives.empty()) {
            result.representatives = candidate;
            result.unique = true;
            return true;  // scan the rest of the class for a second witness
          }
          result.unique = false;
          return false;
        });
  }
  return result;
}

bool connected_after_faults(const RootedTree& tree,
                            std::span<const VertexId> targets,
                            const FaultSet& faults) {
  require_valid(tree, targets, "target");
  require_valid(tree, faults.vertices, "faulty");
  if (targets.empty()) return false;

  const auto slots = static_cast<std::size_t>(tree.size());
  std::vector<std::uint8_t> dead(slots, 0);
  std::vector<std::uint8_t> cut_above(slots, 0);  // edge to parent removed
  std::vector<std::uint8_t> wanted(slots, 0);
  for (const VertexId v : faults.vertices) dead[v] = 1;
  for (const auto& [parent, child] : faults.edges) {
    assert(tree.contains(child) && tree.parent(child) == parent);
    (void)parent;
    cut_above[child] = 1;
  }
  for (const VertexId t : targets) wanted[t] = 1;

  if (dead[tree.root()]) return false;
  std::vector<VertexId> stack{tree.root()};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    if (wanted[v]) return true;
    for (const VertexId c : tree.children(v)) {
      if (!dead[c] && !cut_above[c]) stack.push_back(c);
    }
  }
  return false;
}

bool edge_fault_equivalent(const RootedTree& tree, std::span<const VertexId> m,
                           std::span<const VertexId> n,
                           std::int32_t fault_budget) {
  require_valid(tree, m, "marked");
  require_valid(tree, n, "candidate");
  require_budget(fault_budget, 0);
  const std::int64_t universe = static_cast<std::int64_t>(tree.size()) * 2 - 1;
  if (subsets_up_to(universe, fault_budget, kEnumerationCap) >
      kEnumerationCap) {
    throw Error(Errc::instance_too_large,
                "more than " + std::to_string(kEnumerationCap) +
                    " mixed fault sets at n = " + std::to_string(tree.size()) +
                    ", f = " + std::to_string(fault_budget));
  }

  // Items 0..n-1 are vertices; the rest are the parent edges of the non-root
  // vertices in ascending child order.
  std::vector<VertexId> edge_child;
  edge_child.reserve(static_cast<std::size_t>(universe) - tree.size());
  for (VertexId v = 0; v < tree.size(); ++v) {
    if (v != tree.root()) edge_child.push_back(v);
  }

  std::vector<std::int32_t> items;
  FaultSet faults;
  for (std::int32_t k = 0; k <= fault_budget; ++k) {
    const bool all_same = for_each_combination(
        static_cast<std::int32_t>(universe), k, items,
        [&](std::span<const std::int32_t> picked) {
          faults.vertices.clear();
          faults.edges.clear();
          for (const std::int32_t item : picked) {
            if (item < tree.size()) {
              faults.vertices.push_back(item);
            } else {
              const VertexId child = edge_child[item - tree.size()];
              faults.edges.emplace_back(tree.parent(child), child);
            }
          }
          return connected_after_faults(tree, m, faults) ==
                 connected_after_faults(tree, n, faults);
        });
    if (!all_same) return false;
  }
  return true;
}

}  // namespace flca::oracle
