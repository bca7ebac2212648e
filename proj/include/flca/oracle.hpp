#pragma once
// Brute-force ground truth for the fast path: covering checks, exhaustive
// fault-set equivalence, smallest-equivalent-set search, and post-fault
// connectivity with vertex and edge faults. Everything here prefers
// obviously-correct enumeration over speed, and refuses instances past its
// size guards instead of silently sampling.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "flca/tree.hpp"

namespace flca::oracle {

// Failed vertices and/or tree edges. Edge pairs are (parent, child) and must
// be actual edges of the tree they are used with.
struct FaultSet {
  std::vector<VertexId> vertices;
  std::vector<std::pair<VertexId, VertexId>> edges;

  std::size_t size() const { return vertices.size() + edges.size(); }
};

// True iff every vertex of b has an ancestor in a. Ancestry is reflexive:
// a vertex covers itself.
bool covers(const RootedTree& tree, std::span<const VertexId> a,
            std::span<const VertexId> b);

// Whether enumerating every subset of size <= fault_budget from a universe of
// the given size stays within the 10^7 guard shared by the checks below.
bool enumeration_feasible(std::int64_t universe, std::int32_t fault_budget);

// True iff every vertex subset F with |F| <= fault_budget covers m exactly
// when it covers n. Enumerates all such F; refuses (InstanceTooLarge) when
// there are more than 10^7 of them.
bool equivalent(const RootedTree& tree, std::span<const VertexId> m,
                std::span<const VertexId> n, std::int32_t fault_budget);

struct BruteForceResult {
  std::vector<VertexId> representatives;  // ascending vertex id
  bool unique = false;  // no other set of the same size is equivalent
};

// Smallest set equivalent to marks under the given budget, found by scanning
// subsets in increasing cardinality and then lexicographic order. Limited to
// n <= 10 and fault_budget <= 3.
BruteForceResult brute_force_flca(const RootedTree& tree,
                                  std::span<const VertexId> marks,
                                  std::int32_t fault_budget);

// True iff some target is reachable from the root after removing the failed
// vertices (with their incident edges) and the failed edges.
bool connected_after_faults(const RootedTree& tree,
                            std::span<const VertexId> targets,
                            const FaultSet& faults);

// Like equivalent, but fault sets draw from vertices and edges together and
// agreement is judged by root connectivity instead of covering.
bool edge_fault_equivalent(const RootedTree& tree, std::span<const VertexId> m,
                           std::span<const VertexId> n,
                           std::int32_t fault_budget);

}  // namespace flca::oracle
