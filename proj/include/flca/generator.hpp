#pragma once
// Deterministic instance generation for tests, certification sweeps, and
// benchmarks. All randomness flows through mt19937_64 with explicit seeds and
// modulo reduction, so identical seeds give identical bytes on every
// platform.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "flca/tree.hpp"

namespace flca {

enum class TreeShape {
  path,    // 0 -> 1 -> .. -> n-1
  star,    // every other vertex a child of 0
  binary,  // heap layout, parent of i is (i-1)/2; full binary when n = 2^h - 1
  random,  // parent of i drawn uniformly from 0..i-1
};

std::optional<TreeShape> parse_tree_shape(std::string_view token);

// Parent list for RootedTree::from_parents, root at vertex 0. The seed only
// matters for the random shape. Requires n >= 1.
std::vector<VertexId> make_parent_list(TreeShape shape, std::int32_t n,
                                       std::uint64_t seed);

// count distinct vertices out of 0..n-1, by partial Fisher-Yates. Order of
// the returned ids is part of the deterministic contract.
std::vector<VertexId> sample_vertices(std::int32_t n, std::int32_t count,
                                      std::mt19937_64& rng);

}  // namespace flca
