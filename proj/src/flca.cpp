#include "flca/flca.hpp"

#include <algorithm>
#include <cassert>
#include <string>
#include <utility>

namespace flca {

namespace {

void validate_query(const QuerySet& query, std::int32_t n) {
  if (query.marks().empty()) {
    throw Error(Errc::empty_mark_set, "query has no marked vertices");
  }
  if (query.fault_budget() < 1) {
    throw Error(Errc::invalid_budget,
                "fault budget is " + std::to_string(query.fault_budget()) + ", must be >= 1");
  }
  for (const VertexId v : query.marks()) {
    if (v < 0 || v >= n) {
      throw Error(Errc::invalid_vertex,
                  "marked vertex " + std::to_string(v) + " is outside [0, " +
                      std::to_string(n) + ")");
    }
  }
}

// Any budget >= n behaves identically: no fault set exceeds n vertices, and
// once the budget covers the mark count every branching passes the d <= f
// test all the way down. Clamping also keeps budget arithmetic small.
std::int32_t clamp_budget(std::int32_t fault_budget, std::int32_t n) {
  return std::min(fault_budget, n);
}

}  // namespace

QuerySet QuerySet::make(std::vector<VertexId> marks, std::int32_t fault_budget,
                        const RootedTree& tree) {
  if (marks.empty()) {
    throw Error(Errc::empty_mark_set, "marked set must be non-empty");
  }
  if (fault_budget < 1) {
    throw Error(Errc::invalid_budget,
                "fault budget is " + std::to_string(fault_budget) + ", must be >= 1");
  }
  for (const VertexId v : marks) {
    if (!tree.contains(v)) {
      throw Error(Errc::invalid_vertex,
                  "marked vertex " + std::to_string(v) + " is outside [0, " +
                      std::to_string(tree.size()) + ")");
    }
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  return QuerySet(std::move(marks), fault_budget);
}

QueryScratch::QueryScratch(const RootedTree& tree)
    : switch_bits_(tree.size(), 0),
      bucket_head_(tree.size(), kNoVertex),
      bucket_next_(tree.size(), kNoVertex) {}

bool QueryScratch::verify_clean() const {
  if (live_buckets_ != 0) return false;
  for (const std::uint8_t bit : switch_bits_) {
    if (bit != 0) return false;
  }
  for (const VertexId head : bucket_head_) {
    if (head != kNoVertex) return false;
  }
  return true;
}

void QueryScratch::reset() {
  std::fill(switch_bits_.begin(), switch_bits_.end(), std::uint8_t{0});
  std::fill(bucket_head_.begin(), bucket_head_.end(), kNoVertex);
  touched_.clear();
  frames_.clear();
  out_.clear();
  live_buckets_ = 0;
}

void QueryScratch::testing_mark_dirty(VertexId v) {
  switch_bits_[v] = 1;
  ++live_buckets_;
}

FlcaResult compute_flca(const AncestryIndex& index, QueryScratch& scratch,
                        const QuerySet& query) {
  const RootedTree& tree = index.tree();
  const std::int32_t n = tree.size();
  validate_query(query, n);
  if (scratch.size() != n) {
    throw Error(Errc::scratch_dirty,
                "scratch sized for " + std::to_string(scratch.size()) +
                    " vertices, tree has " + std::to_string(n));
  }
  if (!scratch.is_clean()) {
    throw Error(Errc::scratch_dirty, "scratch is not in its cleaned state");
  }

  auto& switch_bits = scratch.switch_bits_;
  auto& bucket_head = scratch.bucket_head_;
  auto& next = scratch.bucket_next_;
  auto& touched = scratch.touched_;
  auto& frames = scratch.frames_;
  auto& out = scratch.out_;
  touched.clear();
  frames.clear();
  out.clear();

  // Thread the (deduplicated) marks into one bucket chain for the top call.
  VertexId head = kNoVertex;
  for (const VertexId v : query.marks()) {
    next[v] = head;
    head = v;
  }
  frames.push_back({head, clamp_budget(query.fault_budget(), n)});

  std::int64_t calls = 0;
  std::int32_t max_branching = 0;

  while (!frames.empty()) {
    const auto [marks_head, budget] = frames.back();
    frames.pop_back();
    ++calls;

    // Fold the set LCA over the chain. A mark at the LCA's own depth must be
    // the LCA itself (every mark lies in its subtree), so tracking the
    // shallowest mark answers the membership test for free.
    VertexId node_lca = marks_head;
    std::int32_t min_mark_depth = tree.depth(marks_head);
    for (VertexId v = next[marks_head]; v != kNoVertex; v = next[v]) {
      node_lca = index.lca(node_lca, v);
      min_mark_depth = std::min(min_mark_depth, tree.depth(v));
    }
    if (min_mark_depth == tree.depth(node_lca)) {
      out.push_back(node_lca);
      continue;
    }

    // Partition the marks among the LCA's children: the first mark seen under
    // a child flips its switch, creates its bucket, and appends the child to
    // the level list; later marks just join the existing bucket.
    const std::int32_t child_level = tree.depth(node_lca) + 1;
    const std::size_t level_begin = touched.size();
    for (VertexId v = marks_head; v != kNoVertex;) {
      const VertexId following = next[v];
      const VertexId child = *index.anc(v, child_level);
      if (switch_bits[child] == 0) {
        switch_bits[child] = 1;
        ++scratch.live_buckets_;
        bucket_head[child] = v;
        next[v] = kNoVertex;
        touched.push_back(child);
      } else {
        next[v] = bucket_head[child];
        bucket_head[child] = v;
      }
      v = following;
    }

    const auto branching = static_cast<std::int32_t>(touched.size() - level_begin);
    assert(branching >= 2);
    max_branching = std::max(max_branching, branching);
    const bool over_budget = branching > budget;
    const std::int32_t child_budget = budget - branching + 1;
    assert(over_budget || (child_budget >= 1 && child_budget <= budget - 1));

    // Scan the level list: detach each bucket and revert its lookup entry to
    // the cleaned state before any recursive frame runs.
    for (std::size_t i = level_begin; i < touched.size(); ++i) {
      const VertexId child = touched[i];
      const VertexId bucket = bucket_head[child];
      switch_bits[child] = 0;
      bucket_head[child] = kNoVertex;
      --scratch.live_buckets_;
      if (!over_budget) frames.push_back({bucket, child_budget});
    }
    touched.resize(level_begin);

    if (over_budget) out.push_back(node_lca);
  }

  FlcaResult result;
  result.representatives.assign(out.begin(), out.end());
  const auto& first = index.tour().first_occurrence;
  std::sort(result.representatives.begin(), result.representatives.end(),
            [&](VertexId a, VertexId b) { return first[a] < first[b]; });
  result.recursion_calls = calls;
  result.max_branching = max_branching;
  assert(scratch.is_clean());
  return result;
}

FlcaResult compute_flca_offline(const RootedTree& tree, const QuerySet& query) {
  const std::int32_t n = tree.size();
  validate_query(query, n);

  std::vector<std::uint8_t> marked(n, 0);
  for (const VertexId v : query.marks()) marked[v] = 1;

  // BFS order gives children after parents, so a reverse sweep accumulates
  // the marked-subtree flags bottom-up.
  std::vector<VertexId> bfs;
  bfs.reserve(n);
  bfs.push_back(tree.root());
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    for (const VertexId c : tree.children(bfs[head])) bfs.push_back(c);
  }
  std::vector<std::uint8_t> subtree_marked(marked);
  for (std::size_t i = bfs.size(); i-- > 1;) {
    const VertexId v = bfs[i];
    if (subtree_marked[v]) subtree_marked[tree.parent(v)] = 1;
  }

  struct Subproblem {
    VertexId top;  // subtree root containing this subproblem's marks
    std::int32_t budget;
  };
  std::vector<Subproblem> work;
  work.push_back({tree.root(), clamp_budget(query.fault_budget(), n)});

  std::vector<VertexId> out;
  std::vector<VertexId> branch;
  std::int64_t calls = 0;
  std::int32_t max_branching = 0;

  while (!work.empty()) {
    const auto [top, budget] = work.back();
    work.pop_back();
    ++calls;

    // Descend to the subproblem's LCA: the first vertex that is itself marked
    // or has marks under more than one child.
    VertexId node_lca = top;
    for (;;) {
      if (marked[node_lca]) {
        out.push_back(node_lca);
        break;
      }
      branch.clear();
      for (const VertexId c : tree.children(node_lca)) {
        if (subtree_marked[c]) branch.push_back(c);
      }
      if (branch.size() == 1) {
        node_lca = branch.front();
        continue;
      }
      const auto branching = static_cast<std::int32_t>(branch.size());
      assert(branching >= 2);
      max_branching = std::max(max_branching, branching);
      if (branching > budget) {
        out.push_back(node_lca);
        break;
      }
      for (const VertexId c : branch) work.push_back({c, budget - branching + 1});
      break;
    }
  }

  // Canonical order: ascending first occurrence in the Euler tour, which for
  // children in stored order is exactly preorder rank.
  std::vector<std::int32_t> preorder(n, 0);
  {
    std::vector<VertexId> stack;
    stack.push_back(tree.root());
    std::int32_t rank = 0;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      preorder[v] = rank++;
      const auto kids = tree.children(v);
      for (std::size_t i = kids.size(); i-- > 0;) stack.push_back(kids[i]);
    }
  }
  std::sort(out.begin(), out.end(),
            [&](VertexId a, VertexId b) { return preorder[a] < preorder[b]; });

  FlcaResult result;
  result.representatives = std::move(out);
  result.recursion_calls = calls;
  result.max_branching = max_branching;
  return result;
}

FlcaResult aggregate(const AncestryIndex& index, QueryScratch& scratch,
                     const std::optional<FlcaResult>& state,
                     std::span<const VertexId> batch, std::int32_t fault_budget) {
  std::vector<VertexId> marks;
  marks.reserve(batch.size() + (state ? state->representatives.size() : 0));
  if (state) {
    marks.insert(marks.end(), state->representatives.begin(), state->representatives.end());
  }
  marks.insert(marks.end(), batch.begin(), batch.end());
  const QuerySet query = QuerySet::make(std::move(marks), fault_budget, index.tree());
  return compute_flca(index, scratch, query);
}

}  // namespace flca
