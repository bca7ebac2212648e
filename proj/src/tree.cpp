#include "flca/tree.hpp"

#include <cassert>
#include <string>
#include <utility>

namespace flca {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::multiple_roots: return "MultipleRoots";
    case Errc::no_root: return "NoRoot";
    case Errc::cycle_detected: return "CycleDetected";
    case Errc::parent_out_of_range: return "ParentOutOfRange";
    case Errc::empty_set: return "EmptySet";
    case Errc::empty_mark_set: return "EmptyMarkSet";
    case Errc::invalid_vertex: return "InvalidVertex";
    case Errc::invalid_budget: return "InvalidBudget";
    case Errc::scratch_dirty: return "ScratchDirty";
    case Errc::instance_too_large: return "InstanceTooLarge";
  }
  return "UnknownError";
}

RootedTree RootedTree::from_parents(std::vector<VertexId> parents) {
  const auto n = static_cast<std::int32_t>(parents.size());
  if (n == 0) {
    throw Error(Errc::no_root, "empty parent list has no root vertex");
  }

  VertexId root = kNoVertex;
  std::int32_t root_count = 0;
  for (VertexId v = 0; v < n; ++v) {
    const VertexId p = parents[v];
    if (p == kNoVertex) {
      ++root_count;
      root = v;
    } else if (p < 0 || p >= n) {
      throw Error(Errc::parent_out_of_range,
                  "parent of vertex " + std::to_string(v) + " is " +
                      std::to_string(p) + ", outside [0, " + std::to_string(n) + ")");
    }
  }
  if (root_count > 1) {
    throw Error(Errc::multiple_roots,
                std::to_string(root_count) + " vertices have no parent");
  }
  if (root_count == 0) {
    // Every vertex has a parent, so following parent links from anywhere
    // must eventually repeat a vertex.
    throw Error(Errc::cycle_detected,
                "every vertex has a parent; the parent links contain a cycle");
  }

  RootedTree tree;
  tree.n_ = n;
  tree.root_ = root;
  tree.parent_ = std::move(parents);

  // Children in ascending child-id order (counting sort by parent).
  tree.child_begin_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (v != root) ++tree.child_begin_[tree.parent_[v] + 1];
  }
  for (VertexId v = 0; v < n; ++v) {
    tree.child_begin_[v + 1] += tree.child_begin_[v];
  }
  tree.child_storage_.resize(static_cast<std::size_t>(n) - 1);
  {
    std::vector<std::int32_t> cursor(tree.child_begin_.begin(), tree.child_begin_.end() - 1);
    for (VertexId v = 0; v < n; ++v) {
      if (v != root) tree.child_storage_[cursor[tree.parent_[v]]++] = v;
    }
  }

  // Depths via BFS from the root; a vertex left unvisited sits on (or below)
  // a cycle that never reaches the root.
  tree.depth_.assign(n, -1);
  tree.depth_[root] = 0;
  std::vector<VertexId> queue;
  queue.reserve(n);
  queue.push_back(root);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    for (const VertexId c : tree.children(v)) {
      tree.depth_[c] = tree.depth_[v] + 1;
      queue.push_back(c);
    }
  }
  if (static_cast<std::int32_t>(queue.size()) != n) {
    for (VertexId v = 0; v < n; ++v) {
      if (tree.depth_[v] < 0) {
        throw Error(Errc::cycle_detected,
                    "vertex " + std::to_string(v) +
                        " never reaches the root; the parent links contain a cycle");
      }
    }
  }
  return tree;
}

EulerTour euler_tour(const RootedTree& tree) {
  const std::int32_t n = tree.size();
  EulerTour tour;
  tour.order.reserve(2 * static_cast<std::size_t>(n) - 1);
  tour.tour_depth.reserve(2 * static_cast<std::size_t>(n) - 1);
  tour.first_occurrence.assign(n, -1);
  tour.last_occurrence.assign(n, -1);

  // The tour moves one edge at a time, so the running DFS stack height is the
  // vertex depth; tracking it avoids a depth lookup per step.
  std::int32_t depth = 0;
  const auto visit = [&](VertexId v) {
    const auto pos = static_cast<std::int32_t>(tour.order.size());
    if (tour.first_occurrence[v] < 0) tour.first_occurrence[v] = pos;
    tour.last_occurrence[v] = pos;
    tour.order.push_back(v);
    tour.tour_depth.push_back(depth);
  };

  // Iterative DFS; each frame remembers how many children it has emitted.
  struct Frame {
    VertexId vertex;
    std::int32_t next_child;
  };
  std::vector<Frame> stack;
  stack.push_back({tree.root(), 0});
  visit(tree.root());
  while (!stack.empty()) {
    Frame& top = stack.back();
    const auto kids = tree.children(top.vertex);
    if (top.next_child < static_cast<std::int32_t>(kids.size())) {
      const VertexId c = kids[top.next_child++];
      stack.push_back({c, 0});
      ++depth;
      visit(c);
    } else {
      stack.pop_back();
      if (!stack.empty()) {
        --depth;
        visit(stack.back().vertex);
      }
    }
  }
  assert(tour.order.size() == 2 * static_cast<std::size_t>(n) - 1);
  return tour;
}

}  // namespace flca
