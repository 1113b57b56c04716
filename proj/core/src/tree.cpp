#include "rrt/tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rrt {

IncreasingTree::IncreasingTree(std::vector<Vertex> parent_of) : parent_(std::move(parent_of)) {
  if (parent_.size() < 2) {
    throw std::invalid_argument("IncreasingTree: need at least one vertex");
  }
  parent_[0] = 0;
  parent_[1] = 0;
  const Vertex nn = n();
  for (Vertex v = 2; v <= nn; ++v) {
    if (parent_[v] < 1 || parent_[v] >= v) {
      throw std::invalid_argument("IncreasingTree: parent(" + std::to_string(v) +
                                  ") = " + std::to_string(parent_[v]) +
                                  " violates parent(v) < v");
    }
  }
}

IncreasingTree IncreasingTree::single_vertex() { return IncreasingTree({0, 0}); }

Vertex IncreasingTree::parent(Vertex v) const {
  if (v < 2 || v > n()) {
    throw std::out_of_range("IncreasingTree::parent: vertex " + std::to_string(v));
  }
  return parent_[v];
}

std::vector<std::uint32_t> IncreasingTree::depths() const {
  const Vertex nn = n();
  std::vector<std::uint32_t> depth(nn + 1, 0);
  for (Vertex v = 2; v <= nn; ++v) depth[v] = depth[parent_[v]] + 1;
  return depth;
}

std::uint32_t IncreasingTree::height() const {
  const auto depth = depths();
  return *std::max_element(depth.begin() + 1, depth.end());
}

std::vector<Vertex> IncreasingTree::subtree_sizes() const {
  const Vertex nn = n();
  std::vector<Vertex> size(nn + 1, 1);
  size[0] = 0;
  for (Vertex v = nn; v >= 2; --v) size[parent_[v]] += size[v];
  return size;
}

Vertex IncreasingTree::subtree_size(Vertex v) const {
  if (v < 1 || v > n()) {
    throw std::out_of_range("IncreasingTree::subtree_size: vertex " + std::to_string(v));
  }
  return subtree_sizes()[v];
}

std::vector<std::uint32_t> IncreasingTree::subtree_heights() const {
  const Vertex nn = n();
  std::vector<std::uint32_t> h(nn + 1, 0);
  for (Vertex v = nn; v >= 2; --v) {
    h[parent_[v]] = std::max(h[parent_[v]], h[v] + 1);
  }
  return h;
}

std::vector<Vertex> IncreasingTree::children_of(Vertex v) const {
  std::vector<Vertex> out;
  const Vertex nn = n();
  for (Vertex u = v + 1; u <= nn; ++u) {
    if (parent_[u] == v) out.push_back(u);
  }
  return out;
}

UnrootedTree IncreasingTree::as_unrooted() const {
  UnrootedTree t;
  t.n = n();
  t.edges.reserve(t.n - 1);
  for (Vertex v = 2; v <= t.n; ++v) t.edges.emplace_back(parent_[v], v);
  return t;
}

IncreasingTree generate_rrt(Vertex n, std::uint64_t seed) {
  std::vector<Vertex> parent_of;
  generate_rrt_parents(n, seed, parent_of);
  return IncreasingTree(std::move(parent_of));
}

void generate_rrt_parents(Vertex n, std::uint64_t seed, std::vector<Vertex>& parent_of) {
  if (n < 1) throw std::invalid_argument("generate_rrt: n must be >= 1");
  parent_of.resize(static_cast<std::size_t>(n) + 1);
  parent_of[0] = 0;
  parent_of[1] = 0;
  Rng rng(seed);
  for (Vertex v = 2; v <= n; ++v) {
    parent_of[v] = static_cast<Vertex>(1 + rng.below(v - 1));
  }
}

TreeSplit split_at_two(const IncreasingTree& t) {
  const Vertex n = t.n();
  if (n < 2) throw std::invalid_argument("split_at_two: tree must have at least 2 vertices");
  const auto parent = t.parent_array();
  std::vector<bool> in_lower(n + 1, false);
  in_lower[2] = true;
  TreeSplit split;
  split.upper.push_back(1);
  split.lower.push_back(2);
  for (Vertex v = 3; v <= n; ++v) {
    if (in_lower[parent[v]]) {
      in_lower[v] = true;
      split.lower.push_back(v);
    } else {
      split.upper.push_back(v);
    }
  }
  return split;
}

Vertex lower_split_size(const IncreasingTree& t) { return lower_split_size(t.parent_array()); }

Vertex lower_split_size(std::span<const Vertex> parent_of) {
  const auto n = static_cast<Vertex>(parent_of.size() - 1);
  if (n < 2) throw std::invalid_argument("lower_split_size: tree must have at least 2 vertices");
  std::vector<bool> in_lower(n + 1, false);
  in_lower[2] = true;
  Vertex count = 1;
  for (Vertex v = 3; v <= n; ++v) {
    if (in_lower[parent_of[v]]) {
      in_lower[v] = true;
      ++count;
    }
  }
  return count;
}

std::uint32_t tree_height(std::span<const Vertex> parent_of,
                          std::vector<std::uint32_t>& depth_scratch) {
  const auto n = static_cast<Vertex>(parent_of.size() - 1);
  depth_scratch.resize(parent_of.size());
  depth_scratch[0] = 0;
  depth_scratch[1] = 0;
  std::uint32_t height = 0;
  for (Vertex v = 2; v <= n; ++v) {
    const std::uint32_t d = depth_scratch[parent_of[v]] + 1;
    depth_scratch[v] = d;
    height = std::max(height, d);
  }
  return height;
}

UnrootedTree permute_labels(const IncreasingTree& t, const std::vector<Vertex>& sigma) {
  const Vertex n = t.n();
  if (sigma.size() != static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("permute_labels: sigma must be indexed 1..n");
  }
  std::vector<bool> hit(n + 1, false);
  for (Vertex v = 1; v <= n; ++v) {
    if (sigma[v] < 1 || sigma[v] > n || hit[sigma[v]]) {
      throw std::invalid_argument("permute_labels: sigma is not a bijection on [n]");
    }
    hit[sigma[v]] = true;
  }
  UnrootedTree out;
  out.n = n;
  out.edges.reserve(n - 1);
  const auto parent = t.parent_array();
  for (Vertex v = 2; v <= n; ++v) out.edges.emplace_back(sigma[parent[v]], sigma[v]);
  return out;
}

std::uint64_t increasing_tree_count(Vertex n) {
  if (n < 1 || n > kMaxEnumerationN) {
    throw std::invalid_argument("increasing_tree_count: n must be in [1, " +
                                std::to_string(kMaxEnumerationN) + "]");
  }
  std::uint64_t count = 1;
  for (Vertex v = 2; v <= n; ++v) count *= (v - 1);
  return count;
}

void for_each_increasing_tree(Vertex n, const std::function<void(const IncreasingTree&)>& fn) {
  if (n < 1 || n > kMaxEnumerationN) {
    throw std::invalid_argument("for_each_increasing_tree: n must be in [1, " +
                                std::to_string(kMaxEnumerationN) +
                                "]; the number of trees is (n-1)!");
  }
  std::vector<Vertex> parent_of(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 2; v <= n; ++v) parent_of[v] = 1;
  while (true) {
    fn(IncreasingTree(parent_of));
    // odometer step: lexicographic over (parent(2), ..., parent(n))
    Vertex v = n;
    while (v >= 2 && parent_of[v] == v - 1) {
      parent_of[v] = 1;
      --v;
    }
    if (v < 2) break;
    ++parent_of[v];
  }
}

std::vector<IncreasingTree> all_increasing_trees(Vertex n) {
  std::vector<IncreasingTree> out;
  out.reserve(increasing_tree_count(n));
  for_each_increasing_tree(n, [&](const IncreasingTree& t) { out.push_back(t); });
  return out;
}

void Adjacency::assign(const UnrootedTree& t) {
  if (t.n < 1) throw std::invalid_argument("Adjacency: empty tree");
  if (t.edges.size() != static_cast<std::size_t>(t.n) - 1) {
    throw std::invalid_argument("Adjacency: a tree on n vertices must have n-1 edges");
  }
  n = t.n;
  offsets.assign(static_cast<std::size_t>(n) + 2, 0);
  for (const auto& [u, v] : t.edges) {
    if (u < 1 || u > n || v < 1 || v > n || u == v) {
      throw std::invalid_argument("Adjacency: edge endpoint out of range");
    }
    ++offsets[u + 1];
    ++offsets[v + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  list.resize(2 * (static_cast<std::size_t>(n) - 1));
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v] : t.edges) {
    list[cursor[u]++] = v;
    list[cursor[v]++] = u;
  }
}

void Adjacency::assign(std::span<const Vertex> parent_of) {
  if (parent_of.size() < 2) throw std::invalid_argument("Adjacency: empty parent array");
  n = static_cast<Vertex>(parent_of.size() - 1);
  offsets.assign(static_cast<std::size_t>(n) + 2, 0);
  for (Vertex v = 2; v <= n; ++v) {
    ++offsets[v + 1];
    ++offsets[parent_of[v] + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  list.resize(2 * (static_cast<std::size_t>(n) - 1));
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (Vertex v = 2; v <= n; ++v) {
    list[cursor[v]++] = parent_of[v];
    list[cursor[parent_of[v]]++] = v;
  }
}

}  // namespace rrt
