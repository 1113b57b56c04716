#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "rrt/rng.hpp"

namespace rrt {

using Vertex = std::uint32_t;

// Unrooted tree on labels {1..n}, kept as a plain edge list.
struct UnrootedTree {
  Vertex n = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
};

// Rooted labelled tree on {1..n} whose labels increase along every
// root-to-leaf path; vertex 1 is the root. Stored as a parent array, which
// makes the increasing property (parent(v) < v) also certify connectivity.
// Immutable after construction; safe to share across threads.
class IncreasingTree {
 public:
  // parent_of is indexed by vertex label; slots 0 and 1 are ignored.
  // n() == parent_of.size() - 1.
  explicit IncreasingTree(std::vector<Vertex> parent_of);

  static IncreasingTree single_vertex();

  Vertex n() const noexcept { return static_cast<Vertex>(parent_.size() - 1); }
  Vertex parent(Vertex v) const;
  std::span<const Vertex> parent_array() const noexcept { return parent_; }

  // depth[v] = distance from the root; depth[1] = 0. Index 0 unused.
  std::vector<std::uint32_t> depths() const;
  std::uint32_t height() const;

  // size[v] = |t^{v, down}| counting v itself. Index 0 unused.
  std::vector<Vertex> subtree_sizes() const;
  Vertex subtree_size(Vertex v) const;

  // height of the subtree rooted at each vertex (0 for leaves). Index 0 unused.
  std::vector<std::uint32_t> subtree_heights() const;

  std::vector<Vertex> children_of(Vertex v) const;  // ascending labels

  UnrootedTree as_unrooted() const;

  bool operator==(const IncreasingTree& other) const = default;

 private:
  std::vector<Vertex> parent_;  // parent_[0] = parent_[1] = 0
};

// Uniform attachment: vertex i+1 picks its parent uniformly from {1..i}.
// Identical (n, seed) pairs produce bit-identical trees.
IncreasingTree generate_rrt(Vertex n, std::uint64_t seed);

// Allocation-free variant for hot loops: fills parent_of (resized to n+1).
void generate_rrt_parents(Vertex n, std::uint64_t seed, std::vector<Vertex>& parent_of);

// The tree cut at the edge {1, 2}: `lower` is vertex 2 and its descendants,
// `upper` is the rest (containing vertex 1). Original labels, both sorted.
struct TreeSplit {
  std::vector<Vertex> upper;
  std::vector<Vertex> lower;
};
TreeSplit split_at_two(const IncreasingTree& t);

// |t^{2, down}| without materialising the split.
Vertex lower_split_size(const IncreasingTree& t);
Vertex lower_split_size(std::span<const Vertex> parent_of);

// Height straight from a parent array (size n + 1); scratch is resized.
std::uint32_t tree_height(std::span<const Vertex> parent_of,
                          std::vector<std::uint32_t>& depth_scratch);

// Image of t under a relabeling sigma (sigma[v] indexed 1..n, a bijection).
// The result is unrooted: relabeling does not preserve increasingness.
UnrootedTree permute_labels(const IncreasingTree& t, const std::vector<Vertex>& sigma);

// --- exact enumeration -----------------------------------------------------

// Increasing trees on [n] are exactly the parent-choice vectors with
// parent(v) in {1..v-1}; there are (n-1)! of them. Enumeration is
// lexicographic over (parent(2), ..., parent(n)).
inline constexpr Vertex kMaxEnumerationN = 10;

std::uint64_t increasing_tree_count(Vertex n);
void for_each_increasing_tree(Vertex n, const std::function<void(const IncreasingTree&)>& fn);
std::vector<IncreasingTree> all_increasing_trees(Vertex n);

// --- adjacency -------------------------------------------------------------

// CSR adjacency over 1-based labels. Buffers are reusable via assign().
struct Adjacency {
  std::vector<std::uint32_t> offsets;  // size n + 2
  std::vector<Vertex> list;            // size 2 * (n - 1)
  Vertex n = 0;

  Adjacency() = default;
  explicit Adjacency(const UnrootedTree& t) { assign(t); }
  explicit Adjacency(const IncreasingTree& t) { assign(t); }

  void assign(const UnrootedTree& t);
  void assign(const IncreasingTree& t) { assign(t.parent_array()); }
  void assign(std::span<const Vertex> parent_of);  // increasing-tree parent array

  std::span<const Vertex> neighbors(Vertex v) const {
    return {list.data() + offsets[v], list.data() + offsets[v + 1]};
  }
  std::uint32_t degree(Vertex v) const { return offsets[v + 1] - offsets[v]; }
};

}  // namespace rrt
