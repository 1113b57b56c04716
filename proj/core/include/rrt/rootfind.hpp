#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rrt/tree.hpp"

namespace rrt {

enum class Algorithm { kLeafStrip, kJordan, kGreedy };

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

// Round budget m_n = ceil(e ln n - (3/2) ln ln(n+1)), natural logs. This is
// the concentration point of the height of a uniform attachment tree.
int m_n(std::uint64_t n);

// Rounds used by R_k: max(m_n - k, 0).
std::uint32_t rk_rounds(std::uint64_t n, std::uint32_t k);

struct ConfidenceSet {
  std::vector<Vertex> vertices;  // sorted ascending
  std::uint32_t rounds_performed = 0;
  Algorithm algorithm = Algorithm::kLeafStrip;

  bool contains(Vertex v) const;
  std::size_t size() const { return vertices.size(); }
};

// Removal round of every vertex under repeated simultaneous removal of all
// degree <= 1 vertices (a 1- or 2-vertex tree empties in one round). Round
// numbers are 1-based; every vertex of a finite tree is eventually removed.
struct PeelProfile {
  std::vector<std::uint32_t> removal_round;  // index by vertex, [0] unused
  std::uint32_t rounds_to_empty = 0;
  std::vector<std::uint64_t> alive_after;  // alive_after[r] for r = 0..rounds_to_empty

  bool alive(Vertex v, std::uint32_t rounds) const { return removal_round[v] > rounds; }
  std::uint64_t survivors(std::uint32_t rounds) const {
    return rounds < alive_after.size() ? alive_after[rounds] : 0;
  }
};

PeelProfile peel_profile(const Adjacency& adj);
void peel_profile(const Adjacency& adj, PeelProfile& out);  // reuses buffers

// Algorithm core: `rounds` simultaneous leaf-removal passes on the unrooted
// shape; survivors form the set (possibly empty).
ConfidenceSet leaf_strip(const UnrootedTree& t, std::uint32_t rounds);
ConfidenceSet leaf_strip(const Adjacency& adj, std::uint32_t rounds);

// R_k(t): leaf stripping for max(m_n - k, 0) rounds.
ConfidenceSet confidence_set_rk(const IncreasingTree& t, std::uint32_t k);

// Root-capture characterization: with r = m_n - k >= 1, vertex 1 survives
// if and only if it has at least two children whose subtrees have height
// >= r - 1 (two edge-disjoint paths of length >= r). For r <= 0 the full
// vertex set survives and the result is true.
bool root_captured_characterization(const IncreasingTree& t, std::uint32_t k);

// Jordan centrality: score(v) = size of the largest component of t - v.
// Computed in O(n) from rooted subtree sizes. Index 0 unused. Ranking by
// this score is known to give root confidence sets of size
// (11/eps) log(1/eps) at error eps on uniform attachment trees; treated
// here as a baseline, not a calibrated bound.
std::vector<std::uint64_t> jordan_scores(const UnrootedTree& t);
std::vector<std::uint64_t> jordan_scores(const Adjacency& adj);

// The `size` vertices of smallest Jordan score; ties broken by smaller label.
ConfidenceSet jordan_confidence_set(const UnrootedTree& t, std::size_t size);

// Deletes one uniformly random current leaf (degree <= 1) at a time until
// exactly `survivors` vertices remain.
ConfidenceSet greedy_likelihood_strip(const UnrootedTree& t, std::size_t survivors,
                                      std::uint64_t seed);

// Full greedy deletion sequence down to a single survivor; prefixes agree
// with greedy_likelihood_strip at every intermediate size for the same seed.
std::vector<Vertex> greedy_removal_order(const Adjacency& adj, std::uint64_t seed);

}  // namespace rrt
