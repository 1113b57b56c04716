#include "rrt/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rrt {

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kLeafStrip: return "leafstrip";
    case Algorithm::kJordan: return "jordan";
    case Algorithm::kGreedy: return "greedy";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  if (name == "leafstrip") return Algorithm::kLeafStrip;
  if (name == "jordan") return Algorithm::kJordan;
  if (name == "greedy") return Algorithm::kGreedy;
  return std::nullopt;
}

int m_n(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("m_n: n must be >= 1");
  const double nd = static_cast<double>(n);
  const double value = std::exp(1.0) * std::log(nd) - 1.5 * std::log(std::log(nd + 1.0));
  return static_cast<int>(std::ceil(value));
}

std::uint32_t rk_rounds(std::uint64_t n, std::uint32_t k) {
  const int rounds = m_n(n) - static_cast<int>(k);
  return rounds > 0 ? static_cast<std::uint32_t>(rounds) : 0;
}

bool ConfidenceSet::contains(Vertex v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

PeelProfile peel_profile(const Adjacency& adj) {
  PeelProfile out;
  peel_profile(adj, out);
  return out;
}

void peel_profile(const Adjacency& adj, PeelProfile& out) {
  constexpr std::uint32_t kAlive = UINT32_MAX;
  const Vertex n = adj.n;
  out.removal_round.assign(static_cast<std::size_t>(n) + 1, kAlive);
  out.alive_after.clear();
  out.alive_after.push_back(n);

  std::vector<std::uint32_t> degree(n + 1);
  for (Vertex v = 1; v <= n; ++v) degree[v] = adj.degree(v);

  std::vector<Vertex> frontier;
  std::vector<Vertex> next;
  for (Vertex v = 1; v <= n; ++v) {
    if (degree[v] <= 1) frontier.push_back(v);
  }

  std::uint64_t alive = n;
  std::uint32_t round = 0;
  while (!frontier.empty()) {
    ++round;
    next.clear();
    for (Vertex v : frontier) {
      out.removal_round[v] = round;
      --alive;
    }
    for (Vertex v : frontier) {
      for (Vertex u : adj.neighbors(v)) {
        if (out.removal_round[u] != kAlive) continue;
        // u joins the next round's frontier the moment its degree drops to 1
        if (--degree[u] == 1) next.push_back(u);
      }
    }
    out.alive_after.push_back(alive);
    frontier.swap(next);
  }
  out.rounds_to_empty = round;
}

namespace {

ConfidenceSet survivors_from_profile(const PeelProfile& profile, Vertex n, std::uint32_t rounds) {
  ConfidenceSet set;
  set.rounds_performed = rounds;
  set.algorithm = Algorithm::kLeafStrip;
  set.vertices.reserve(profile.survivors(rounds));
  for (Vertex v = 1; v <= n; ++v) {
    if (profile.alive(v, rounds)) set.vertices.push_back(v);
  }
  return set;
}

}  // namespace

ConfidenceSet leaf_strip(const Adjacency& adj, std::uint32_t rounds) {
  // Peeling to exhaustion is O(n) total, so running past `rounds` costs
  // nothing extra on the trees we care about.
  const PeelProfile profile = peel_profile(adj);
  return survivors_from_profile(profile, adj.n, rounds);
}

ConfidenceSet leaf_strip(const UnrootedTree& t, std::uint32_t rounds) {
  return leaf_strip(Adjacency(t), rounds);
}

ConfidenceSet confidence_set_rk(const IncreasingTree& t, std::uint32_t k) {
  const Adjacency adj(t);
  return leaf_strip(adj, rk_rounds(t.n(), k));
}

bool root_captured_characterization(const IncreasingTree& t, std::uint32_t k) {
  const int rounds = m_n(t.n()) - static_cast<int>(k);
  if (rounds <= 0) return true;  // zero stripping rounds keep every vertex
  const auto sub_height = t.subtree_heights();
  const auto parent = t.parent_array();
  const std::uint32_t need = static_cast<std::uint32_t>(rounds) - 1;
  int qualifying = 0;
  for (Vertex v = 2; v <= t.n(); ++v) {
    if (parent[v] == 1 && sub_height[v] >= need && ++qualifying >= 2) return true;
  }
  return false;
}

std::vector<std::uint64_t> jordan_scores(const Adjacency& adj) {
  const Vertex n = adj.n;
  std::vector<std::uint64_t> score(n + 1, 0);
  if (n == 1) return score;

  // BFS orientation from vertex 1, then subtree sizes in reverse BFS order.
  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<Vertex> parent(n + 1, 0);
  std::vector<bool> seen(n + 1, false);
  order.push_back(1);
  seen[1] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex v = order[i];
    for (Vertex u : adj.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = true;
        parent[u] = v;
        order.push_back(u);
      }
    }
  }
  if (order.size() != n) throw std::invalid_argument("jordan_scores: tree is not connected");

  std::vector<std::uint64_t> size(n + 1, 1);
  for (std::size_t i = order.size(); i-- > 1;) size[parent[order[i]]] += size[order[i]];

  for (Vertex v = 1; v <= n; ++v) {
    std::uint64_t best = v == 1 ? 0 : static_cast<std::uint64_t>(n) - size[v];
    for (Vertex u : adj.neighbors(v)) {
      if (u != parent[v]) best = std::max(best, size[u]);
    }
    score[v] = best;
  }
  return score;
}

std::vector<std::uint64_t> jordan_scores(const UnrootedTree& t) {
  return jordan_scores(Adjacency(t));
}

ConfidenceSet jordan_confidence_set(const UnrootedTree& t, std::size_t size) {
  if (size < 1 || size > t.n) {
    throw std::out_of_range("jordan_confidence_set: size must be in [1, n]");
  }
  const auto score = jordan_scores(t);
  std::vector<Vertex> by_score(t.n);
  std::iota(by_score.begin(), by_score.end(), 1);
  std::sort(by_score.begin(), by_score.end(), [&](Vertex a, Vertex b) {
    return score[a] != score[b] ? score[a] < score[b] : a < b;
  });
  ConfidenceSet set;
  set.algorithm = Algorithm::kJordan;
  set.vertices.assign(by_score.begin(), by_score.begin() + size);
  std::sort(set.vertices.begin(), set.vertices.end());
  return set;
}

std::vector<Vertex> greedy_removal_order(const Adjacency& adj, std::uint64_t seed) {
  const Vertex n = adj.n;
  Rng rng(seed);
  std::vector<std::uint32_t> degree(n + 1);
  std::vector<Vertex> leaves;
  for (Vertex v = 1; v <= n; ++v) {
    degree[v] = adj.degree(v);
    if (degree[v] <= 1) leaves.push_back(v);
  }
  std::vector<bool> removed(n + 1, false);
  std::vector<Vertex> order;
  order.reserve(n > 0 ? n - 1 : 0);
  while (order.size() + 1 < n) {
    const std::size_t pick = static_cast<std::size_t>(rng.below(leaves.size()));
    const Vertex v = leaves[pick];
    leaves[pick] = leaves.back();
    leaves.pop_back();
    removed[v] = true;
    order.push_back(v);
    for (Vertex u : adj.neighbors(v)) {
      if (!removed[u] && --degree[u] == 1) leaves.push_back(u);
    }
  }
  return order;
}

ConfidenceSet greedy_likelihood_strip(const UnrootedTree& t, std::size_t survivors,
                                      std::uint64_t seed) {
  if (survivors < 1 || survivors > t.n) {
    throw std::out_of_range("greedy_likelihood_strip: survivors must be in [1, n]");
  }
  const Adjacency adj(t);
  const auto order = greedy_removal_order(adj, seed);
  std::vector<bool> removed(t.n + 1, false);
  for (std::size_t i = 0; i + survivors < t.n; ++i) removed[order[i]] = true;
  ConfidenceSet set;
  set.algorithm = Algorithm::kGreedy;
  for (Vertex v = 1; v <= t.n; ++v) {
    if (!removed[v]) set.vertices.push_back(v);
  }
  return set;
}

}  // namespace rrt
