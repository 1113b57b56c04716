#include "rrt/ulam.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "rrt/rootfind.hpp"

namespace rrt {

std::uint32_t UlamNode::zone() const {
  std::uint32_t z = 0;
  for (std::uint32_t d : digits) z += d;
  return z;
}

UlamNode UlamNode::parent() const {
  if (is_root()) throw std::logic_error("UlamNode::parent: root has no parent");
  UlamNode p{digits};
  p.digits.pop_back();
  return p;
}

std::string UlamNode::to_string() const {
  if (is_root()) return "-";
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(digits[i]);
  }
  return out;
}

std::size_t UlamNodeHash::operator()(const UlamNode& u) const noexcept {
  // FNV-1a over the digit words
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (std::uint32_t d : u.digits) {
    h ^= d;
    h *= 0x100000001B3ull;
  }
  return static_cast<std::size_t>(h);
}

BitString BitString::from_string(std::string_view bits) {
  BitString b;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("BitString: expected '0'/'1'");
    b.push_back(c == '1');
  }
  return b;
}

void BitString::push_back(bool bit) {
  if (len_ >= kCapacity) {
    throw std::length_error("BitString: code longer than " + std::to_string(kCapacity) +
                            " bits (vertex zone too large)");
  }
  if (bit) words_[len_ >> 6] |= std::uint64_t{1} << (len_ & 63);
  ++len_;
}

std::string BitString::to_string() const {
  std::string out(len_, '0');
  for (std::uint32_t i = 0; i < len_; ++i) {
    if (bit(i)) out[i] = '1';
  }
  return out;
}

BitString ell(const UlamNode& u) {
  BitString b;
  for (std::uint32_t d : u.digits) {
    b.push_back(true);
    for (std::uint32_t i = 1; i < d; ++i) b.push_back(false);
  }
  return b;
}

UlamNode ell_inv(const BitString& b) {
  UlamNode u;
  if (b.empty()) return u;
  if (!b.bit(0)) {
    throw std::invalid_argument("ell_inv: malformed code, must start with a 1 bit");
  }
  for (std::uint32_t i = 0; i < b.size(); ++i) {
    if (b.bit(i)) {
      u.digits.push_back(1);
    } else {
      ++u.digits.back();
    }
  }
  return u;
}

BitString flip_f(std::uint32_t j, BitString b) {
  if (j < 2) throw std::invalid_argument("flip_f: j must be >= 2");
  const std::uint32_t upto = std::min(j, b.size());
  for (std::uint32_t pos = 2; pos <= upto; ++pos) b.flip_bit(pos - 1);
  return b;
}

Embedding::Embedding(const IncreasingTree& t) {
  const Vertex n = t.n();
  const auto parent = t.parent_array();
  nodes_.resize(static_cast<std::size_t>(n) + 1);
  std::vector<std::uint32_t> child_count(n + 1, 0);
  for (Vertex v = 2; v <= n; ++v) {
    const Vertex p = parent[v];
    nodes_[v].digits = nodes_[p].digits;
    nodes_[v].digits.push_back(++child_count[p]);
  }
}

namespace {

struct FlippedTree {
  IncreasingTree tree;
  std::vector<UlamNode> phibar;  // index 1..n
};

FlippedTree flip_embedding(const IncreasingTree& t, std::uint32_t j) {
  const Vertex n = t.n();
  const Embedding phi(t);
  std::vector<UlamNode> bar(static_cast<std::size_t>(n) + 1);
  std::unordered_map<UlamNode, Vertex, UlamNodeHash> label_at;
  label_at.reserve(n);
  for (Vertex v = 1; v <= n; ++v) {
    bar[v] = ell_inv(flip_f(j, ell(phi.node(v))));
    label_at.emplace(bar[v], v);
  }
  std::vector<Vertex> parent_of(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 2; v <= n; ++v) {
    const auto it = label_at.find(bar[v].parent());
    if (it == label_at.end() || it->second >= v) {
      throw std::logic_error("flip_tree: flipped embedding does not encode an increasing tree");
    }
    parent_of[v] = it->second;
  }
  return {IncreasingTree(std::move(parent_of)), std::move(bar)};
}

}  // namespace

IncreasingTree flip_tree(const IncreasingTree& t, std::uint32_t j) {
  return flip_embedding(t, j).tree;
}

std::vector<Vertex> tall_subtree_set(const IncreasingTree& t, const Embedding& phi,
                                     std::uint32_t zone_target, std::uint32_t height_threshold) {
  const auto sub_height = t.subtree_heights();
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= t.n(); ++v) {
    if (phi.zone_of(v) == zone_target && sub_height[v] >= height_threshold) out.push_back(v);
  }
  return out;
}

FlipPropertyReport verify_flip_properties(const IncreasingTree& t, std::uint32_t k,
                                          std::uint32_t height_threshold) {
  if (k < 1) throw std::invalid_argument("verify_flip_properties: k must be >= 1");
  const std::uint32_t j = 4 * k;
  const Vertex n = t.n();
  const Embedding phi(t);
  const auto [tbar, phibar] = flip_embedding(t, j);

  FlipPropertyReport report;

  // (i) zones are preserved
  std::vector<std::uint32_t> zone(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 1; v <= n; ++v) {
    zone[v] = phi.zone_of(v);
    if (phibar[v].zone() != zone[v] && !report.zone_witness) {
      report.zones_preserved = false;
      report.zone_witness = v;
    }
  }

  // (iii) heights reflect inside the flipped zones: ht + htbar = z + 1
  for (Vertex v = 1; v <= n; ++v) {
    const std::uint32_t z = zone[v];
    if (z >= 1 && z <= j && phi.node(v).depth() + phibar[v].depth() != z + 1) {
      report.heights_reflect = false;
      report.height_witness = v;
      break;
    }
  }

  // (ii) subtrees of zone-4k vertices are preserved. Zones strictly increase
  // along root paths, so each vertex has at most one zone-4k ancestor-or-self;
  // subtree preservation for all of them at once is equivalent to equal
  // anchors plus equal parents strictly below an anchor.
  const auto parent_t = t.parent_array();
  const auto parent_b = tbar.parent_array();
  std::vector<Vertex> anchor_t(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Vertex> anchor_b(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 2; v <= n; ++v) {
    anchor_t[v] = zone[v] == j ? v : anchor_t[parent_t[v]];
    anchor_b[v] = phibar[v].zone() == j ? v : anchor_b[parent_b[v]];
  }
  for (Vertex v = 2; v <= n; ++v) {
    const bool same_anchor = anchor_t[v] == anchor_b[v];
    const bool below = anchor_t[v] != 0 && anchor_t[v] != v;
    if (!same_anchor || (below && parent_t[v] != parent_b[v])) {
      report.subtrees_preserved = false;
      report.subtree_witness = v;
      break;
    }
  }

  // S = Sbar at the given height threshold
  const auto s_t = tall_subtree_set(t, phi, j, height_threshold);
  const auto bar_height = tbar.subtree_heights();
  std::vector<Vertex> s_b;
  for (Vertex v = 1; v <= n; ++v) {
    if (phibar[v].zone() == j && bar_height[v] >= height_threshold) s_b.push_back(v);
  }
  report.s_set_preserved = s_t == s_b;

  return report;
}

FlipPropertyReport verify_flip_properties(const IncreasingTree& t, std::uint32_t k) {
  const int rounds = m_n(t.n()) - static_cast<int>(k);
  return verify_flip_properties(t, k, rounds > 0 ? static_cast<std::uint32_t>(rounds) : 0);
}

}  // namespace rrt
