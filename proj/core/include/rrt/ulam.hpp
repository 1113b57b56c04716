#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rrt/tree.hpp"

namespace rrt {

// Address of a node of the Ulam-Harris tree: a finite sequence of positive
// integers, the empty sequence being the root. The zone of a node is its
// digit sum; zone z contains 2^(z-1) nodes.
struct UlamNode {
  std::vector<std::uint32_t> digits;

  std::uint32_t zone() const;
  std::uint32_t depth() const { return static_cast<std::uint32_t>(digits.size()); }
  bool is_root() const { return digits.empty(); }
  UlamNode parent() const;  // throws on the root

  bool operator==(const UlamNode&) const = default;
  auto operator<=>(const UlamNode&) const = default;
  std::string to_string() const;  // digits joined by '.'; "-" for the root
};

struct UlamNodeHash {
  std::size_t operator()(const UlamNode& u) const noexcept;
};

// Packed binary word with explicit length. Child-sibling codes of zone z have
// exactly z bits, and zones stay small for the trees this library handles, so
// storage is fixed-width; exceeding it throws std::length_error.
class BitString {
 public:
  static constexpr std::uint32_t kCapacity = 512;

  BitString() = default;
  static BitString from_string(std::string_view bits);  // characters '0'/'1'

  void push_back(bool bit);
  bool bit(std::uint32_t pos) const { return (words_[pos >> 6] >> (pos & 63)) & 1; }  // 0-based
  void flip_bit(std::uint32_t pos) { words_[pos >> 6] ^= std::uint64_t{1} << (pos & 63); }
  std::uint32_t size() const { return len_; }
  bool empty() const { return len_ == 0; }
  std::string to_string() const;

  bool operator==(const BitString&) const = default;

 private:
  std::array<std::uint64_t, kCapacity / 64> words_{};
  std::uint32_t len_ = 0;
};

// Child-sibling bijection: ell(n1...nj) = 1 0^(n1-1) 1 0^(n2-1) ... 1 0^(nj-1).
// |ell(u)| = zone(u) and the number of 1-bits is depth(u).
BitString ell(const UlamNode& u);

// Inverse of ell. The empty string maps to the root; any other code must
// start with a 1 bit, otherwise std::invalid_argument is thrown.
UlamNode ell_inv(const BitString& b);

// Flipping involution f_j (j >= 2): keeps bit 1, complements bit positions
// 2..min(j, |b|) (1-based), leaves positions > j unchanged.
BitString flip_f(std::uint32_t j, BitString b);

// The canonical embedding phi of an increasing tree into the Ulam-Harris
// tree: the root maps to the empty address, and the children of each vertex
// occupy child slots 1, 2, ... of their parent's image in increasing label
// order. This preserves parent relations and depths, and left siblings
// always carry smaller labels.
class Embedding {
 public:
  explicit Embedding(const IncreasingTree& t);

  Vertex n() const { return static_cast<Vertex>(nodes_.size() - 1); }
  const UlamNode& node(Vertex v) const { return nodes_[v]; }
  const std::vector<UlamNode>& nodes() const { return nodes_; }  // index 1..n
  std::uint32_t zone_of(Vertex v) const { return nodes_[v].zone(); }

 private:
  std::vector<UlamNode> nodes_;
};

inline Embedding embed_phi(const IncreasingTree& t) { return Embedding(t); }

// The tree involution b = ell^-1 . f_j . ell applied vertex-wise to phi;
// returns the increasing tree the flipped embedding encodes. Applying it
// twice with the same j is the identity.
IncreasingTree flip_tree(const IncreasingTree& t, std::uint32_t j);

// S(t; z*, h*) = vertices in zone z* whose subtree height is >= h*.
std::vector<Vertex> tall_subtree_set(const IncreasingTree& t, const Embedding& phi,
                                     std::uint32_t zone_target, std::uint32_t height_threshold);

// Checks, with j = 4k, that the flip (i) preserves all zones, (ii) preserves
// the subtree of every zone-4k vertex along with the set S, and (iii)
// reflects heights inside the flipped zones: ht(phi(v)) + ht(phibar(v)) =
// zone + 1 whenever 1 <= zone <= 4k.
struct FlipPropertyReport {
  bool zones_preserved = true;
  bool subtrees_preserved = true;
  bool s_set_preserved = true;
  bool heights_reflect = true;
  std::optional<Vertex> zone_witness;
  std::optional<Vertex> subtree_witness;
  std::optional<Vertex> height_witness;

  bool passed() const {
    return zones_preserved && subtrees_preserved && s_set_preserved && heights_reflect;
  }
};

// height_threshold parameterizes S; the leaf-stripping budget m_n - k
// is the canonical choice.
FlipPropertyReport verify_flip_properties(const IncreasingTree& t, std::uint32_t k,
                                          std::uint32_t height_threshold);
FlipPropertyReport verify_flip_properties(const IncreasingTree& t, std::uint32_t k);

}  // namespace rrt
