#ifndef NBRISK_CERTIFICATE_HPP_
#define NBRISK_CERTIFICATE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nbrisk/graph.hpp"

namespace nbrisk {

/// Canonical byte encoding of a graph's isomorphism class: two graphs have
/// equal certificates exactly when they are isomorphic. The bytes depend only
/// on the isomorphism class, never on the input labeling, platform or run.
///
/// Layout (every integer is an unsigned LEB128 varint):
///   'E' n                edgeless graph on n nodes (n may be 0)
///   'M' n m              m disjoint edges plus n - 2m isolated nodes
///   'U' c (len bytes)*c  disconnected: the c component certificates,
///                        sorted bytewise
///   'C' cert             connected with disconnected complement: the
///                        certificate of the complement
///   'G' n bits           otherwise: upper triangle of the adjacency matrix
///                        under the lexicographically least labeling found by
///                        the canonical search, packed MSB first
class Certificate {
 public:
  Certificate() = default;
  explicit Certificate(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::size_t size() const noexcept { return bytes_.size(); }
  std::string hex() const;

  friend bool operator==(const Certificate&, const Certificate&) = default;
  friend std::strong_ordering operator<=>(const Certificate&, const Certificate&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

struct CertificateHash {
  std::size_t operator()(const Certificate& c) const noexcept;
};

/// Canonical certificate of g.
///
/// Graphs whose max degree is at most one are encoded directly. Otherwise the
/// graph is split into connected components (or, when connected, into the
/// components of its complement) and each piece is canonized recursively.
/// Pieces that are connected and co-connected go through individualization /
/// refinement: equitable colour refinement, branching on the first smallest
/// non-singleton cell, with children pruned when they are twins of an explored
/// vertex or lie in its orbit under automorphisms already discovered.
///
/// Cost: each search-tree node costs O(k^2) for a piece with k nodes (refinement
/// plus one adjacency-bitmatrix comparison per leaf); the number of tree nodes
/// is 1 + (k - 1) * (#leaves). Graphs whose symmetry comes from twins or
/// repeated components produce a single leaf; others produce at most one leaf
/// per automorphism-orbit representative on each level, with no worst-case
/// polynomial guarantee (as with any practical canonical labeling tool).
Certificate certificate(const Graph& g);

/// Largest graph accepted by are_isomorphic_oracle.
inline constexpr std::size_t kOracleMaxNodes = 10;

/// Brute-force isomorphism test: true iff some bijection of the nodes maps the
/// edge set of `a` exactly onto that of `b`. Compares node count, edge count
/// and sorted degree sequences first, then enumerates permutations.
/// Throws ParameterError when either graph has more than kOracleMaxNodes nodes.
bool are_isomorphic_oracle(const Graph& a, const Graph& b);

}  // namespace nbrisk

#endif  // NBRISK_CERTIFICATE_HPP_
