#ifndef NBRISK_UNIQUENESS_HPP_
#define NBRISK_UNIQUENESS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "nbrisk/certificate.hpp"
#include "nbrisk/graph.hpp"

namespace nbrisk {

// Per-degree breakdown of non-empty neighborhoods.
struct DegreeNonempty {
  std::size_t nodes = 0;     // nodes with this degree
  std::size_t nonempty = 0;  // of those, nodes in at least one triangle
  double fraction() const { return nodes ? static_cast<double>(nonempty) / static_cast<double>(nodes) : 0.0; }
};

struct UniquenessReport {
  std::vector<std::size_t> occurrence;  // occurrence[v] >= 1, counts v itself
  std::size_t classes = 0;              // number of neighborhood isomorphism classes
  double neighborhood_uniqueness = 0.0;  // U_N
  double degree_uniqueness = 0.0;        // U_k
  double nonempty_fraction = 0.0;        // N_delta
  std::map<std::size_t, DegreeNonempty> nonempty_by_degree;  // observed degrees only
};

/// Certificate of every node's neighborhood. Computed on up to `jobs`
/// threads (0 = default_jobs()); the result does not depend on `jobs`.
std::vector<Certificate> neighborhood_certificates(const Graph& g, std::size_t jobs = 1);

/// Size of each node's neighborhood-isomorphism class.
std::vector<std::size_t> occurrence_frequencies(const Graph& g, std::size_t jobs = 1);

/// Fraction of nodes whose neighborhood is isomorphic to no other node's.
/// 0 for the empty graph.
double neighborhood_uniqueness(const Graph& g, std::size_t jobs = 1);

/// Fraction of nodes whose degree value occurs exactly once.
double degree_uniqueness(const Graph& g);

struct NonemptyStats {
  double fraction = 0.0;
  std::map<std::size_t, DegreeNonempty> by_degree;
};

/// Fraction of nodes whose neighborhood holds at least one edge, overall and
/// per observed degree.
NonemptyStats nonempty_fraction(const Graph& g);

/// Everything above in one pass over the neighborhoods.
UniquenessReport uniqueness_report(const Graph& g, std::size_t jobs = 1);

}  // namespace nbrisk

#endif  // NBRISK_UNIQUENESS_HPP_
