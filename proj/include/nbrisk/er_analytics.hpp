#ifndef NBRISK_ER_ANALYTICS_HPP_
#define NBRISK_ER_ANALYTICS_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace nbrisk {

// Closed-form expectations for G(n, p) with p = avg_degree / (n - 1).
// Every function taking (n, avg_degree) requires n >= 2 and
// 0 <= avg_degree <= n - 1, and throws ParameterError otherwise.

/// Binomial(n - 1, p) degree distribution, p_0 .. p_{n-1}, evaluated through
/// log-gamma so that n in the tens of thousands stays finite.
std::vector<double> er_degree_distribution(std::size_t n, double avg_degree);

/// Expected degree uniqueness: sum_k p_k (1 - p_k)^(n - 1).
double er_degree_uniqueness(std::size_t n, double avg_degree);

/// Probability that the neighborhood of a degree-k node holds at least one
/// edge: 1 - (1 - p)^(k (k - 1) / 2). Requires p in [0, 1].
double er_nonempty_given_k(double p, std::size_t k);

/// Expected fraction of non-empty neighborhoods: sum_k N(k) p_k.
double er_nonempty_fraction(std::size_t n, double avg_degree);

struct ErCurvePoint {
  double avg_degree = 0.0;
  double degree_uniqueness = 0.0;
  double nonempty_fraction = 0.0;
};

struct ErCurve {
  std::size_t n = 0;
  std::vector<ErCurvePoint> points;
};

/// Evaluates both expectations on a grid of average degrees. An empty grid
/// means the integers 0 .. min(100, n - 1).
ErCurve er_curve(std::size_t n, std::span<const double> grid = {});

}  // namespace nbrisk

#endif  // NBRISK_ER_ANALYTICS_HPP_
