#include "nbrisk/er_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbrisk/error.hpp"

namespace nbrisk {

namespace {

void check(std::size_t n, double avg_degree) {
  if (n < 2) throw ParameterError("er: n must be at least 2");
  if (!(avg_degree >= 0.0) || avg_degree > static_cast<double>(n - 1)) {
    throw ParameterError("er: average degree must lie in [0, n - 1]");
  }
}

}  // namespace

std::vector<double> er_degree_distribution(std::size_t n, double avg_degree) {
  check(n, avg_degree);
  const std::size_t trials = n - 1;
  const double p = std::min(1.0, avg_degree / static_cast<double>(trials));
  std::vector<double> pk(n, 0.0);
  if (p == 0.0) {
    pk[0] = 1.0;
    return pk;
  }
  if (p == 1.0) {
    pk[trials] = 1.0;
    return pk;
  }
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double log_nf = std::lgamma(static_cast<double>(trials) + 1.0);
  for (std::size_t k = 0; k <= trials; ++k) {
    const double kk = static_cast<double>(k);
    const double log_binom =
        log_nf - std::lgamma(kk + 1.0) - std::lgamma(static_cast<double>(trials - k) + 1.0);
    pk[k] = std::exp(log_binom + kk * log_p + static_cast<double>(trials - k) * log_q);
  }
  return pk;
}

double er_degree_uniqueness(std::size_t n, double avg_degree) {
  const auto pk = er_degree_distribution(n, avg_degree);
  const double others = static_cast<double>(n - 1);
  double total = 0.0;
  for (double p : pk) {
    if (p <= 0.0 || p >= 1.0) continue;  // p = 1 contributes p * 0^(n-1) = 0
    total += p * std::exp(others * std::log1p(-p));
  }
  return total;
}

double er_nonempty_given_k(double p, std::size_t k) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("er: p must lie in [0, 1]");
  if (k < 2 || p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  const double pairs = static_cast<double>(k) * static_cast<double>(k - 1) / 2.0;
  return -std::expm1(pairs * std::log1p(-p));
}

double er_nonempty_fraction(std::size_t n, double avg_degree) {
  const auto pk = er_degree_distribution(n, avg_degree);
  const double p = std::min(1.0, avg_degree / static_cast<double>(n - 1));
  double total = 0.0;
  for (std::size_t k = 0; k < pk.size(); ++k) {
    if (pk[k] > 0.0) total += er_nonempty_given_k(p, k) * pk[k];
  }
  return total;
}

ErCurve er_curve(std::size_t n, std::span<const double> grid) {
  if (n < 2) throw ParameterError("er: n must be at least 2");
  std::vector<double> defaults;
  if (grid.empty()) {
    const std::size_t top = std::min<std::size_t>(100, n - 1);
    for (std::size_t k = 0; k <= top; ++k) defaults.push_back(static_cast<double>(k));
    grid = defaults;
  }
  ErCurve curve;
  curve.n = n;
  curve.points.reserve(grid.size());
  for (double k : grid) {
    curve.points.push_back({k, er_degree_uniqueness(n, k), er_nonempty_fraction(n, k)});
  }
  return curve;
}

}  // namespace nbrisk
