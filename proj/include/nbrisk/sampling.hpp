#ifndef NBRISK_SAMPLING_HPP_
#define NBRISK_SAMPLING_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "nbrisk/graph.hpp"
#include "nbrisk/sweep.hpp"

namespace nbrisk {

enum class SamplingMode {
  kBernoulli,   // every edge kept independently with probability s
  kExactCount,  // a uniform subset of exactly round(s * m) edges
};

std::string_view to_string(SamplingMode mode);
/// "bernoulli" or "exact-count"; throws ParameterError otherwise.
SamplingMode parse_sampling_mode(std::string_view name);

struct SamplingPlan {
  double rate = 1.0;  // in (0, 1]
  SamplingMode mode = SamplingMode::kBernoulli;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Uniform edge sampling. The node set is always preserved; nodes that lose
/// all their edges stay as isolated nodes. rate == 1 returns g unchanged.
Graph sample_edges(const Graph& g, const SamplingPlan& plan);

/// Unbiased degree estimate k_s / s under independent edge retention.
double estimate_degree(double observed_degree, double rate);

/// Unbiased triangle-count estimate t_s / s^3 under independent edge retention.
/// (In exact-count mode the estimator carries an O(1/m) bias.)
double estimate_triangles(double observed_triangles, double rate);

struct SamplingRow {
  double rate = 1.0;
  std::size_t trials = 0;
  Estimate avg_degree;      // post-sampling <k>
  Estimate uniqueness;      // post-sampling U_N
  Estimate degree_error;    // mean over nodes of |k_i - k_i_hat|
  Estimate triangle_error;  // |triangles - triangles_hat|
};

struct SamplingReport {
  double original_avg_degree = 0.0;
  double original_uniqueness = 0.0;
  std::uint64_t original_triangles = 0;
  std::vector<SamplingRow> rows;  // ordered by decreasing rate
};

/// Rates used when the caller gives none: 1.0, 0.9, ..., 0.1.
std::vector<double> default_sampling_rates();

/// Samples g at every rate (`trials` independent samples per rate, seeds
/// derived from `seed`, the rate and the trial index) and records average
/// degree, U_N and the absolute errors of both estimators.
SamplingReport sampling_report(const Graph& g, std::span<const double> rates, std::uint64_t seed,
                               SamplingMode mode = SamplingMode::kBernoulli,
                               std::size_t trials = 1, std::size_t jobs = 1);

}  // namespace nbrisk

#endif  // NBRISK_SAMPLING_HPP_
