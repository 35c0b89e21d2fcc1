#ifndef NBRISK_SWEEP_HPP_
#define NBRISK_SWEEP_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nbrisk/models.hpp"

namespace nbrisk {

struct Estimate {
  double mean = 0.0;
  double sem = 0.0;  // standard error of the mean; 0 with fewer than 2 samples
  std::size_t count = 0;
};

Estimate estimate_of(std::span<const double> samples);

/// Seed of replicate `rep` of the (n, avg_degree) cell under `master`. Shared
/// by maps, point estimates and the boundary search so that the same cell
/// always sees the same networks.
std::uint64_t replicate_seed(std::uint64_t master, const ModelSpec& spec, std::size_t rep);

/// Mean and SEM of U_N over `reps` networks drawn from `spec` (whose own seed
/// is ignored in favour of replicate_seed(seed, spec, i)).
Estimate uniqueness_at(const ModelSpec& spec, std::size_t reps, std::uint64_t seed,
                       std::size_t jobs = 1);

/// U_N of replicates [first, first + count) at a given average degree.
std::vector<double> uniqueness_samples(const ModelSpec& spec, std::size_t first,
                                       std::size_t count, std::uint64_t seed, std::size_t jobs = 1);

struct MapCell {
  std::size_t n = 0;
  double avg_degree = 0.0;
  Estimate uniqueness;
  bool skipped = false;
  std::string skip_reason;
};

struct UniquenessMap {
  ModelSpec model;  // family and beta; n and avg_degree vary per cell
  std::vector<std::size_t> n_grid;
  std::vector<double> k_grid;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<MapCell> cells;  // n-major: cells[i * k_grid.size() + j]
};

/// Mean U_N over `reps` replicates for every (n, avg_degree) pair. Cells that
/// violate the model's parameter domain (e.g. avg_degree > n - 1) are marked
/// skipped instead of failing the whole map. Throws ParameterError for empty
/// grids or reps == 0.
UniquenessMap uniqueness_map(const ModelSpec& model, std::span<const std::size_t> n_grid,
                             std::span<const double> k_grid, std::size_t reps,
                             std::uint64_t seed, std::size_t jobs = 1);

/// Settings of the stochastic bisection for the U_N = target crossing.
struct SearchConfig {
  double target = 0.5;
  double confidence = 0.99;
  std::size_t batch = 5;
  std::size_t max_simulations = 30;
  double tolerance = 0.02;
  double k_lo = 1.0;
  double k_hi = 100.0;
  double min_width = 0.05;

  /// Throws ParameterError unless 0 < target < 1, 0 < confidence < 1,
  /// tolerance > 0, batch >= 2, max_simulations >= batch, k_lo < k_hi and
  /// min_width > 0.
  void validate() const;
};

enum class SearchOutcome {
  kWithinTolerance,   // |mean - target| <= tolerance
  kConfidentHit,      // target still inside the CI after max_simulations
  kIntervalExhausted  // interval narrower than min_width
};

std::string_view to_string(SearchOutcome outcome);

struct SearchStep {
  double avg_degree = 0.0;
  Estimate uniqueness;
  bool endpoint = false;
};

struct SearchResult {
  double k_star = 0.0;
  SearchOutcome outcome = SearchOutcome::kIntervalExhausted;
  double lo = 0.0;  // bracketing interval when the search stopped
  double hi = 0.0;
  std::vector<SearchStep> steps;
  std::size_t simulations = 0;

  /// Half-width of the final bracketing interval.
  double uncertainty() const { return 0.5 * (hi - lo); }
};

/// Draws `count` independent uniqueness samples at a given average degree.
/// `first` is the index of the first sample drawn at this degree, so a sampler
/// can derive per-sample seeds.
using UniquenessSampler =
    std::function<std::vector<double>(double avg_degree, std::size_t first, std::size_t count)>;

/// Stochastic binary search for the average degree where mean uniqueness
/// crosses config.target, assuming uniqueness grows with average degree on
/// [k_lo, k_hi].
///
/// Each evaluated degree gets batches of `batch` samples. After every batch:
/// a mean within `tolerance` of the target ends the search; a normal-theory
/// CI (mean +- z * SEM) that excludes the target sends the search left (mean
/// above target) or right (mean below); otherwise another batch is drawn, and
/// if the target is still inside the CI after max_simulations samples the
/// degree is accepted. The endpoints are evaluated first with one batch each.
/// Throws BracketingError when the endpoint means do not straddle the target.
SearchResult boundary_search(const UniquenessSampler& sampler, const SearchConfig& config);

/// boundary_search over networks from `model` at size n.
SearchResult boundary_search(const ModelSpec& model, std::size_t n, const SearchConfig& config,
                             std::uint64_t seed, std::size_t jobs = 1);

/// Least-squares fit of log(k*) = slope * log(n) + intercept.
struct BoundaryFit {
  std::vector<double> n;
  std::vector<double> k_star;
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
  std::vector<double> residuals;  // in log space, same order as the input
  double rms_residual = 0.0;
};

/// Requires at least 3 points with positive coordinates and at least two
/// distinct n values; throws ParameterError otherwise.
BoundaryFit fit_boundary_line(std::span<const double> n, std::span<const double> k_star);

}  // namespace nbrisk

#endif  // NBRISK_SWEEP_HPP_
