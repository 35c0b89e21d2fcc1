#include "nbrisk/sweep.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>

#include "nbrisk/error.hpp"
#include "nbrisk/parallel.hpp"
#include "nbrisk/rng.hpp"
#include "nbrisk/uniqueness.hpp"

namespace nbrisk {

Estimate estimate_of(std::span<const double> samples) {
  Estimate e;
  e.count = samples.size();
  if (samples.empty()) return e;
  e.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(e.count);
  if (e.count > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - e.mean) * (x - e.mean);
    e.sem = std::sqrt(ss / static_cast<double>(e.count - 1) / static_cast<double>(e.count));
  }
  return e;
}

std::uint64_t replicate_seed(std::uint64_t master, const ModelSpec& spec, std::size_t rep) {
  return derive_seed(master, {static_cast<std::uint64_t>(spec.family),
                              double_bits(spec.beta.value_or(-1.0)), spec.n,
                              double_bits(spec.avg_degree), rep});
}

std::vector<double> uniqueness_samples(const ModelSpec& spec, std::size_t first,
                                       std::size_t count, std::uint64_t seed, std::size_t jobs) {
  spec.validate();
  std::vector<double> out(count);
  parallel_for(count, jobs, [&](std::size_t i) {
    ModelSpec replicate = spec;
    replicate.seed = replicate_seed(seed, spec, first + i);
    out[i] = neighborhood_uniqueness(generate(replicate));
  });
  return out;
}

Estimate uniqueness_at(const ModelSpec& spec, std::size_t reps, std::uint64_t seed,
                       std::size_t jobs) {
  if (reps == 0) throw ParameterError("reps must be at least 1");
  const auto samples = uniqueness_samples(spec, 0, reps, seed, jobs);
  return estimate_of(samples);
}

UniquenessMap uniqueness_map(const ModelSpec& model, std::span<const std::size_t> n_grid,
                             std::span<const double> k_grid, std::size_t reps,
                             std::uint64_t seed, std::size_t jobs) {
  if (n_grid.empty() || k_grid.empty()) throw ParameterError("map grids must be non-empty");
  if (reps == 0) throw ParameterError("reps must be at least 1");

  UniquenessMap map;
  map.model = model;
  map.n_grid.assign(n_grid.begin(), n_grid.end());
  map.k_grid.assign(k_grid.begin(), k_grid.end());
  map.reps = reps;
  map.seed = seed;
  map.cells.resize(n_grid.size() * k_grid.size());

  std::vector<ModelSpec> specs(map.cells.size(), model);
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
      const std::size_t c = i * k_grid.size() + j;
      MapCell& cell = map.cells[c];
      cell.n = n_grid[i];
      cell.avg_degree = k_grid[j];
      specs[c].n = n_grid[i];
      specs[c].avg_degree = k_grid[j];
      try {
        specs[c].validate();
        if (model.family == ModelFamily::kWattsStrogatz &&
            ws_lattice_degree(k_grid[j]) >= n_grid[i]) {
          throw ParameterError("ws lattice degree must be below n");
        }
        if (model.family == ModelFamily::kGeometric) rgg_radius(n_grid[i], k_grid[j]);
        live.push_back(c);
      } catch (const ParameterError& e) {
        cell.skipped = true;
        cell.skip_reason = e.what();
      }
    }
  }

  std::vector<double> values(live.size() * reps);
  parallel_for(values.size(), jobs, [&](std::size_t t) {
    ModelSpec replicate = specs[live[t / reps]];
    replicate.seed = replicate_seed(seed, replicate, t % reps);
    values[t] = neighborhood_uniqueness(generate(replicate));
  });
  for (std::size_t l = 0; l < live.size(); ++l) {
    map.cells[live[l]].uniqueness =
        estimate_of(std::span<const double>(values).subspan(l * reps, reps));
  }
  return map;
}

void SearchConfig::validate() const {
  if (!(target > 0.0 && target < 1.0)) throw ParameterError("search target must lie in (0, 1)");
  if (!(confidence > 0.0 && confidence < 1.0)) throw ParameterError("confidence must lie in (0, 1)");
  if (!(tolerance > 0.0)) throw ParameterError("tolerance must be positive");
  if (batch < 2) throw ParameterError("batch must be at least 2");
  if (max_simulations < batch) throw ParameterError("max simulations must be at least one batch");
  if (!(k_lo < k_hi)) throw ParameterError("search interval must satisfy k_lo < k_hi");
  if (!(min_width > 0.0)) throw ParameterError("minimum interval width must be positive");
}

std::string_view to_string(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::kWithinTolerance:
      return "within_tolerance";
    case SearchOutcome::kConfidentHit:
      return "confident_hit";
    case SearchOutcome::kIntervalExhausted:
      return "interval_exhausted";
  }
  return "?";
}

namespace {

enum class Verdict { kHit, kConfident, kAbove, kBelow };

struct PointEvaluation {
  Verdict verdict;
  Estimate estimate;
};

}  // namespace

SearchResult boundary_search(const UniquenessSampler& sampler, const SearchConfig& config) {
  config.validate();
  const double z = boost::math::quantile(boost::math::normal(), 0.5 + config.confidence / 2.0);
  SearchResult result;

  auto draw = [&](double k, std::vector<double>& samples, std::size_t count) {
    auto batch = sampler(k, samples.size(), count);
    samples.insert(samples.end(), batch.begin(), batch.end());
    result.simulations += batch.size();
  };
  auto side = [&](const Estimate& e) { return e.mean > config.target ? Verdict::kAbove : Verdict::kBelow; };

  auto evaluate = [&](double k, bool endpoint) {
    std::vector<double> samples;
    PointEvaluation out{};
    for (;;) {
      draw(k, samples, std::min(config.batch, config.max_simulations - samples.size()));
      out.estimate = estimate_of(samples);
      const double gap = std::abs(out.estimate.mean - config.target);
      if (gap <= config.tolerance) {
        out.verdict = Verdict::kHit;
        break;
      }
      if (endpoint || gap > z * out.estimate.sem) {
        out.verdict = side(out.estimate);
        break;
      }
      if (samples.size() >= config.max_simulations) {
        out.verdict = Verdict::kConfident;
        break;
      }
    }
    result.steps.push_back({k, out.estimate, endpoint});
    return out;
  };

  double lo = config.k_lo;
  double hi = config.k_hi;
  auto finish = [&](double k, SearchOutcome outcome) {
    result.k_star = k;
    result.outcome = outcome;
    result.lo = lo;
    result.hi = hi;
    return result;
  };

  const auto at_lo = evaluate(lo, true);
  if (at_lo.verdict == Verdict::kHit) return finish(lo, SearchOutcome::kWithinTolerance);
  const auto at_hi = evaluate(hi, true);
  if (at_hi.verdict == Verdict::kHit) return finish(hi, SearchOutcome::kWithinTolerance);
  if (at_lo.verdict != Verdict::kBelow || at_hi.verdict != Verdict::kAbove) {
    throw BracketingError("interval [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "] does not bracket uniqueness " + std::to_string(config.target) +
                          " (endpoint means " + std::to_string(at_lo.estimate.mean) + ", " +
                          std::to_string(at_hi.estimate.mean) + ")");
  }

  while (hi - lo >= config.min_width) {
    const double mid = 0.5 * (lo + hi);
    const auto at_mid = evaluate(mid, false);
    switch (at_mid.verdict) {
      case Verdict::kHit:
        return finish(mid, SearchOutcome::kWithinTolerance);
      case Verdict::kConfident:
        return finish(mid, SearchOutcome::kConfidentHit);
      case Verdict::kAbove:
        hi = mid;
        break;
      case Verdict::kBelow:
        lo = mid;
        break;
    }
  }
  return finish(0.5 * (lo + hi), SearchOutcome::kIntervalExhausted);
}

SearchResult boundary_search(const ModelSpec& model, std::size_t n, const SearchConfig& config,
                             std::uint64_t seed, std::size_t jobs) {
  auto sampler = [&](double k, std::size_t first, std::size_t count) {
    ModelSpec spec = model;
    spec.n = n;
    spec.avg_degree = k;
    return uniqueness_samples(spec, first, count, seed, jobs);
  };
  return boundary_search(sampler, config);
}

BoundaryFit fit_boundary_line(std::span<const double> n, std::span<const double> k_star) {
  if (n.size() != k_star.size()) throw ParameterError("fit: coordinate lists differ in length");
  if (n.size() < 3) throw ParameterError("fit: at least 3 points are required");
  BoundaryFit fit;
  fit.n.assign(n.begin(), n.end());
  fit.k_star.assign(k_star.begin(), k_star.end());
  const std::size_t count = n.size();
  std::vector<double> x(count), y(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(n[i] > 0.0) || !(k_star[i] > 0.0)) throw ParameterError("fit: points must be positive");
    x[i] = std::log(n[i]);
    y[i] = std::log(k_star[i]);
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(count);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(count);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ParameterError("fit: needs at least two distinct sizes");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;

  double rss = 0.0;
  fit.residuals.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    fit.residuals[i] = y[i] - (fit.slope * x[i] + fit.intercept);
    rss += fit.residuals[i] * fit.residuals[i];
  }
  fit.rms_residual = std::sqrt(rss / static_cast<double>(count));
  const double sigma2 = rss / static_cast<double>(count - 2);
  fit.slope_se = std::sqrt(sigma2 / sxx);
  fit.intercept_se = std::sqrt(sigma2 * (1.0 / static_cast<double>(count) + mx * mx / sxx));
  return fit;
}

}  // namespace nbrisk
