#include "nbrisk/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbrisk/error.hpp"
#include "nbrisk/parallel.hpp"
#include "nbrisk/rng.hpp"
#include "nbrisk/uniqueness.hpp"

namespace nbrisk {

std::string_view to_string(SamplingMode mode) {
  return mode == SamplingMode::kBernoulli ? "bernoulli" : "exact-count";
}

SamplingMode parse_sampling_mode(std::string_view name) {
  if (name == "bernoulli") return SamplingMode::kBernoulli;
  if (name == "exact-count") return SamplingMode::kExactCount;
  throw ParameterError("unknown sampling mode '" + std::string(name) +
                       "' (expected bernoulli or exact-count)");
}

namespace {

void check_rate(double rate) {
  if (!(rate > 0.0 && rate <= 1.0)) throw ParameterError("sampling rate must lie in (0, 1]");
}

}  // namespace

void SamplingPlan::validate() const { check_rate(rate); }

Graph sample_edges(const Graph& g, const SamplingPlan& plan) {
  plan.validate();
  if (plan.rate == 1.0) return g;
  auto edges = g.edges();
  Rng rng(plan.seed);
  std::vector<Edge> kept;
  if (plan.mode == SamplingMode::kBernoulli) {
    for (const auto& e : edges) {
      if (rng.bernoulli(plan.rate)) kept.push_back(e);
    }
  } else {
    const auto keep = static_cast<std::size_t>(std::llround(plan.rate * static_cast<double>(edges.size())));
    // Partial Fisher-Yates: the first `keep` slots become a uniform subset.
    for (std::size_t i = 0; i < keep; ++i) {
      const std::size_t j = i + rng.below(edges.size() - i);
      std::swap(edges[i], edges[j]);
    }
    kept.assign(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(keep));
  }
  return Graph::from_edges(g.node_count(), kept);
}

double estimate_degree(double observed_degree, double rate) {
  check_rate(rate);
  return observed_degree / rate;
}

double estimate_triangles(double observed_triangles, double rate) {
  check_rate(rate);
  return observed_triangles / (rate * rate * rate);
}

std::vector<double> default_sampling_rates() {
  std::vector<double> rates;
  for (int i = 10; i >= 1; --i) rates.push_back(i / 10.0);
  return rates;
}

SamplingReport sampling_report(const Graph& g, std::span<const double> rates, std::uint64_t seed,
                               SamplingMode mode, std::size_t trials, std::size_t jobs) {
  if (trials == 0) throw ParameterError("trials must be at least 1");
  std::vector<double> sorted(rates.begin(), rates.end());
  if (sorted.empty()) sorted = default_sampling_rates();
  for (double s : sorted) check_rate(s);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  SamplingReport report;
  const std::size_t n = g.node_count();
  report.original_avg_degree = n ? 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n) : 0.0;
  report.original_uniqueness = neighborhood_uniqueness(g, jobs);
  report.original_triangles = triangle_count(g);

  struct Sample {
    double avg_degree, uniqueness, degree_error, triangle_error;
  };
  std::vector<Sample> samples(sorted.size() * trials);
  parallel_for(samples.size(), jobs, [&](std::size_t t) {
    const double s = sorted[t / trials];
    const SamplingPlan plan{s, mode, derive_seed(seed, {double_bits(s), t % trials})};
    const Graph sampled = sample_edges(g, plan);
    Sample& out = samples[t];
    out.avg_degree = n ? 2.0 * static_cast<double>(sampled.edge_count()) / static_cast<double>(n) : 0.0;
    out.uniqueness = neighborhood_uniqueness(sampled);
    double err = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      err += std::abs(static_cast<double>(g.degree(v)) -
                      estimate_degree(static_cast<double>(sampled.degree(v)), s));
    }
    out.degree_error = n ? err / static_cast<double>(n) : 0.0;
    out.triangle_error = std::abs(static_cast<double>(report.original_triangles) -
                                  estimate_triangles(static_cast<double>(triangle_count(sampled)), s));
  });

  for (std::size_t r = 0; r < sorted.size(); ++r) {
    std::vector<double> k, u, de, te;
    for (std::size_t t = 0; t < trials; ++t) {
      const Sample& x = samples[r * trials + t];
      k.push_back(x.avg_degree);
      u.push_back(x.uniqueness);
      de.push_back(x.degree_error);
      te.push_back(x.triangle_error);
    }
    report.rows.push_back({sorted[r], trials, estimate_of(k), estimate_of(u), estimate_of(de), estimate_of(te)});
  }
  return report;
}

}  // namespace nbrisk
