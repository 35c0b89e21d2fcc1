#include "nbrisk/models.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>

#include "nbrisk/error.hpp"
#include "nbrisk/uniqueness.hpp"
#include "test_support.hpp"

namespace nbrisk {
namespace {

ModelSpec er(std::size_t n, double k, std::uint64_t seed) {
  return {ModelFamily::kErdosRenyi, n, k, std::nullopt, seed};
}
ModelSpec ws(std::size_t n, double k, double beta, std::uint64_t seed) {
  return {ModelFamily::kWattsStrogatz, n, k, beta, seed};
}
ModelSpec rgg(std::size_t n, double k, std::uint64_t seed) {
  return {ModelFamily::kGeometric, n, k, std::nullopt, seed};
}

struct MeanSe {
  double mean;
  double se;
};

MeanSe mean_se(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1) / n)};
}

TEST(ModelSpec, Validation) {
  EXPECT_THROW(er(10, 10.0, 0).validate(), ParameterError);
  EXPECT_THROW(er(10, -1.0, 0).validate(), ParameterError);
  EXPECT_THROW(er(0, 0.0, 0).validate(), ParameterError);
  EXPECT_THROW((ModelSpec{ModelFamily::kWattsStrogatz, 10, 4, std::nullopt, 0}.validate()),
               ParameterError);
  EXPECT_THROW((ModelSpec{ModelFamily::kErdosRenyi, 10, 4, 0.5, 0}.validate()), ParameterError);
  EXPECT_THROW(ws(10, 4, 1.5, 0).validate(), ParameterError);
  EXPECT_NO_THROW(er(10, 9.0, 0).validate());
  EXPECT_EQ(parse_model_family("RGG"), ModelFamily::kGeometric);
  EXPECT_THROW(parse_model_family("ba"), ParameterError);
}

TEST(ErdosRenyi, Extremes) {
  auto empty = generate(er(50, 0.0, 1));
  EXPECT_EQ(empty.node_count(), 50u);
  EXPECT_EQ(empty.edge_count(), 0u);
  auto full = generate(er(50, 49.0, 1));
  EXPECT_EQ(full.edge_count(), 50u * 49u / 2u);
}

TEST(ErdosRenyi, MeanDegreeWithinThreeStandardErrors) {
  std::vector<double> realized;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    realized.push_back(summary_stats(generate(er(1000, 10.0, seed))).avg_degree);
  }
  auto [mean, se] = mean_se(realized);
  EXPECT_NEAR(mean, 10.0, 3 * se);
}

TEST(ErdosRenyi, DegreeHistogramFitsBinomial) {
  const std::size_t n = 1000;
  const double k = 8.0;
  std::vector<double> observed(n, 0.0);
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = generate(er(n, k, 100 + seed));
    for (NodeId v = 0; v < n; ++v) observed[g.degree(v)] += 1.0;
    total += static_cast<double>(n);
  }
  // Pool the tails so every bin expects at least 5 nodes.
  boost::math::binomial_distribution<double> dist(static_cast<double>(n - 1), k / static_cast<double>(n - 1));
  std::vector<std::pair<double, double>> bins;  // (observed, expected)
  double obs_acc = 0.0, exp_acc = 0.0;
  for (std::size_t d = 0; d < n; ++d) {
    obs_acc += observed[d];
    exp_acc += total * boost::math::pdf(dist, static_cast<double>(d));
    if (exp_acc >= 5.0 && total * boost::math::cdf(boost::math::complement(dist, static_cast<double>(d))) >= 5.0) {
      bins.emplace_back(obs_acc, exp_acc);
      obs_acc = exp_acc = 0.0;
    }
  }
  bins.back().first += obs_acc;
  bins.back().second += exp_acc;
  double chi2 = 0.0;
  for (auto [o, e] : bins) chi2 += (o - e) * (o - e) / e;
  boost::math::chi_squared_distribution<double> ref(static_cast<double>(bins.size() - 1));
  EXPECT_LT(chi2, boost::math::quantile(ref, 0.999)) << bins.size() << " bins";
}

TEST(WattsStrogatz, RingLatticeWithoutRewiring) {
  auto g = generate(ws(10, 4.0, 0.0, 3));
  for (NodeId v = 0; v < 10; ++v) EXPECT_EQ(g.degree(v), 4u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_TRUE(g.has_edge(0, 9));
  EXPECT_TRUE(g.has_edge(0, 8));
  EXPECT_FALSE(g.has_edge(0, 5));
  EXPECT_EQ(neighborhood_uniqueness(g), 0.0);
  EXPECT_EQ(occurrence_frequencies(g), std::vector<std::size_t>(10, 10));
}

TEST(WattsStrogatz, LatticeDegreeAndDomain) {
  EXPECT_EQ(ws_lattice_degree(0.5), 2u);
  EXPECT_EQ(ws_lattice_degree(5.0), 6u);
  EXPECT_EQ(ws_lattice_degree(10.0), 10u);
  EXPECT_EQ(ws_lattice_degree(10.9), 10u);
  EXPECT_THROW(generate(ws(6, 5.0, 0.2, 1)), ParameterError);
}

TEST(WattsStrogatz, RewiringPreservesEdgeCount) {
  for (double beta : {0.1, 0.5, 1.0}) {
    auto g = generate(ws(500, 10.0, beta, 9));
    EXPECT_EQ(g.edge_count(), 2500u);
    for (NodeId v = 0; v < 500; ++v) EXPECT_GE(g.degree(v), 5u);  // keeps its own K/2 edge ends
  }
}

TEST(WattsStrogatz, FullRewiringClusteringMatchesErdosRenyi) {
  const std::size_t n = 2000;
  std::vector<double> c_ws, c_er;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    c_ws.push_back(summary_stats(generate(ws(n, 10.0, 1.0, seed))).clustering);
    c_er.push_back(summary_stats(generate(er(n, 10.0, 1000 + seed))).clustering);
  }
  auto a = mean_se(c_ws);
  auto b = mean_se(c_er);
  EXPECT_LT(std::abs(a.mean - b.mean), 3.0 * std::hypot(a.se, b.se))
      << "ws " << a.mean << " er " << b.mean;
  // A lattice with K = 10 has clustering 2/3; full rewiring destroys it.
  EXPECT_LT(a.mean, 0.05);
}

TEST(Geometric, RealizedDegreeNearTarget) {
  std::vector<double> realized;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double k = summary_stats(generate(rgg(2000, 10.0, seed))).avg_degree;
    EXPECT_GE(k, 9.8);
    EXPECT_LE(k, 10.2);
    realized.push_back(k);
  }
  EXPECT_NEAR(mean_se(realized).mean, 10.0, 0.2);
}

TEST(Geometric, LinkProbabilityMatchesMonteCarlo) {
  // Independent route: sample point pairs and apply the kernel directly.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit;
  for (double r : {0.05, 0.3, 1.0}) {
    const int trials = 400000;
    double linked = 0.0;
    for (int i = 0; i < trials; ++i) {
      const double dx = unit(rng) - unit(rng);
      const double dy = unit(rng) - unit(rng);
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d <= r) linked += std::exp(-3.0 * d / r);
    }
    const double p = linked / trials;
    EXPECT_NEAR(rgg_link_probability(r), p, 5.0 * std::sqrt(p / trials) + 1e-6) << "r=" << r;
  }
}

TEST(Geometric, RadiusInvertsExpectedDegree) {
  for (double k : {1.0, 10.0, 100.0}) {
    const double r = rgg_radius(2000, k);
    EXPECT_NEAR(1999.0 * rgg_link_probability(r), k, 1e-9 * k);
  }
  EXPECT_THROW(rgg_radius(100, 99.0), ParameterError);
}

TEST(Geometric, LargeRadiusGivesNearCompleteGraph) {
  auto g = generate(rgg(200, 180.0, 2));
  EXPECT_GT(summary_stats(g).avg_degree, 170.0);
}

TEST(Geometric, RetainsLocalClustering) {
  auto s = summary_stats(generate(rgg(5000, 10.0, 12)));
  EXPECT_GT(s.clustering, 0.2);
}

TEST(Generators, DeterministicPerSeed) {
  for (auto spec : {er(800, 6.0, 5), ws(800, 6.0, 0.4, 5), rgg(800, 6.0, 5)}) {
    auto a = generate(spec);
    auto b = generate(spec);
    EXPECT_EQ(a, b);
    EXPECT_EQ(format_edge_list(a), format_edge_list(b));
    spec.seed += 1;
    EXPECT_NE(format_edge_list(generate(spec)), format_edge_list(a));
  }
}

TEST(Generators, KnownOutputIsStable) {
  // Pins the random streams so a change to any generator is noticed.
  EXPECT_EQ(generate(er(1000, 10.0, 42)).edge_count(), 5091u);
}

}  // namespace
}  // namespace nbrisk
