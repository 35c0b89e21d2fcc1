// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nbrisk/certificate.hpp"
#include "nbrisk/cli.hpp"
#include "nbrisk/er_analytics.hpp"
#include "nbrisk/models.hpp"
#include "nbrisk/parallel.hpp"
#include "nbrisk/rng.hpp"
#include "nbrisk/sampling.hpp"
#include "nbrisk/sweep.hpp"
#include "nbrisk/uniqueness.hpp"
#include "test_support.hpp"

namespace {

using namespace nbrisk;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int digits = 4) {
  std::ostringstream ss;
  ss.precision(digits);
  ss << x;
  return ss.str();
}

ModelSpec spec_of(ModelFamily family, std::size_t n, double k, std::uint64_t seed) {
  ModelSpec s{family, n, k, std::nullopt, seed};
  if (family == ModelFamily::kWattsStrogatz) s.beta = 0.5;
  return s;
}

const std::size_t kJobs = default_jobs();

// Monte Carlo degree uniqueness of ER(100, k) over 400 networks per grid point
// against the closed form.
Outcome er_degree_uniqueness_vs_simulation() {
  const std::size_t n = 100, seeds = 400;
  std::size_t worst_i = 0;
  double worst_z = 0.0;
  std::vector<double> grid;
  for (double k = 5; k <= 95; k += 5) grid.push_back(k);
  std::vector<std::string> misses;
  for (double k : grid) {
    std::vector<double> xs(seeds);
    parallel_for(seeds, kJobs, [&](std::size_t i) {
      xs[i] = degree_uniqueness(generate(spec_of(ModelFamily::kErdosRenyi, n, k, derive_seed(1, {double_bits(k), i}))));
    });
    const auto e = estimate_of(xs);
    const double expected = er_degree_uniqueness(n, k);
    const double z = std::abs(e.mean - expected) / e.sem;
    if (z > worst_z) {
      worst_z = z;
      worst_i = static_cast<std::size_t>(k);
    }
    if (z > 3.0) misses.push_back("k=" + fmt(k) + " sim " + fmt(e.mean) + " vs " + fmt(expected));
  }
  std::string detail = "19 grid points, worst |z|=" + fmt(worst_z, 3) + " at k=" + std::to_string(worst_i);
  for (const auto& m : misses) detail += "; " + m;
  return {misses.empty(), detail};
}

Outcome er_nonempty_vs_simulation() {
  const std::size_t n = 1000, seeds = 20;
  std::string detail;
  bool ok = true;
  for (double k : {2.0, 5.0, 10.0, 20.0, 40.0}) {
    std::vector<double> xs(seeds);
    parallel_for(seeds, kJobs, [&](std::size_t i) {
      xs[i] = nonempty_fraction(generate(spec_of(ModelFamily::kErdosRenyi, n, k, derive_seed(2, {double_bits(k), i})))).fraction;
    });
    const auto e = estimate_of(xs);
    const double expected = er_nonempty_fraction(n, k);
    // When every realization gives the same fraction the SEM is 0; the band
    // then falls back to the estimator's resolution, half a node over all runs.
    const double resolution = 0.5 / static_cast<double>(n * seeds);
    const bool hit = std::abs(e.mean - expected) <= std::max(3.0 * e.sem, resolution);
    ok = ok && hit;
    detail += (detail.empty() ? "" : "; ") + std::string("k=") + fmt(k) + " sim " + fmt(e.mean) + "±" +
              fmt(e.sem, 2) + " vs " + fmt(expected) + (hit ? "" : " MISS");
  }
  return {ok, detail};
}

Outcome er_argmax_at_half() {
  bool ok = true;
  std::string detail;
  for (std::size_t n : {50u, 100u, 200u}) {
    double best_k = 0.0, best = -1.0;
    for (double k = 0.0; k <= static_cast<double>(n - 1); k += 0.5) {
      const double u = er_degree_uniqueness(n, k);
      if (u > best) {
        best = u;
        best_k = k;
      }
    }
    const double half = (static_cast<double>(n) - 1.0) / 2.0;
    ok = ok && std::abs(best_k - half) <= 0.5;
    detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " argmax " + fmt(best_k) +
              " (half " + fmt(half) + ")";
  }
  return {ok, detail};
}

Outcome certificate_exhaustive() {
  const std::size_t expected[] = {0, 1, 2, 4, 11, 34};
  bool ok = true;
  std::string detail = "classes";
  for (std::size_t n = 1; n <= 5; ++n) {
    const std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
    std::vector<Graph> reps;
    std::vector<Certificate> certs;
    std::size_t disagreements = 0;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      const Graph g = testing::graph_from_mask(n, mask);
      const Certificate c = certificate(g);
      std::size_t cls = reps.size();
      for (std::size_t i = 0; i < reps.size(); ++i) {
        if (are_isomorphic_oracle(g, reps[i])) {
          cls = i;
          break;
        }
      }
      for (std::size_t i = 0; i < reps.size(); ++i) disagreements += (certs[i] == c) != (i == cls);
      if (cls == reps.size()) {
        reps.push_back(g);
        certs.push_back(c);
      }
    }
    ok = ok && disagreements == 0 && reps.size() == expected[n];
    detail += " n=" + std::to_string(n) + ":" + std::to_string(reps.size());
    if (disagreements) detail += " (" + std::to_string(disagreements) + " disagreements)";
  }
  return {ok, detail};
}

Outcome neighborhood_dominates_degree_uniqueness() {
  std::size_t violations = 0, graphs = 0;
  for (auto family : {ModelFamily::kErdosRenyi, ModelFamily::kWattsStrogatz, ModelFamily::kGeometric}) {
    std::vector<char> bad(200, 0);
    parallel_for(200, kJobs, [&](std::size_t i) {
      const std::size_t n = 100 + 100 * (i % 10);       // 100 .. 1000
      const double k = 1.0 + static_cast<double>(i / 10);  // 1 .. 20
      const auto r = uniqueness_report(generate(spec_of(family, n, k, derive_seed(5, {std::uint64_t(family), i}))));
      bad[i] = r.neighborhood_uniqueness < r.degree_uniqueness;
    });
    violations += static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1));
    graphs += 200;
  }
  return {violations == 0, std::to_string(graphs) + " graphs, " + std::to_string(violations) + " violations"};
}

Outcome rgg_transition() {
  auto mean_at = [](double k) {
    return uniqueness_at(spec_of(ModelFamily::kGeometric, 2000, k, 0), 10, 6, kJobs);
  };
  const auto low = mean_at(2.0);
  const auto high = mean_at(30.0);
  return {low.mean < 0.2 && high.mean > 0.9,
          "k=2: " + fmt(low.mean) + ", k=30: " + fmt(high.mean)};
}

Outcome boundary_band_and_order() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = 10000;
  SearchConfig config;
  std::vector<SearchResult> results;
  const ModelFamily families[] = {ModelFamily::kGeometric, ModelFamily::kWattsStrogatz, ModelFamily::kErdosRenyi};
  for (auto family : families) results.push_back(boundary_search(spec_of(family, n, 0, 0), n, config, 7, kJobs));
  const double minutes = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 60.0;

  const double rgg = results[0].k_star, ws = results[1].k_star, er = results[2].k_star;
  // Both searches resolve k* to the interval floor, so each comparison allows
  // one floor width per search.
  const double slack = 2.0 * config.min_width;
  const bool band = rgg >= 4.0 && rgg <= 25.0 && ws >= 4.0 && ws <= 25.0;
  const bool order = rgg <= ws + slack && ws <= er + slack;
  std::string detail = "k*: rgg " + fmt(rgg) + " (" + std::string(to_string(results[0].outcome)) + "), ws " +
                       fmt(ws) + " (" + std::string(to_string(results[1].outcome)) + "), er " + fmt(er) + " (" +
                       std::string(to_string(results[2].outcome)) + "); " + fmt(minutes, 3) + " min";
  return {band && order && minutes < 30.0, detail};
}

Outcome noisy_logistic_search() {
  int hits = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    std::mt19937_64 rng(derive_seed(8, {trial}));
    std::normal_distribution<double> noise(0.0, 0.02);
    UniquenessSampler sampler = [&](double k, std::size_t, std::size_t count) {
      std::vector<double> out(count);
      for (auto& x : out) x = 1.0 / (1.0 + std::exp(-(k - 10.0))) + noise(rng);
      return out;
    };
    hits += std::abs(boundary_search(sampler, SearchConfig{}).k_star - 10.0) <= 0.5;
  }
  return {hits >= 95, std::to_string(hits) + "/100 within 0.5"};
}

Outcome estimator_unbiasedness() {
  const Graph g = generate(spec_of(ModelFamily::kErdosRenyi, 500, 10.0, 9));
  const std::size_t n = g.node_count();
  const double true_avg = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);
  const auto true_triangles = static_cast<double>(triangle_count(g));
  const std::size_t resamples = 1000;
  bool ok = true;
  std::string detail;
  for (double s : {0.3, 0.5, 0.7}) {
    std::vector<std::vector<double>> degree(resamples, std::vector<double>(n));
    std::vector<double> triangles(resamples), avg(resamples);
    parallel_for(resamples, kJobs, [&](std::size_t i) {
      const Graph h = sample_edges(g, {s, SamplingMode::kBernoulli, derive_seed(9, {double_bits(s), i})});
      double total = 0.0;
      for (NodeId v = 0; v < n; ++v) {
        degree[i][v] = estimate_degree(static_cast<double>(h.degree(v)), s);
        total += degree[i][v];
      }
      avg[i] = total / static_cast<double>(n);
      triangles[i] = estimate_triangles(static_cast<double>(triangle_count(h)), s);
    });
    const auto a = estimate_of(avg);
    const auto t = estimate_of(triangles);
    std::size_t outside = 0;
    for (NodeId v = 0; v < n; ++v) {
      std::vector<double> col(resamples);
      for (std::size_t i = 0; i < resamples; ++i) col[i] = degree[i][v];
      const auto e = estimate_of(col);
      outside += std::abs(e.mean - static_cast<double>(g.degree(v))) > 3.0 * e.sem;
    }
    // Per-node 3-SEM misses must stay at the rate chance alone produces: the
    // 99.9% quantile of Binomial(n, P(|Z| > 3)).
    const boost::math::binomial_distribution<double> chance(static_cast<double>(n), 0.0026998);
    const double allowed = boost::math::quantile(chance, 0.999);
    const bool row = std::abs(a.mean - true_avg) <= 3.0 * a.sem && std::abs(t.mean - true_triangles) <= 3.0 * t.sem &&
                     static_cast<double>(outside) <= allowed;
    ok = ok && row;
    detail += (detail.empty() ? "" : "; ") + std::string("s=") + fmt(s) + ": <k> " + fmt(a.mean) + " vs " +
              fmt(true_avg) + ", triangles " + fmt(t.mean) + "±" + fmt(t.sem, 2) + " vs " + fmt(true_triangles) +
              ", nodes outside 3 SEM " + std::to_string(outside) + "/" + std::to_string(n) + " (chance allows " +
              fmt(allowed) + ")";
  }
  std::vector<double> full{1.0};
  const auto report = sampling_report(g, full, 9);
  const bool exact = report.rows[0].degree_error.mean == 0.0 && report.rows[0].triangle_error.mean == 0.0;
  ok = ok && exact;
  detail += std::string("; s=1 errors ") + (exact ? "0" : "nonzero");
  return {ok, detail};
}

Outcome sampling_report_shape() {
  const Graph g = generate(spec_of(ModelFamily::kGeometric, 2000, 30.0, 10));
  const auto report = sampling_report(g, default_sampling_rates(), 10, SamplingMode::kBernoulli, 10, kJobs);
  bool monotone = true;
  std::string curve;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& u = report.rows[i].uniqueness;
    curve += (i ? " " : "") + fmt(u.mean, 3);
    if (i > 0) {
      const auto& prev = report.rows[i - 1].uniqueness;
      if (u.mean > prev.mean + 2.0 * std::hypot(u.sem, prev.sem)) monotone = false;
    }
  }
  const double first = report.rows.front().uniqueness.mean, last = report.rows.back().uniqueness.mean;
  return {monotone && first > 0.9 && last < 0.2, "U_N at s=1.0..0.1: " + curve};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs each command twice with identical parameters (the second time from the
// manifest's replay line, with a different job count) and compares outputs.
Outcome cli_determinism() {
  const fs::path root = fs::temp_directory_path() / "nbrisk_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const Graph g = generate(spec_of(ModelFamily::kGeometric, 1000, 12.0, 3));
  {
    std::ofstream(root / "g.txt") << format_edge_list(g);
  }

  struct Case {
    std::string name;
    std::vector<std::string> args;
    std::vector<std::string> outputs;
  };
  const std::vector<Case> cases = {
      {"map",
       {"map", "--model", "rgg", "--n-grid", "100:2000:log4", "--k-grid", "1:25:4", "--reps", "3", "--seed", "7"},
       {"map.csv"}},
      {"boundary",
       {"boundary", "--model", "ws", "--beta", "0.5", "--n-grid", "300,600,1200", "--k-hi", "60", "--seed", "7"},
       {"boundary.csv", "boundary_steps.csv", "fit.json"}},
      {"sample",
       {"sample", "--input", (root / "g.txt").string(), "--rate", "0.3", "--seed", "7"},
       {"sampled.txt", "sample.json"}},
  };

  bool ok = true;
  std::string detail;
  std::ostringstream sink;
  for (const auto& c : cases) {
    const fs::path a = root / (c.name + "_a"), b = root / (c.name + "_b");
    std::vector<std::string> first = {"nbrisk"};
    first.insert(first.end(), c.args.begin(), c.args.end());
    first.insert(first.end(), {"--out", a.string(), "--jobs", "1"});
    bool same = run_cli(first, sink, sink) == 0;

    std::vector<std::string> replay;
    if (same) {
      replay = nlohmann::json::parse(slurp(a / "manifest.json"))["replay"].get<std::vector<std::string>>();
      for (std::size_t i = 0; i + 1 < replay.size(); ++i) {
        if (replay[i] == "--out") replay[i + 1] = b.string();
        if (replay[i] == "--jobs") replay[i + 1] = "3";
      }
      same = run_cli(replay, sink, sink) == 0;
    }
    for (const auto& f : c.outputs) same = same && fs::exists(a / f) && slurp(a / f) == slurp(b / f);
    ok = ok && same;
    detail += (detail.empty() ? "" : "; ") + c.name + (same ? " identical" : " DIFFERS");
  }
  fs::remove_all(root);
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"er-degree-uniqueness-matches-simulation", er_degree_uniqueness_vs_simulation},
      {"er-nonempty-fraction-matches-simulation", er_nonempty_vs_simulation},
      {"er-degree-uniqueness-peaks-at-half", er_argmax_at_half},
      {"certificate-partitions-match-oracle", certificate_exhaustive},
      {"neighborhood-uniqueness-dominates-degree", neighborhood_dominates_degree_uniqueness},
      {"rgg-transition", rgg_transition},
      {"boundary-band-and-model-order", boundary_band_and_order},
      {"noisy-search-accuracy", noisy_logistic_search},
      {"sampling-estimators-unbiased", estimator_unbiasedness},
      {"sampling-report-shape", sampling_report_shape},
      {"cli-determinism", cli_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " [" << fmt(seconds, 3) << " s] " << o.detail << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}
