#include "nbrisk/models.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cctype>
#include <cmath>
#include <numbers>
#include <unordered_set>
#include <vector>

#include "nbrisk/error.hpp"
#include "nbrisk/rng.hpp"

namespace nbrisk {

std::string_view to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::kErdosRenyi:
      return "er";
    case ModelFamily::kWattsStrogatz:
      return "ws";
    case ModelFamily::kGeometric:
      return "rgg";
  }
  return "?";
}

ModelFamily parse_model_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "er") return ModelFamily::kErdosRenyi;
  if (lower == "ws") return ModelFamily::kWattsStrogatz;
  if (lower == "rgg") return ModelFamily::kGeometric;
  throw ParameterError("unknown model family '" + std::string(name) + "' (expected er, ws or rgg)");
}

void ModelSpec::validate() const {
  if (n == 0) throw ParameterError("model size must be positive");
  if (!(avg_degree >= 0.0) || avg_degree > static_cast<double>(n - 1)) {
    throw ParameterError("average degree must lie in [0, n - 1]");
  }
  if ((family == ModelFamily::kWattsStrogatz) != beta.has_value()) {
    throw ParameterError("beta must be given for ws and only for ws");
  }
  if (beta && !(*beta >= 0.0 && *beta <= 1.0)) throw ParameterError("beta must lie in [0, 1]");
}

Graph generate_er(const ModelSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  std::vector<Edge> edges;
  if (n < 2 || spec.avg_degree == 0.0) return Graph::from_edges(n, edges);

  const double p = spec.avg_degree / static_cast<double>(n - 1);
  if (p >= 1.0) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, edges);
  }

  // Geometric skipping over the pairs (v, w), w < v, in lexicographic order.
  Rng rng(spec.seed);
  edges.reserve(static_cast<std::size_t>(spec.avg_degree * static_cast<double>(n) / 2 * 1.1) + 16);
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto size = static_cast<std::int64_t>(n);
  while (v < size) {
    const double skip = std::floor(std::log1p(-rng.uniform()) / log_q);
    w += 1 + static_cast<std::int64_t>(std::min(skip, 4.0e18));
    while (w >= v && v < size) {
      w -= v;
      ++v;
    }
    if (v < size) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return Graph::from_edges(n, edges);
}

std::size_t ws_lattice_degree(double avg_degree) {
  const auto half = static_cast<std::size_t>(std::llround(avg_degree / 2.0));
  return std::max<std::size_t>(2, 2 * half);
}

Graph generate_ws(const ModelSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  const std::size_t k = ws_lattice_degree(spec.avg_degree);
  if (k >= n) throw ParameterError("ws lattice degree must be below n");
  const double beta = *spec.beta;

  auto key = [](std::uint64_t a, std::uint64_t b) {
    return a < b ? (a << 32) | b : (b << 32) | a;
  };
  std::unordered_set<std::uint64_t> present;
  present.reserve(n * k);
  std::vector<std::size_t> degree(n, k);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t j = 1; j <= k / 2; ++j) present.insert(key(u, (u + j) % n));
  }

  Rng rng(spec.seed);
  if (beta > 0.0) {
    for (std::size_t j = 1; j <= k / 2; ++j) {
      for (std::size_t u = 0; u < n; ++u) {
        if (!rng.bernoulli(beta)) continue;
        if (degree[u] >= n - 1) continue;
        std::size_t w = rng.below(n);
        while (w == u || present.count(key(u, w))) w = rng.below(n);
        const std::size_t v = (u + j) % n;
        present.erase(key(u, v));
        present.insert(key(u, w));
        --degree[v];
        ++degree[w];
      }
    }
  }

  std::vector<Edge> edges;
  edges.reserve(present.size());
  for (auto e : present) edges.emplace_back(static_cast<NodeId>(e >> 32), static_cast<NodeId>(e & 0xffffffffU));
  return Graph::from_edges(n, edges);
}

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Density of the distance between two independent uniform points of the unit
// square.
double square_distance_density(double d) {
  if (d <= 1.0) return 2.0 * d * (std::numbers::pi - 4.0 * d + d * d);
  if (d >= kSqrt2) return 0.0;
  return 2.0 * d *
         (4.0 * std::sqrt(d * d - 1.0) - (d * d + 2.0 - std::numbers::pi) - 4.0 * std::acos(1.0 / d));
}

}  // namespace

double rgg_link_probability(double radius) {
  if (!(radius > 0.0)) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [radius](double d) {
    return std::exp(-3.0 * d / radius) * square_distance_density(d);
  };
  const double upper = std::min(radius, kSqrt2);
  double total = gauss_kronrod<double, 31>::integrate(integrand, 0.0, std::min(upper, 1.0), 15, 1e-14);
  if (upper > 1.0) total += gauss_kronrod<double, 31>::integrate(integrand, 1.0, upper, 15, 1e-14);
  return std::clamp(total, 0.0, 1.0);
}

double rgg_radius(std::size_t n, double avg_degree) {
  if (n < 2 || avg_degree <= 0.0) return 0.0;
  const double target = avg_degree / static_cast<double>(n - 1);
  double lo = 0.0;
  double hi = std::sqrt(target / std::numbers::pi);
  while (rgg_link_probability(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) {
      throw ParameterError("rgg: no radius reaches average degree " + std::to_string(avg_degree) +
                           " at n = " + std::to_string(n));
    }
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (rgg_link_probability(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Graph generate_rgg(const ModelSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  const double r = rgg_radius(n, spec.avg_degree);
  std::vector<Edge> edges;
  if (r <= 0.0) return Graph::from_edges(n, edges);

  Rng rng(spec.seed);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = rng.uniform();
    y[i] = rng.uniform();
  }
  std::vector<NodeId> by_x(n);
  for (NodeId i = 0; i < n; ++i) by_x[i] = i;
  std::sort(by_x.begin(), by_x.end(), [&](NodeId a, NodeId b) {
    return x[a] < x[b] || (x[a] == x[b] && a < b);
  });

  for (std::size_t i = 0; i < n; ++i) {
    const NodeId a = by_x[i];
    for (std::size_t j = i + 1; j < n && x[by_x[j]] - x[a] <= r; ++j) {
      const NodeId b = by_x[j];
      const double dx = x[a] - x[b];
      const double dy = y[a] - y[b];
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d > r) continue;
      if (rng.bernoulli(std::exp(-3.0 * d / r))) edges.emplace_back(a, b);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph generate(const ModelSpec& spec) {
  switch (spec.family) {
    case ModelFamily::kErdosRenyi:
      return generate_er(spec);
    case ModelFamily::kWattsStrogatz:
      return generate_ws(spec);
    case ModelFamily::kGeometric:
      return generate_rgg(spec);
  }
  throw ParameterError("unknown model family");
}

}  // namespace nbrisk
