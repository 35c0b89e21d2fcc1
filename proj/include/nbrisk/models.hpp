#ifndef NBRISK_MODELS_HPP_
#define NBRISK_MODELS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "nbrisk/graph.hpp"

namespace nbrisk {

enum class ModelFamily { kErdosRenyi, kWattsStrogatz, kGeometric };

std::string_view to_string(ModelFamily family);
/// Accepts "er", "ws" and "rgg" (case-insensitive); throws ParameterError.
ModelFamily parse_model_family(std::string_view name);

/// A random-graph model parameterized by size and target average degree.
/// `beta` is the Watts-Strogatz rewiring probability and must be set exactly
/// when family == kWattsStrogatz.
struct ModelSpec {
  ModelFamily family = ModelFamily::kErdosRenyi;
  std::size_t n = 0;
  double avg_degree = 0.0;
  std::optional<double> beta;
  std::uint64_t seed = 0;

  /// Throws ParameterError unless 0 <= avg_degree <= n - 1, beta is present
  /// iff the family is WS, and beta lies in [0, 1].
  void validate() const;
};

/// G(n, p) with p = avg_degree / (n - 1).
Graph generate_er(const ModelSpec& spec);

/// Ring lattice where every node links to K/2 neighbors per side, K the even
/// integer nearest avg_degree (at least 2); then each lattice edge (u, u + j)
/// is rewired with probability beta to (u, w), w uniform over nodes that are
/// neither u nor already adjacent to u. Throws ParameterError when K >= n.
Graph generate_ws(const ModelSpec& spec);

/// Lattice degree used by generate_ws for a target average degree.
std::size_t ws_lattice_degree(double avg_degree);

/// Soft random geometric graph: n points uniform in the unit square (no
/// wraparound); a pair at distance d <= r is linked with probability
/// exp(-3 d / r). r is chosen by rgg_radius so the expected average degree
/// equals the target.
Graph generate_rgg(const ModelSpec& spec);

/// Probability that two uniform points of the unit square end up linked by
/// the soft kernel with radius r.
double rgg_link_probability(double radius);

/// Radius whose expected average degree (n - 1) * rgg_link_probability(r)
/// matches `avg_degree` to 1e-12 relative. Throws ParameterError when no
/// radius up to 1e6 reaches the target (avg_degree too close to n - 1).
double rgg_radius(std::size_t n, double avg_degree);

/// Dispatches on spec.family after validation.
Graph generate(const ModelSpec& spec);

}  // namespace nbrisk

#endif  // NBRISK_MODELS_HPP_
