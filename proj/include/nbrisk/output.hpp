#ifndef NBRISK_OUTPUT_HPP_
#define NBRISK_OUTPUT_HPP_

#include <filesystem>
#include <span>
#include <string>

#include "json.hpp"
#include "nbrisk/er_analytics.hpp"
#include "nbrisk/graph.hpp"
#include "nbrisk/models.hpp"
#include "nbrisk/sampling.hpp"
#include "nbrisk/sweep.hpp"
#include "nbrisk/uniqueness.hpp"

namespace nbrisk {

// Serialization of results. CSV numbers use 9 significant digits through
// std::to_chars, so output is locale-independent and diffable.

std::string format_number(double x);

nlohmann::json to_json(const SummaryStats& s);
nlohmann::json to_json(const ModelSpec& spec);
nlohmann::json to_json(const SearchConfig& config);
nlohmann::json to_json(const BoundaryFit& fit);

/// Scalars plus the per-degree non-empty table; with `labels` non-empty, also
/// a per-node array of {node, degree, occurrence}.
nlohmann::json to_json(const UniquenessReport& report, std::span<const std::string> labels = {});

/// "n,m,avg_degree,clustering,neighborhood_uniqueness,degree_uniqueness,nonempty_fraction"
/// header plus one row.
std::string analysis_csv(const SummaryStats& s, const UniquenessReport& report);

std::string er_curve_csv(const ErCurve& curve);
std::string map_csv(const UniquenessMap& map);
std::string sampling_report_csv(const SamplingReport& report);

/// One row per searched size: n, k_star, evaluations, simulations, outcome, lo, hi.
std::string boundary_csv(std::span<const std::size_t> sizes, std::span<const SearchResult> results);

/// Every evaluated point of every search.
std::string boundary_steps_csv(std::span<const std::size_t> sizes,
                               std::span<const SearchResult> results);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Writes `content` to `path` exactly (binary mode); throws std::runtime_error.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace nbrisk

#endif  // NBRISK_OUTPUT_HPP_
