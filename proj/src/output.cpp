#include "nbrisk/output.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace nbrisk {

std::string format_number(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 9);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), end);
}

nlohmann::json to_json(const SummaryStats& s) {
  return {{"n", s.n}, {"m", s.m}, {"avg_degree", s.avg_degree}, {"clustering", s.clustering}};
}

nlohmann::json to_json(const ModelSpec& spec) {
  nlohmann::json j = {{"model", std::string(to_string(spec.family))},
                      {"n", spec.n},
                      {"avg_degree", spec.avg_degree},
                      {"seed", spec.seed}};
  if (spec.beta) j["beta"] = *spec.beta;
  return j;
}

nlohmann::json to_json(const SearchConfig& c) {
  return {{"target", c.target},       {"confidence", c.confidence},
          {"batch", c.batch},         {"max_simulations", c.max_simulations},
          {"tolerance", c.tolerance}, {"k_lo", c.k_lo},
          {"k_hi", c.k_hi},           {"min_width", c.min_width}};
}

nlohmann::json to_json(const BoundaryFit& fit) {
  return {{"m", fit.slope},
          {"c", fit.intercept},
          {"m_se", fit.slope_se},
          {"c_se", fit.intercept_se},
          {"n", fit.n},
          {"k_star", fit.k_star},
          {"residuals", fit.residuals},
          {"rms_residual", fit.rms_residual}};
}

nlohmann::json to_json(const UniquenessReport& r, std::span<const std::string> labels) {
  nlohmann::json by_degree = nlohmann::json::array();
  for (const auto& [k, row] : r.nonempty_by_degree) {
    by_degree.push_back({{"degree", k}, {"nodes", row.nodes}, {"nonempty", row.nonempty},
                         {"fraction", row.fraction()}});
  }
  nlohmann::json j = {{"neighborhood_uniqueness", r.neighborhood_uniqueness},
                      {"degree_uniqueness", r.degree_uniqueness},
                      {"nonempty_fraction", r.nonempty_fraction},
                      {"isomorphism_classes", r.classes},
                      {"nonempty_by_degree", by_degree}};
  if (!labels.empty()) {
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t v = 0; v < r.occurrence.size(); ++v) {
      nodes.push_back({{"node", labels[v]}, {"occurrence", r.occurrence[v]}});
    }
    j["nodes"] = std::move(nodes);
  }
  return j;
}

std::string analysis_csv(const SummaryStats& s, const UniquenessReport& r) {
  std::string out =
      "n,m,avg_degree,clustering,neighborhood_uniqueness,degree_uniqueness,nonempty_fraction\n";
  out += std::to_string(s.n) + ',' + std::to_string(s.m) + ',' + format_number(s.avg_degree) + ',' +
         format_number(s.clustering) + ',' + format_number(r.neighborhood_uniqueness) + ',' +
         format_number(r.degree_uniqueness) + ',' + format_number(r.nonempty_fraction) + '\n';
  return out;
}

std::string er_curve_csv(const ErCurve& curve) {
  std::string out = "avg_k,expected_Uk,expected_Ndelta\n";
  for (const auto& p : curve.points) {
    out += format_number(p.avg_degree) + ',' + format_number(p.degree_uniqueness) + ',' +
           format_number(p.nonempty_fraction) + '\n';
  }
  return out;
}

std::string map_csv(const UniquenessMap& map) {
  std::string out = "n,avg_k,mean_uniqueness,sem,reps\n";
  for (const auto& cell : map.cells) {
    out += std::to_string(cell.n) + ',' + format_number(cell.avg_degree) + ',';
    if (cell.skipped) {
      out += ",,0\n";
      continue;
    }
    out += format_number(cell.uniqueness.mean) + ',' + format_number(cell.uniqueness.sem) + ',' +
           std::to_string(cell.uniqueness.count) + '\n';
  }
  return out;
}

std::string sampling_report_csv(const SamplingReport& report) {
  std::string out =
      "rate,trials,avg_degree,uniqueness,uniqueness_sem,degree_error,triangle_error\n";
  for (const auto& row : report.rows) {
    out += format_number(row.rate) + ',' + std::to_string(row.trials) + ',' +
           format_number(row.avg_degree.mean) + ',' + format_number(row.uniqueness.mean) + ',' +
           format_number(row.uniqueness.sem) + ',' + format_number(row.degree_error.mean) + ',' +
           format_number(row.triangle_error.mean) + '\n';
  }
  return out;
}

std::string boundary_csv(std::span<const std::size_t> sizes, std::span<const SearchResult> results) {
  std::string out = "n,k_star,evaluations,simulations,outcome,lo,hi\n";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto& r = results[i];
    out += std::to_string(sizes[i]) + ',' + format_number(r.k_star) + ',' +
           std::to_string(r.steps.size()) + ',' + std::to_string(r.simulations) + ',' +
           std::string(to_string(r.outcome)) + ',' + format_number(r.lo) + ',' + format_number(r.hi) +
           '\n';
  }
  return out;
}

std::string boundary_steps_csv(std::span<const std::size_t> sizes,
                               std::span<const SearchResult> results) {
  std::string out = "n,avg_k,mean_uniqueness,sem,sims,endpoint\n";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    for (const auto& step : results[i].steps) {
      out += std::to_string(sizes[i]) + ',' + format_number(step.avg_degree) + ',' +
             format_number(step.uniqueness.mean) + ',' + format_number(step.uniqueness.sem) + ',' +
             std::to_string(step.uniqueness.count) + ',' + (step.endpoint ? "1" : "0") + '\n';
    }
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 unavailable");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kDigits[digest[i] >> 4];
    hex += kDigits[digest[i] & 0xf];
  }
  return hex;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace nbrisk
