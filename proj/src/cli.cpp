#include "nbrisk/cli.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"
#include "nbrisk/error.hpp"
#include "nbrisk/graph.hpp"
#include "nbrisk/models.hpp"
#include "nbrisk/output.hpp"
#include "nbrisk/parallel.hpp"
#include "nbrisk/sampling.hpp"
#include "nbrisk/sweep.hpp"
#include "nbrisk/uniqueness.hpp"

#ifndef NBRISK_VERSION
#define NBRISK_VERSION "unknown"
#endif

namespace nbrisk {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view version_string() { return "nbrisk " NBRISK_VERSION; }

namespace {

double parse_double(std::string_view text) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ParameterError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) return parts;
    start = end + 1;
  }
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  if (text.empty()) throw ParameterError("empty grid");
  std::vector<double> values;
  if (text.find(':') == std::string_view::npos) {
    for (auto part : split(text, ',')) values.push_back(parse_double(part));
    return values;
  }
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3) throw ParameterError("bad grid '" + std::string(text) + "'");
  const double a = parse_double(parts[0]);
  const double b = parse_double(parts[1]);
  if (b < a) throw ParameterError("grid end lies below its start");
  if (parts.size() == 3 && parts[2].starts_with("log")) {
    const double count = parse_double(parts[2].substr(3));
    if (count < 2 || count != std::floor(count) || a <= 0.0) {
      throw ParameterError("log grid needs a positive start and at least 2 points");
    }
    const auto points = static_cast<std::size_t>(count);
    const double ratio = std::log(b / a);
    for (std::size_t i = 0; i < points; ++i) {
      values.push_back(i + 1 == points ? b
                                       : a * std::exp(ratio * static_cast<double>(i) /
                                                      static_cast<double>(points - 1)));
    }
    return values;
  }
  const double step = parts.size() == 3 ? parse_double(parts[2]) : 1.0;
  if (!(step > 0.0)) throw ParameterError("grid step must be positive");
  const auto points = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < points; ++i) values.push_back(a + step * static_cast<double>(i));
  return values;
}

std::vector<std::size_t> parse_size_grid(std::string_view text) {
  std::vector<std::size_t> sizes;
  for (double v : parse_grid(text)) {
    const double r = std::round(v);
    if (r < 1) throw ParameterError("network sizes must be positive");
    const auto n = static_cast<std::size_t>(r);
    if (std::find(sizes.begin(), sizes.end(), n) == sizes.end()) sizes.push_back(n);
  }
  return sizes;
}

namespace {

// Options shared by every subcommand.
struct Common {
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::size_t jobs = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out_dir, "Output directory");
  sub->add_option("--seed", c.seed, "Master seed (drawn and recorded when omitted)");
  sub->add_option("--jobs", c.jobs, "Worker threads (0: $NBRISK_JOBS or hardware concurrency)");
}

struct ModelOptions {
  std::string model = "rgg";
  double beta = 0.5;
};

void add_model(CLI::App* sub, ModelOptions& m) {
  sub->add_option("--model", m.model, "Model family: er, ws or rgg");
  sub->add_option("--beta", m.beta, "Watts-Strogatz rewiring probability");
}

ModelSpec model_template(const ModelOptions& m) {
  ModelSpec spec;
  spec.family = parse_model_family(m.model);
  if (spec.family == ModelFamily::kWattsStrogatz) spec.beta = m.beta;
  return spec;
}

// Everything a subcommand hands back for the manifest.
struct RunRecord {
  json details = json::object();
  std::vector<fs::path> inputs;
};

json resolved_parameters(const CLI::App* sub, const Common& c, std::vector<std::string>& replay) {
  json params = json::object();
  replay = {"nbrisk", sub->get_name()};
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name.empty()) continue;
    if (opt->get_type_size_max() == 0) {
      params[name] = opt->count() > 0;
      if (opt->count() > 0) replay.push_back("--" + name);
      continue;
    }
    std::vector<std::string> values;
    if (name == "seed") {
      values = {std::to_string(c.seed)};
    } else if (opt->count() > 0) {
      values = opt->results();
    } else if (!opt->get_default_str().empty()) {
      values = {opt->get_default_str()};
    } else {
      continue;
    }
    params[name] = values.size() == 1 ? json(values.front()) : json(values);
    replay.push_back("--" + name);
    replay.insert(replay.end(), values.begin(), values.end());
  }
  return params;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neighborhood re-identification risk: measure, model and mitigate", "nbrisk"};
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", std::string(version_string()));
  app.set_config("--config", "", "Key = value config file; command-line flags take precedence");
  app.require_subcommand(1);

  Common common;
  std::function<RunRecord()> handler;

  // analyze
  std::string input;
  bool per_node = false;
  std::string format = "json";
  auto* analyze = app.add_subcommand("analyze", "Summary statistics and uniqueness of an edge list");
  analyze->add_option("--input", input, "Edge-list file")->required();
  analyze->add_flag("--per-node", per_node, "Include per-node occurrence frequencies");
  analyze->add_option("--format", format, "Stdout format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  add_common(analyze, common);
  analyze->callback([&] {
    handler = [&] {
      RunRecord rec;
      rec.inputs.push_back(input);
      const LoadedGraph loaded = load_edge_list(input);
      if (loaded.duplicate_edges || loaded.self_loops) {
        err << "warning: dropped " << loaded.duplicate_edges << " duplicate edges and "
            << loaded.self_loops << " self-loops\n";
      }
      const SummaryStats stats = summary_stats(loaded.graph);
      const UniquenessReport report = uniqueness_report(loaded.graph, common.jobs);
      json j = {{"input", input},
                {"summary", to_json(stats)},
                {"uniqueness", to_json(report, per_node ? std::span<const std::string>(loaded.labels)
                                                        : std::span<const std::string>())},
                {"dropped", {{"duplicate_edges", loaded.duplicate_edges},
                             {"self_loops", loaded.self_loops}}}};
      const std::string csv = analysis_csv(stats, report);
      write_file(fs::path(common.out_dir) / "analysis.json", j.dump(2) + "\n");
      write_file(fs::path(common.out_dir) / "analysis.csv", csv);
      out << (format == "csv" ? csv : j.dump(2) + "\n");
      return rec;
    };
  });

  // generate
  ModelOptions model;
  std::size_t size = 1000;
  double avg_degree = 10.0;
  auto* generate_cmd = app.add_subcommand("generate", "Draw one network from a model");
  add_model(generate_cmd, model);
  generate_cmd->add_option("--n", size, "Number of nodes");
  generate_cmd->add_option("--k", avg_degree, "Target average degree");
  add_common(generate_cmd, common);
  generate_cmd->callback([&] {
    handler = [&] {
      ModelSpec spec = model_template(model);
      spec.n = size;
      spec.avg_degree = avg_degree;
      spec.seed = common.seed;
      const Graph g = generate(spec);
      json j = to_json(spec);
      j["edges"] = g.edge_count();
      j["realized_avg_degree"] = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(spec.n);
      if (spec.family == ModelFamily::kGeometric) j["radius"] = rgg_radius(spec.n, spec.avg_degree);
      if (spec.family == ModelFamily::kWattsStrogatz) j["lattice_degree"] = ws_lattice_degree(spec.avg_degree);
      write_file(fs::path(common.out_dir) / "graph.txt", format_edge_list(g));
      write_file(fs::path(common.out_dir) / "model.json", j.dump(2) + "\n");
      return RunRecord{};
    };
  });

  // er-curve
  std::string k_grid_text;
  auto* er_cmd = app.add_subcommand("er-curve", "Closed-form ER degree uniqueness and non-empty fraction");
  er_cmd->add_option("--n", size, "Number of nodes");
  er_cmd->add_option("--k-grid", k_grid_text, "Average-degree grid (default 0..min(100, n-1))");
  add_common(er_cmd, common);
  er_cmd->callback([&] {
    handler = [&] {
      const auto grid = k_grid_text.empty() ? std::vector<double>{} : parse_grid(k_grid_text);
      write_file(fs::path(common.out_dir) / "er_curve.csv", er_curve_csv(er_curve(size, grid)));
      return RunRecord{};
    };
  });

  // map
  std::string n_grid_text = "100:20000:log10";
  std::string map_k_grid = "1:100";
  std::size_t reps = 10;
  auto* map_cmd = app.add_subcommand("map", "Mean uniqueness over an (n, <k>) grid");
  add_model(map_cmd, model);
  map_cmd->add_option("--n-grid", n_grid_text, "Network sizes");
  map_cmd->add_option("--k-grid", map_k_grid, "Average degrees");
  map_cmd->add_option("--reps", reps, "Networks per cell");
  add_common(map_cmd, common);
  map_cmd->callback([&] {
    handler = [&] {
      const auto sizes = parse_size_grid(n_grid_text);
      const auto degrees = parse_grid(map_k_grid);
      const auto map = uniqueness_map(model_template(model), sizes, degrees, reps, common.seed, common.jobs);
      write_file(fs::path(common.out_dir) / "map.csv", map_csv(map));
      RunRecord rec;
      json skipped = json::array();
      for (const auto& cell : map.cells) {
        if (cell.skipped) skipped.push_back({{"n", cell.n}, {"avg_k", cell.avg_degree}, {"reason", cell.skip_reason}});
      }
      rec.details["skipped_cells"] = std::move(skipped);
      return rec;
    };
  });

  // boundary
  std::string boundary_n_grid;
  SearchConfig search;
  auto* boundary_cmd = app.add_subcommand("boundary", "Stochastic binary search for the U_N = target boundary");
  add_model(boundary_cmd, model);
  boundary_cmd->add_option("--n-grid", boundary_n_grid, "Network sizes")->required();
  boundary_cmd->add_option("--target", search.target, "Target uniqueness");
  boundary_cmd->add_option("--tol", search.tolerance, "Tolerance around the target");
  boundary_cmd->add_option("--max-sims", search.max_simulations, "Maximum networks per evaluated degree");
  boundary_cmd->add_option("--batch", search.batch, "Networks per batch");
  boundary_cmd->add_option("--confidence", search.confidence, "Confidence level of the CI");
  boundary_cmd->add_option("--k-lo", search.k_lo, "Lower end of the degree interval");
  boundary_cmd->add_option("--k-hi", search.k_hi, "Upper end of the degree interval");
  boundary_cmd->add_option("--min-width", search.min_width, "Stop when the interval is narrower");
  add_common(boundary_cmd, common);
  boundary_cmd->callback([&] {
    handler = [&] {
      const auto sizes = parse_size_grid(boundary_n_grid);
      const ModelSpec tmpl = model_template(model);
      std::vector<SearchResult> results;
      for (auto n : sizes) results.push_back(boundary_search(tmpl, n, search, common.seed, common.jobs));
      write_file(fs::path(common.out_dir) / "boundary.csv", boundary_csv(sizes, results));
      write_file(fs::path(common.out_dir) / "boundary_steps.csv", boundary_steps_csv(sizes, results));
      RunRecord rec;
      if (sizes.size() >= 3) {
        std::vector<double> ns, ks;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
          ns.push_back(static_cast<double>(sizes[i]));
          ks.push_back(results[i].k_star);
        }
        write_file(fs::path(common.out_dir) / "fit.json", to_json(fit_boundary_line(ns, ks)).dump(2) + "\n");
      } else {
        err << "note: fewer than 3 sizes, no fit written\n";
      }
      return rec;
    };
  });

  // sample
  double rate = 0.5;
  std::string mode_text = "bernoulli";
  auto* sample_cmd = app.add_subcommand("sample", "Uniform edge sampling of an edge list");
  sample_cmd->add_option("--input", input, "Edge-list file")->required();
  sample_cmd->add_option("--rate", rate, "Sampling rate s in (0, 1]");
  sample_cmd->add_option("--mode", mode_text, "bernoulli or exact-count");
  add_common(sample_cmd, common);
  sample_cmd->callback([&] {
    handler = [&] {
      RunRecord rec;
      rec.inputs.push_back(input);
      const LoadedGraph loaded = load_edge_list(input);
      const SamplingPlan plan{rate, parse_sampling_mode(mode_text), common.seed};
      const Graph sampled = sample_edges(loaded.graph, plan);
      write_file(fs::path(common.out_dir) / "sampled.txt", format_edge_list(sampled, loaded.labels));
      json prov = {{"rate", plan.rate},
                   {"mode", std::string(to_string(plan.mode))},
                   {"seed", plan.seed},
                   {"nodes", sampled.node_count()},
                   {"original_edges", loaded.graph.edge_count()},
                   {"retained_edges", sampled.edge_count()}};
      write_file(fs::path(common.out_dir) / "sample.json", prov.dump(2) + "\n");
      return rec;
    };
  });

  // sampling-report
  std::string rates_text = "1.0,0.9,0.8,0.7,0.6,0.5,0.4,0.3,0.2,0.1";
  std::size_t trials = 1;
  auto* report_cmd = app.add_subcommand("sampling-report", "Uniqueness and estimator errors across sampling rates");
  report_cmd->add_option("--input", input, "Edge-list file")->required();
  report_cmd->add_option("--rates", rates_text, "Sampling rates (grid expression)");
  report_cmd->add_option("--mode", mode_text, "bernoulli or exact-count");
  report_cmd->add_option("--trials", trials, "Independent samples per rate");
  add_common(report_cmd, common);
  report_cmd->callback([&] {
    handler = [&] {
      RunRecord rec;
      rec.inputs.push_back(input);
      const LoadedGraph loaded = load_edge_list(input);
      const auto rates = parse_grid(rates_text);
      const auto report = sampling_report(loaded.graph, rates, common.seed,
                                          parse_sampling_mode(mode_text), trials, common.jobs);
      write_file(fs::path(common.out_dir) / "sampling_report.csv", sampling_report_csv(report));
      rec.details["original"] = {{"avg_degree", report.original_avg_degree},
                                 {"uniqueness", report.original_uniqueness},
                                 {"triangles", report.original_triangles}};
      return rec;
    };
  });

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->get_option("--seed")->count() == 0) {
    std::random_device rd;
    common.seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  }
  if (common.jobs == 0) common.jobs = default_jobs();

  try {
    fs::create_directories(common.out_dir);
    const auto start = std::chrono::steady_clock::now();
    RunRecord rec = handler();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    std::vector<std::string> replay;
    json manifest = {{"tool", "nbrisk"},
                     {"version", std::string(version_string())},
                     {"subcommand", sub->get_name()},
                     {"seed", common.seed},
                     {"parameters", resolved_parameters(sub, common, replay)}};
    manifest["replay"] = replay;
    manifest["duration_seconds"] = elapsed.count();
    json inputs = json::array();
    for (const auto& path : rec.inputs) inputs.push_back({{"path", path.string()}, {"sha256", sha256_file(path)}});
    manifest["inputs"] = std::move(inputs);
    if (!rec.details.empty()) manifest["details"] = std::move(rec.details);
    write_file(fs::path(common.out_dir) / "manifest.json", manifest.dump(2) + "\n");
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace nbrisk
