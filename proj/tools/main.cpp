// SPDX-License-Identifier: Apache-2.0
//
// numlab: command-line entry point exposing each experiment as a subcommand.
// Exit codes: 0 success, 1 experiment error, 2 usage error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "numlab/continuum.hpp"
#include "numlab/fd_wall.hpp"
#include "numlab/pushforward.hpp"
#include "numlab/rou.hpp"
#include "numlab/scaling.hpp"
#include "numlab/spurious.hpp"
#include "numlab/svg.hpp"
#include "numlab/table.hpp"
#include "numlab/version.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonConfig {
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  bool emit_svg = false;
  std::string config_path;
};

json load_config_file(const std::string& path, const std::string& subcommand) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  for (const auto& item : doc.items()) {
    const std::string& key = item.key();
    if (key != "subcommand" && key != "seed" && key != "out" && key != "svg" &&
        key != "params") {
      throw std::invalid_argument("unknown key '" + key + "' in config file");
    }
  }
  if (doc.contains("subcommand") && doc["subcommand"].get<std::string>() != subcommand) {
    throw std::invalid_argument("config file targets subcommand '" +
                                doc["subcommand"].get<std::string>() + "', not '" +
                                subcommand + "'");
  }
  return doc;
}

void check_param_keys(const json& params, const std::vector<std::string>& known) {
  if (!params.is_object()) throw std::invalid_argument("'params' must be a JSON object");
  for (const auto& item : params.items()) {
    bool ok = false;
    for (const auto& name : known) ok = ok || name == item.key();
    if (!ok) throw std::invalid_argument("unknown parameter '" + item.key() + "'");
  }
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty()) continue;
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("bad number '" + token + "'");
    values.push_back(value);
  }
  if (values.empty()) throw std::invalid_argument("expected a comma-separated number list");
  return values;
}

std::vector<std::string> parse_string_list(const std::string& text) {
  std::vector<std::string> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (!token.empty()) values.push_back(token);
  }
  if (values.empty()) throw std::invalid_argument("expected a comma-separated list");
  return values;
}

json common_echo(const std::string& subcommand, const CommonConfig& common, json params) {
  return json{{"subcommand", subcommand},
              {"seed", common.seed},
              {"out", common.out_dir},
              {"svg", common.emit_svg},
              {"params", std::move(params)}};
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write to '" + path.string() + "'");
  out << bytes;
}

struct Emission {
  numlab::ExperimentTable table;
  std::optional<numlab::PlotSpec> plot;               // nullopt: no compatible plot kind
  std::optional<numlab::ExperimentTable> plot_table;  // when the plot needs a reshaped table
};

void emit(const std::string& subcommand, const CommonConfig& common, const json& params,
          Emission emission) {
  emission.table.add_metadata("config", common_echo(subcommand, common, params).dump());
  emission.table.add_metadata("version", numlab::kVersion);
  fs::create_directories(common.out_dir);
  const fs::path base = fs::path(common.out_dir) / subcommand;
  write_file(fs::path(base).replace_extension(".csv"), emission.table.to_csv());
  if (common.emit_svg) {
    if (!emission.plot) {
      throw std::invalid_argument("subcommand '" + subcommand +
                                  "' has no compatible plot kind for --svg");
    }
    const numlab::ExperimentTable& source =
        emission.plot_table ? *emission.plot_table : emission.table;
    write_file(fs::path(base).replace_extension(".svg"),
               numlab::render_svg(source, *emission.plot));
  }
}

// ---------------------------------------------------------------------------
// scaling
// ---------------------------------------------------------------------------

struct ScalingParams {
  std::string laws = "reference,mc";
  double grid_min = 1e14;
  double grid_max = 1e24;
  int points_per_decade = 10;
  double factor = 0.0;  // > 0 switches to the multiplier report
  std::string catalog_file;
  bool export_catalog = false;

  json to_json() const {
    return {{"laws", laws},
            {"grid_min", grid_min},
            {"grid_max", grid_max},
            {"points_per_decade", points_per_decade},
            {"factor", factor},
            {"catalog_file", catalog_file},
            {"export_catalog", export_catalog}};
  }
  void from_json(const json& p) {
    check_param_keys(p, {"laws", "grid_min", "grid_max", "points_per_decade", "factor",
                         "catalog_file", "export_catalog"});
    if (p.contains("laws")) laws = p["laws"].get<std::string>();
    if (p.contains("grid_min")) grid_min = p["grid_min"].get<double>();
    if (p.contains("grid_max")) grid_max = p["grid_max"].get<double>();
    if (p.contains("points_per_decade")) points_per_decade = p["points_per_decade"].get<int>();
    if (p.contains("factor")) factor = p["factor"].get<double>();
    if (p.contains("catalog_file")) catalog_file = p["catalog_file"].get<std::string>();
    if (p.contains("export_catalog")) export_catalog = p["export_catalog"].get<bool>();
  }
};

int run_scaling(const CommonConfig& common, const ScalingParams& params) {
  std::vector<numlab::scaling::ScalingLaw> catalog;
  if (params.catalog_file.empty()) {
    catalog = numlab::scaling::builtin_catalog();
  } else {
    std::ifstream in(params.catalog_file);
    if (!in) throw std::invalid_argument("cannot open catalog '" + params.catalog_file + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    catalog = numlab::scaling::catalog_from_json(buffer.str());
  }

  std::vector<numlab::scaling::ScalingLaw> selected;
  if (params.laws == "all") {
    selected = catalog;
  } else {
    for (const auto& label : parse_string_list(params.laws)) {
      bool found = false;
      for (const auto& law : catalog) {
        if (law.label == label) {
          selected.push_back(law);
          found = true;
          break;
        }
      }
      if (!found) throw std::invalid_argument("unknown law '" + label + "'");
    }
  }

  Emission emission = [&]() -> Emission {
    if (params.factor > 0.0) {
      return {numlab::scaling::multiplier_table(selected, params.factor), std::nullopt,
              std::nullopt};
    }
    const auto grid = numlab::scaling::geometric_grid(params.grid_min, params.grid_max,
                                                      params.points_per_decade);
    numlab::ExperimentTable table = numlab::scaling::scaling_comparison_table(selected, grid);
    numlab::PlotSpec plot;
    plot.kind = numlab::PlotKind::loglog_lines;
    plot.title = "Error scaling";
    plot.x_column = "resource";
    for (const auto& law : selected) plot.y_columns.push_back("error_" + law.label);
    return {std::move(table), plot, std::nullopt};
  }();

  if (params.export_catalog) {
    fs::create_directories(common.out_dir);
    write_file(fs::path(common.out_dir) / "laws.json",
               numlab::scaling::catalog_to_json(catalog));
  }
  emit("scaling", common, params.to_json(), std::move(emission));
  return 0;
}

// ---------------------------------------------------------------------------
// fdwall
// ---------------------------------------------------------------------------

struct FdwallParams {
  std::string precision = "both";  // binary32 | binary64 | both
  double eval_point = 1.0;

  json to_json() const { return {{"precision", precision}, {"eval_point", eval_point}}; }
  void from_json(const json& p) {
    check_param_keys(p, {"precision", "eval_point"});
    if (p.contains("precision")) precision = p["precision"].get<std::string>();
    if (p.contains("eval_point")) eval_point = p["eval_point"].get<double>();
  }
};

int run_fdwall(const CommonConfig& common, const FdwallParams& params) {
  std::vector<numlab::fdwall::Precision> precisions;
  if (params.precision == "both") {
    precisions = {numlab::fdwall::Precision::binary64, numlab::fdwall::Precision::binary32};
  } else {
    precisions = {numlab::fdwall::precision_from_string(params.precision)};
  }

  numlab::ExperimentTable table({{"h", "1"},
                                 {"relative_error", "1"},
                                 {"truncation_model", "1"},
                                 {"roundoff_model", "1"},
                                 {"precision", "text"}});
  // Wide companion table for the log-log plot: one error column per
  // precision (NaN padded) plus the h^2 guide line.
  std::vector<numlab::Column> plot_columns{{"h", "1"}};
  for (auto precision : precisions) {
    plot_columns.push_back({"relative_error_" + to_string(precision), "1"});
  }
  plot_columns.push_back({"truncation_model", "1"});
  numlab::ExperimentTable plot_table(std::move(plot_columns));

  for (std::size_t pi = 0; pi < precisions.size(); ++pi) {
    const auto precision = precisions[pi];
    numlab::fdwall::WallExperimentConfig config;
    config.precision = precision;
    config.h_values = numlab::fdwall::default_h_sweep(precision);
    config.eval_point = params.eval_point;
    const auto result = numlab::fdwall::relative_error_sweep(config);
    const double eps = numlab::fdwall::machine_epsilon(precision);
    const std::string name = to_string(precision);
    table.add_metadata("wall_h_" + name, numlab::format_double(result.wall_h));
    table.add_metadata("predicted_wall_h_" + name,
                       numlab::format_double(numlab::fdwall::predicted_wall(eps)));
    for (const auto& row : result.rows) {
      table.add_row({row.h, row.relative_error, row.h * row.h, eps / row.h, name});
      std::vector<numlab::Cell> wide;
      wide.emplace_back(row.h);
      for (std::size_t pj = 0; pj < precisions.size(); ++pj) {
        wide.emplace_back(pj == pi ? row.relative_error
                                   : std::numeric_limits<double>::quiet_NaN());
      }
      wide.emplace_back(row.h * row.h);
      plot_table.add_row(std::move(wide));
    }
  }

  numlab::PlotSpec plot;
  plot.kind = numlab::PlotKind::loglog_lines;
  plot.title = "Centered-difference roundoff wall";
  plot.x_column = "h";
  for (std::size_t i = 1; i < plot_table.columns().size(); ++i) {
    plot.y_columns.push_back(plot_table.columns()[i].name);
  }
  emit("fdwall", common, params.to_json(), {std::move(table), plot, std::move(plot_table)});
  return 0;
}

// ---------------------------------------------------------------------------
// pushforward
// ---------------------------------------------------------------------------

struct PushforwardParams {
  std::string weights = "0.1,1,2";
  std::string activation = "tanh";
  long samples = 10000;
  int bins = 101;
  double bin_lo = std::numeric_limits<double>::quiet_NaN();  // NaN: activation default
  double bin_hi = std::numeric_limits<double>::quiet_NaN();

  json to_json() const {
    json p{{"weights", weights},
           {"activation", activation},
           {"samples", samples},
           {"bins", bins}};
    if (!std::isnan(bin_lo)) p["bin_lo"] = bin_lo;
    if (!std::isnan(bin_hi)) p["bin_hi"] = bin_hi;
    return p;
  }
  void from_json(const json& p) {
    check_param_keys(p, {"weights", "activation", "samples", "bins", "bin_lo", "bin_hi"});
    if (p.contains("weights")) weights = p["weights"].get<std::string>();
    if (p.contains("activation")) activation = p["activation"].get<std::string>();
    if (p.contains("samples")) samples = p["samples"].get<long>();
    if (p.contains("bins")) bins = p["bins"].get<int>();
    if (p.contains("bin_lo")) bin_lo = p["bin_lo"].get<double>();
    if (p.contains("bin_hi")) bin_hi = p["bin_hi"].get<double>();
  }
};

int run_pushforward(const CommonConfig& common, const PushforwardParams& params) {
  const auto weights = parse_double_list(params.weights);
  const auto activation = numlab::activation_from_string(params.activation);
  if (params.samples < 1) throw std::invalid_argument("samples must be >= 1");
  double lo = params.bin_lo;
  double hi = params.bin_hi;
  if (std::isnan(lo) && std::isnan(hi) && activation == numlab::Activation::tanh) {
    lo = -1.05;
    hi = 1.05;
  }
  numlab::ExperimentTable table = numlab::pushforward::weight_sweep_table(
      weights, activation, static_cast<std::size_t>(params.samples), common.seed,
      params.bins, lo, hi);

  numlab::PlotSpec plot;
  plot.kind = numlab::PlotKind::histogram_overlay;
  plot.title = "Push-forward of a standard normal";
  plot.x_column = "y_bin_center";
  plot.group_column = "W";
  plot.value_column = "empirical_density";
  plot.overlay_column = "analytic_density";
  emit("pushforward", common, params.to_json(), {std::move(table), plot, std::nullopt});
  return 0;
}

// ---------------------------------------------------------------------------
// continuum
// ---------------------------------------------------------------------------

struct ContinuumParams {
  std::string mode = "relax";  // relax | train
  std::string activation = "tanh";
  double weight = 2.0;
  double bias = 0.0;
  double alpha = 1.0;
  double horizon = 20.0;
  double dt = 0.05;
  double dtau = 0.05;
  int steps = 50;
  std::string x0 = "0.5";
  std::string inputs = "0.5,-0.3,1.0,0.2";
  std::string targets = "0.4,-0.25,0.8,0.15";

  json to_json() const {
    return {{"mode", mode},         {"activation", activation}, {"weight", weight},
            {"bias", bias},         {"alpha", alpha},           {"horizon", horizon},
            {"dt", dt},             {"dtau", dtau},             {"steps", steps},
            {"x0", x0},             {"inputs", inputs},         {"targets", targets}};
  }
  void from_json(const json& p) {
    check_param_keys(p, {"mode", "activation", "weight", "bias", "alpha", "horizon", "dt",
                         "dtau", "steps", "x0", "inputs", "targets"});
    if (p.contains("mode")) mode = p["mode"].get<std::string>();
    if (p.contains("activation")) activation = p["activation"].get<std::string>();
    if (p.contains("weight")) weight = p["weight"].get<double>();
    if (p.contains("bias")) bias = p["bias"].get<double>();
    if (p.contains("alpha")) alpha = p["alpha"].get<double>();
    if (p.contains("horizon")) horizon = p["horizon"].get<double>();
    if (p.contains("dt")) dt = p["dt"].get<double>();
    if (p.contains("dtau")) dtau = p["dtau"].get<double>();
    if (p.contains("steps")) steps = p["steps"].get<int>();
    if (p.contains("x0")) x0 = p["x0"].get<std::string>();
    if (p.contains("inputs")) inputs = p["inputs"].get<std::string>();
    if (p.contains("targets")) targets = p["targets"].get<std::string>();
  }
};

int run_continuum(const CommonConfig& common, const ContinuumParams& params) {
  numlab::continuum::ContinuumSpec spec;
  spec.activation = numlab::activation_from_string(params.activation);
  spec.relaxation_alpha = params.alpha;
  spec.horizon = params.horizon;
  spec.fast_step = params.dt;
  spec.slow_step = params.dtau;

  if (params.mode == "relax") {
    const auto x0 = parse_double_list(params.x0);
    const auto n = static_cast<Eigen::Index>(x0.size());
    spec.weights = params.weight * Eigen::MatrixXd::Identity(n, n);
    spec.bias = params.bias * Eigen::VectorXd::Ones(n);
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = x0[static_cast<std::size_t>(i)];
    const auto trajectory = numlab::continuum::relax(spec, x);
    numlab::ExperimentTable table = numlab::continuum::trajectory_table(trajectory);
    table.add_metadata("fixed_point_residual",
                       numlab::format_double(numlab::continuum::fixed_point_residual(
                           spec, trajectory.back().z)));
    emit("continuum", common, params.to_json(),
         {std::move(table), std::nullopt, std::nullopt});
    return 0;
  }
  if (params.mode != "train") {
    throw std::invalid_argument("mode must be 'relax' or 'train'");
  }
  spec.weights = Eigen::MatrixXd::Constant(1, 1, params.weight);
  spec.bias = Eigen::VectorXd::Constant(1, params.bias);
  numlab::continuum::ToyTask task;
  for (double v : parse_double_list(params.inputs)) {
    task.inputs.push_back(Eigen::VectorXd::Constant(1, v));
  }
  for (double v : parse_double_list(params.targets)) {
    task.targets.push_back(Eigen::VectorXd::Constant(1, v));
  }
  const auto result = numlab::continuum::train(spec, task, params.steps);
  numlab::ExperimentTable table = numlab::continuum::loss_table(result.loss_trace);
  table.add_metadata("final_weight", numlab::format_double(result.spec.weights(0, 0)));

  numlab::PlotSpec plot;
  plot.kind = numlab::PlotKind::loglog_lines;
  plot.title = "Gradient-flow training loss";
  plot.x_column = "tau_step";
  plot.y_columns = {"loss"};
  emit("continuum", common, params.to_json(), {std::move(table), plot, std::nullopt});
  return 0;
}

// ---------------------------------------------------------------------------
// rou
// ---------------------------------------------------------------------------

struct RouParams {
  std::string experiment = "report";     // report | convergence
  std::string distribution = "cauchy";   // cauchy | gaussian
  double bound_L = 100.0;
  bool normalized = true;
  int max_order = 10;
  std::string sizes = "1000,10000,100000,1000000";

  json to_json() const {
    return {{"experiment", experiment}, {"distribution", distribution},
            {"bound_L", bound_L},       {"normalized", normalized},
            {"max_order", max_order},   {"sizes", sizes}};
  }
  void from_json(const json& p) {
    check_param_keys(
        p, {"experiment", "distribution", "bound_L", "normalized", "max_order", "sizes"});
    if (p.contains("experiment")) experiment = p["experiment"].get<std::string>();
    if (p.contains("distribution")) distribution = p["distribution"].get<std::string>();
    if (p.contains("bound_L")) bound_L = p["bound_L"].get<double>();
    if (p.contains("normalized")) normalized = p["normalized"].get<bool>();
    if (p.contains("max_order")) max_order = p["max_order"].get<int>();
    if (p.contains("sizes")) sizes = p["sizes"].get<std::string>();
  }
};

int run_rou(const CommonConfig& common, const RouParams& params) {
  const numlab::rou::TruncatedCauchySpec spec{params.bound_L, params.normalized};
  if (params.experiment == "report") {
    numlab::rou::MomentReport report;
    if (params.distribution == "cauchy") {
      report = numlab::rou::truncated_cauchy_moments(spec, params.max_order);
    } else if (params.distribution == "gaussian") {
      // Unit-variance Gaussian: M_k = m_k = (k-1)!!.
      report.max_order = params.max_order;
      for (int k = 2; k <= params.max_order; k += 2) {
        const double mk = numlab::rou::gaussian_normalized_moment(k);
        report.central_moments[k] = mk;
        report.normalized[k] = mk;
        report.amplification[k] = std::pow(mk, 1.0 / k);
      }
    } else {
      throw std::invalid_argument("distribution must be 'cauchy' or 'gaussian'");
    }
    numlab::ExperimentTable table = numlab::rou::report_table(report);
    numlab::PlotSpec plot;
    plot.kind = numlab::PlotKind::loglog_lines;
    plot.title = "Uncertainty amplification by moment order";
    plot.x_column = "k";
    plot.y_columns = {"m_k", "a_k"};
    emit("rou", common, params.to_json(), {std::move(table), plot, std::nullopt});
    return 0;
  }
  if (params.experiment != "convergence") {
    throw std::invalid_argument("experiment must be 'report' or 'convergence'");
  }
  std::vector<std::size_t> sizes;
  for (double v : parse_double_list(params.sizes)) {
    if (!(v >= 2.0)) throw std::invalid_argument("sample sizes must be >= 2");
    sizes.push_back(static_cast<std::size_t>(v));
  }
  numlab::ExperimentTable table =
      numlab::rou::empirical_rou_convergence(spec, sizes, common.seed);

  // Wide view for the plot: one abs_error column per distribution.
  numlab::ExperimentTable plot_table(
      {{"n", "count"}, {"abs_error_truncated_cauchy", "1"}, {"abs_error_gaussian", "1"}});
  const std::size_t n_col = table.column_index("n");
  const std::size_t err_col = table.column_index("abs_error");
  const std::size_t dist_col = table.column_index("distribution");
  for (std::size_t r = 0; r + 1 < table.rows().size(); r += 2) {
    const bool cauchy_first = table.text_at(r, dist_col) == "truncated_cauchy";
    const std::size_t rc = cauchy_first ? r : r + 1;
    const std::size_t rg = cauchy_first ? r + 1 : r;
    plot_table.add_row({table.number_at(r, n_col), table.number_at(rc, err_col),
                        table.number_at(rg, err_col)});
  }
  numlab::PlotSpec plot;
  plot.kind = numlab::PlotKind::loglog_lines;
  plot.title = "a_4 estimation error vs sample size";
  plot.x_column = "n";
  plot.y_columns = {"abs_error_truncated_cauchy", "abs_error_gaussian"};
  emit("rou", common, params.to_json(), {std::move(table), plot, std::move(plot_table)});
  return 0;
}

// ---------------------------------------------------------------------------
// spurious
// ---------------------------------------------------------------------------

struct SpuriousParams {
  long n = 1024;
  long trials = 1000;
  double kappa = 0.13;
  std::string bit_string;  // optional: print a repeated-substring report
  int min_len = 3;

  json to_json() const {
    json p{{"n", n}, {"trials", trials}, {"kappa", kappa}, {"min_len", min_len}};
    if (!bit_string.empty()) p["string"] = bit_string;
    return p;
  }
  void from_json(const json& p) {
    check_param_keys(p, {"n", "trials", "kappa", "string", "min_len"});
    if (p.contains("n")) n = p["n"].get<long>();
    if (p.contains("trials")) trials = p["trials"].get<long>();
    if (p.contains("kappa")) kappa = p["kappa"].get<double>();
    if (p.contains("string")) bit_string = p["string"].get<std::string>();
    if (p.contains("min_len")) min_len = p["min_len"].get<int>();
  }
};

int run_spurious(const CommonConfig& common, const SpuriousParams& params) {
  if (!params.bit_string.empty()) {
    const auto s = numlab::spurious::BitString::parse(params.bit_string);
    const auto repeats = numlab::spurious::repeated_substrings(s, params.min_len);
    std::cout << "repeated substrings of '" << params.bit_string << "' (min length "
              << params.min_len << "):\n";
    for (const auto& [sub, count] : repeats) {
      std::cout << "  " << sub << " x" << count << "\n";
    }
  }
  const auto result = numlab::spurious::empirical_compressibility(
      params.n, params.trials, params.kappa, common.seed);
  numlab::ExperimentTable table = numlab::spurious::empirical_table(result);
  emit("spurious", common, params.to_json(), {std::move(table), std::nullopt, std::nullopt});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numlab: desk-scale numerical experiments on scaling laws, roundoff "
               "walls, push-forward densities, layer dynamics, heavy-tailed moments "
               "and compressibility counting"};
  app.require_subcommand(1);

  CommonConfig common;
  ScalingParams scaling_params;
  FdwallParams fdwall_params;
  PushforwardParams pushforward_params;
  ContinuumParams continuum_params;
  RouParams rou_params;
  SpuriousParams spurious_params;

  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "master seed (64-bit unsigned)");
    sub->add_option("--out", common.out_dir, "output directory");
    sub->add_flag("--svg", common.emit_svg, "also emit an SVG plot");
    sub->add_option("--config", common.config_path, "JSON config file (flags override it)");
  };

  CLI::App* scaling_cmd = app.add_subcommand("scaling", "power-law error/cost tables");
  add_common(scaling_cmd);
  scaling_cmd->add_option("--laws", scaling_params.laws,
                          "comma list of catalog labels, or 'all'");
  scaling_cmd->add_option("--grid-min", scaling_params.grid_min, "resource grid start");
  scaling_cmd->add_option("--grid-max", scaling_params.grid_max, "resource grid end");
  scaling_cmd->add_option("--points-per-decade", scaling_params.points_per_decade,
                          "grid resolution");
  scaling_cmd->add_option("--factor", scaling_params.factor,
                          "emit the resource-multiplier report for this error reduction");
  scaling_cmd->add_option("--catalog", scaling_params.catalog_file,
                          "load laws from a JSON catalog instead of the built-ins");
  scaling_cmd->add_flag("--export-catalog", scaling_params.export_catalog,
                        "also write the law catalog to <out>/laws.json");

  CLI::App* fdwall_cmd = app.add_subcommand("fdwall", "centered-difference roundoff wall");
  add_common(fdwall_cmd);
  fdwall_cmd->add_option("--precision", fdwall_params.precision, "binary32, binary64 or both");
  fdwall_cmd->add_option("--eval-point", fdwall_params.eval_point, "where to differentiate");

  CLI::App* pushforward_cmd = app.add_subcommand("pushforward", "densities through y = f(Wx)");
  add_common(pushforward_cmd);
  pushforward_cmd->add_option("--W", pushforward_params.weights, "comma list of weights");
  pushforward_cmd->add_option("--activation", pushforward_params.activation,
                              "identity, tanh, relu or gelu");
  pushforward_cmd->add_option("--samples", pushforward_params.samples, "samples per weight");
  pushforward_cmd->add_option("--bins", pushforward_params.bins, "histogram bins");
  pushforward_cmd->add_option("--bin-lo", pushforward_params.bin_lo, "histogram lower edge");
  pushforward_cmd->add_option("--bin-hi", pushforward_params.bin_hi, "histogram upper edge");

  CLI::App* continuum_cmd =
      app.add_subcommand("continuum", "fast relaxation and slow gradient flow");
  add_common(continuum_cmd);
  continuum_cmd->add_option("--mode", continuum_params.mode, "relax or train");
  continuum_cmd->add_option("--activation", continuum_params.activation, "activation");
  continuum_cmd->add_option("--weight", continuum_params.weight, "scalar weight (W = w I)");
  continuum_cmd->add_option("--bias", continuum_params.bias, "scalar bias");
  continuum_cmd->add_option("--alpha", continuum_params.alpha, "relaxation rate");
  continuum_cmd->add_option("--horizon", continuum_params.horizon, "fast-time horizon T");
  continuum_cmd->add_option("--dt", continuum_params.dt, "fast Euler step");
  continuum_cmd->add_option("--dtau", continuum_params.dtau, "slow gradient-flow step");
  continuum_cmd->add_option("--steps", continuum_params.steps, "slow steps (train)");
  continuum_cmd->add_option("--x0", continuum_params.x0, "initial state, comma list (relax)");
  continuum_cmd->add_option("--inputs", continuum_params.inputs, "batch inputs (train)");
  continuum_cmd->add_option("--targets", continuum_params.targets, "batch targets (train)");

  CLI::App* rou_cmd = app.add_subcommand("rou", "moment calculus and slow convergence");
  add_common(rou_cmd);
  rou_cmd->add_option("--experiment", rou_params.experiment, "report or convergence");
  rou_cmd->add_option("--distribution", rou_params.distribution, "cauchy or gaussian");
  rou_cmd->add_option("--L", rou_params.bound_L, "truncation bound");
  rou_cmd->add_option("--normalized", rou_params.normalized,
                      "renormalize the truncated density");
  rou_cmd->add_option("--max-order", rou_params.max_order, "highest (even) moment order");
  rou_cmd->add_option("--sizes", rou_params.sizes, "sample sizes, comma list");

  CLI::App* spurious_cmd =
      app.add_subcommand("spurious", "compressibility counting and the TC/FC ratio");
  add_common(spurious_cmd);
  spurious_cmd->add_option("--n", spurious_params.n, "string length in bits");
  spurious_cmd->add_option("--trials", spurious_params.trials, "random strings to compress");
  spurious_cmd->add_option("--kappa", spurious_params.kappa, "compressibility index");
  spurious_cmd->add_option("--string", spurious_params.bit_string,
                           "print the repeated-substring report of this bit string");
  spurious_cmd->add_option("--min-len", spurious_params.min_len,
                           "minimum substring length for --string");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* active = app.get_subcommands().front();
  const std::string name = active->get_name();
  auto flag_given = [active](const std::string& flag) { return active->count(flag) > 0; };

  try {
    // Precedence: defaults < config file < command-line flags. CLI11 has
    // already written flag values over the defaults, so the file only fills
    // in parameters whose flags were not given.
    if (!common.config_path.empty()) {
      const json doc = load_config_file(common.config_path, name);
      if (doc.contains("seed") && !flag_given("--seed")) {
        common.seed = doc["seed"].get<std::uint64_t>();
      }
      if (doc.contains("out") && !flag_given("--out")) {
        common.out_dir = doc["out"].get<std::string>();
      }
      if (doc.contains("svg") && !flag_given("--svg")) {
        common.emit_svg = doc["svg"].get<bool>();
      }
      if (doc.contains("params")) {
        const json& p = doc["params"];
        if (name == "scaling") {
          ScalingParams file_params;
          file_params.from_json(p);
          if (!flag_given("--laws")) scaling_params.laws = file_params.laws;
          if (!flag_given("--grid-min")) scaling_params.grid_min = file_params.grid_min;
          if (!flag_given("--grid-max")) scaling_params.grid_max = file_params.grid_max;
          if (!flag_given("--points-per-decade"))
            scaling_params.points_per_decade = file_params.points_per_decade;
          if (!flag_given("--factor")) scaling_params.factor = file_params.factor;
          if (!flag_given("--catalog")) scaling_params.catalog_file = file_params.catalog_file;
          if (!flag_given("--export-catalog"))
            scaling_params.export_catalog = file_params.export_catalog;
        } else if (name == "fdwall") {
          FdwallParams file_params;
          file_params.from_json(p);
          if (!flag_given("--precision")) fdwall_params.precision = file_params.precision;
          if (!flag_given("--eval-point")) fdwall_params.eval_point = file_params.eval_point;
        } else if (name == "pushforward") {
          PushforwardParams file_params;
          file_params.from_json(p);
          if (!flag_given("--W")) pushforward_params.weights = file_params.weights;
          if (!flag_given("--activation"))
            pushforward_params.activation = file_params.activation;
          if (!flag_given("--samples")) pushforward_params.samples = file_params.samples;
          if (!flag_given("--bins")) pushforward_params.bins = file_params.bins;
          if (!flag_given("--bin-lo")) pushforward_params.bin_lo = file_params.bin_lo;
          if (!flag_given("--bin-hi")) pushforward_params.bin_hi = file_params.bin_hi;
        } else if (name == "continuum") {
          ContinuumParams file_params;
          file_params.from_json(p);
          if (!flag_given("--mode")) continuum_params.mode = file_params.mode;
          if (!flag_given("--activation"))
            continuum_params.activation = file_params.activation;
          if (!flag_given("--weight")) continuum_params.weight = file_params.weight;
          if (!flag_given("--bias")) continuum_params.bias = file_params.bias;
          if (!flag_given("--alpha")) continuum_params.alpha = file_params.alpha;
          if (!flag_given("--horizon")) continuum_params.horizon = file_params.horizon;
          if (!flag_given("--dt")) continuum_params.dt = file_params.dt;
          if (!flag_given("--dtau")) continuum_params.dtau = file_params.dtau;
          if (!flag_given("--steps")) continuum_params.steps = file_params.steps;
          if (!flag_given("--x0")) continuum_params.x0 = file_params.x0;
          if (!flag_given("--inputs")) continuum_params.inputs = file_params.inputs;
          if (!flag_given("--targets")) continuum_params.targets = file_params.targets;
        } else if (name == "rou") {
          RouParams file_params;
          file_params.from_json(p);
          if (!flag_given("--experiment")) rou_params.experiment = file_params.experiment;
          if (!flag_given("--distribution"))
            rou_params.distribution = file_params.distribution;
          if (!flag_given("--L")) rou_params.bound_L = file_params.bound_L;
          if (!flag_given("--normalized")) rou_params.normalized = file_params.normalized;
          if (!flag_given("--max-order")) rou_params.max_order = file_params.max_order;
          if (!flag_given("--sizes")) rou_params.sizes = file_params.sizes;
        } else if (name == "spurious") {
          SpuriousParams file_params;
          file_params.from_json(p);
          if (!flag_given("--n")) spurious_params.n = file_params.n;
          if (!flag_given("--trials")) spurious_params.trials = file_params.trials;
          if (!flag_given("--kappa")) spurious_params.kappa = file_params.kappa;
          if (!flag_given("--string")) spurious_params.bit_string = file_params.bit_string;
          if (!flag_given("--min-len")) spurious_params.min_len = file_params.min_len;
        }
      }
    }

    if (name == "scaling") return run_scaling(common, scaling_params);
    if (name == "fdwall") return run_fdwall(common, fdwall_params);
    if (name == "pushforward") return run_pushforward(common, pushforward_params);
    if (name == "continuum") return run_continuum(common, continuum_params);
    if (name == "rou") return run_rou(common, rou_params);
    if (name == "spurious") return run_spurious(common, spurious_params);
    std::cerr << "error: unknown subcommand '" << name << "'\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
