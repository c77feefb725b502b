// Command-line front end: basis evaluation, spline fitting, a paired
// single-trial simulation, error-bound evaluation and the Monte Carlo
// experiment harness.
//
// Exit codes: 0 success, 2 usage/parse error, 3 infeasible configuration,
// 4 I/O failure.

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bscc/bounds.hpp"
#include "bscc/errors.hpp"
#include "bscc/experiments.hpp"
#include "bscc/knots.hpp"
#include "bscc/pipeline.hpp"
#include "bscc/spline_fit.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    std::size_t consumed = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &consumed);
    } catch (const std::exception&) {
      throw bscc::InvalidInput(flag + ": cannot parse '" + item + "'");
    }
    if (consumed != item.size()) {
      throw bscc::InvalidInput(flag + ": trailing characters in '" + item +
                               "'");
    }
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw bscc::InvalidInput(flag + ": empty list");
  return out;
}

struct BasisArgs {
  std::string points;
  std::string at;
  int degree = 3;
};

int run_basis(const BasisArgs& args) {
  const std::vector<double> points = parse_double_list(args.points, "--points");
  const std::vector<double> queries = parse_double_list(args.at, "--at");
  const bscc::KnotVector kv = bscc::make_clamped_knots(points, args.degree);
  for (const double z : queries) {
    for (int j = 0; j < kv.num_basis(); ++j) {
      if (j > 0) std::cout << ' ';
      std::cout << bscc::format_double(bscc::basis_value(kv, j, args.degree, z));
    }
    std::cout << '\n';
  }
  return 0;
}

struct FitArgs {
  std::string nodes;
  std::string values;
  std::string at;
};

int run_fit(const FitArgs& args) {
  const std::vector<double> nodes = parse_double_list(args.nodes, "--nodes");
  const std::vector<double> values = parse_double_list(args.values, "--values");
  const std::vector<double> queries = parse_double_list(args.at, "--at");
  const bscc::CubicSplineInterpolant fit =
      bscc::fit_natural_cubic(nodes, {values});
  for (const double z : queries) {
    std::cout << bscc::format_double(fit.evaluate_channel(0, z)) << '\n';
  }
  return 0;
}

struct SimulateArgs {
  int n = 100;
  int k = 8;
  int s = 0;
  std::string function = "xsinx";
  std::string encoder = "lagrange";
  std::uint64_t seed = 0;
  int block_rows = 5;
  int block_cols = 5;
};

int run_simulate(const SimulateArgs& args) {
  bscc::ExperimentConfig cfg;
  cfg.n = args.n;
  cfg.k = args.k;
  cfg.block_rows = args.block_rows;
  cfg.block_cols = args.block_cols;
  cfg.s_values = {args.s};
  cfg.trials = 1;
  cfg.seed = args.seed;
  cfg.encoder = bscc::basis_kind_from_name(args.encoder);
  cfg.function = args.function;
  cfg.validate();

  for (const bscc::Scheme scheme : {bscc::Scheme::Bscc, bscc::Scheme::Bacc}) {
    const bscc::TrialRecord r = bscc::run_trial(cfg, scheme, args.s, 0);
    std::cout << bscc::scheme_name(scheme)
              << " e_rel=" << bscc::format_double(r.e_rel)
              << " e_rel_db=" << bscc::format_double(r.e_rel_db)
              << " beta_clamped=" << (r.beta_clamped ? 1 : 0) << '\n';
  }
  return 0;
}

struct BoundsArgs {
  std::string which;
  int n = 0;
  int s = 0;
  std::optional<double> c;
  std::optional<double> c1;
  std::optional<double> g4sup;
  std::optional<double> hmin;
  std::optional<double> hmax;
};

double require_flag(const std::optional<double>& value, const char* flag) {
  if (!value.has_value()) {
    throw bscc::InvalidInput(std::string("missing required flag ") + flag +
                             " for this bound");
  }
  return value.value();
}

int run_bounds(const BoundsArgs& args) {
  double value = 0.0;
  if (args.which == "bacc") {
    value = bscc::bacc_bound(args.n, args.s);
  } else if (args.which == "bscc-cheby") {
    bscc::BoundInputs in;
    in.n = args.n;
    in.s = args.s;
    in.c = require_flag(args.c, "--c");
    in.c1 = require_flag(args.c1, "--c1");
    in.g4_sup = require_flag(args.g4sup, "--g4sup");
    value = bscc::bscc_cheby_bound(in, require_flag(args.hmin, "--hmin"));
  } else if (args.which == "corollary") {
    bscc::BoundInputs in;
    in.n = args.n;
    in.s = args.s;
    in.c = require_flag(args.c, "--c");
    in.c1 = require_flag(args.c1, "--c1");
    in.g4_sup = require_flag(args.g4sup, "--g4sup");
    bscc::KnotSpacingStats stats;
    stats.h_min = require_flag(args.hmin, "--hmin");
    stats.h_max = require_flag(args.hmax, "--hmax");
    if (!(stats.h_min > 0.0) || stats.h_max < stats.h_min) {
      throw bscc::InvalidInput("need 0 < --hmin <= --hmax");
    }
    stats.ratio = stats.h_max / stats.h_min;
    value = bscc::corollary_bound(in, stats);
  } else {
    throw bscc::InvalidInput("--which must be bscc-cheby, bacc or corollary");
  }
  std::cout << bscc::format_double(value) << '\n';
  return 0;
}

struct ExperimentArgs {
  std::string config_path;
  std::string out_dir;
};

int run_experiment_cmd(const ExperimentArgs& args) {
  const bscc::ExperimentConfig cfg = bscc::parse_config_file(args.config_path);
  cfg.validate();

  std::error_code ec;
  std::filesystem::create_directories(args.out_dir, ec);
  if (ec) {
    throw bscc::IoError("cannot create output directory '" + args.out_dir +
                        "'");
  }

  const bscc::ExperimentResult result = bscc::run_experiment(cfg);
  const std::string records_path =
      (std::filesystem::path(args.out_dir) / "records.csv").string();
  const std::string aggregates_path =
      (std::filesystem::path(args.out_dir) / "aggregates.csv").string();
  bscc::write_records_csv(result.records, records_path);
  bscc::write_aggregates_csv(result.aggregates, aggregates_path);

  for (const bscc::Aggregate& agg : result.aggregates) {
    std::cout << "scheme=" << bscc::scheme_name(agg.scheme)
              << " encoder=" << bscc::basis_kind_name(agg.encoder)
              << " S=" << agg.s
              << " mean_e_rel=" << bscc::format_double(agg.mean_e_rel)
              << " mean_db=" << bscc::format_double(agg.mean_db)
              << " trials=" << agg.trials << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"B-spline assisted coded computing toolkit"};
  app.require_subcommand(1);

  BasisArgs basis_args;
  CLI::App* basis = app.add_subcommand(
      "basis", "Evaluate the clamped B-spline basis at query points");
  basis->add_option("--points", basis_args.points,
                    "comma-separated strictly increasing points")->required();
  basis->add_option("--degree", basis_args.degree, "spline degree")
      ->default_val(3);
  basis->add_option("--at", basis_args.at, "comma-separated query points")
      ->required();

  FitArgs fit_args;
  CLI::App* fit = app.add_subcommand(
      "fit", "Fit a natural cubic spline and evaluate it");
  fit->add_option("--nodes", fit_args.nodes, "comma-separated nodes")
      ->required();
  fit->add_option("--values", fit_args.values, "comma-separated samples")
      ->required();
  fit->add_option("--at", fit_args.at, "comma-separated query points")
      ->required();

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run one paired reconstruction trial of both decoders");
  simulate->add_option("--n", sim_args.n, "number of workers")->required();
  simulate->add_option("--k", sim_args.k, "number of data blocks")->required();
  simulate->add_option("--s", sim_args.s, "number of stragglers")->required();
  simulate->add_option("--function", sim_args.function,
                       "identity, xsinx or sigmoid")->default_val("xsinx");
  simulate->add_option("--encoder", sim_args.encoder, "lagrange or berrut")
      ->default_val("lagrange");
  simulate->add_option("--seed", sim_args.seed, "base seed")->default_val(0);
  simulate->add_option("--rows", sim_args.block_rows, "block rows")
      ->default_val(5);
  simulate->add_option("--cols", sim_args.block_cols, "block cols")
      ->default_val(5);

  BoundsArgs bounds_args;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Evaluate one of the approximation-error bounds");
  bounds->add_option("--which", bounds_args.which,
                     "bscc-cheby, bacc or corollary")->required();
  bounds->add_option("--n", bounds_args.n, "number of workers")->required();
  bounds->add_option("--s", bounds_args.s, "number of stragglers")
      ->default_val(0);
  bounds->add_option("--c", bounds_args.c, "leading constant");
  bounds->add_option("--c1", bounds_args.c1, "operator-norm constant");
  bounds->add_option("--g4sup", bounds_args.g4sup,
                     "sup norm of the fourth derivative");
  bounds->add_option("--hmin", bounds_args.hmin, "minimum knot spacing");
  bounds->add_option("--hmax", bounds_args.hmax, "maximum knot spacing");

  ExperimentArgs exp_args;
  CLI::App* experiment = app.add_subcommand(
      "experiment", "Run a seeded Monte Carlo experiment from a config file");
  experiment->add_option("--config", exp_args.config_path,
                         "key=value config file")->required();
  experiment->add_option("--out", exp_args.out_dir, "output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (basis->parsed()) return run_basis(basis_args);
    if (fit->parsed()) return run_fit(fit_args);
    if (simulate->parsed()) return run_simulate(sim_args);
    if (bounds->parsed()) return run_bounds(bounds_args);
    if (experiment->parsed()) return run_experiment_cmd(exp_args);
  } catch (const bscc::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const bscc::ReconstructionInfeasible& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const bscc::InvalidStragglerCount& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const bscc::TooFewNodes& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const bscc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
