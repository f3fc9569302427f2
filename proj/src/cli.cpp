#include "vopt/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "vopt/battery.hpp"
#include "vopt/io.hpp"

namespace vopt {

namespace {

struct DatasetOptions {
  std::string path;
  std::vector<std::string> objectives;
  std::vector<std::string> negate;
  std::string id_column;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--data", path, "CSV file with a header row")->required()->check(CLI::ExistingFile);
    cmd->add_option("--objectives", objectives, "Objective columns (default: all but the id column)")
        ->delimiter(',');
    cmd->add_option("--negate", negate, "Objective columns to multiply by -1")->delimiter(',');
    cmd->add_option("--id-column", id_column, "Column holding design labels");
  }

  DesignSetd load() const {
    DatasetSpec spec;
    spec.path = path;
    spec.objective_columns = objectives;
    spec.negate_columns = negate;
    if (!id_column.empty()) spec.id_column = id_column;
    return load_dataset(spec);
  }
};

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw DataError("cannot write " + (dir / name).string());
  return f;
}

nlohmann::json pareto_json(const std::string& cone_id, const DesignSetd& designs,
                           const std::vector<Eigen::Index>& pareto) {
  nlohmann::json labels = nlohmann::json::array();
  for (auto i : pareto) labels.push_back(designs.labels[static_cast<std::size_t>(i)]);
  return {{"cone", cone_id}, {"pareto", pareto}, {"labels", std::move(labels)}};
}

void print_constants(std::ostream& out, const ConeConstants<double>& k) {
  out << "beta1," << format_number(k.beta1) << '\n'
      << "beta2," << format_number(k.beta2) << '\n'
      << "beta," << format_number(k.beta) << '\n'
      << "provenance,"
      << (k.provenance == BetaProvenance::ClosedForm ? "closed_form" : "empirical_estimate") << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pareto set identification under polyhedral ordering cones", "vopt"};
  app.require_subcommand(1);

  double tol = kDefaultTol;
  std::string out_dir;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  // pareto
  auto* pareto_cmd = app.add_subcommand("pareto", "Pareto set and gap statistics of a dataset");
  DatasetOptions pareto_data;
  pareto_data.add_to(pareto_cmd);
  std::string pareto_cone;
  pareto_cmd->add_option("--cone", pareto_cone, "orthant:D, theta:<radians> or a cone JSON file")
      ->required();
  pareto_cmd->add_option("--tol", tol, "Boundary tolerance");
  pareto_cmd->add_option("--out-dir", out_dir, "Write pareto.json and gap_stats.csv here");

  // gaps
  auto* gaps_cmd = app.add_subcommand("gaps", "Pairwise m/M/theta table and per-design Delta*");
  DatasetOptions gaps_data;
  gaps_data.add_to(gaps_cmd);
  std::string gaps_cone;
  gaps_cmd->add_option("--cone", gaps_cone, "orthant:D, theta:<radians> or a cone JSON file")
      ->required();
  gaps_cmd->add_option("--tol", tol, "Boundary tolerance");
  gaps_cmd->add_option("--out-dir", out_dir, "Write gaps_pairwise.csv and gaps_designs.csv here");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Naive elimination battery over an L x epsilon grid");
  DatasetOptions sim_data;
  sim_data.add_to(sim_cmd);
  std::vector<std::string> sim_cones;
  std::string config_path;
  sim_cmd->add_option("--cone", sim_cones, "orthant:D, theta:<radians> or a cone JSON file; repeatable")->required();
  sim_cmd->add_option("--config", config_path, "Experiment JSON")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--out-dir", out_dir, "Write runs.jsonl and aggregate.csv here")->required();
  auto* seed_opt = sim_cmd->add_option("--seed", seed, "Override the config seed");
  sim_cmd->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");
  sim_cmd->add_option("--tol", tol, "Boundary tolerance");

  // budget
  auto* budget_cmd = app.add_subcommand("budget", "Theorem sample budget L per design");
  double b_eps = 0.1, b_delta = 0.01, b_c = kCalibratedBudgetConstant, b_sigma = 1.0;
  long b_K = 2;
  std::string budget_cone = "theta:" + std::to_string(std::numbers::pi / 2);
  budget_cmd->add_option("--epsilon", b_eps)->required();
  budget_cmd->add_option("--delta", b_delta)->required();
  budget_cmd->add_option("--K", b_K, "Number of designs")->required();
  budget_cmd->add_option("--cone", budget_cone, "Cone whose beta and dimension feed the bound");
  budget_cmd->add_option("--c", b_c, "Absolute constant of the concentration bound");
  budget_cmd->add_option("--sigma", b_sigma, "Noise parameter");
  budget_cmd->add_option("--seed", seed, "Seed for the empirical beta of custom cones");

  // beta
  auto* beta_cmd = app.add_subcommand("beta", "Cone constants beta1, beta2, beta");
  std::string beta_cone;
  long beta_samples = 10000;
  bool beta_force_empirical = false;
  beta_cmd->add_option("--cone", beta_cone)->required();
  beta_cmd->add_option("--samples", beta_samples, "Samples per region for the empirical estimate");
  beta_cmd->add_option("--seed", seed);
  beta_cmd->add_flag("--empirical", beta_force_empirical, "Estimate even when a closed form exists");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*pareto_cmd) {
      const auto designs = pareto_data.load();
      const auto named = parse_cone_spec(pareto_cone);
      const auto table = build_gap_table(designs, named.cone, tol);
      const auto doc = pareto_json(named.id, designs, table.pareto);
      const auto stats = gap_statistics(table);
      if (out_dir.empty()) {
        out << doc.dump() << '\n';
        write_gap_statistics_csv(out, stats);
      } else {
        open_output(out_dir, "pareto.json") << doc.dump(2) << '\n';
        auto csv = open_output(out_dir, "gap_stats.csv");
        write_gap_statistics_csv(csv, stats);
      }
    } else if (*gaps_cmd) {
      const auto designs = gaps_data.load();
      const auto named = parse_cone_spec(gaps_cone);
      const auto table = build_gap_table(designs, named.cone, tol);
      if (out_dir.empty()) {
        write_pairwise_csv(out, table);
        out << '\n';
        write_design_csv(out, table);
      } else {
        auto pairwise = open_output(out_dir, "gaps_pairwise.csv");
        write_pairwise_csv(pairwise, table);
        auto per_design = open_output(out_dir, "gaps_designs.csv");
        write_design_csv(per_design, table);
      }
    } else if (*sim_cmd) {
      auto config = load_battery_config(config_path);
      if (seed_opt->count() > 0) config.seed = seed;
      if (threads > 0) config.threads = threads;
      config.tol = tol;
      const auto designs = sim_data.load();
      std::vector<NamedCone> cones;
      for (const auto& spec : sim_cones) cones.push_back(parse_cone_spec(spec));
      const auto result = run_battery(designs, cones, config);
      auto runs = open_output(out_dir, "runs.jsonl");
      write_runs_jsonl(runs, result.runs);
      auto agg = open_output(out_dir, "aggregate.csv");
      write_aggregate_csv(agg, result.cells);
      write_aggregate_csv(out, result.cells);
    } else if (*budget_cmd) {
      const auto named = parse_cone_spec(budget_cone);
      const double beta = budget_beta(named.cone, seed);
      const double delta_prime = split_delta(b_delta, b_K);
      const long L = theorem_budget(b_eps, b_delta, b_K, beta, b_c, b_sigma, named.cone.dim());
      out << "delta_prime," << format_number(delta_prime) << '\n'
          << "beta," << format_number(beta) << '\n'
          << "L," << L << '\n';
    } else if (*beta_cmd) {
      const auto named = parse_cone_spec(beta_cone);
      if (named.cone.family() && !beta_force_empirical) {
        print_constants(out, beta_closed_form(*named.cone.family()));
      } else {
        print_constants(out, beta_empirical(named.cone, beta_samples, seed));
      }
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace vopt
