#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vopt/bandit.hpp"
#include "vopt/evaluation.hpp"
#include "vopt/io.hpp"

namespace vopt {

/// Grid experiment: every cone x budget x epsilon cell, `runs` runs each.
struct BatteryConfig {
  std::vector<double> epsilons{0.1};
  double delta = 0.01;
  /// std::nullopt entries mean the theorem budget for that epsilon.
  std::vector<std::optional<long>> budgets{std::nullopt};
  double c = kCalibratedBudgetConstant;
  double sigma = 1.0;
  NoiseModel noise = NoiseModel::gaussian(1.0);
  long runs = 100;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  double tol = kDefaultTol;
};

/// Parses the JSON config file format:
///   epsilon (number or list), delta, L (integer, list, or "auto"), c, sigma,
///   runs, seed, noise_kind ("gaussian" | "uniform"), optional half_width
///   (uniform only, defaults to sigma), optional threads.
/// Throws InvalidArgument on any schema violation.
BatteryConfig battery_config_from_json(const nlohmann::json& j);
BatteryConfig load_battery_config(const std::filesystem::path& path);

struct BatteryCell {
  std::string cone_id;
  long L = 0;
  double epsilon = 0;
  AggregateSummary summary;
};

struct RunRecord {
  std::string cone_id;
  long run = 0;
  RunResult result;
  std::vector<std::pair<double, SuccessReport>> reports;  // per epsilon
};

struct BatteryResult {
  std::vector<BatteryCell> cells;  // budget-major, then epsilon, then cone
  std::vector<RunRecord> runs;     // cone, then L, then run index
};

/// beta used for the theorem budget: closed form for the built-in families,
/// a 10^4-sample empirical estimate otherwise.
double budget_beta(const PolyhedralCone<double>& cone, std::uint64_t seed);

/// Run r at budget L uses the stream derive_seed(seed, {L, r}) regardless of
/// cone and epsilon, so cells share their noise realizations.
BatteryResult run_battery(const DesignSetd& designs, const std::vector<NamedCone>& cones,
                          const BatteryConfig& config);

/// Header: L,epsilon,cone,success_rate,nf1,nf2,pm
void write_aggregate_csv(std::ostream& out, const std::vector<BatteryCell>& cells);
/// One JSON object per run.
void write_runs_jsonl(std::ostream& out, const std::vector<RunRecord>& runs);

}  // namespace vopt
