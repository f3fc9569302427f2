#include "vopt/battery.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "vopt/parallel.hpp"

namespace vopt {

namespace {

double positive_number(const nlohmann::json& v, const char* field) {
  if (!v.is_number()) throw InvalidArgument(std::string("config: ") + field + " must be a number");
  const double x = v.get<double>();
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw InvalidArgument(std::string("config: ") + field + " must be positive");
  }
  return x;
}

long positive_integer(const nlohmann::json& v, const char* field) {
  if (!v.is_number_integer() || v.get<long>() < 1) {
    throw InvalidArgument(std::string("config: ") + field + " must be a positive integer");
  }
  return v.get<long>();
}

std::optional<long> budget_entry(const nlohmann::json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() != "auto") throw InvalidArgument("config: L must be an integer or \"auto\"");
    return std::nullopt;
  }
  return positive_integer(v, "L");
}

}  // namespace

BatteryConfig battery_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("config: expected a JSON object");
  static const std::vector<std::string> known{"epsilon", "delta", "L", "c", "sigma", "runs",
                                              "seed", "noise_kind", "half_width", "threads"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InvalidArgument("config: unknown field '" + key + "'");
    }
  }

  BatteryConfig cfg;
  if (j.contains("epsilon")) {
    cfg.epsilons.clear();
    const auto& e = j["epsilon"];
    if (e.is_array()) {
      if (e.empty()) throw InvalidArgument("config: epsilon list is empty");
      for (const auto& v : e) cfg.epsilons.push_back(positive_number(v, "epsilon"));
    } else {
      cfg.epsilons.push_back(positive_number(e, "epsilon"));
    }
  }
  if (j.contains("delta")) {
    cfg.delta = positive_number(j["delta"], "delta");
    if (cfg.delta >= 1.0) throw InvalidArgument("config: delta must be in (0,1)");
  }
  if (j.contains("L")) {
    cfg.budgets.clear();
    const auto& l = j["L"];
    if (l.is_array()) {
      if (l.empty()) throw InvalidArgument("config: L list is empty");
      for (const auto& v : l) cfg.budgets.push_back(budget_entry(v));
    } else {
      cfg.budgets.push_back(budget_entry(l));
    }
  }
  if (j.contains("c")) cfg.c = positive_number(j["c"], "c");
  if (j.contains("sigma")) {
    if (!j["sigma"].is_number() || j["sigma"].get<double>() < 0.0) {
      throw InvalidArgument("config: sigma must be a nonnegative number");
    }
    cfg.sigma = j["sigma"].get<double>();
  }
  if (j.contains("runs")) cfg.runs = positive_integer(j["runs"], "runs");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw InvalidArgument("config: seed must be an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("threads")) cfg.threads = static_cast<unsigned>(positive_integer(j["threads"], "threads"));

  const std::string kind = j.value("noise_kind", std::string("gaussian"));
  if (kind == "gaussian") {
    if (j.contains("half_width")) throw InvalidArgument("config: half_width requires noise_kind uniform");
    cfg.noise = NoiseModel::gaussian(cfg.sigma);
  } else if (kind == "uniform") {
    double h = cfg.sigma;
    if (j.contains("half_width")) {
      if (!j["half_width"].is_number() || j["half_width"].get<double>() < 0.0) {
        throw InvalidArgument("config: half_width must be a nonnegative number");
      }
      h = j["half_width"].get<double>();
    }
    cfg.noise = NoiseModel::bounded_uniform(h);
  } else {
    throw InvalidArgument("config: noise_kind must be \"gaussian\" or \"uniform\"");
  }
  return cfg;
}

BatteryConfig load_battery_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("config " + path.string() + ": " + e.what());
  }
  return battery_config_from_json(j);
}

double budget_beta(const PolyhedralCone<double>& cone, std::uint64_t seed) {
  if (cone.family()) return beta_closed_form(*cone.family()).beta;
  return beta_empirical(cone, 10000, seed).beta;
}

BatteryResult run_battery(const DesignSetd& designs, const std::vector<NamedCone>& cones,
                          const BatteryConfig& config) {
  if (cones.empty()) throw InvalidArgument("run_battery: no cones");
  if (config.runs < 1) throw InvalidArgument("run_battery: runs must be positive");
  for (const auto& nc : cones) {
    if (nc.cone.dim() != designs.dim()) {
      throw InvalidArgument("run_battery: cone " + nc.id + " does not match the data dimension");
    }
  }

  // Resolve every cell's L, then group cells sharing (cone, L) into one job.
  struct Job {
    std::size_t cone;
    long L;
    std::vector<double> epsilons;
  };
  const bool any_auto = std::any_of(config.budgets.begin(), config.budgets.end(),
                                    [](const auto& b) { return !b.has_value(); });
  std::vector<double> betas(cones.size(), 1.0);
  if (any_auto) {
    for (std::size_t k = 0; k < cones.size(); ++k) betas[k] = budget_beta(cones[k].cone, config.seed);
  }
  auto resolve = [&](std::size_t k, const std::optional<long>& budget, double eps) {
    return budget ? *budget
                  : theorem_budget(eps, config.delta, designs.size(), betas[k], config.c,
                                   config.sigma, designs.dim());
  };

  std::vector<Job> jobs;
  for (std::size_t k = 0; k < cones.size(); ++k) {
    for (const auto& budget : config.budgets) {
      for (double eps : config.epsilons) {
        const long L = resolve(k, budget, eps);
        if (L < 1) throw InvalidArgument("run_battery: L must be positive");
        auto it = std::find_if(jobs.begin(), jobs.end(),
                               [&](const Job& j) { return j.cone == k && j.L == L; });
        if (it == jobs.end()) {
          jobs.push_back({k, L, {}});
          it = std::prev(jobs.end());
        }
        if (std::find(it->epsilons.begin(), it->epsilons.end(), eps) == it->epsilons.end()) {
          it->epsilons.push_back(eps);
        }
      }
    }
  }

  std::vector<TruthContext> truths;
  truths.reserve(cones.size());
  for (const auto& nc : cones) truths.emplace_back(designs, nc.cone, config.tol, config.threads);

  const auto runs_per_job = static_cast<std::size_t>(config.runs);
  BatteryResult result;
  result.runs.resize(jobs.size() * runs_per_job);
  parallel_for(
      result.runs.size(),
      [&](std::size_t slot) {
        const Job& job = jobs[slot / runs_per_job];
        const auto run = static_cast<long>(slot % runs_per_job);
        RunRecord rec;
        rec.cone_id = cones[job.cone].id;
        rec.run = run;
        const auto seed = derive_seed(config.seed, {static_cast<std::uint64_t>(job.L),
                                                    static_cast<std::uint64_t>(run)});
        rec.result = naive_elimination(designs, cones[job.cone].cone, job.L, config.noise, seed,
                                       config.tol);
        for (double eps : job.epsilons) {
          rec.reports.emplace_back(eps, evaluate_run(rec.result, truths[job.cone], eps));
        }
        result.runs[slot] = std::move(rec);
      },
      config.threads);

  for (const auto& budget : config.budgets) {
    for (double eps : config.epsilons) {
      for (std::size_t k = 0; k < cones.size(); ++k) {
        const long L = resolve(k, budget, eps);
        const auto job_it = std::find_if(jobs.begin(), jobs.end(),
                                         [&](const Job& j) { return j.cone == k && j.L == L; });
        const auto job_index = static_cast<std::size_t>(job_it - jobs.begin());
        std::vector<SuccessReport> reports;
        for (std::size_t r = 0; r < runs_per_job; ++r) {
          for (const auto& [e, rep] : result.runs[job_index * runs_per_job + r].reports) {
            if (e == eps) reports.push_back(rep);
          }
        }
        result.cells.push_back({cones[k].id, L, eps, aggregate(reports)});
      }
    }
  }
  return result;
}

void write_aggregate_csv(std::ostream& out, const std::vector<BatteryCell>& cells) {
  out << "L,epsilon,cone,success_rate,nf1,nf2,pm\n";
  for (const auto& c : cells) {
    out << c.L << ',' << format_number(c.epsilon) << ',' << c.cone_id << ','
        << format_number(c.summary.success_rate_percent) << ',' << format_number(c.summary.mean_nf1)
        << ',' << format_number(c.summary.mean_nf2) << ',' << format_number(c.summary.mean_pm)
        << '\n';
  }
}

void write_runs_jsonl(std::ostream& out, const std::vector<RunRecord>& runs) {
  for (const auto& rec : runs) {
    nlohmann::json means = nlohmann::json::array();
    for (Eigen::Index i = 0; i < rec.result.empirical_means.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index d = 0; d < rec.result.empirical_means.cols(); ++d) {
        row.push_back(rec.result.empirical_means(i, d));
      }
      means.push_back(std::move(row));
    }
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& [eps, rep] : rec.reports) {
      reports.push_back({{"epsilon", eps},
                         {"success", rep.success()},
                         {"condition1", rep.condition1_ok},
                         {"condition2", rep.condition2_ok},
                         {"nf1", rep.nf1},
                         {"nf2", rep.nf2},
                         {"pm", rep.pm_percent}});
    }
    nlohmann::json line = {{"cone", rec.cone_id},
                           {"L", rec.result.L},
                           {"run", rec.run},
                           {"total_samples", rec.result.total_samples},
                           {"returned_set", rec.result.returned_set},
                           {"empirical_means", std::move(means)},
                           {"reports", std::move(reports)}};
    out << line.dump() << '\n';
  }
}

}  // namespace vopt
