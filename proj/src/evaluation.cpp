#include "vopt/evaluation.hpp"

#include <algorithm>
#include <cmath>

namespace vopt {

TruthContext::TruthContext(DesignSetd d, PolyhedralCone<double> c, double tol, unsigned threads)
    : designs(std::move(d)), cone(std::move(c)), table(build_gap_table(designs, cone, tol, threads)) {}

namespace {
void check_indices(std::span<const Eigen::Index> returned, Eigen::Index K) {
  for (auto j : returned) {
    if (j < 0 || j >= K) throw InvalidArgument("returned set index out of range");
  }
}
}  // namespace

CheckResult check_covering(std::span<const Eigen::Index> returned, const TruthContext& truth,
                           double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("check_covering: epsilon must be positive");
  check_indices(returned, truth.table.K);
  CheckResult out;
  for (auto i : truth.table.pareto) {
    const bool covered = std::any_of(returned.begin(), returned.end(), [&](Eigen::Index j) {
      return j == i || truth.table.at(i, j).M <= epsilon;
    });
    if (!covered) out.failing.push_back(i);
  }
  out.ok = out.failing.empty();
  return out;
}

CheckResult check_gap_bound(std::span<const Eigen::Index> returned, const TruthContext& truth,
                            double epsilon) {
  check_indices(returned, truth.table.K);
  CheckResult out;
  for (auto i : returned) {
    const auto idx = static_cast<std::size_t>(i);
    if (!truth.table.pareto_mask[idx] && truth.table.delta_star[idx] > epsilon) {
      out.failing.push_back(i);
    }
  }
  out.ok = out.failing.empty();
  return out;
}

SuccessReport evaluate_returned_set(std::span<const Eigen::Index> returned,
                                    const TruthContext& truth, double epsilon) {
  const auto cover = check_covering(returned, truth, epsilon);
  const auto bound = check_gap_bound(returned, truth, epsilon);
  SuccessReport report;
  report.condition1_ok = cover.ok;
  report.condition2_ok = bound.ok;
  report.nf1 = static_cast<long>(cover.failing.size());
  report.nf2 = static_cast<long>(bound.failing.size());

  const auto& pareto = truth.table.pareto;
  const auto missed = std::count_if(pareto.begin(), pareto.end(), [&](Eigen::Index i) {
    return std::find(returned.begin(), returned.end(), i) == returned.end();
  });
  report.pm_percent =
      pareto.empty() ? 0.0 : 100.0 * static_cast<double>(missed) / static_cast<double>(pareto.size());
  return report;
}

AggregateSummary aggregate(std::span<const SuccessReport> reports) {
  if (reports.empty()) throw InvalidArgument("aggregate: no reports");
  AggregateSummary s;
  s.runs = static_cast<long>(reports.size());
  long successes = 0;
  for (const auto& r : reports) {
    successes += r.success() ? 1 : 0;
    s.mean_nf1 += static_cast<double>(r.nf1);
    s.mean_nf2 += static_cast<double>(r.nf2);
    s.mean_pm += r.pm_percent;
  }
  const auto n = static_cast<double>(reports.size());
  s.success_rate_percent = 100.0 * static_cast<double>(successes) / n;
  s.mean_nf1 /= n;
  s.mean_nf2 /= n;
  s.mean_pm /= n;
  return s;
}

GapStatistics gap_statistics(const GapTable<double>& table) {
  std::vector<double> values;
  for (Eigen::Index i = 0; i < table.K; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (!table.pareto_mask[idx]) values.push_back(table.delta_star[idx]);
  }
  GapStatistics stats;
  stats.count = static_cast<long>(values.size());
  if (values.empty()) return stats;

  const Eigen::Map<const Eigen::VectorXd> v(values.data(), static_cast<Eigen::Index>(values.size()));
  stats.mean = v.mean();
  stats.min = v.minCoeff();
  stats.max = v.maxCoeff();
  if (values.size() >= 2) {
    stats.std = std::sqrt((v.array() - *stats.mean).square().sum() / (v.size() - 1.0));
  }
  return stats;
}

}  // namespace vopt
