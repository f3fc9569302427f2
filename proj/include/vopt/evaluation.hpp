#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vopt/bandit.hpp"
#include "vopt/gaps.hpp"

namespace vopt {

/// Ground truth a returned set is judged against.
struct TruthContext {
  DesignSetd designs;
  PolyhedralCone<double> cone;
  GapTable<double> table;

  TruthContext(DesignSetd d, PolyhedralCone<double> c, double tol = kDefaultTol,
               unsigned threads = 0);
};

struct CheckResult {
  bool ok = true;
  std::vector<Eigen::Index> failing;
};

struct SuccessReport {
  bool condition1_ok = true;
  bool condition2_ok = true;
  long nf1 = 0;
  long nf2 = 0;
  double pm_percent = 0;

  bool success() const noexcept { return condition1_ok && condition2_ok; }
};

struct AggregateSummary {
  long runs = 0;
  double success_rate_percent = 0;
  double mean_nf1 = 0;
  double mean_nf2 = 0;
  double mean_pm = 0;
};

struct GapStatistics {
  long count = 0;
  std::optional<double> mean, std, min, max;
};

/// Every i in P* must satisfy min_{j in P} M(i, j) <= eps, i.e.
/// mu_i in mu_j + (B(0, eps) n C) - C for some returned j.
CheckResult check_covering(std::span<const Eigen::Index> returned, const TruthContext& truth,
                           double epsilon);

/// Every i in P \ P* must satisfy Delta*_i <= eps.
CheckResult check_gap_bound(std::span<const Eigen::Index> returned, const TruthContext& truth,
                            double epsilon);

SuccessReport evaluate_returned_set(std::span<const Eigen::Index> returned,
                                    const TruthContext& truth, double epsilon);

inline SuccessReport evaluate_run(const RunResult& run, const TruthContext& truth,
                                  double epsilon) {
  return evaluate_returned_set(run.returned_set, truth, epsilon);
}

/// Throws InvalidArgument on an empty list.
AggregateSummary aggregate(std::span<const SuccessReport> reports);

/// Descriptive statistics of Delta*_i over i not in P*. `std` uses the n - 1
/// divisor and is empty when fewer than two designs qualify.
GapStatistics gap_statistics(const GapTable<double>& table);

}  // namespace vopt
