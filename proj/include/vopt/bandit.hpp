#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <vector>

#include "vopt/cone.hpp"
#include "vopt/gaps.hpp"
#include "vopt/pareto.hpp"

namespace vopt {

/// Default absolute constant c of the budget formula, obtained by inverting
/// it against L = 38.8e3 at eps = 0.1, delta = 0.01, K = 206, beta = 1,
/// sigma = 1, D = 2. See tools/calibrate_budget_constant.py.
inline constexpr double kCalibratedBudgetConstant = 2.4142;

enum class NoiseKind { GaussianIID, BoundedUniform };

/// Per-coordinate observation noise. `scale` is the standard deviation for
/// GaussianIID and the half-width for BoundedUniform.
struct NoiseModel {
  NoiseKind kind = NoiseKind::GaussianIID;
  double scale = 1.0;

  static NoiseModel gaussian(double sigma);
  static NoiseModel bounded_uniform(double half_width);

  /// Norm-subgaussian parameter recorded for this noise in R^dim, taken as
  /// scale * sqrt(dim) for both kinds (|Y| <= h sqrt(dim) for the uniform case).
  double norm_subgaussian_sigma(Eigen::Index dim) const;
};

struct ExperimentConfig {
  double epsilon = 0.1;
  double delta = 0.01;
  /// Samples per design; std::nullopt means the theorem budget.
  std::optional<long> L;
  double c = kCalibratedBudgetConstant;
  /// sigma plugged into the budget formula.
  double sigma = 1.0;
  NoiseModel noise = NoiseModel::gaussian(1.0);
  long runs = 100;
  std::uint64_t seed = 0;
};

struct RunResult {
  long L = 0;
  std::vector<Eigen::Index> returned_set;
  Eigen::MatrixXd empirical_means;  // K x D
  long total_samples = 0;
};

/// g(eps, delta) = ceil((4 beta^2 c^2 sigma^2 / eps^2) ln(4 D / delta)), at least 1.
long sample_budget(double epsilon, double delta, double beta, double c, double sigma,
                   Eigen::Index dim);

/// g(eps, 2 delta / (K (K - 1))), the budget that makes naive elimination
/// (eps, delta)-PAC.
long theorem_budget(double epsilon, double delta, Eigen::Index K, double beta, double c,
                    double sigma, Eigen::Index dim);

/// Split confidence level 2 delta / (K (K - 1)).
double split_delta(double delta, Eigen::Index K);

/// The c for which the budget formula (before rounding) equals target_L.
double invert_budget_constant(double target_L, double epsilon, double delta_prime, double beta,
                              double sigma, Eigen::Index dim);

/// L from the config, or theorem_budget when the config asks for auto.
long resolve_budget(const ExperimentConfig& config, Eigen::Index K, double beta, Eigen::Index dim);

/// Deterministic 64-bit stream key from a seed and a tuple of indices
/// (SplitMix64 chained over the keys).
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

/// Evaluates every design L times (design 0 first, then design 1, ...), each
/// from its own stream derive_seed(run_seed, {design}), and returns the
/// Pareto set of the empirical means.
RunResult naive_elimination(const DesignSetd& designs, const PolyhedralCone<double>& cone, long L,
                            const NoiseModel& noise, std::uint64_t run_seed,
                            double tol = kDefaultTol);

/// Run number `run_index` of an experiment: L resolved from the config and
/// the run seed derived from config.seed.
RunResult naive_elimination(const DesignSetd& designs, const PolyhedralCone<double>& cone,
                            const ExperimentConfig& config, long run_index, double beta,
                            double tol = kDefaultTol);

/// Gap table of the empirical means (m-hat, M-hat).
GapTable<double> empirical_gaps(const RunResult& run, const PolyhedralCone<double>& cone,
                                double tol = kDefaultTol);

}  // namespace vopt
