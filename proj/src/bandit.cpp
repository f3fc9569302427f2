#include "vopt/bandit.hpp"

#include <cmath>
#include <limits>

namespace vopt {

NoiseModel NoiseModel::gaussian(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("NoiseModel: sigma must be finite and nonnegative");
  }
  return {NoiseKind::GaussianIID, sigma};
}

NoiseModel NoiseModel::bounded_uniform(double half_width) {
  if (!(half_width >= 0.0) || !std::isfinite(half_width)) {
    throw InvalidArgument("NoiseModel: half-width must be finite and nonnegative");
  }
  return {NoiseKind::BoundedUniform, half_width};
}

double NoiseModel::norm_subgaussian_sigma(Eigen::Index dim) const {
  return scale * std::sqrt(static_cast<double>(dim));
}

long sample_budget(double epsilon, double delta, double beta, double c, double sigma,
                   Eigen::Index dim) {
  if (!(epsilon > 0.0)) throw InvalidArgument("sample_budget: epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("sample_budget: delta must be in (0,1)");
  if (!(beta >= 1.0)) throw InvalidArgument("sample_budget: beta must be >= 1");
  if (!(c > 0.0)) throw InvalidArgument("sample_budget: c must be positive");
  if (!(sigma >= 0.0)) throw InvalidArgument("sample_budget: sigma must be nonnegative");
  if (dim < 1) throw InvalidArgument("sample_budget: dimension must be positive");

  const double raw = 4.0 * beta * beta * c * c * sigma * sigma / (epsilon * epsilon) *
                     std::log(4.0 * static_cast<double>(dim) / delta);
  if (raw >= static_cast<double>(std::numeric_limits<long>::max())) {
    throw InvalidArgument("sample_budget: budget overflows");
  }
  return std::max(1L, static_cast<long>(std::ceil(raw)));
}

double split_delta(double delta, Eigen::Index K) {
  if (K < 2) throw InvalidArgument("theorem_budget: need at least two designs");
  const auto k = static_cast<double>(K);
  return 2.0 * delta / (k * (k - 1.0));
}

long theorem_budget(double epsilon, double delta, Eigen::Index K, double beta, double c,
                    double sigma, Eigen::Index dim) {
  return sample_budget(epsilon, split_delta(delta, K), beta, c, sigma, dim);
}

double invert_budget_constant(double target_L, double epsilon, double delta_prime, double beta,
                              double sigma, Eigen::Index dim) {
  const double log_term = std::log(4.0 * static_cast<double>(dim) / delta_prime);
  return std::sqrt(target_L * epsilon * epsilon / (4.0 * beta * beta * sigma * sigma * log_term));
}

long resolve_budget(const ExperimentConfig& config, Eigen::Index K, double beta,
                    Eigen::Index dim) {
  if (config.L) {
    if (*config.L < 1) throw InvalidArgument("ExperimentConfig: L must be positive");
    return *config.L;
  }
  return theorem_budget(config.epsilon, config.delta, K, beta, config.c, config.sigma, dim);
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = splitmix64(seed);
  for (auto k : keys) h = splitmix64(h ^ splitmix64(k + 0x632BE59BD9B4E019ULL));
  return h;
}

RunResult naive_elimination(const DesignSetd& designs, const PolyhedralCone<double>& cone, long L,
                            const NoiseModel& noise, std::uint64_t run_seed, double tol) {
  if (L < 1) throw InvalidArgument("naive_elimination: L must be positive");
  if (designs.dim() != cone.dim()) throw InvalidArgument("naive_elimination: dimension mismatch");
  const Eigen::Index K = designs.size();
  const Eigen::Index D = designs.dim();

  RunResult run;
  run.L = L;
  run.total_samples = L * static_cast<long>(K);
  run.empirical_means = designs.means;

  if (noise.scale > 0.0) {
    Eigen::VectorXd sum(D);
    for (Eigen::Index i = 0; i < K; ++i) {
      std::mt19937_64 rng(derive_seed(run_seed, {static_cast<std::uint64_t>(i)}));
      sum.setZero();
      if (noise.kind == NoiseKind::GaussianIID) {
        std::normal_distribution<double> draw(0.0, noise.scale);
        for (long t = 0; t < L; ++t)
          for (Eigen::Index d = 0; d < D; ++d) sum(d) += draw(rng);
      } else {
        std::uniform_real_distribution<double> draw(-noise.scale, noise.scale);
        for (long t = 0; t < L; ++t)
          for (Eigen::Index d = 0; d < D; ++d) sum(d) += draw(rng);
      }
      run.empirical_means.row(i) += (sum / static_cast<double>(L)).transpose();
    }
  }

  run.returned_set = pareto_set(DesignSetd(run.empirical_means, designs.labels), cone, tol);
  return run;
}

RunResult naive_elimination(const DesignSetd& designs, const PolyhedralCone<double>& cone,
                            const ExperimentConfig& config, long run_index, double beta,
                            double tol) {
  const long L = resolve_budget(config, designs.size(), beta, designs.dim());
  return naive_elimination(designs, cone, L, config.noise,
                           derive_seed(config.seed, {static_cast<std::uint64_t>(run_index)}), tol);
}

GapTable<double> empirical_gaps(const RunResult& run, const PolyhedralCone<double>& cone,
                                double tol) {
  return build_gap_table(DesignSetd(run.empirical_means), cone, tol);
}

}  // namespace vopt
