#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <string_view>
#include <vector>

#include "vopt/cone.hpp"
#include "vopt/parallel.hpp"
#include "vopt/pareto.hpp"

namespace vopt {

/// Position of delta = mu_j - mu_i relative to the cone.
enum class Dominance {
  StrongDominance,    // delta in Int(C): m > 0, M = 0
  BoundaryDominance,  // delta in bd(C):  m = M = 0
  NoDominance,        // delta not in C:  m = 0, M > 0
};

constexpr std::string_view to_string(Dominance d) {
  switch (d) {
    case Dominance::StrongDominance: return "strong";
    case Dominance::BoundaryDominance: return "boundary";
    case Dominance::NoDominance: return "none";
  }
  return "?";
}

template <typename Scalar = double>
struct PairwiseGaps {
  Scalar m = 0;
  Scalar M = 0;
  Scalar theta = 1;
  Dominance classification = Dominance::BoundaryDominance;
};

template <typename Scalar = double>
struct GapTable {
  Eigen::Index K = 0;
  std::vector<PairwiseGaps<Scalar>> pairwise;  // row-major K x K, diagonal unused
  std::vector<Scalar> delta_star;
  std::vector<bool> pareto_mask;
  std::vector<Eigen::Index> pareto;

  const PairwiseGaps<Scalar>& at(Eigen::Index i, Eigen::Index j) const {
    return pairwise[static_cast<std::size_t>(i * K + j)];
  }
  PairwiseGaps<Scalar>& at(Eigen::Index i, Eigen::Index j) {
    return pairwise[static_cast<std::size_t>(i * K + j)];
  }
};

/// m = min_n (w_n.delta)^+ / alpha_n.
template <typename Scalar, typename Derived>
Scalar gap_m(const PolyhedralCone<Scalar>& cone, const Eigen::MatrixBase<Derived>& delta) {
  detail::check_dim(cone, delta, "gap_m");
  const auto wx = (cone.W() * delta.template cast<Scalar>()).eval();
  return (wx.cwiseMax(Scalar(0)).array() / cone.alphas().array()).minCoeff();
}

/// M = d(delta, C n (delta + C)), the projection onto {y : W y >= (W delta)^+}.
template <typename Scalar, typename Derived>
Scalar gap_M(const PolyhedralCone<Scalar>& cone, const Eigen::MatrixBase<Derived>& delta,
             const ProjectionOptions& options = {}) {
  detail::check_dim(cone, delta, "gap_M");
  using Vector = typename PolyhedralCone<Scalar>::Vector;
  const Vector v = delta.template cast<Scalar>();
  const Vector wx = cone.W() * v;
  if (wx.minCoeff() >= Scalar(0)) return Scalar(0);
  const Vector lower = wx.cwiseMax(Scalar(0));
  return (v - project_onto_polyhedron(cone.W(), lower, v, options).point).norm();
}

template <typename Scalar, typename Derived>
Dominance classify(const PolyhedralCone<Scalar>& cone, const Eigen::MatrixBase<Derived>& delta,
                   double tol = kDefaultTol) {
  if (strictly_contains(cone, delta, tol)) return Dominance::StrongDominance;
  if (contains(cone, delta, tol)) return Dominance::BoundaryDominance;
  return Dominance::NoDominance;
}

/// theta_ij in (0, 1]: ratio of the unconstrained distance to the constrained
/// one (distance to C over M outside C, distance to Int(C)^c over m inside).
/// Boundary deltas, and denominators below tol, give 1.
template <typename Scalar, typename Derived>
Scalar theta_constant(const PolyhedralCone<Scalar>& cone, const Eigen::MatrixBase<Derived>& delta,
                      double tol = kDefaultTol) {
  Scalar numer = 0, denom = 0;
  switch (classify(cone, delta, tol)) {
    case Dominance::BoundaryDominance:
      return Scalar(1);
    case Dominance::NoDominance:
      numer = distance_to_cone(cone, delta);
      denom = gap_M(cone, delta);
      break;
    case Dominance::StrongDominance:
      numer = distance_to_interior_complement(cone, delta);
      denom = gap_m(cone, delta);
      break;
  }
  if (denom <= Scalar(tol)) return Scalar(1);
  return std::clamp(numer / denom, Scalar(0), Scalar(1));
}

template <typename Scalar, typename Derived>
PairwiseGaps<Scalar> pairwise_gaps(const PolyhedralCone<Scalar>& cone,
                                   const Eigen::MatrixBase<Derived>& delta,
                                   double tol = kDefaultTol) {
  PairwiseGaps<Scalar> g;
  g.classification = classify(cone, delta, tol);
  g.m = gap_m(cone, delta);
  g.M = gap_M(cone, delta);
  g.theta = theta_constant(cone, delta, tol);
  return g;
}

/// Gaps for every ordered pair with delta = mu_j - mu_i, the Pareto set, and
/// Delta*_i = max_{j in P*} m(i, j) (stored as exactly 0 on P*).
template <typename Scalar>
GapTable<Scalar> build_gap_table(const DesignSet<Scalar>& designs,
                                 const PolyhedralCone<Scalar>& cone, double tol = kDefaultTol,
                                 unsigned threads = 0) {
  const Eigen::Index K = designs.size();
  if (K < 1) throw InvalidArgument("build_gap_table: empty design set");
  if (designs.dim() != cone.dim()) throw InvalidArgument("build_gap_table: dimension mismatch");

  GapTable<Scalar> table;
  table.K = K;
  table.pairwise.resize(static_cast<std::size_t>(K * K));
  parallel_for(
      static_cast<std::size_t>(K),
      [&](std::size_t row) {
        const auto i = static_cast<Eigen::Index>(row);
        for (Eigen::Index j = 0; j < K; ++j) {
          if (j == i) continue;
          table.at(i, j) = pairwise_gaps(cone, (designs.mean(j) - designs.mean(i)).eval(), tol);
        }
      },
      threads);

  table.pareto = pareto_set(designs, cone, tol);
  table.pareto_mask.assign(static_cast<std::size_t>(K), false);
  for (auto p : table.pareto) table.pareto_mask[static_cast<std::size_t>(p)] = true;
  table.delta_star.assign(static_cast<std::size_t>(K), Scalar(0));
  for (Eigen::Index i = 0; i < K; ++i) {
    if (table.pareto_mask[static_cast<std::size_t>(i)]) continue;
    Scalar best = 0;
    for (auto j : table.pareto) best = std::max(best, table.at(i, j).m);
    table.delta_star[static_cast<std::size_t>(i)] = best;
  }
  return table;
}

}  // namespace vopt
