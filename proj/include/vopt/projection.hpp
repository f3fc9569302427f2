#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "vopt/errors.hpp"

namespace vopt {

struct ProjectionOptions {
  long max_sweeps = 100000;
  /// Dykstra stops once a full sweep moves the iterate less than this
  /// (scaled by 1 + |x| + |b|).
  double move_tol = 1e-10;
  /// Largest admissible constraint violation of the returned point.
  double feasibility_tol = 1e-8;
};

template <typename Scalar>
struct ProjectionResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> point;
  /// Nonnegative weights with point - x = W^T multipliers.
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> multipliers;
  long sweeps = 0;
  Scalar max_violation = 0;
  Scalar kkt_residual = 0;
  /// True when the answer came from the exact active-set solve rather than
  /// the Dykstra iterate.
  bool polished = false;
};

namespace detail {

template <typename Scalar>
using DynVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using DynMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
Scalar max_violation(const DynMatrix<Scalar>& W, const DynVector<Scalar>& b,
                     const DynVector<Scalar>& y) {
  if (W.rows() == 0) return Scalar(0);
  return std::max(Scalar(0), (b - W * y).maxCoeff());
}

// Stationarity plus complementarity: |y - x - W^T l| + max_n |l_n (w_n.y - b_n)|.
template <typename Scalar>
Scalar kkt_residual(const DynMatrix<Scalar>& W, const DynVector<Scalar>& b,
                    const DynVector<Scalar>& x, const DynVector<Scalar>& y,
                    const DynVector<Scalar>& lambda) {
  Scalar stationarity = (y - x - W.transpose() * lambda).norm();
  Scalar complementarity = 0;
  if (W.rows() > 0) {
    complementarity = (lambda.array() * (W * y - b).array()).abs().maxCoeff();
  }
  return stationarity + complementarity;
}

// Solves the projection exactly under the guess that `active` holds with
// equality and every other constraint is slack. Succeeds only if the guess
// passes the KKT test (feasible point, nonnegative multipliers).
template <typename Scalar>
bool solve_active_set(const DynMatrix<Scalar>& W, const DynVector<Scalar>& b,
                      const DynVector<Scalar>& x, const std::vector<Eigen::Index>& active,
                      Scalar scale, DynVector<Scalar>& y, DynVector<Scalar>& lambda) {
  const Eigen::Index n_active = static_cast<Eigen::Index>(active.size());
  lambda.setZero(W.rows());
  if (n_active == 0) {
    y = x;
  } else {
    DynMatrix<Scalar> Wa(n_active, W.cols());
    DynVector<Scalar> rhs(n_active);
    for (Eigen::Index k = 0; k < n_active; ++k) {
      Wa.row(k) = W.row(active[k]);
      rhs(k) = b(active[k]) - W.row(active[k]).dot(x);
    }
    const DynMatrix<Scalar> gram = Wa * Wa.transpose();
    const DynVector<Scalar> mu = gram.completeOrthogonalDecomposition().solve(rhs);
    if ((gram * mu - rhs).norm() > Scalar(1e-10) * scale) return false;
    const Scalar mu_tol = Scalar(1e-12) * scale;
    for (Eigen::Index k = 0; k < n_active; ++k) {
      if (mu(k) < -mu_tol) return false;
      lambda(active[k]) = std::max(Scalar(0), mu(k));
    }
    y = x + Wa.transpose() * mu;
  }
  return max_violation(W, b, y) <= Scalar(1e-12) * scale;
}

// Starts from a guessed active set and repairs it a bounded number of times:
// the most violated constraint is added, or the most negative multiplier is
// dropped. Dykstra's weights lag behind when rows are nearly parallel, so the
// first guess is often missing one constraint of the optimal face.
template <typename Scalar>
bool polish_active_set(const DynMatrix<Scalar>& W, const DynVector<Scalar>& b,
                       const DynVector<Scalar>& x, std::vector<Eigen::Index> active,
                       Scalar scale, DynVector<Scalar>& y, DynVector<Scalar>& lambda) {
  const Scalar tol = Scalar(1e-12) * scale;
  for (Eigen::Index round = 0; round <= 2 * W.rows(); ++round) {
    if (solve_active_set(W, b, x, active, scale, y, lambda)) return true;
    if (active.empty()) {
      y = x;
    } else {
      DynMatrix<Scalar> Wa(static_cast<Eigen::Index>(active.size()), W.cols());
      DynVector<Scalar> rhs(Wa.rows());
      for (Eigen::Index k = 0; k < Wa.rows(); ++k) {
        Wa.row(k) = W.row(active[k]);
        rhs(k) = b(active[k]) - W.row(active[k]).dot(x);
      }
      const DynMatrix<Scalar> gram = Wa * Wa.transpose();
      const DynVector<Scalar> mu = gram.completeOrthogonalDecomposition().solve(rhs);
      Eigen::Index worst;
      if (mu.minCoeff(&worst) < -tol) {
        active.erase(active.begin() + worst);
        continue;
      }
      y = x + Wa.transpose() * mu;
    }
    Eigen::Index worst;
    if ((b - W * y).maxCoeff(&worst) <= tol) return false;
    if (std::find(active.begin(), active.end(), worst) != active.end()) return false;
    active.insert(std::upper_bound(active.begin(), active.end(), worst), worst);
  }
  return false;
}

}  // namespace detail

/// Euclidean projection of x onto the polyhedron {y : W y >= b}.
///
/// Dykstra's alternating projections over the halfspaces of W. After every
/// sweep the set of constraints carrying a positive Dykstra weight seeds a
/// short active-set repair; once a set satisfies the KKT conditions the exact
/// solution is returned. Otherwise iteration continues until a sweep moves
/// the iterate by less than `move_tol`.
///
/// Throws InvalidArgument on shape mismatch or on a zero row with b_n > 0,
/// ConvergenceError if `max_sweeps` is exhausted.
template <typename DerivedW, typename DerivedB, typename DerivedX>
ProjectionResult<typename DerivedX::Scalar> project_onto_polyhedron(
    const Eigen::MatrixBase<DerivedW>& W_in, const Eigen::MatrixBase<DerivedB>& b_in,
    const Eigen::MatrixBase<DerivedX>& x_in, const ProjectionOptions& options = {}) {
  using Scalar = typename DerivedX::Scalar;
  using Vector = detail::DynVector<Scalar>;
  using Matrix = detail::DynMatrix<Scalar>;

  const Matrix W = W_in.template cast<Scalar>();
  const Vector b = b_in.template cast<Scalar>();
  const Vector x = x_in;
  if (W.cols() != x.size() || W.rows() != b.size()) {
    throw InvalidArgument("project_onto_polyhedron: shape mismatch");
  }
  const Eigen::Index n_rows = W.rows();

  Vector row_sq(n_rows);
  for (Eigen::Index n = 0; n < n_rows; ++n) {
    row_sq(n) = W.row(n).squaredNorm();
    if (row_sq(n) == Scalar(0) && b(n) > Scalar(0)) {
      throw InvalidArgument("project_onto_polyhedron: zero row with positive bound is infeasible");
    }
  }

  const Scalar scale = Scalar(1) + x.norm() + b.norm();
  ProjectionResult<Scalar> result;
  Vector y = x;
  Vector q = Vector::Zero(n_rows);  // y == x + W^T q throughout
  std::vector<Eigen::Index> active, last_tried;
  bool tried_any = false;
  Vector y_polish, lambda_polish;

  for (long sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    Scalar move = 0;
    for (Eigen::Index n = 0; n < n_rows; ++n) {
      if (row_sq(n) == Scalar(0)) continue;
      const Scalar qn = q(n);
      // z = y - q_n w_n; project z onto the halfspace.
      const Scalar wz = W.row(n).dot(y) - qn * row_sq(n);
      const Scalar t = std::max(Scalar(0), (b(n) - wz) / row_sq(n));
      if (t != qn) {
        y.noalias() += (t - qn) * W.row(n).transpose();
        move += std::abs(t - qn) * std::sqrt(row_sq(n));
        q(n) = t;
      }
    }

    active.clear();
    for (Eigen::Index n = 0; n < n_rows; ++n) {
      if (q(n) > Scalar(0)) active.push_back(n);
    }
    if (!tried_any || active != last_tried) {
      tried_any = true;
      last_tried = active;
      if (detail::polish_active_set<Scalar>(W, b, x, active, scale, y_polish, lambda_polish)) {
        result.point = y_polish;
        result.multipliers = lambda_polish;
        result.sweeps = sweep;
        result.polished = true;
        result.max_violation = detail::max_violation<Scalar>(W, b, y_polish);
        result.kkt_residual = detail::kkt_residual<Scalar>(W, b, x, y_polish, lambda_polish);
        return result;
      }
    }

    if (move < Scalar(options.move_tol) * scale &&
        detail::max_violation<Scalar>(W, b, y) <= Scalar(options.feasibility_tol)) {
      result.point = y;
      result.multipliers = q;
      result.sweeps = sweep;
      result.max_violation = detail::max_violation<Scalar>(W, b, y);
      result.kkt_residual = detail::kkt_residual<Scalar>(W, b, x, y, q);
      return result;
    }
  }
  throw ConvergenceError("project_onto_polyhedron: sweep cap reached",
                         static_cast<double>(detail::max_violation<Scalar>(W, b, y)));
}

}  // namespace vopt
