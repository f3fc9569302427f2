#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include "vopt/errors.hpp"
#include "vopt/projection.hpp"

namespace vopt {

/// The nonnegative orthant of R^dim.
struct Orthant {
  Eigen::Index dim;
};

/// The planar cone of polar angles [pi/4 - theta/2, pi/4 + theta/2].
struct Theta2D {
  double theta;
};

using ConeFamily = std::variant<Orthant, Theta2D>;

enum class BetaProvenance { ClosedForm, EmpiricalEstimate };

template <typename Scalar = double>
struct ConeConstants {
  Scalar beta1 = 1;
  Scalar beta2 = 1;
  Scalar beta = 1;
  BetaProvenance provenance = BetaProvenance::ClosedForm;
};

/// Polyhedral ordering cone {x : W x >= 0}.
///
/// Rows of W are normalized on construction. The constructor rejects cones
/// that are not pointed (W lacks full column rank) or not solid (some alpha
/// coefficient vanishes). Redundant rows are kept as given.
template <typename Scalar = double>
class PolyhedralCone {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit PolyhedralCone(Matrix W, std::optional<ConeFamily> family = std::nullopt)
      : W_(std::move(W)), family_(family) {
    if (W_.rows() == 0 || W_.cols() == 0) {
      throw InvalidArgument("PolyhedralCone: W must have at least one row and one column");
    }
    if (!W_.allFinite()) throw InvalidArgument("PolyhedralCone: W has non-finite entries");
    for (Eigen::Index n = 0; n < W_.rows(); ++n) {
      const Scalar norm = W_.row(n).norm();
      if (norm == Scalar(0)) throw InvalidArgument("PolyhedralCone: zero row in W");
      W_.row(n) /= norm;
    }
    Eigen::FullPivLU<Matrix> lu(W_);
    lu.setThreshold(Scalar(1e-10));
    if (lu.rank() < W_.cols()) throw DegenerateCone("PolyhedralCone: cone is not pointed");

    // alpha_n = |P_C(w_n)|: for unit u in C, w.u <= P_C(w).u by Moreau.
    alphas_.resize(W_.rows());
    const Vector zero = Vector::Zero(W_.rows());
    for (Eigen::Index n = 0; n < W_.rows(); ++n) {
      const Vector w = W_.row(n).transpose();
      alphas_(n) = std::min(Scalar(1), project_onto_polyhedron(W_, zero, w).point.norm());
      if (alphas_(n) <= Scalar(kDefaultTol)) {
        throw DegenerateCone("PolyhedralCone: alpha coefficient vanishes (cone is not solid)");
      }
    }
  }

  const Matrix& W() const noexcept { return W_; }
  Eigen::Index dim() const noexcept { return W_.cols(); }
  Eigen::Index n_constraints() const noexcept { return W_.rows(); }
  const Vector& alphas() const noexcept { return alphas_; }
  const std::optional<ConeFamily>& family() const noexcept { return family_; }

 private:
  Matrix W_;
  Vector alphas_;
  std::optional<ConeFamily> family_;
};

template <typename Scalar = double>
PolyhedralCone<Scalar> make_orthant(Eigen::Index dim) {
  if (dim < 1) throw InvalidArgument("make_orthant: dimension must be positive");
  using Matrix = typename PolyhedralCone<Scalar>::Matrix;
  return PolyhedralCone<Scalar>(Matrix::Identity(dim, dim), Orthant{dim});
}

/// Rows are the inward normals of the two edges, at angles
/// pi/4 - theta/2 + pi/2 and pi/4 + theta/2 - pi/2.
template <typename Scalar = double>
PolyhedralCone<Scalar> make_theta_cone(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw InvalidArgument("make_theta_cone: theta must lie in (0, pi)");
  }
  const double lower = std::numbers::pi / 4 - theta / 2 + std::numbers::pi / 2;
  const double upper = std::numbers::pi / 4 + theta / 2 - std::numbers::pi / 2;
  typename PolyhedralCone<Scalar>::Matrix W(2, 2);
  W << Scalar(std::cos(lower)), Scalar(std::sin(lower)),
       Scalar(std::cos(upper)), Scalar(std::sin(upper));
  return PolyhedralCone<Scalar>(std::move(W), Theta2D{theta});
}

namespace detail {
template <typename Scalar, typename Derived>
void check_dim(const PolyhedralCone<Scalar>& cone, const Eigen::MatrixBase<Derived>& x,
               const char* where) {
  if (x.size() != cone.dim()) {
    throw InvalidArgument(std::string(where) + ": dimension mismatch");
  }
}
}  // namespace detail

template <typename Scalar, typename Derived>
bool contains(const PolyhedralCone<Scalar>& cone, const Eigen::MatrixBase<Derived>& x,
              double tol = kDefaultTol) {
  detail::check_dim(cone, x, "contains");
  return (cone.W() * x.template cast<Scalar>()).minCoeff() >= Scalar(-tol);
}

template <typename Scalar, typename Derived>
bool strictly_contains(const PolyhedralCone<Scalar>& cone, const Eigen::MatrixBase<Derived>& x,
                       double tol = kDefaultTol) {
  detail::check_dim(cone, x, "strictly_contains");
  return (cone.W() * x.template cast<Scalar>()).minCoeff() > Scalar(tol);
}

template <typename Scalar, typename Derived>
Scalar distance_to_cone(const PolyhedralCone<Scalar>& cone, const Eigen::MatrixBase<Derived>& x) {
  detail::check_dim(cone, x, "distance_to_cone");
  using Vector = typename PolyhedralCone<Scalar>::Vector;
  const Vector v = x.template cast<Scalar>();
  const auto proj = project_onto_polyhedron(cone.W(), Vector::Zero(cone.n_constraints()), v);
  return (v - proj.point).norm();
}

/// Distance from x to the complement of Int(C). Each facet term w_n.x is the
/// distance to the halfspace {w_n.y <= 0} because the rows are unit vectors.
template <typename Scalar, typename Derived>
Scalar distance_to_interior_complement(const PolyhedralCone<Scalar>& cone,
                                       const Eigen::MatrixBase<Derived>& x) {
  detail::check_dim(cone, x, "distance_to_interior_complement");
  return std::max(Scalar(0), (cone.W() * x.template cast<Scalar>()).minCoeff());
}

template <typename Scalar>
const typename PolyhedralCone<Scalar>::Vector& alpha_coefficients(
    const PolyhedralCone<Scalar>& cone) {
  return cone.alphas();
}

/// Rows generate the dual cone C+.
template <typename Scalar>
typename PolyhedralCone<Scalar>::Matrix dual_cone_generators(const PolyhedralCone<Scalar>& cone) {
  return cone.W();
}

inline ConeConstants<double> beta_closed_form(const ConeFamily& family) {
  ConeConstants<double> out;
  if (const auto* orthant = std::get_if<Orthant>(&family)) {
    if (orthant->dim < 1) throw InvalidArgument("beta_closed_form: dimension must be positive");
    return out;
  }
  const double theta = std::get<Theta2D>(family).theta;
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw InvalidArgument("beta_closed_form: theta must lie in (0, pi)");
  }
  if (theta <= std::numbers::pi / 2) {
    out.beta1 = out.beta2 = out.beta = 1.0 / std::sin(theta);
  }
  return out;
}

/// Monte-Carlo lower bound on beta1 and beta2.
///
/// Standard Gaussian draws are sorted by region until `samples` points
/// outside C and `samples` points inside Int(C) have been collected (or the
/// attempt budget runs out). beta1 ratios use the polyhedral projection for
/// d(x, C n (x + C)); beta2 ratios use m(x) = d(x, Int(C)^c n (x - C)) via
/// its closed form.
template <typename Scalar>
ConeConstants<Scalar> beta_empirical(const PolyhedralCone<Scalar>& cone, long samples,
                                     std::uint64_t rng_seed) {
  if (samples < 1) throw InvalidArgument("beta_empirical: samples must be positive");
  using Vector = typename PolyhedralCone<Scalar>::Vector;
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Index dim = cone.dim();
  const auto& W = cone.W();
  const auto& alphas = cone.alphas();

  Scalar beta1 = 0, beta2 = 0;
  long outside = 0, inside = 0;
  const long max_attempts = 1000 * samples + 1000;
  Vector x(dim);
  for (long attempt = 0; attempt < max_attempts && (outside < samples || inside < samples);
       ++attempt) {
    for (Eigen::Index d = 0; d < dim; ++d) x(d) = Scalar(normal(rng));
    const Vector wx = W * x;
    const Scalar min_wx = wx.minCoeff();
    if (min_wx < Scalar(0)) {
      if (outside >= samples) continue;
      ++outside;
      const Scalar denom = distance_to_cone(cone, x);
      if (denom <= Scalar(kDefaultTol)) continue;
      const Vector lower = wx.cwiseMax(Scalar(0));
      const Scalar numer = (x - project_onto_polyhedron(W, lower, x).point).norm();
      beta1 = std::max(beta1, numer / denom);
    } else if (min_wx > Scalar(0)) {
      if (inside >= samples) continue;
      ++inside;
      const Scalar numer = (wx.array() / alphas.array()).minCoeff();
      beta2 = std::max(beta2, numer / min_wx);
    }
  }
  if (beta1 == Scalar(0) && beta2 == Scalar(0)) {
    throw std::runtime_error("beta_empirical: every sample was degenerate");
  }
  ConeConstants<Scalar> out;
  out.beta1 = std::max(Scalar(1), beta1);
  out.beta2 = std::max(Scalar(1), beta2);
  out.beta = std::max(out.beta1, out.beta2);
  out.provenance = BetaProvenance::EmpiricalEstimate;
  return out;
}

}  // namespace vopt
