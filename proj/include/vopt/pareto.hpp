#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "vopt/cone.hpp"

namespace vopt {

/// K designs with mean vectors stored as the rows of `means`.
template <typename Scalar = double>
struct DesignSet {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> means;
  std::vector<std::string> labels;

  DesignSet() = default;
  explicit DesignSet(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m,
                     std::vector<std::string> names = {})
      : means(std::move(m)), labels(std::move(names)) {
    if (labels.empty()) {
      for (Eigen::Index i = 0; i < means.rows(); ++i) labels.push_back(std::to_string(i));
    }
    validate();
  }

  Eigen::Index size() const noexcept { return means.rows(); }
  Eigen::Index dim() const noexcept { return means.cols(); }
  auto mean(Eigen::Index i) const { return means.row(i).transpose(); }

  void validate() const {
    if (static_cast<Eigen::Index>(labels.size()) != means.rows()) {
      throw InvalidArgument("DesignSet: label count does not match design count");
    }
    if (!means.allFinite()) throw InvalidArgument("DesignSet: non-finite mean entry");
  }
};

using DesignSetd = DesignSet<double>;

/// i is dominated by j: mu_j - mu_i lies in C \ {0}.
template <typename Scalar, typename DerivedI, typename DerivedJ>
bool dominates(const PolyhedralCone<Scalar>& cone, const Eigen::MatrixBase<DerivedI>& mu_i,
               const Eigen::MatrixBase<DerivedJ>& mu_j, double tol = kDefaultTol) {
  if (mu_i.size() != mu_j.size()) throw InvalidArgument("dominates: dimension mismatch");
  const auto delta = (mu_j - mu_i).eval();
  return delta.norm() > Scalar(tol) && contains(cone, delta, tol);
}

/// Indices (ascending) of designs not dominated by any other design.
template <typename Scalar>
std::vector<Eigen::Index> pareto_set(const DesignSet<Scalar>& designs,
                                     const PolyhedralCone<Scalar>& cone,
                                     double tol = kDefaultTol) {
  if (designs.dim() != cone.dim()) throw InvalidArgument("pareto_set: dimension mismatch");
  std::vector<Eigen::Index> result;
  const Eigen::Index K = designs.size();
  for (Eigen::Index i = 0; i < K; ++i) {
    bool dominated = false;
    for (Eigen::Index j = 0; j < K && !dominated; ++j) {
      if (j != i) dominated = dominates(cone, designs.mean(i), designs.mean(j), tol);
    }
    if (!dominated) result.push_back(i);
  }
  return result;
}

}  // namespace vopt
