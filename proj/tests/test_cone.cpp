#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vopt/cone.hpp"

using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;
using std::numbers::pi;

TEST_CASE("make_orthant") {
  const auto c2 = vopt::make_orthant(2);
  CHECK(c2.W().isApprox(MatrixXd::Identity(2, 2)));
  const auto c1 = vopt::make_orthant(1);
  CHECK(c1.W().rows() == 1);
  CHECK(c1.W()(0, 0) == 1.0);
  const auto c3 = vopt::make_orthant(3);
  CHECK(vopt::contains(c3, Vector3d(1, 1, 1)));
  CHECK_FALSE(vopt::contains(c3, Vector3d(-1, 0, 0)));
  CHECK_THROWS_AS(vopt::make_orthant(0), vopt::InvalidArgument);
}

TEST_CASE("make_theta_cone") {
  const auto half = vopt::make_theta_cone(pi / 2);
  CHECK(vopt::contains(half, Vector2d(1, 0)));
  CHECK(vopt::contains(half, Vector2d(0, 1)));
  CHECK_FALSE(vopt::contains(half, Vector2d(-0.01, 1)));

  const auto narrow = vopt::make_theta_cone(pi / 4);
  CHECK(vopt::contains(narrow, oracle::direction(pi / 4)));
  CHECK_FALSE(vopt::contains(narrow, Vector2d(1, 0)));

  const auto wide = vopt::make_theta_cone(3 * pi / 4);
  const VectorXd wx = wide.W() * oracle::direction(-pi / 8);
  CHECK(wx.cwiseAbs().minCoeff() <= 1e-9);
  CHECK(wx.maxCoeff() > 0.1);

  CHECK_THROWS_AS(vopt::make_theta_cone(0.0), vopt::InvalidArgument);
  CHECK_THROWS_AS(vopt::make_theta_cone(pi), vopt::InvalidArgument);
  CHECK_THROWS_AS(vopt::make_theta_cone(-1.0), vopt::InvalidArgument);
}

TEST_CASE("theta cones cover the stated angle range") {
  for (double theta : {0.3, pi / 4, pi / 2, 3 * pi / 4, 2.9}) {
    const auto cone = vopt::make_theta_cone(theta);
    const auto arc = oracle::cone_arc(cone.W());
    CHECK(arc.width == doctest::Approx(theta).epsilon(1e-9));
    const double start = std::remainder(arc.start - (pi / 4 - theta / 2), 2 * pi);
    CHECK(std::abs(start) < 1e-9);
  }
}

TEST_CASE("contains and strictly_contains") {
  const auto o = vopt::make_orthant(2);
  CHECK(vopt::contains(o, Vector2d(1, 2), 0.0));
  CHECK_FALSE(vopt::contains(o, Vector2d(-1, 2), 0.0));
  CHECK(vopt::contains(o, Vector2d(-1e-12, 2), 1e-9));
  CHECK(vopt::strictly_contains(o, Vector2d(1, 2), 0.0));
  CHECK_FALSE(vopt::strictly_contains(o, Vector2d(0, 2), 0.0));
  CHECK(vopt::strictly_contains(vopt::make_theta_cone(pi / 2), Vector2d(1, 1)));
  CHECK_THROWS_AS(vopt::contains(o, Vector3d(1, 1, 1)), vopt::InvalidArgument);
  CHECK_THROWS_AS(vopt::strictly_contains(o, Vector3d(1, 1, 1)), vopt::InvalidArgument);
}

TEST_CASE("distance_to_cone") {
  const auto o = vopt::make_orthant(2);
  CHECK(vopt::distance_to_cone(o, Vector2d(-1, -1)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(vopt::distance_to_cone(o, Vector2d(3, 0)) == 0.0);
  const auto narrow = vopt::make_theta_cone(pi / 4);
  const double d = vopt::distance_to_cone(narrow, Vector2d(1, 0));
  CHECK(d == doctest::Approx(std::sin(pi / 8)).epsilon(1e-10));
  CHECK(d == doctest::Approx(oracle::distance_to_cone_rays(narrow.W(), Vector2d(1, 0))).epsilon(1e-6));
}

TEST_CASE("distance_to_cone matches the ray oracle on random planar cones") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 100; ++trial) {
    const vopt::PolyhedralCone<> cone(oracle::random_planar_cone(rng));
    const Vector2d x(normal(rng), normal(rng));
    const double want = oracle::distance_to_cone_rays(cone.W(), x);
    CHECK(vopt::distance_to_cone(cone, x) == doctest::Approx(want).epsilon(1e-6).scale(1.0));
    CHECK((vopt::distance_to_cone(cone, x) == 0.0) == vopt::contains(cone, x, 0.0));
  }
}

TEST_CASE("distance_to_interior_complement") {
  const auto o = vopt::make_orthant(2);
  CHECK(vopt::distance_to_interior_complement(o, Vector2d(2, 3)) == 2.0);
  CHECK(vopt::distance_to_interior_complement(o, Vector2d(-1, 3)) == 0.0);
  CHECK(vopt::distance_to_interior_complement(vopt::make_theta_cone(pi / 2), Vector2d(5, 1)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  int checked = 0;
  while (checked < 100) {
    const vopt::PolyhedralCone<> cone(oracle::random_planar_cone(rng));
    const Vector2d x(normal(rng), normal(rng));
    if (!oracle::interior(cone.W(), x)) continue;
    ++checked;
    const double sampled = oracle::distance_to_boundary_samples(cone.W(), x);
    CHECK(vopt::distance_to_interior_complement(cone, x) ==
          doctest::Approx(sampled).epsilon(0.02).scale(1e-3));
  }
}

TEST_CASE("alpha coefficients") {
  CHECK(vopt::alpha_coefficients(vopt::make_orthant(2)).isApprox(Vector2d(1, 1)));
  CHECK(vopt::alpha_coefficients(vopt::make_theta_cone(pi / 4))
            .isApprox(Vector2d(std::cos(pi / 4), std::cos(pi / 4)), 1e-9));
  CHECK(vopt::alpha_coefficients(vopt::make_theta_cone(pi / 2)).isApprox(Vector2d(1, 1), 1e-12));
}

TEST_CASE("alpha coefficients match the grid oracle in 2-D") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const vopt::PolyhedralCone<> cone(oracle::random_planar_cone(rng));
    for (Eigen::Index n = 0; n < 2; ++n) {
      const Vector2d w = cone.W().row(n).transpose();
      const double a = cone.alphas()(n);
      CHECK(a == doctest::Approx(oracle::alpha_grid_2d(cone.W(), w)).epsilon(1e-3).scale(1.0));
      CHECK(a > 0.0);
      CHECK(a <= 1.0);
      CHECK((std::abs(a - 1.0) < 1e-12) == vopt::contains(cone, w, 1e-12));
    }
  }
}

TEST_CASE("alpha coefficients match the grid oracle in 3-D") {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> normal;
  int done = 0;
  while (done < 5) {
    // Four normals around an interior axis, perturbed so the cone is generic.
    MatrixXd W(4, 3);
    for (int n = 0; n < 4; ++n) {
      const double phi = n * pi / 2 + 0.2 * normal(rng);
      W.row(n) << std::cos(phi), std::sin(phi), 0.6 + 0.2 * std::abs(normal(rng));
    }
    std::optional<vopt::PolyhedralCone<>> cone;
    try {
      cone.emplace(W);
    } catch (const vopt::DegenerateCone&) {
      continue;
    }
    ++done;
    for (Eigen::Index n = 0; n < 4; ++n) {
      const Vector3d w = cone->W().row(n).transpose();
      CHECK(cone->alphas()(n) == doctest::Approx(oracle::alpha_grid_3d(cone->W(), w)).epsilon(1e-3).scale(1.0));
    }
  }
}

TEST_CASE("beta closed forms") {
  auto k = vopt::beta_closed_form(vopt::Orthant{5});
  CHECK(k.beta == 1.0);
  CHECK(k.provenance == vopt::BetaProvenance::ClosedForm);
  k = vopt::beta_closed_form(vopt::Theta2D{pi / 4});
  CHECK(k.beta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(k.beta1 == k.beta2);
  CHECK(vopt::beta_closed_form(vopt::Theta2D{pi / 2}).beta == 1.0 / std::sin(pi / 2));
  CHECK(vopt::beta_closed_form(vopt::Theta2D{3 * pi / 4}).beta == 1.0);
  CHECK_THROWS_AS(vopt::beta_closed_form(vopt::Theta2D{pi}), vopt::InvalidArgument);
  CHECK_THROWS_AS(vopt::beta_closed_form(vopt::Theta2D{0.0}), vopt::InvalidArgument);
}

TEST_CASE("beta empirical estimates") {
  auto k = vopt::beta_empirical(vopt::make_orthant(2), 1000, 1);
  CHECK(k.beta >= 1.0);
  CHECK(k.beta <= 1.0 + 1e-6);
  CHECK(k.provenance == vopt::BetaProvenance::EmpiricalEstimate);

  k = vopt::beta_empirical(vopt::make_theta_cone(pi / 4), 10000, 2);
  CHECK(k.beta <= std::sqrt(2.0) + 1e-6);
  CHECK(k.beta >= 1.3);
  CHECK(k.beta == std::max(k.beta1, k.beta2));

  k = vopt::beta_empirical(vopt::make_theta_cone(3 * pi / 4), 1000, 3);
  CHECK(k.beta >= 1.0);
  CHECK(k.beta <= 1.0 + 1e-6);

  CHECK_THROWS_AS(vopt::beta_empirical(vopt::make_orthant(2), 0, 1), vopt::InvalidArgument);
}

TEST_CASE("dual cone generators") {
  const auto o = vopt::make_orthant(2);
  const MatrixXd G = vopt::dual_cone_generators(o);
  CHECK(G.isApprox(MatrixXd::Identity(2, 2)));
  for (Eigen::Index n = 0; n < 2; ++n) CHECK(vopt::contains(o, G.row(n).transpose().eval()));

  const MatrixXd Gt = vopt::dual_cone_generators(vopt::make_theta_cone(pi / 4));
  CHECK(Gt.row(0).transpose().isApprox(oracle::direction(5 * pi / 8), 1e-12));
  CHECK(Gt.row(1).transpose().isApprox(oracle::direction(-pi / 8), 1e-12));

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXd W = oracle::random_planar_cone(rng);
    const vopt::PolyhedralCone<> cone(W);
    const auto dirs = oracle::arc_directions(W, 1000);
    const MatrixXd gens = vopt::dual_cone_generators(cone);
    for (const auto& x : dirs) CHECK((gens * x).minCoeff() >= -1e-12);
  }
}

TEST_CASE("rows are normalized and degenerate cones are rejected") {
  MatrixXd W(3, 2);
  W << 3, 4, 0, 10, 1, -0.1;
  const vopt::PolyhedralCone<> cone(W);
  for (Eigen::Index n = 0; n < 3; ++n) CHECK(std::abs(cone.W().row(n).norm() - 1.0) <= 1e-12);

  MatrixXd flat(2, 2);
  flat << 1, 0, -1, 0;  // a halfspace pair: not pointed
  CHECK_THROWS_AS(vopt::PolyhedralCone<>{flat}, vopt::DegenerateCone);
  MatrixXd line(3, 2);
  line << 1, 0, -1, 0, 0, 1;  // pointed rank but empty interior
  CHECK_THROWS_AS(vopt::PolyhedralCone<>{line}, vopt::DegenerateCone);
  MatrixXd zero(2, 2);
  zero << 1, 0, 0, 0;
  CHECK_THROWS_AS(vopt::PolyhedralCone<>{zero}, vopt::InvalidArgument);
  MatrixXd bad(2, 2);
  bad << 1, 0, 0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(vopt::PolyhedralCone<>{bad}, vopt::InvalidArgument);
}

TEST_CASE("theta cone at pi/2 agrees with the orthant") {
  const auto a = vopt::make_theta_cone(pi / 2);
  const auto b = vopt::make_orthant(2);
  std::mt19937_64 rng(29);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 10000; ++k) {
    const Vector2d x(normal(rng), normal(rng));
    REQUIRE(vopt::contains(a, x) == vopt::contains(b, x));
    REQUIRE(vopt::strictly_contains(a, x) == vopt::strictly_contains(b, x));
  }
}

TEST_CASE("cones containing the orthant have unit beta1 ratio") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int D = 2 + trial % 2;
    MatrixXd W(D + 1, D);
    for (int n = 0; n < D + 1; ++n)
      for (int d = 0; d < D; ++d) W(n, d) = unit(rng);
    std::optional<vopt::PolyhedralCone<>> cone;
    try {
      cone.emplace(W);
    } catch (const vopt::DegenerateCone&) {
      continue;
    }
    for (int k = 0; k < 20; ++k) {
      VectorXd x(D);
      for (int d = 0; d < D; ++d) x(d) = normal(rng);
      if (vopt::contains(*cone, x, 0.0)) continue;
      const VectorXd wx = cone->W() * x;
      const double shifted =
          (x - vopt::project_onto_polyhedron(cone->W(), wx.cwiseMax(0.0), x).point).norm();
      CHECK(shifted == doctest::Approx(vopt::distance_to_cone(*cone, x)).epsilon(1e-8).scale(1.0));
    }
  }
}
