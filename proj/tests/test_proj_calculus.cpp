#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Eigenvalues>
#include <random>

#include "doctest.h"
#include "socnc/proj_calculus.hpp"

using namespace socnc;

namespace {

const double kSqrt2 = std::sqrt(2.0);

Eigen::VectorXd gaussian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

// Random point of the requested region (scaled to O(1)).
SocVector random_in_region(ConeRegion r, Eigen::Index m,
                           std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Eigen::VectorXd t = gaussian(rng, m - 1);
    const double n = t.norm();
    if (n < 1e-6) continue;
    switch (r) {
      case ConeRegion::IntK: return SocVector(n * 1.5 + 0.1, t);
      case ConeRegion::NegIntK: return SocVector(-n * 1.5 - 0.1, t);
      case ConeRegion::BdKNonzero: return SocVector(n, t);
      case ConeRegion::NegBdKNonzero: return SocVector(-n, t);
      case ConeRegion::Zero: return SocVector::Zero(m);
      case ConeRegion::Outside: return SocVector(0.3 * n, t);
    }
  }
  throw std::runtime_error("sampling failed");
}

// Two-point Richardson extrapolation of the one-sided difference quotient.
Eigen::VectorXd fd_derivative(const SocVector& x, const SocVector& h,
                              double t) {
  auto dq = [&](double s) -> Eigen::VectorXd {
    return (project_soc(SocVector(x.raw() + s * h.raw())).raw() -
            project_soc(x).raw()) /
           s;
  };
  return 2.0 * dq(t / 2) - dq(t);
}

}  // namespace

TEST_CASE("directional derivative closed forms") {
  // interior: identity
  const SocVector h0{0.3, -1.2, 0.5};
  CHECK((dir_derivative(SocVector{2.0, 1.0, 0.0}, h0).raw() - h0.raw())
            .norm() == 0.0);
  // origin: the projection of the direction
  const SocVector h1{-3.0, 1.0};
  CHECK((dir_derivative(SocVector::Zero(2), h1).raw() -
         project_soc(h1).raw())
            .norm() == 0.0);
  // boundary: frozen finite-difference value
  CHECK((dir_derivative(SocVector{1.0, 1.0}, SocVector{0.0, 1.0}).raw() -
         Eigen::Vector2d(0.5, 0.5))
            .norm() < 1e-14);
  // negative interior: zero
  CHECK(dir_derivative(SocVector{-2.0, 1.0, 0.0}, h0).norm() == 0.0);
}

TEST_CASE("jacobian closed forms") {
  Eigen::Matrix3d expected;
  expected << 0.5, 1.0 / (2.0 * kSqrt2), 1.0 / (2.0 * kSqrt2),
      1.0 / (2.0 * kSqrt2), 5.0 / 12.0, 1.0 / 12.0,
      1.0 / (2.0 * kSqrt2), 1.0 / 12.0, 5.0 / 12.0;
  const ProjJacobian j =
      jacobian(SocVector{-1.0, 3.0 / kSqrt2, 3.0 / kSqrt2});
  CHECK(j.region == ConeRegion::Outside);
  CHECK((j.matrix - expected).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(jacobian(SocVector{2.0, 1.0, 0.0}).matrix.isIdentity(0.0));
  CHECK(jacobian(SocVector{-2.0, 1.0, 0.0}).matrix.isZero(0.0));

  CHECK_THROWS_AS(jacobian(SocVector{1.0, 1.0}), NotDifferentiableError);
  CHECK_THROWS_AS(jacobian(SocVector{-1.0, 1.0}), NotDifferentiableError);
  CHECK_THROWS_AS(jacobian(SocVector::Zero(3)), NotDifferentiableError);
}

TEST_CASE("jacobian symmetry and spectrum") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    for (ConeRegion r :
         {ConeRegion::IntK, ConeRegion::NegIntK, ConeRegion::Outside}) {
      const SocVector x = random_in_region(r, 4, rng);
      const Eigen::MatrixXd J = jacobian(x).matrix;
      CHECK((J - J.transpose()).cwiseAbs().maxCoeff() < 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
      CHECK(es.eigenvalues().minCoeff() > -1e-10);
      CHECK(es.eigenvalues().maxCoeff() < 1.0 + 1e-10);
    }
  }
}

TEST_CASE("finite-difference consistency in every region") {
  std::mt19937_64 rng(23);
  for (ConeRegion r :
       {ConeRegion::IntK, ConeRegion::BdKNonzero, ConeRegion::Zero,
        ConeRegion::NegIntK, ConeRegion::NegBdKNonzero, ConeRegion::Outside}) {
    for (int i = 0; i < 60; ++i) {
      const SocVector x = random_in_region(r, 3, rng);
      const SocVector h(gaussian(rng, 3));
      const Eigen::VectorXd d = dir_derivative(x, h).raw();
      CHECK((fd_derivative(x, h, 1e-4) - d).norm() <= 1e-3 * h.norm());
      CHECK((fd_derivative(x, h, 1e-6) - d).norm() <= 1e-5 * h.norm());
    }
  }
}

TEST_CASE("derivative properties") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    const SocVector x = random_in_region(ConeRegion::Outside, 4, rng);
    const SocVector h(gaussian(rng, 4));
    // at smooth outside points the derivative is the Jacobian action
    CHECK((dir_derivative(x, h).raw() - jacobian(x).matrix * h.raw()).norm() <
          1e-13 * (1.0 + h.norm()));
  }
  for (ConeRegion r : {ConeRegion::BdKNonzero, ConeRegion::NegBdKNonzero,
                       ConeRegion::Zero}) {
    for (int i = 0; i < 100; ++i) {
      const SocVector x = random_in_region(r, 3, rng);
      const SocVector h(gaussian(rng, 3));
      for (double s : {1e-3, 7.0, 1e3}) {
        CHECK((dir_derivative(x, SocVector(s * h.raw())).raw() -
               s * dir_derivative(x, h).raw())
                  .norm() <= 1e-12 * s * (1.0 + h.norm()));
      }
    }
  }
}

TEST_CASE("B-subdifferential elements at the origin") {
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(2);
  e1(0) = 1.0;
  const auto elems = b_subdif_elements_at_zero({0.5}, {e1});
  REQUIRE(elems.size() == 3);
  CHECK(elems[0].kind == BSubdifElement::Kind::ZeroMatrix);
  CHECK(elems[0].realize(3).isZero(0.0));
  CHECK(elems[1].kind == BSubdifElement::Kind::Identity);
  CHECK(elems[1].realize(3).isIdentity(0.0));
  // alpha = 1/2 realizes (1/2)[1, w^T; w, I]
  Eigen::Matrix3d expected;
  expected << 0.5, 0.5, 0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 0.5;
  CHECK((elems[2].realize(3) - expected).cwiseAbs().maxCoeff() < 1e-14);

  // alpha = 0 realizes (1/2)[1, w^T; w, ww^T]
  const auto zeroAlpha = b_subdif_elements_at_zero({0.0}, {e1});
  Eigen::Matrix3d at0;
  at0 << 0.5, 0.5, 0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0;
  CHECK((zeroAlpha[2].realize(3) - at0).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(b_subdif_elements_at_zero({}, {e1}), InvalidGridError);
  CHECK_THROWS_AS(b_subdif_elements_at_zero({1.5}, {e1}), InvalidGridError);
  CHECK_THROWS_AS(b_subdif_elements_at_zero({0.5}, {2.0 * e1}),
                  InvalidGridError);
}

TEST_CASE("AlphaW elements are limits of outside Jacobians") {
  // J at z_t = t(2a-1, w) equals aI + (1/2)[1-2a, w^T; w, (1-2a)ww^T]
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    const double a = uni(rng);
    Eigen::VectorXd w = gaussian(rng, 3);
    w /= w.norm();
    const auto elems = b_subdif_elements_at_zero({a}, {w});
    const Eigen::MatrixXd M = elems[2].realize(4);
    for (double t : {1.0, 1e-3, 1e-6}) {
      const SocVector z(t * (2.0 * a - 1.0), Eigen::VectorXd(t * w));
      CHECK((jacobian(z).matrix - M).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("limiting coderivative application") {
  // rank-two matrix branch on the negative boundary
  CHECK(limiting_coderivative_contains(SocVector{-1.0, -1.0},
                                       SocVector{-3.0, 1.0},
                                       SocVector{-2.0, 2.0})
            .member);
  // smooth interior: identity Jacobian
  const SocVector w{0.7, -0.2, 0.1};
  CHECK(limiting_coderivative_contains(SocVector{2.0, 1.0, 0.0}, w, w).member);
  CHECK_FALSE(limiting_coderivative_contains(SocVector{2.0, 1.0, 0.0}, w,
                                             SocVector{0.7, -0.2, 0.2})
                  .member);
  // zero matrix is always available at the origin
  CHECK(limiting_coderivative_contains(SocVector::Zero(3), w,
                                       SocVector::Zero(3))
            .member);
  // identity is always available at the origin
  CHECK(limiting_coderivative_contains(SocVector::Zero(3), w, w).member);
  CHECK_THROWS_AS(limiting_coderivative_contains(SocVector{1.0, 1.0},
                                                 SocVector{1.0, 0.0},
                                                 SocVector{1.0, 0.0}),
                  UnsupportedRegionError);
}

TEST_CASE("calmness report") {
  const std::vector<double> scales{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  const SocVector h{0.4, -1.0, 0.3};
  // interior and origin have identically vanishing residuals
  for (double r :
       calmness_report(SocVector{3.0, 1.0, 0.0}, h, scales).ratios)
    CHECK(r == 0.0);
  for (double r : calmness_report(SocVector::Zero(3), h, scales).ratios)
    CHECK(r == 0.0);
  // boundary: bounded ratios, no blow-up as t decreases
  const CalmnessReport rep =
      calmness_report(SocVector{1.0, 1.0}, SocVector{0.0, 1.0}, scales);
  CHECK(rep.ratios.back() <= 10.0 * rep.ratios.front() + 1e-8);
  CHECK(rep.fittedC ==
        *std::max_element(rep.ratios.begin(), rep.ratios.end()));

  // scales must be positive and decreasing
  CHECK_THROWS_AS(calmness_report(SocVector{1.0, 1.0}, SocVector{0.0, 1.0},
                                  std::vector<double>{1e-3, 1e-2}),
                  InvalidArgumentError);
}

TEST_CASE("calmness boundedness across regions") {
  std::mt19937_64 rng(37);
  const std::vector<double> scales{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  for (ConeRegion r :
       {ConeRegion::IntK, ConeRegion::BdKNonzero, ConeRegion::Zero,
        ConeRegion::NegIntK, ConeRegion::NegBdKNonzero, ConeRegion::Outside}) {
    for (int i = 0; i < 100; ++i) {
      const SocVector x = random_in_region(r, 3, rng);
      const SocVector h(gaussian(rng, 3));
      const CalmnessReport rep = calmness_report(x, h, scales);
      CHECK(rep.ratios.back() <= 10.0 * rep.ratios.front() + 1e-8);
    }
  }
}
