#pragma once

#include <Eigen/Core>
#include <vector>

#include "socnc/soc_core.hpp"

namespace socnc {

// Jacobian of the projection onto K where it exists (interior of K, of -K,
// and outside -K u K). Symmetric with spectrum in [0,1].
struct ProjJacobian {
  Eigen::MatrixXd matrix;
  ConeRegion region;
};

// One element of the B-subdifferential of the projection at the origin:
// the zero matrix, the identity, or alpha*I + (1/2)[1-2a, w^T; w, (1-2a)ww^T]
// for alpha in [0,1] and |w| = 1.
struct BSubdifElement {
  enum class Kind { ZeroMatrix, Identity, AlphaW };
  Kind kind;
  double alpha = 0.0;       // AlphaW only
  Eigen::VectorXd w;        // AlphaW only, unit vector of R^{m-1}
  Eigen::MatrixXd realize(Eigen::Index m) const;
};

// Scales/ratios of |P(x+t h) - P(x) - P'(x; t h)| / t^2 at decreasing t.
struct CalmnessReport {
  std::vector<double> scales;
  std::vector<double> ratios;
  double fittedC = 0.0;
};

// One-sided directional derivative of the projection, all six regions.
SocVector dir_derivative(const SocVector& x, const SocVector& h,
                         const Tolerances& tol = {});

// Throws NotDifferentiableError on bd K, -bd K and at 0.
ProjJacobian jacobian(const SocVector& x, const Tolerances& tol = {});

std::vector<BSubdifElement> b_subdif_elements_at_zero(
    const std::vector<double>& alphaGrid,
    const std::vector<Eigen::VectorXd>& wGrid);

// Membership of zStar in D*P_K(z)(wStar). Supported at smooth points, on
// -bd K \ {0} and at the origin; throws UnsupportedRegionError on
// bd K \ {0}.
MembershipVerdict limiting_coderivative_contains(const SocVector& z,
                                                 const SocVector& wStar,
                                                 const SocVector& zStar,
                                                 const Tolerances& tol = {});

CalmnessReport calmness_report(const SocVector& x, const SocVector& h,
                               const std::vector<double>& scales,
                               const Tolerances& tol = {});

}  // namespace socnc
