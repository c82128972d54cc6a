#include "socnc/soc_core.hpp"

#include <algorithm>
#include <cmath>

namespace socnc {

const char* to_string(ConeRegion r) {
  switch (r) {
    case ConeRegion::IntK: return "IntK";
    case ConeRegion::BdKNonzero: return "BdKNonzero";
    case ConeRegion::Zero: return "Zero";
    case ConeRegion::NegIntK: return "NegIntK";
    case ConeRegion::NegBdKNonzero: return "NegBdKNonzero";
    case ConeRegion::Outside: return "Outside";
  }
  return "?";
}

const char* to_string(OmegaCase c) {
  switch (c) {
    case OmegaCase::ZeroInt: return "ZeroInt";
    case OmegaCase::IntZero: return "IntZero";
    case OmegaCase::BdBd: return "BdBd";
    case OmegaCase::ZeroBd: return "ZeroBd";
    case OmegaCase::BdZero: return "BdZero";
    case OmegaCase::ZeroZero: return "ZeroZero";
  }
  return "?";
}

std::optional<OmegaCase> omega_case_from_string(const std::string& s) {
  if (s == "ZeroInt") return OmegaCase::ZeroInt;
  if (s == "IntZero") return OmegaCase::IntZero;
  if (s == "BdBd") return OmegaCase::BdBd;
  if (s == "ZeroBd") return OmegaCase::ZeroBd;
  if (s == "BdZero") return OmegaCase::BdZero;
  if (s == "ZeroZero") return OmegaCase::ZeroZero;
  return std::nullopt;
}

SpectralDecomp spectral_decompose(const SocVector& x) {
  const Eigen::Index m = x.dim();
  const double t = x.tailNorm();
  Eigen::VectorXd dir(m - 1);
  bool tie = false;
  if (t > 0) {
    dir = x.x2() / t;
  } else {
    dir.setZero();
    dir(0) = 1.0;  // tie-break: first canonical unit vector
    tie = true;
  }
  SocVector c1(0.5, Eigen::VectorXd(-0.5 * dir));
  SocVector c2(0.5, Eigen::VectorXd(0.5 * dir));
  return SpectralDecomp{x.x1() - t, x.x1() + t, c1, c2, tie};
}

ConeRegion classify_point(const SocVector& x, const Tolerances& tol) {
  tol.validate();
  const double t = x.tailNorm();
  const double l1 = x.x1() - t;
  const double l2 = x.x1() + t;
  const double eps = tol.classifyTol * (1.0 + x.norm());
  if (l1 > eps) return ConeRegion::IntK;
  if (l2 < -eps) return ConeRegion::NegIntK;
  if (std::abs(l1) <= eps && std::abs(l2) <= eps) return ConeRegion::Zero;
  if (std::abs(l1) <= eps) return ConeRegion::BdKNonzero;   // 0 = l1 < l2
  if (std::abs(l2) <= eps) return ConeRegion::NegBdKNonzero;  // l1 < l2 = 0
  return ConeRegion::Outside;
}

SocVector project_soc(const SocVector& x) {
  const SpectralDecomp s = spectral_decompose(x);
  const double p1 = std::max(0.0, s.lambda1);
  const double p2 = std::max(0.0, s.lambda2);
  return SocVector(p1 * s.c1.raw() + p2 * s.c2.raw());
}

SocVector project_polar(const SocVector& x) {
  return SocVector(x.raw() - project_soc(x).raw());
}

SocVector reflect(const SocVector& x) { return x.reflected(); }

OmegaPair classify_pair(const SocVector& x, const SocVector& y,
                        const Tolerances& tol) {
  tol.validate();
  if (x.dim() != y.dim())
    throw DimensionMismatchError("classify_pair: x and y dimensions differ");
  const ConeRegion rx = classify_point(x, tol);
  const ConeRegion ry = classify_point(y, tol);
  const bool xInK = rx == ConeRegion::IntK || rx == ConeRegion::BdKNonzero ||
                    rx == ConeRegion::Zero;
  const bool yInK = ry == ConeRegion::IntK || ry == ConeRegion::BdKNonzero ||
                    ry == ConeRegion::Zero;
  if (!xInK) throw NotInOmegaError("x is not in the cone");
  if (!yInK) throw NotInOmegaError("y is not in the cone");
  const double ip = x.dot(y);
  if (std::abs(ip) > tol.classifyTol * (1.0 + x.norm() * y.norm()))
    throw NotInOmegaError("<x,y> is nonzero beyond tolerance");

  if (rx == ConeRegion::Zero && ry == ConeRegion::IntK)
    return OmegaPair{x, y, OmegaCase::ZeroInt, std::nullopt};
  if (rx == ConeRegion::IntK && ry == ConeRegion::Zero)
    return OmegaPair{x, y, OmegaCase::IntZero, std::nullopt};
  if (rx == ConeRegion::Zero && ry == ConeRegion::BdKNonzero)
    return OmegaPair{x, y, OmegaCase::ZeroBd, std::nullopt};
  if (rx == ConeRegion::BdKNonzero && ry == ConeRegion::Zero)
    return OmegaPair{x, y, OmegaCase::BdZero, std::nullopt};
  if (rx == ConeRegion::Zero && ry == ConeRegion::Zero)
    return OmegaPair{x, y, OmegaCase::ZeroZero, std::nullopt};
  if (rx == ConeRegion::BdKNonzero && ry == ConeRegion::BdKNonzero) {
    const double k = y.x1() / x.x1();
    // complementarity on the boundary forces y = k * reflected(x)
    const double res = (y.raw() - k * x.reflected().raw()).norm();
    if (res > tol.memberTol * (1.0 + x.norm() + y.norm()))
      throw AmbiguousCaseError(
          "BdBd pair does not satisfy y = k*reflect(x) within tolerance");
    return OmegaPair{x, y, OmegaCase::BdBd, k};
  }
  // complementary within tolerance, but the region combination is impossible
  // for an exact member: classification is unstable at this tolerance
  throw AmbiguousCaseError("pair classification unstable at tolerance");
}

MembershipVerdict ray_membership(const SocVector& a, const SocVector& b,
                                 RayMode mode, const Tolerances& tol) {
  tol.validate();
  if (a.dim() != b.dim())
    throw DimensionMismatchError("ray_membership: dimensions differ");
  MembershipVerdict out;
  const double bb = b.dot(b);
  double coeff = 0.0;
  double res = a.norm();
  if (bb > 0) {
    coeff = a.dot(b) / bb;
    res = (a.raw() - coeff * b.raw()).norm();
  }
  const double eps = tol.memberTol * (1.0 + a.norm());
  bool ok = res <= eps;
  if (mode == RayMode::NegativeRay && coeff > tol.memberTol) ok = false;
  out.member = ok;
  out.branch = mode == RayMode::FullLine ? "full_line" : "negative_ray";
  out.residual = res;
  out.scalars["coefficient"] = coeff;
  return out;
}

}  // namespace socnc
