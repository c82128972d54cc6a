#include "socnc/proj_calculus.hpp"

#include <algorithm>
#include <cmath>

#include "socnc/cones.hpp"

namespace socnc {

namespace {

// Jacobian of the projection at a point outside -K u K:
// (1/2) [1, xb^T; xb, I + (x1/|x2|)(I - xb xb^T)] with xb = x2/|x2|.
Eigen::MatrixXd outside_jacobian(const SocVector& x) {
  const Eigen::Index m = x.dim();
  const double t = x.tailNorm();
  const Eigen::VectorXd xb = x.x2() / t;
  Eigen::MatrixXd J(m, m);
  J(0, 0) = 0.5;
  J.block(0, 1, 1, m - 1) = 0.5 * xb.transpose();
  J.block(1, 0, m - 1, 1) = 0.5 * xb;
  const Eigen::MatrixXd P =
      Eigen::MatrixXd::Identity(m - 1, m - 1) - xb * xb.transpose();
  J.block(1, 1, m - 1, m - 1) =
      0.5 * (Eigen::MatrixXd::Identity(m - 1, m - 1) + (x.x1() / t) * P);
  return J;
}

// (1/2) [1, d^T; d, d d^T] for a unit direction d.
Eigen::MatrixXd rank_two_matrix(const Eigen::VectorXd& d) {
  const Eigen::Index m = d.size() + 1;
  Eigen::MatrixXd M(m, m);
  M(0, 0) = 0.5;
  M.block(0, 1, 1, m - 1) = 0.5 * d.transpose();
  M.block(1, 0, m - 1, 1) = 0.5 * d;
  M.block(1, 1, m - 1, m - 1) = 0.5 * d * d.transpose();
  return M;
}

}  // namespace

SocVector dir_derivative(const SocVector& x, const SocVector& h,
                         const Tolerances& tol) {
  if (x.dim() != h.dim())
    throw DimensionMismatchError("dir_derivative: dimensions differ");
  switch (classify_point(x, tol)) {
    case ConeRegion::IntK:
      return h;
    case ConeRegion::NegIntK:
      return SocVector::Zero(x.dim());
    case ConeRegion::Outside:
      return SocVector(Eigen::VectorXd(outside_jacobian(x) * h.raw()));
    case ConeRegion::BdKNonzero: {
      const Eigen::VectorXd xb = x.x2() / x.tailNorm();
      const double s = std::min(0.0, h.x1() - xb.dot(h.x2()));
      Eigen::VectorXd d(x.dim());
      d(0) = 1.0;
      d.tail(x.dim() - 1) = -xb;
      return SocVector(Eigen::VectorXd(h.raw() - 0.5 * s * d));
    }
    case ConeRegion::NegBdKNonzero: {
      const Eigen::VectorXd xb = x.x2() / x.tailNorm();
      const double s = std::max(0.0, h.x1() + xb.dot(h.x2()));
      Eigen::VectorXd d(x.dim());
      d(0) = 1.0;
      d.tail(x.dim() - 1) = xb;
      return SocVector(Eigen::VectorXd(0.5 * s * d));
    }
    case ConeRegion::Zero:
      return project_soc(h);
  }
  throw InvalidArgumentError("unreachable");
}

ProjJacobian jacobian(const SocVector& x, const Tolerances& tol) {
  const ConeRegion r = classify_point(x, tol);
  const Eigen::Index m = x.dim();
  switch (r) {
    case ConeRegion::IntK:
      return ProjJacobian{Eigen::MatrixXd::Identity(m, m), r};
    case ConeRegion::NegIntK:
      return ProjJacobian{Eigen::MatrixXd::Zero(m, m), r};
    case ConeRegion::Outside:
      return ProjJacobian{outside_jacobian(x), r};
    default:
      throw NotDifferentiableError(
          "projection is not differentiable on bd K, -bd K or at 0");
  }
}

Eigen::MatrixXd BSubdifElement::realize(Eigen::Index m) const {
  switch (kind) {
    case Kind::ZeroMatrix:
      return Eigen::MatrixXd::Zero(m, m);
    case Kind::Identity:
      return Eigen::MatrixXd::Identity(m, m);
    case Kind::AlphaW: {
      Eigen::MatrixXd M =
          alpha * Eigen::MatrixXd::Identity(m, m);
      M(0, 0) += 0.5 * (1.0 - 2.0 * alpha);
      M.block(0, 1, 1, m - 1) += 0.5 * w.transpose();
      M.block(1, 0, m - 1, 1) += 0.5 * w;
      M.block(1, 1, m - 1, m - 1) +=
          0.5 * (1.0 - 2.0 * alpha) * w * w.transpose();
      return M;
    }
  }
  throw InvalidArgumentError("unreachable");
}

std::vector<BSubdifElement> b_subdif_elements_at_zero(
    const std::vector<double>& alphaGrid,
    const std::vector<Eigen::VectorXd>& wGrid) {
  if (alphaGrid.empty() || wGrid.empty())
    throw InvalidGridError("alpha and w grids must be nonempty");
  for (double a : alphaGrid)
    if (!(a >= 0.0 && a <= 1.0))
      throw InvalidGridError("alpha outside [0,1]");
  for (const auto& w : wGrid)
    if (std::abs(w.norm() - 1.0) > 1e-12)
      throw InvalidGridError("w is not a unit vector");
  std::vector<BSubdifElement> out;
  out.push_back({BSubdifElement::Kind::ZeroMatrix, 0.0, {}});
  out.push_back({BSubdifElement::Kind::Identity, 0.0, {}});
  for (double a : alphaGrid)
    for (const auto& w : wGrid)
      out.push_back({BSubdifElement::Kind::AlphaW, a, w});
  return out;
}

MembershipVerdict limiting_coderivative_contains(const SocVector& z,
                                                 const SocVector& wStar,
                                                 const SocVector& zStar,
                                                 const Tolerances& tol) {
  tol.validate();
  if (z.dim() != wStar.dim() || z.dim() != zStar.dim())
    throw DimensionMismatchError(
        "limiting_coderivative_contains: dimensions differ");
  const double scale = 1.0 + wStar.norm() + zStar.norm();
  const double eps = tol.memberTol * scale;
  MembershipVerdict out;
  out.cone = ConeKind::Limiting;
  const ConeRegion r = classify_point(z, tol);

  auto accept = [&](const char* branch, double res) {
    out.member = true;
    out.branch = branch;
    out.residual = res;
    return out;
  };

  switch (r) {
    case ConeRegion::IntK:
    case ConeRegion::NegIntK:
    case ConeRegion::Outside: {
      const Eigen::MatrixXd J = jacobian(z, tol).matrix;
      const double res = (zStar.raw() - J * wStar.raw()).norm();
      if (res <= eps) return accept("jacobian", res);
      out.branch = "jacobian";
      out.residual = res;
      return out;
    }
    case ConeRegion::BdKNonzero:
      throw UnsupportedRegionError(
          "limiting coderivative on bd K \\ {0} is not supported");
    case ConeRegion::NegBdKNonzero: {
      const Eigen::VectorXd zb = z.x2() / z.tailNorm();
      double best = zStar.norm();
      out.branch = "zero_matrix";
      if (best <= eps) return accept("zero_matrix", best);
      const double resM =
          (zStar.raw() - rank_two_matrix(zb) * wStar.raw()).norm();
      if (resM < best) {
        best = resM;
        out.branch = "rank_two_matrix";
      }
      if (resM <= eps) return accept("rank_two_matrix", resM);
      // z* in R_+ c2(z), <w* - z*, c2(z)> >= 0
      Eigen::VectorXd c2(z.dim());
      c2(0) = 0.5;
      c2.tail(z.dim() - 1) = 0.5 * zb;
      const double coeff = std::max(0.0, zStar.raw().dot(c2) / c2.squaredNorm());
      const double resRay = (zStar.raw() - coeff * c2).norm();
      const double side = (wStar.raw() - zStar.raw()).dot(c2);
      const double resHalf = std::max(0.0, -side);
      const double resPair = std::hypot(resRay, resHalf);
      if (resPair < best) {
        best = resPair;
        out.branch = "ray_halfspace";
      }
      if (resRay <= eps && side >= -eps) {
        out.scalars["t"] = coeff;
        return accept("ray_halfspace", resPair);
      }
      out.residual = best;
      return out;
    }
    case ConeRegion::Zero: {
      double best = zStar.norm();
      out.branch = "zero_matrix";
      if (best <= eps) return accept("zero_matrix", best);
      const double resI = (zStar.raw() - wStar.raw()).norm();
      if (resI < best) {
        best = resI;
        out.branch = "identity";
      }
      if (resI <= eps) return accept("identity", resI);
      // alpha/w matrix family, reduced to the origin-branch system with
      // u = z* - w*, v = -z*
      const SocVector u(Eigen::VectorXd(zStar.raw() - wStar.raw()));
      const SocVector v(Eigen::VectorXd(-zStar.raw()));
      if (auto cert = solve_origin_branch(u, v, tol)) {
        out.scalars["alpha"] = cert->alpha;
        out.vectors["xi"] = cert->xi;
        return accept("b_subdifferential", cert->residual);
      }
      // z* in K and w* - z* in K
      const double dK1 = project_polar(zStar).norm();
      const SocVector diff(Eigen::VectorXd(wStar.raw() - zStar.raw()));
      const double dK2 = project_polar(diff).norm();
      const double resKK = std::hypot(dK1, dK2);
      if (resKK < best) {
        best = resKK;
        out.branch = "cone_pair";
      }
      if (dK1 <= eps && dK2 <= eps) return accept("cone_pair", resKK);
      // w* - z* in R_+ xi, <z*, xi> >= 0 for some xi = (1, w), |w| = 1
      auto ray_branch = [&](const SocVector& a, const SocVector& b,
                            const char* name) -> bool {
        // a in R_+ xi and <b, xi> >= 0 for some xi in C
        if (a.norm() <= eps) {
          // any xi works for a; feasibility of <b, xi> >= 0 is
          // b1 + |b2| >= 0
          const double l2 = b.x1() + b.tailNorm();
          if (l2 >= -eps) {
            Eigen::VectorXd xi(a.dim());
            xi(0) = 1.0;
            if (b.tailNorm() > 0)
              xi.tail(a.dim() - 1) = b.x2() / b.tailNorm();
            else {
              xi.tail(a.dim() - 1).setZero();
              xi(1) = 1.0;
            }
            out.vectors["xi"] = xi;
            out.member = true;
            out.branch = name;
            out.residual = std::max(0.0, -l2);
            return true;
          }
          return false;
        }
        // a != 0 forces a on bd K with a1 > 0 and xi = a / a1
        if (a.x1() <= 0) return false;
        const double bd = std::abs(a.x1() - a.tailNorm());
        if (bd > eps) return false;
        Eigen::VectorXd xi = a.raw() / a.x1();
        if (b.raw().dot(xi) >= -eps) {
          out.vectors["xi"] = xi;
          out.member = true;
          out.branch = name;
          out.residual = bd;
          return true;
        }
        return false;
      };
      if (ray_branch(diff, zStar, "ray_then_halfspace")) return out;
      if (ray_branch(zStar, diff, "halfspace_then_ray")) return out;
      out.branch = "none";
      out.residual = best;
      return out;
    }
  }
  throw InvalidArgumentError("unreachable");
}

CalmnessReport calmness_report(const SocVector& x, const SocVector& h,
                               const std::vector<double>& scales,
                               const Tolerances& tol) {
  if (x.dim() != h.dim())
    throw DimensionMismatchError("calmness_report: dimensions differ");
  for (size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0))
      throw InvalidArgumentError("scales must be positive");
    if (i > 0 && !(scales[i] < scales[i - 1]))
      throw InvalidArgumentError("scales must be decreasing");
  }
  CalmnessReport rep;
  rep.scales = scales;
  const SocVector px = project_soc(x);
  for (double t : scales) {
    const SocVector th(Eigen::VectorXd(t * h.raw()));
    const SocVector d = dir_derivative(x, th, tol);
    const SocVector xt(Eigen::VectorXd(x.raw() + th.raw()));
    double res = (project_soc(xt).raw() - px.raw() - d.raw()).norm();
    // residuals below the rounding floor of the subtraction are measurement
    // noise, not signal; without this the 1/t^2 scaling amplifies eps-level
    // cancellation into spurious blow-up at small t
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                         (x.norm() + px.norm() + th.norm() + d.norm());
    res = res <= floor ? 0.0 : res;
    rep.ratios.push_back(res / (t * t));
  }
  rep.fittedC = rep.ratios.empty()
                    ? 0.0
                    : *std::max_element(rep.ratios.begin(), rep.ratios.end());
  return rep;
}

}  // namespace socnc
