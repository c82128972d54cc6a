#include "socnc/cones.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

namespace socnc {

namespace {

Eigen::VectorXd gaussian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

double dist_to_neg_cone(const SocVector& p) { return project_soc(p).norm(); }

// Distance of p to the ray {t*d | t <= 0}, d != 0.
double dist_negative_ray(const Eigen::VectorXd& p, const Eigen::VectorXd& d) {
  const double c = p.dot(d) / d.squaredNorm();
  if (c <= 0) return (p - c * d).norm();
  return p.norm();
}

double dist_polar_halfspace(const Eigen::VectorXd& p, const Eigen::VectorXd& n) {
  return std::max(0.0, p.dot(n)) / n.norm();
}

void check_dims(const OmegaPair& pair, const NormalCandidate& cand) {
  if (cand.u.dim() != pair.x.dim() || cand.v.dim() != pair.x.dim())
    throw DimensionMismatchError("candidate dimension does not match pair");
}

// Row matrix of the BdBd subspace {u ⟂ x, v ⟂ y, x1*reflect(u)+y1*v in Rx}
// in R^{2m}, with rows scaled to O(1) norm. Row-wise scaling keeps the row
// space, so rank detection stays well conditioned even for tiny anchors.
Eigen::MatrixXd bdbd_constraint_rows(const OmegaPair& pair) {
  const Eigen::Index m = pair.x.dim();
  const Eigen::VectorXd x = pair.x.raw();
  const Eigen::VectorXd y = pair.y.raw();
  const Eigen::VectorXd xu = x / x.norm();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 2, 2 * m);
  A.block(0, 0, 1, m) = xu.transpose();
  A.block(1, m, 1, m) = (y / y.norm()).transpose();
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(m, m) - xu * xu.transpose();
  Eigen::MatrixXd R = -Eigen::MatrixXd::Identity(m, m);
  R(0, 0) = 1.0;
  const double s = std::max(x(0), y(0));
  A.block(2, 0, m, m) = (x(0) / s) * P * R;
  A.block(2, m, m, m) = (y(0) / s) * P;
  return A;
}

// Orthonormal basis of the row space of A (columns of the result).
Eigen::MatrixXd rowspace_basis(const Eigen::MatrixXd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double thresh = 1e-8 * sv(0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > thresh) ++r;
  return svd.matrixV().leftCols(r);
}

}  // namespace

MembershipVerdict regular_normal_contains(const OmegaPair& pair,
                                          const NormalCandidate& cand,
                                          const Tolerances& tol) {
  tol.validate();
  check_dims(pair, cand);
  const Eigen::VectorXd& u = cand.u.raw();
  const Eigen::VectorXd& v = cand.v.raw();
  const double eps = tol.memberTol * (1.0 + u.norm() + v.norm());

  MembershipVerdict out;
  out.cone = ConeKind::Regular;
  switch (pair.caseTag) {
    case OmegaCase::ZeroInt: {
      out.branch = "v=0";
      out.residual = v.norm();
      out.member = out.residual <= eps;
      return out;
    }
    case OmegaCase::IntZero: {
      out.branch = "u=0";
      out.residual = u.norm();
      out.member = out.residual <= eps;
      return out;
    }
    case OmegaCase::BdBd: {
      const double t = std::max(pair.x.norm(), pair.y.norm());
      const Eigen::VectorXd x = pair.x.raw() / t;
      const Eigen::VectorXd y = pair.y.raw() / t;
      const double r1 = std::abs(u.dot(x)) / x.norm();
      const double r2 = std::abs(v.dot(y)) / y.norm();
      Eigen::VectorXd comb = x(0) * cand.u.reflected().raw() + y(0) * v;
      const Eigen::VectorXd xu = x / x.norm();
      const double c = comb.dot(xu);
      const double r3 = (comb - c * xu).norm();
      out.branch = "u_perp_x,v_perp_y,combination_in_Rx";
      out.residual = std::max({r1, r2, r3});
      out.member = out.residual <= eps;
      out.scalars["beta"] =
          (pair.x.x1() * cand.u.reflected().raw() + pair.y.x1() * v)
              .dot(pair.x.raw()) /
          pair.x.raw().squaredNorm();
      return out;
    }
    case OmegaCase::ZeroBd: {
      const Eigen::VectorXd yh = pair.y.reflected().raw();
      const double r1 = dist_polar_halfspace(u, yh);
      const double r2 = dist_negative_ray(v, yh);
      out.branch = "u_in_yhat_polar,v_in_Rminus_yhat";
      out.residual = std::max(r1, r2);
      out.member = out.residual <= eps;
      out.scalars["t"] = v.dot(yh) / yh.squaredNorm();
      return out;
    }
    case OmegaCase::BdZero: {
      const Eigen::VectorXd xh = pair.x.reflected().raw();
      const double r1 = dist_negative_ray(u, xh);
      const double r2 = dist_polar_halfspace(v, xh);
      out.branch = "u_in_Rminus_xhat,v_in_xhat_polar";
      out.residual = std::max(r1, r2);
      out.member = out.residual <= eps;
      out.scalars["t"] = u.dot(xh) / xh.squaredNorm();
      return out;
    }
    case OmegaCase::ZeroZero: {
      const double r1 = dist_to_neg_cone(cand.u);
      const double r2 = dist_to_neg_cone(cand.v);
      out.branch = "u_in_-K,v_in_-K";
      out.residual = std::max(r1, r2);
      out.member = out.residual <= eps;
      return out;
    }
  }
  throw InvalidArgumentError("unreachable");
}

MembershipVerdict regular_normal_contains_via_system(const OmegaPair& pair,
                                                     const NormalCandidate& cand,
                                                     const Tolerances& tol) {
  tol.validate();
  check_dims(pair, cand);
  if (pair.caseTag != OmegaCase::BdBd)
    throw WrongCaseError("system route applies to BdBd pairs only");
  const double k = *pair.k;
  const Eigen::VectorXd xb = pair.x.x2() / pair.x.tailNorm();
  const Eigen::VectorXd u2 = cand.u.x2();
  const Eigen::VectorXd v2 = cand.v.x2();
  const double u1 = cand.u.x1();
  const double v1 = cand.v.x1();
  const double mix = xb.dot(u2 + v2);
  const double r1 = std::abs(u1 + mix - v1);
  const Eigen::VectorXd lhs = ((1.0 + k) * (u1 + v1) - (1.0 - k) * mix) * xb;
  const double r2 = (lhs - (2.0 * k * v2 - 2.0 * u2)).norm();
  MembershipVerdict out;
  out.cone = ConeKind::Regular;
  out.branch = "coderivative_system";
  out.residual = std::max(r1, r2);
  const double eps =
      tol.memberTol * (1.0 + cand.u.norm() + cand.v.norm()) * (1.0 + k);
  out.member = out.residual <= eps;
  return out;
}

MembershipVerdict proximal_normal_contains(const OmegaPair& pair,
                                           const NormalCandidate& cand,
                                           const Tolerances& tol) {
  MembershipVerdict out = regular_normal_contains(pair, cand, tol);
  out.cone = ConeKind::Proximal;
  return out;
}

ViolationSample variational_inequality_sup(const OmegaPair& pair,
                                           const NormalCandidate& cand,
                                           int hSamples, std::uint64_t seed,
                                           const Tolerances& tol) {
  tol.validate();
  check_dims(pair, cand);
  if (hSamples < 1) throw InvalidArgumentError("hSamples must be >= 1");
  const Eigen::Index m = pair.x.dim();
  const SocVector z = pair.x - pair.y;
  const ConeRegion region = classify_point(z, tol);
  const Eigen::VectorXd u = cand.u.raw();
  const Eigen::VectorXd v = cand.v.raw();
  const Eigen::VectorXd upv = u + v;

  // <u+v, P'_K(z; h)> - <v, h>, region resolved once.
  Eigen::VectorXd smoothDir;  // IntK/NegIntK/Outside: value = <smoothDir, h>
  Eigen::VectorXd bdDir;      // boundary cases: (1, -/+ zb)
  double bdCoef = 0.0;
  switch (region) {
    case ConeRegion::IntK:
      smoothDir = u;
      break;
    case ConeRegion::NegIntK:
      smoothDir = -v;
      break;
    case ConeRegion::Outside: {
      smoothDir = jacobian(z, tol).matrix * upv - v;
      break;
    }
    case ConeRegion::BdKNonzero: {
      bdDir.resize(m);
      bdDir(0) = 1.0;
      bdDir.tail(m - 1) = -z.x2() / z.tailNorm();
      bdCoef = upv.dot(bdDir);
      break;
    }
    case ConeRegion::NegBdKNonzero: {
      bdDir.resize(m);
      bdDir(0) = 1.0;
      bdDir.tail(m - 1) = z.x2() / z.tailNorm();
      bdCoef = upv.dot(bdDir);
      break;
    }
    case ConeRegion::Zero:
      break;
  }

  auto value = [&](const Eigen::VectorXd& h) -> double {
    switch (region) {
      case ConeRegion::IntK:
      case ConeRegion::NegIntK:
      case ConeRegion::Outside:
        return smoothDir.dot(h);
      case ConeRegion::BdKNonzero:
        return u.dot(h) - 0.5 * std::min(0.0, bdDir.dot(h)) * bdCoef;
      case ConeRegion::NegBdKNonzero:
        return 0.5 * std::max(0.0, bdDir.dot(h)) * bdCoef - v.dot(h);
      case ConeRegion::Zero: {
        const double t = h.tail(m - 1).norm();
        const double l2 = h(0) + t;
        if (l2 <= 0) return -v.dot(h);
        double proj;  // <u+v, P_K(h)>
        const double l1 = h(0) - t;
        if (l1 >= 0) {
          proj = upv.dot(h);
        } else if (t > 0) {
          proj = 0.5 * l2 * (upv(0) + upv.tail(m - 1).dot(h.tail(m - 1)) / t);
        } else {
          proj = 0.5 * l2 * upv(0);
        }
        return proj - v.dot(h);
      }
    }
    return 0.0;
  };

  std::mt19937_64 rng(seed);
  double best = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd bestH = Eigen::VectorXd::Zero(m);

  auto consider = [&](Eigen::VectorXd h) {
    const double n = h.norm();
    if (n < 1e-300) return;
    h /= n;
    const double val = value(h);
    if (val > best) {
      best = val;
      bestH = h;
    }
  };

  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e(i) = 1.0;
    consider(e);
    consider(-e);
  }
  for (const Eigen::VectorXd& d :
       {u, v, upv, Eigen::VectorXd(cand.u.reflected().raw()),
        Eigen::VectorXd(cand.v.reflected().raw()), z.raw()}) {
    if (d.norm() > 0) {
      consider(d);
      consider(-d);
    }
  }
  for (int i = 0; i < hSamples; ++i) consider(gaussian(rng, m));

  // local refinement of the best direction
  double step = 0.3;
  int stale = 0;
  for (int it = 0; it < 200 && step > 1e-8; ++it) {
    Eigen::VectorXd h = bestH + step * gaussian(rng, m);
    const double n = h.norm();
    if (n < 1e-300) continue;
    h /= n;
    const double val = value(h);
    if (val > best) {
      best = val;
      bestH = h;
      stale = 0;
    } else if (++stale >= 12) {
      step *= 0.5;
      stale = 0;
    }
  }
  return ViolationSample{best, bestH};
}

std::optional<OriginCertificate> solve_origin_branch(const SocVector& u,
                                                     const SocVector& v,
                                                     const Tolerances& tol) {
  tol.validate();
  if (u.dim() != v.dim())
    throw DimensionMismatchError("solve_origin_branch: dimensions differ");
  const Eigen::Index m = u.dim();
  const double scale = 1.0 + u.norm() + v.norm();
  const double eps = tol.memberTol * scale;
  const double u1 = u.x1(), v1 = v.x1();
  const Eigen::VectorXd u2 = u.x2(), v2 = v.x2();
  const Eigen::VectorXd q = -(u2 + v2);  // tail(a) = v2 + a*q
  // g(a) = |tail(a)|^2 - eta(a)^2 with eta(a) = v1 + a*(u1 - v1);
  // exactly quadratic, so roots are available in closed form. The grid scan
  // below backs that up and catches sign changes the quadratic solve could
  // miss through cancellation.
  const double ga = q.squaredNorm() - (u1 - v1) * (u1 - v1);
  const double gb = 2.0 * (v2.dot(q) - v1 * (u1 - v1));
  const double gc = v2.squaredNorm() - v1 * v1;

  auto eta_at = [&](double a) { return v1 + a * (u1 - v1); };
  auto tail_at = [&](double a) -> Eigen::VectorXd { return v2 + a * q; };
  auto g_at = [&](double a) {
    return (ga * a + gb) * a + gc;
  };

  auto try_alpha = [&](double a) -> std::optional<OriginCertificate> {
    if (a < -1e-9 || a > 1.0 + 1e-9) return std::nullopt;
    a = std::clamp(a, 0.0, 1.0);
    const double eta = eta_at(a);
    const Eigen::VectorXd t = tail_at(a);
    if (std::abs(eta) <= eps) return std::nullopt;  // eta=0 handled separately
    Eigen::VectorXd w = t / eta;
    const double wn = w.norm();
    if (std::abs(wn - 1.0) > 1e-6) return std::nullopt;
    w /= wn;
    const double r1 = std::abs(u1 + u2.dot(w));
    const double r2 = std::abs(v1 - v2.dot(w));
    const double r3 = (t - eta * w).norm();
    const double res = std::max({r1, r2, r3});
    if (res > eps) return std::nullopt;
    Eigen::VectorXd xi(m);
    xi(0) = 1.0;
    xi.tail(m - 1) = w;
    return OriginCertificate{xi, a, eta, res};
  };

  // Unit-norm w solving u2^T w = -u1, v2^T w = v1 (the eta = 0 sub-branch,
  // where the ray condition alpha*reflect(u)+(1-alpha)*v = 0 is exact).
  auto try_eta_zero = [&](double a) -> std::optional<OriginCertificate> {
    if (a < -1e-9 || a > 1.0 + 1e-9) return std::nullopt;
    a = std::clamp(a, 0.0, 1.0);
    if (std::abs(eta_at(a)) > eps) return std::nullopt;
    const double tailRes = tail_at(a).norm();
    if (tailRes > eps) return std::nullopt;
    Eigen::MatrixXd B(2, m - 1);
    B.row(0) = u2.transpose();
    B.row(1) = v2.transpose();
    Eigen::Vector2d rhs(-u1, v1);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        B, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thresh = std::max(1e-12 * (sv.size() ? sv(0) : 0.0), 1e-14 * scale);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > thresh) ++rank;
    Eigen::VectorXd w0 = Eigen::VectorXd::Zero(m - 1);
    for (Eigen::Index i = 0; i < rank; ++i)
      w0 += (svd.matrixU().col(i).dot(rhs) / sv(i)) * svd.matrixV().col(i);
    if ((B * w0 - rhs).norm() > eps) return std::nullopt;
    const double n0 = w0.norm();
    Eigen::VectorXd w;
    const Eigen::Index nullity = (m - 1) - rank;
    if (nullity >= 1 && n0 <= 1.0 + eps) {
      const double c = std::sqrt(std::max(0.0, 1.0 - n0 * n0));
      w = w0 + c * svd.matrixV().col(rank);
    } else if (std::abs(n0 - 1.0) <= std::sqrt(eps)) {
      w = w0 / n0;
    } else {
      return std::nullopt;
    }
    const double r1 = std::abs(u1 + u2.dot(w));
    const double r2 = std::abs(v1 - v2.dot(w));
    const double res = std::max({r1, r2, tailRes});
    if (res > std::max(eps, 1e-9 * scale)) return std::nullopt;
    Eigen::VectorXd xi(m);
    xi(0) = 1.0;
    xi.tail(m - 1) = w / w.norm();
    return OriginCertificate{xi, a, 0.0, res};
  };

  std::vector<double> candidates;
  const double gScale = std::abs(ga) + std::abs(gb) + std::abs(gc);
  if (gScale <= 1e-14 * scale * scale) {
    // g vanishes identically: |tail(a)| = |eta(a)| for every alpha. The
    // orthogonality residuals, multiplied through by eta, are linear in
    // alpha; solve them instead.
    const double l1a = u1 * (u1 - v1) + u2.dot(q);  // d/da of u1*eta+u2.tail
    const double l1c = u1 * v1 + u2.dot(v2);
    const double l2a = v1 * (u1 - v1) - v2.dot(q);
    const double l2c = v1 * v1 - v2.dot(v2);
    auto add_linear_root = [&](double da, double c0) {
      if (std::abs(da) > 1e-14 * scale * scale)
        candidates.push_back(-c0 / da);
    };
    add_linear_root(l1a, l1c);
    add_linear_root(l2a, l2c);
    for (int i = 0; i <= 10; ++i) candidates.push_back(i / 10.0);
  } else if (std::abs(ga) <= 1e-14 * gScale) {
    if (std::abs(gb) > 0) candidates.push_back(-gc / gb);
  } else {
    const double disc = gb * gb - 4.0 * ga * gc;
    if (disc >= -1e-12 * gScale * gScale) {
      const double sq = std::sqrt(std::max(0.0, disc));
      candidates.push_back((-gb - sq) / (2.0 * ga));
      candidates.push_back((-gb + sq) / (2.0 * ga));
      candidates.push_back(-gb / (2.0 * ga));  // double-root vertex
    }
  }
  // grid scan with bisection of sign changes (2001 points)
  const int N = 2000;
  double prev = g_at(0.0);
  for (int i = 1; i <= N; ++i) {
    const double a = static_cast<double>(i) / N;
    const double cur = g_at(a);
    if ((prev <= 0 && cur >= 0) || (prev >= 0 && cur <= 0)) {
      double lo = (i - 1.0) / N, hi = a, glo = prev;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g_at(mid);
        if ((glo <= 0 && gm <= 0) || (glo >= 0 && gm >= 0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      candidates.push_back(0.5 * (lo + hi));
    }
    prev = cur;
  }

  std::sort(candidates.begin(), candidates.end());
  std::optional<OriginCertificate> best;
  for (double a : candidates) {
    if (auto cert = try_alpha(a)) {
      if (!best || cert->residual < best->residual) best = cert;
    }
  }
  if (best) return best;
  // eta = 0 sub-branch: the single root of the linear eta(a), or a scan
  // when eta vanishes identically.
  if (std::abs(u1 - v1) > 1e-14 * scale) {
    if (auto cert = try_eta_zero(v1 / (v1 - u1))) return cert;
  } else if (std::abs(v1) <= eps) {
    // eta == 0 for every alpha; minimize |tail| over [0,1]
    double aStar = 0.0;
    if (q.squaredNorm() > 0)
      aStar = std::clamp(-v2.dot(q) / q.squaredNorm(), 0.0, 1.0);
    else if (v2.norm() <= eps)
      aStar = 0.5;
    if (auto cert = try_eta_zero(aStar)) return cert;
  }
  return std::nullopt;
}

MembershipVerdict limiting_normal_contains(const OmegaPair& pair,
                                           const NormalCandidate& cand,
                                           const Tolerances& tol) {
  tol.validate();
  check_dims(pair, cand);
  const Eigen::VectorXd& u = cand.u.raw();
  const Eigen::VectorXd& v = cand.v.raw();
  const double eps = tol.memberTol * (1.0 + u.norm() + v.norm());

  MembershipVerdict out;
  out.cone = ConeKind::Limiting;

  auto accept = [&](const char* branch, double res) {
    out.member = true;
    out.branch = branch;
    out.residual = res;
    return out;
  };
  double bestRes = std::numeric_limits<double>::infinity();
  std::string bestBranch;
  auto track = [&](const char* branch, double res) {
    if (res < bestRes) {
      bestRes = res;
      bestBranch = branch;
    }
    return res <= eps;
  };

  switch (pair.caseTag) {
    case OmegaCase::ZeroInt:
    case OmegaCase::IntZero:
    case OmegaCase::BdBd: {
      out = regular_normal_contains(pair, cand, tol);
      out.cone = ConeKind::Limiting;
      return out;
    }
    case OmegaCase::ZeroBd:
    case OmegaCase::BdZero: {
      const bool xSide = pair.caseTag == OmegaCase::BdZero;
      // roles swap under (x,y) -> (y,x); `a` is the free candidate block,
      // `b` the constrained one, d the reflected boundary anchor
      const Eigen::VectorXd d = xSide ? pair.x.reflected().raw()
                                      : pair.y.reflected().raw();
      const Eigen::VectorXd& a = xSide ? v : u;
      const Eigen::VectorXd& b = xSide ? u : v;
      const char* n1 = xSide ? "u=0" : "v=0";
      const char* n2 = xSide ? "u_in_Rxhat,v_perp_xhat" : "u_perp_yhat,v_in_Ryhat";
      const char* n3 = xSide ? "u_in_Rminus_xhat,v_in_xhat_polar"
                             : "u_in_yhat_polar,v_in_Rminus_yhat";
      if (track(n1, b.norm())) return accept(n1, b.norm());
      const double c = b.dot(d) / d.squaredNorm();
      const double r2 =
          std::max(std::abs(a.dot(d)) / d.norm(), (b - c * d).norm());
      if (track(n2, r2)) {
        out.scalars["t"] = c;
        return accept(n2, r2);
      }
      const double r3 =
          std::max(dist_polar_halfspace(a, d), dist_negative_ray(b, d));
      if (track(n3, r3)) {
        out.scalars["t"] = std::min(0.0, c);
        return accept(n3, r3);
      }
      out.member = false;
      out.branch = bestBranch;
      out.residual = bestRes;
      return out;
    }
    case OmegaCase::ZeroZero: {
      const double rKK =
          std::max(dist_to_neg_cone(cand.u), dist_to_neg_cone(cand.v));
      if (track("u_in_-K,v_in_-K", rKK)) return accept("u_in_-K,v_in_-K", rKK);
      if (track("v=0", v.norm())) return accept("v=0", v.norm());
      if (track("u=0", u.norm())) return accept("u=0", u.norm());
      // u in R_- xi, v in xi_polar for some xi = (1,w), |w|=1. For u != 0
      // this forces -u in bd K \ {0} and xi = u / u1.
      auto neg_ray_branch = [&](const Eigen::VectorXd& p,
                                const Eigen::VectorXd& other,
                                const char* name) -> bool {
        if (p.norm() <= eps || p(0) >= 0) return false;
        const Eigen::Index mm = p.size();
        const double bd = std::abs(-p(0) - p.tail(mm - 1).norm());
        const Eigen::VectorXd xi = p / p(0);
        const double side = std::max(0.0, other.dot(xi)) / xi.norm();
        const double res = std::max(bd, side);
        if (track(name, res) && bd <= eps && side <= eps) {
          out.vectors["xi"] = xi;
          out.member = true;
          out.branch = name;
          out.residual = res;
          return true;
        }
        return false;
      };
      if (neg_ray_branch(u, v, "u_in_Rminus_xi,v_in_xi_polar")) return out;
      if (neg_ray_branch(v, u, "u_in_xi_polar,v_in_Rminus_xi")) return out;
      if (auto cert = solve_origin_branch(cand.u, cand.v, tol)) {
        out.vectors["xi"] = cert->xi;
        out.scalars["alpha"] = cert->alpha;
        out.scalars["eta"] = cert->eta;
        return accept("origin_branch", cert->residual);
      }
      out.member = false;
      out.branch = bestBranch;
      out.residual = bestRes;
      return out;
    }
  }
  throw InvalidArgumentError("unreachable");
}

std::vector<NormalCandidate> sample_regular_normal(const OmegaPair& pair,
                                                   std::uint64_t seed, int n) {
  if (n < 1) throw InvalidArgumentError("n must be >= 1");
  std::mt19937_64 rng(seed);
  const Eigen::Index m = pair.x.dim();
  std::vector<NormalCandidate> out;
  out.reserve(n);
  switch (pair.caseTag) {
    case OmegaCase::ZeroInt:
      for (int i = 0; i < n; ++i)
        out.push_back({SocVector(gaussian(rng, m)), SocVector::Zero(m)});
      break;
    case OmegaCase::IntZero:
      for (int i = 0; i < n; ++i)
        out.push_back({SocVector::Zero(m), SocVector(gaussian(rng, m))});
      break;
    case OmegaCase::BdBd: {
      const Eigen::MatrixXd A = bdbd_constraint_rows(pair);
      const Eigen::MatrixXd Q = rowspace_basis(A);
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd g = gaussian(rng, 2 * m);
        Eigen::VectorXd z = g - Q * (Q.transpose() * g);
        out.push_back({SocVector(Eigen::VectorXd(z.head(m))),
                       SocVector(Eigen::VectorXd(z.tail(m)))});
      }
      break;
    }
    case OmegaCase::ZeroBd:
    case OmegaCase::BdZero: {
      const bool xSide = pair.caseTag == OmegaCase::BdZero;
      const Eigen::VectorXd d = xSide ? pair.x.reflected().raw()
                                      : pair.y.reflected().raw();
      std::normal_distribution<double> gd(0.0, 1.0);
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd free = gaussian(rng, m);
        free -= (std::max(0.0, free.dot(d)) / d.squaredNorm()) * d;
        Eigen::VectorXd ray = -std::abs(gd(rng)) * d;
        if (xSide)
          out.push_back({SocVector(ray), SocVector(free)});
        else
          out.push_back({SocVector(free), SocVector(ray)});
      }
      break;
    }
    case OmegaCase::ZeroZero:
      for (int i = 0; i < n; ++i)
        out.push_back({project_polar(SocVector(gaussian(rng, m))),
                       project_polar(SocVector(gaussian(rng, m)))});
      break;
  }
  return out;
}

OmegaSample sample_omega_near(const OmegaPair& pair, double radius,
                              std::uint64_t seed, int n,
                              const Tolerances& tol) {
  if (!(radius > 0)) throw InvalidArgumentError("radius must be positive");
  if (n < 0) throw InvalidArgumentError("n must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const Eigen::Index m = pair.x.dim();
  const Eigen::VectorXd z0 = pair.x.raw() - pair.y.raw();
  OmegaSample out{{}, seed, radius};
  out.pairs.reserve(n);
  int attempts = 0;
  while (static_cast<int>(out.pairs.size()) < n && attempts < 20 * n + 100) {
    ++attempts;
    Eigen::VectorXd d = gaussian(rng, m);
    if (d.norm() == 0) continue;
    const Eigen::VectorXd z = z0 + (radius * uni(rng) / d.norm()) * d;
    const SocVector px = project_soc(SocVector(z));
    try {
      out.pairs.push_back(classify_pair(
          px, SocVector(Eigen::VectorXd(px.raw() - z)), tol));
    } catch (const AmbiguousCaseError&) {
      // borderline perturbation; redraw
    }
  }
  return out;
}

double distance_to_regular_cone(const OmegaPair& pair,
                                const NormalCandidate& cand) {
  check_dims(pair, cand);
  const Eigen::VectorXd& u = cand.u.raw();
  const Eigen::VectorXd& v = cand.v.raw();
  switch (pair.caseTag) {
    case OmegaCase::ZeroInt:
      return v.norm();
    case OmegaCase::IntZero:
      return u.norm();
    case OmegaCase::BdBd: {
      const Eigen::MatrixXd Q = rowspace_basis(bdbd_constraint_rows(pair));
      Eigen::VectorXd z(2 * pair.x.dim());
      z << u, v;
      return (Q.transpose() * z).norm();
    }
    case OmegaCase::ZeroBd: {
      const Eigen::VectorXd yh = pair.y.reflected().raw();
      return std::hypot(dist_polar_halfspace(u, yh), dist_negative_ray(v, yh));
    }
    case OmegaCase::BdZero: {
      const Eigen::VectorXd xh = pair.x.reflected().raw();
      return std::hypot(dist_negative_ray(u, xh), dist_polar_halfspace(v, xh));
    }
    case OmegaCase::ZeroZero:
      return std::hypot(dist_to_neg_cone(cand.u), dist_to_neg_cone(cand.v));
  }
  throw InvalidArgumentError("unreachable");
}

MembershipVerdict graph_normal_contains(const SocVector& x, const SocVector& y,
                                        const NormalCandidate& cand,
                                        const Tolerances& tol) {
  const OmegaPair pair = classify_pair(x, -y, tol);
  return limiting_normal_contains(pair, {cand.u, -cand.v}, tol);
}

}  // namespace socnc
