#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "socnc/proj_calculus.hpp"
#include "socnc/soc_core.hpp"

namespace socnc {

// A pair (u, v) queried for membership in a normal cone of the
// complementarity set at some pair (x, y).
struct NormalCandidate {
  SocVector u;
  SocVector v;
};

// Certificate for the origin branch: xi = (1, w) with |w| = 1, alpha in
// [0,1] and eta such that alpha*reflected(u) + (1-alpha)*v = eta*xi,
// u ⟂ xi, v ⟂ reflected(xi).
struct OriginCertificate {
  Eigen::VectorXd xi;
  double alpha;
  double eta;
  double residual;
};

// Result of the sampled variational-inequality check
// sup_h <u+v, P'_K(x-y; h)> - <v, h> over unit-norm h.
struct ViolationSample {
  double sup;
  Eigen::VectorXd argmaxH;
};

struct OmegaSample {
  std::vector<OmegaPair> pairs;
  std::uint64_t seed;
  double radius;
};

// Regular (Frechet) normal cone membership, row by case class.
MembershipVerdict regular_normal_contains(const OmegaPair& pair,
                                          const NormalCandidate& cand,
                                          const Tolerances& tol = {});

// Same verdict for BdBd pairs, derived from the two-equation system of the
// coderivative identity instead of the closed-form row. Throws WrongCaseError
// on any other case.
MembershipVerdict regular_normal_contains_via_system(
    const OmegaPair& pair, const NormalCandidate& cand,
    const Tolerances& tol = {});

// Proximal normal cone membership; coincides with the regular cone here.
MembershipVerdict proximal_normal_contains(const OmegaPair& pair,
                                           const NormalCandidate& cand,
                                           const Tolerances& tol = {});

ViolationSample variational_inequality_sup(const OmegaPair& pair,
                                           const NormalCandidate& cand,
                                           int hSamples, std::uint64_t seed,
                                           const Tolerances& tol = {});

// Limiting (Mordukhovich) normal cone membership; disjunct scan with a
// certificate naming the satisfied branch.
MembershipVerdict limiting_normal_contains(const OmegaPair& pair,
                                           const NormalCandidate& cand,
                                           const Tolerances& tol = {});

// Solves the origin branch u ⟂ xi, v ⟂ reflected(xi),
// alpha*reflected(u) + (1-alpha)*v in R*xi for xi = (1, w), |w| = 1,
// alpha in [0,1]. Empty result means no certificate exists.
std::optional<OriginCertificate> solve_origin_branch(const SocVector& u,
                                                     const SocVector& v,
                                                     const Tolerances& tol = {});

// Draws candidates that lie in the regular normal cone at `pair` by
// construction.
std::vector<NormalCandidate> sample_regular_normal(const OmegaPair& pair,
                                                   std::uint64_t seed, int n);

// Draws complementarity pairs near `pair` via the global parametrization
// z -> (P_K(z), P_K(z) - z) with |z - (x-y)| <= radius.
OmegaSample sample_omega_near(const OmegaPair& pair, double radius,
                              std::uint64_t seed, int n,
                              const Tolerances& tol = {});

// Euclidean distance from (u, v) to the regular normal cone at `pair`.
double distance_to_regular_cone(const OmegaPair& pair,
                                const NormalCandidate& cand);

// Coordinate-flip wrapper: (u,v) in N_{gph N_K}(x,y) iff (u,-v) is in the
// limiting normal cone of the complementarity set at (x,-y).
MembershipVerdict graph_normal_contains(const SocVector& x, const SocVector& y,
                                        const NormalCandidate& cand,
                                        const Tolerances& tol = {});

}  // namespace socnc
