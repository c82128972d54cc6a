#pragma once

#include <optional>
#include <string>

#include "socnc/soc_vector.hpp"
#include "socnc/verdict.hpp"

namespace socnc {

// Relative tolerances. classifyTol gates region classification against the
// scale 1 + |x|; memberTol gates membership residuals against
// 1 + |u| + |v|; oracleTol is the slack of sampled-inequality checks.
struct Tolerances {
  double classifyTol = 1e-9;
  double memberTol = 1e-9;
  double oracleTol = 1e-6;

  void validate() const {
    if (!(classifyTol > 0 && memberTol > 0 && oracleTol > 0))
      throw InvalidArgumentError("tolerances must be strictly positive");
    if (classifyTol > memberTol)
      throw InvalidArgumentError("classifyTol must not exceed memberTol");
  }
};

// Spectral decomposition x = lambda1*c1 + lambda2*c2 with
// lambda_i = x1 + (-1)^i |x2|, c_i = (1/2)(1, (-1)^i x2/|x2|).
// When x2 = 0 the tie-break direction w = e1 is used and flagged.
struct SpectralDecomp {
  double lambda1;
  double lambda2;
  SocVector c1;
  SocVector c2;
  bool tieBreakUsed;
};

// Position of a single point relative to the cone K = {x1 >= |x2|}.
enum class ConeRegion {
  IntK,            // x1 > |x2|
  BdKNonzero,      // x1 = |x2| > 0
  Zero,            // x = 0
  NegIntK,         // -x in int K
  NegBdKNonzero,   // -x on bd K, x != 0
  Outside          // x in (-K u K)^c
};

const char* to_string(ConeRegion r);

// Case classes of a complementarity pair (x, y), x in K, y in K, <x,y> = 0.
enum class OmegaCase { ZeroInt, IntZero, BdBd, ZeroBd, BdZero, ZeroZero };

const char* to_string(OmegaCase c);
std::optional<OmegaCase> omega_case_from_string(const std::string& s);

// A pair certified to lie in the complementarity set, tagged with its case.
// For BdBd pairs k = y1/x1 > 0 and y = k * reflected(x).
struct OmegaPair {
  SocVector x;
  SocVector y;
  OmegaCase caseTag;
  std::optional<double> k;
};

SpectralDecomp spectral_decompose(const SocVector& x);

ConeRegion classify_point(const SocVector& x, const Tolerances& tol = {});

// Metric projection onto K: (lambda1)_+ c1 + (lambda2)_+ c2.
SocVector project_soc(const SocVector& x);

// Projection onto the polar cone K° = -K, via Moreau: x - project_soc(x).
SocVector project_polar(const SocVector& x);

SocVector reflect(const SocVector& x);

// Classifies (x, y) into one of the six case classes. Throws NotInOmegaError
// when the pair is not complementary within tolerance and AmbiguousCaseError
// when the classification is unstable at the tolerance boundary.
OmegaPair classify_pair(const SocVector& x, const SocVector& y,
                        const Tolerances& tol = {});

enum class RayMode { FullLine, NegativeRay };

// Decides a ∈ Rb (FullLine) or a ∈ R_- b (NegativeRay) via the least-squares
// coefficient; the certificate carries the fitted coefficient and residual.
MembershipVerdict ray_membership(const SocVector& a, const SocVector& b,
                                 RayMode mode, const Tolerances& tol = {});

}  // namespace socnc
