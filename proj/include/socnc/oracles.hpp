#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "socnc/cones.hpp"

namespace socnc {

// Configuration of the brute-force oracles: per-radius sample count, a
// strictly decreasing radius ladder and the slack of the sampled checks.
struct OracleConfig {
  int nSamples = 192;
  std::vector<double> radii{1e-2, 2.5e-3, 6.25e-4};
  std::uint64_t seed = 1;
  double slack = 1e-3;

  void validate() const;
};

enum class OracleVerdict { ConsistentMember, CertifiedNonMember, Inconclusive };

const char* to_string(OracleVerdict v);

// Witness pair achieving the worst ratio, kept so the ratio can be
// reproduced standalone.
struct OracleWitness {
  OmegaPair pair;
  double ratio;
};

struct OracleReport {
  OracleVerdict verdict;
  double worstRatio;
  std::optional<OracleWitness> witness;
  std::vector<double> perRadius;  // worst ratio (or min distance) per radius
};

// Sampled test of the proximal-normal definition: ratios <(u,v),d>/|d|^2
// over nearby complementarity pairs must stay bounded across shrinking
// radii for members and blow up for non-members.
OracleReport proximal_oracle(const OmegaPair& pair, const NormalCandidate& cand,
                             const OracleConfig& cfg,
                             const Tolerances& tol = {});

// Sampled test of the regular-normal definition: ratios <(u,v),d>/|d| must
// vanish in the limit for members and stabilize above the slack otherwise.
OracleReport regular_oracle(const OmegaPair& pair, const NormalCandidate& cand,
                            const OracleConfig& cfg,
                            const Tolerances& tol = {});

// Sampled test of the limiting-normal definition: the distance from (u,v)
// to the regular cone at nearby pairs must approach zero for members and
// stay bounded away from zero otherwise.
OracleReport limiting_oracle(const OmegaPair& pair, const NormalCandidate& cand,
                             const OracleConfig& cfg,
                             const Tolerances& tol = {});

// Reproduces a witness ratio (regular-oracle convention).
double witness_ratio(const OmegaPair& anchor, const NormalCandidate& cand,
                     const OmegaPair& witness);

struct SweepOptions {
  int viSamples = 10000;
  bool withRegularOracle = true;
  bool withLimitingOracle = false;
  int dim = 3;
};

struct SweepReport {
  long candidates = 0;
  long members = 0;
  long nonMembers = 0;
  long regularOracleInconclusive = 0;
  long regularOracleInconclusiveNonMember = 0;
  long limitingOracleInconclusive = 0;
  std::vector<std::string> disagreements;
};

// Bulk agreement audit: closed-form regular vs proximal vs the sampled
// variational-inequality check vs the definitional oracles, plus the
// regular-in-limiting inclusion, over random anchors and candidates.
SweepReport equivalence_sweep(OmegaCase caseTag, int nPairs, int nCands,
                              const OracleConfig& cfg,
                              const SweepOptions& opts = {},
                              const Tolerances& tol = {});

// Random anchor of the requested case class (dimension m).
OmegaPair make_anchor(OmegaCase caseTag, Eigen::Index m, std::uint64_t seed);

}  // namespace socnc
