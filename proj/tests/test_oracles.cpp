#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "socnc/oracles.hpp"

using namespace socnc;

namespace {

const double kSqrt2 = std::sqrt(2.0);

OmegaPair boundary_pair() {
  return classify_pair(SocVector{1.0, 1.0 / kSqrt2, 1.0 / kSqrt2},
                       SocVector{2.0, -kSqrt2, -kSqrt2});
}

NormalCandidate boundary_candidate() {
  return {SocVector{1.0 / kSqrt2, -1.0, 0.0},
          SocVector{1.0 / (2.0 * kSqrt2), 0.0, 0.5}};
}

}  // namespace

TEST_CASE("oracle configuration validation") {
  OracleConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.nSamples = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgumentError);
  cfg = OracleConfig{};
  cfg.radii = {1e-2, 1e-2};  // not strictly decreasing
  CHECK_THROWS_AS(cfg.validate(), InvalidArgumentError);
  cfg = OracleConfig{};
  cfg.radii.clear();
  CHECK_THROWS_AS(cfg.validate(), InvalidArgumentError);
  cfg = OracleConfig{};
  cfg.slack = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgumentError);
}

TEST_CASE("proximal oracle") {
  const OracleConfig cfg;
  CHECK(proximal_oracle(boundary_pair(), boundary_candidate(), cfg).verdict ==
        OracleVerdict::ConsistentMember);
  CHECK(proximal_oracle(boundary_pair(),
                        {SocVector::Zero(3), SocVector::Zero(3)}, cfg)
            .verdict == OracleVerdict::ConsistentMember);
  // interior anchor with u != 0: ratios grow like 1/radius along x' = x + tu
  const OmegaPair iz = classify_pair(SocVector{2.0, 1.0, 0.0},
                                     SocVector::Zero(3));
  const OracleReport rep =
      proximal_oracle(iz, {SocVector{1.0, 0.0, 0.0}, SocVector::Zero(3)}, cfg);
  CHECK(rep.verdict == OracleVerdict::CertifiedNonMember);
  for (size_t i = 0; i + 1 < rep.perRadius.size(); ++i)
    CHECK(rep.perRadius[i + 1] >= 2.0 * rep.perRadius[i]);
}

TEST_CASE("regular oracle") {
  const OracleConfig cfg;
  CHECK(regular_oracle(boundary_pair(), boundary_candidate(), cfg).verdict ==
        OracleVerdict::ConsistentMember);
  CHECK(regular_oracle(boundary_pair(),
                       {SocVector::Zero(3), SocVector::Zero(3)}, cfg)
            .verdict == OracleVerdict::ConsistentMember);
  const OracleReport rep = regular_oracle(
      boundary_pair(), {boundary_pair().x, SocVector::Zero(3)}, cfg);
  CHECK(rep.verdict == OracleVerdict::CertifiedNonMember);
  REQUIRE(rep.witness.has_value());
  // the witness reproduces its ratio standalone
  CHECK(std::abs(witness_ratio(boundary_pair(),
                               {boundary_pair().x, SocVector::Zero(3)},
                               rep.witness->pair) -
                 rep.witness->ratio) <= 1e-12);
}

TEST_CASE("limiting oracle") {
  const OracleConfig cfg;
  // limiting-only member at a zero/boundary anchor
  const OmegaPair zb = classify_pair(SocVector::Zero(2), SocVector{1.0, 1.0});
  CHECK(limiting_oracle(zb, {SocVector{1.0, 1.0}, SocVector{2.0, -2.0}}, cfg)
            .verdict == OracleVerdict::ConsistentMember);
  // regular members are found via the constant sequence
  CHECK(limiting_oracle(boundary_pair(), boundary_candidate(), cfg).verdict ==
        OracleVerdict::ConsistentMember);
  // clear non-member at the origin anchor
  const OmegaPair zz = classify_pair(SocVector::Zero(3), SocVector::Zero(3));
  CHECK(limiting_oracle(zz, {SocVector{1.0, 0.0, 0.0},
                             SocVector{1.0, 0.0, 0.0}},
                        cfg)
            .verdict == OracleVerdict::CertifiedNonMember);
}

TEST_CASE("oracles are deterministic") {
  const OracleConfig cfg;
  const OracleReport a = regular_oracle(boundary_pair(), boundary_candidate(), cfg);
  const OracleReport b = regular_oracle(boundary_pair(), boundary_candidate(), cfg);
  CHECK(a.verdict == b.verdict);
  CHECK(a.perRadius == b.perRadius);
  CHECK(a.worstRatio == b.worstRatio);
  const OracleReport c = limiting_oracle(boundary_pair(), boundary_candidate(), cfg);
  const OracleReport d = limiting_oracle(boundary_pair(), boundary_candidate(), cfg);
  CHECK(c.perRadius == d.perRadius);
}

TEST_CASE("anchors land in the requested case class") {
  for (OmegaCase c : {OmegaCase::ZeroInt, OmegaCase::IntZero, OmegaCase::BdBd,
                      OmegaCase::ZeroBd, OmegaCase::BdZero,
                      OmegaCase::ZeroZero}) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      for (Eigen::Index m : {2, 3, 5}) {
        const OmegaPair p = make_anchor(c, m, seed);
        CHECK(p.caseTag == c);
        CHECK(classify_pair(p.x, p.y).caseTag == c);
      }
    }
  }
}

TEST_CASE("equivalence sweeps stay clean at small scale") {
  OracleConfig cfg;
  cfg.seed = 19;
  SweepOptions opts;
  opts.viSamples = 1000;
  opts.withLimitingOracle = true;
  for (OmegaCase c : {OmegaCase::ZeroInt, OmegaCase::IntZero, OmegaCase::BdBd,
                      OmegaCase::ZeroBd, OmegaCase::BdZero,
                      OmegaCase::ZeroZero}) {
    const SweepReport rep = equivalence_sweep(c, 10, 6, cfg, opts);
    CHECK(rep.candidates == 60);
    CHECK(rep.members + rep.nonMembers == rep.candidates);
    CHECK(rep.disagreements.empty());
  }
  CHECK_THROWS_AS(equivalence_sweep(OmegaCase::BdBd, 0, 5, cfg, opts),
                  InvalidArgumentError);
}
