#pragma once

#include <Eigen/Core>
#include <map>
#include <string>

namespace socnc {

enum class ConeKind { None, Proximal, Regular, Limiting };

inline const char* to_string(ConeKind k) {
  switch (k) {
    case ConeKind::Proximal: return "proximal";
    case ConeKind::Regular: return "regular";
    case ConeKind::Limiting: return "limiting";
    default: return "none";
  }
}

// Boolean verdict plus a branch certificate. On success `branch` names the
// satisfied disjunct and `residual` its residual; on failure they report the
// argmin branch for debuggability. Named scalars/vectors (beta, eta, alpha,
// k, xi, w, coefficient, ...) live in the two maps.
struct MembershipVerdict {
  bool member = false;
  ConeKind cone = ConeKind::None;
  std::string branch;
  double residual = 0.0;
  std::map<std::string, double> scalars;
  std::map<std::string, Eigen::VectorXd> vectors;
};

}  // namespace socnc
