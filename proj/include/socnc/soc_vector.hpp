#pragma once

#include <Eigen/Core>
#include <cmath>
#include <initializer_list>

#include "socnc/errors.hpp"

namespace socnc {

// A point of R x R^{m-1}, m >= 2. The first coordinate plays the cone-axis
// role; the tail block is everything else. Immutable after construction.
class SocVector {
 public:
  explicit SocVector(Eigen::VectorXd v) : v_(std::move(v)) { validate(); }

  SocVector(double x1, const Eigen::VectorXd& x2) {
    v_.resize(x2.size() + 1);
    v_(0) = x1;
    v_.tail(x2.size()) = x2;
    validate();
  }

  SocVector(std::initializer_list<double> vals)
      : v_(Eigen::Map<const Eigen::VectorXd>(vals.begin(),
                                             static_cast<Eigen::Index>(
                                                 vals.size()))) {
    validate();
  }

  static SocVector Zero(Eigen::Index m) {
    return SocVector(Eigen::VectorXd::Zero(m));
  }

  Eigen::Index dim() const { return v_.size(); }
  double x1() const { return v_(0); }
  Eigen::VectorXd x2() const { return v_.tail(v_.size() - 1); }
  double tailNorm() const { return v_.tail(v_.size() - 1).norm(); }
  double norm() const { return v_.norm(); }
  const Eigen::VectorXd& raw() const { return v_; }

  // Reflection about the axis: (x1, -x2). An involution.
  SocVector reflected() const {
    Eigen::VectorXd r = v_;
    r.tail(r.size() - 1) = -r.tail(r.size() - 1);
    return SocVector(std::move(r));
  }

  double dot(const SocVector& o) const { return v_.dot(o.v_); }

  friend SocVector operator+(const SocVector& a, const SocVector& b) {
    return SocVector(a.v_ + b.v_);
  }
  friend SocVector operator-(const SocVector& a, const SocVector& b) {
    return SocVector(a.v_ - b.v_);
  }
  friend SocVector operator*(double s, const SocVector& a) {
    return SocVector(s * a.v_);
  }
  SocVector operator-() const { return SocVector(-v_); }

 private:
  void validate() const {
    if (v_.size() < 2)
      throw InvalidArgumentError("SocVector requires dimension m >= 2");
    if (!v_.allFinite())
      throw InvalidArgumentError("SocVector entries must be finite");
  }

  Eigen::VectorXd v_;
};

}  // namespace socnc
