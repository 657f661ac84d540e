#pragma once

#include <Eigen/Dense>

#include "lgm/retractions.hpp"
#include "lgm/so3.hpp"

namespace lgm {

/// SO(3) with a chosen retraction. Algebra vectors are axis vectors and
/// the pairing is the Frobenius product of their hat matrices.
///
/// With the Right side a step is g' = g τ(ξ); with Left it is g' = τ(ξ) g.
class SO3Group {
 public:
  using Element = Rotation;
  using Algebra = Vec3;
  using Matrix = Mat3;

  explicit SO3Group(Retraction ret = Retraction::exp()) : ret_(ret) {}

  int dim() const { return 3; }
  Element identity() const { return Rotation::identity(); }
  Element compose(const Element& a, const Element& b) const { return a * b; }
  Element inverse(const Element& a) const { return a.inverse(); }
  Algebra zero() const { return Vec3::Zero(); }
  Matrix eye() const { return Mat3::Identity(); }

  Algebra ad(const Element& g, const Algebra& v) const { return adjoint_apply(g, v); }
  Algebra ad_transpose(const Element& g, const Algebra& v) const {
    return adjoint_transpose_apply(g, v);
  }
  double inner(const Algebra& a, const Algebra& b) const { return 2.0 * a.dot(b); }

  const Retraction& retraction() const { return ret_; }
  TrivializationSide side() const { return ret_.side(); }

  Element tau(const Algebra& v) const { return ret_.tau(v); }
  Algebra tau_inv(const Element& g) const { return ret_.tau_inv(g); }
  Matrix dtau(const Algebra& v) const { return ret_.dtau(v); }
  Matrix dtau_inv(const Algebra& v) const { return ret_.dtau_inv(v); }

  /// Applies the algebra step ξ to g on the configured side.
  Element translate(const Element& g, const Algebra& xi) const {
    return side() == TrivializationSide::Right ? g * tau(xi) : tau(xi) * g;
  }
  /// The ξ with translate(g, ξ) = h.
  Algebra between(const Element& g, const Element& h) const {
    return side() == TrivializationSide::Right ? tau_inv(g.inverse() * h)
                                               : tau_inv(h * g.inverse());
  }
  /// Moves an increment into the frame where the fixed-point equation lives.
  Algebra pull(const Element& g, const Algebra& dx) const {
    return side() == TrivializationSide::Right ? ad_transpose(g, dx) : ad(g, dx);
  }
  Algebra push(const Element& g, const Algebra& v) const {
    return side() == TrivializationSide::Right ? ad(g, v) : ad_transpose(g, v);
  }
  /// Converts a right-trivialized gradient to the configured side.
  Algebra trivialize(const Element& g, const Algebra& grad_right) const {
    return side() == TrivializationSide::Right ? grad_right : ad_transpose(g, grad_right);
  }

 private:
  Retraction ret_;
};

/// ℝⁿ under addition with the identity retraction.
class TranslationGroup {
 public:
  using Element = Eigen::VectorXd;
  using Algebra = Eigen::VectorXd;
  using Matrix = Eigen::MatrixXd;

  explicit TranslationGroup(int n) : n_(n) {
    if (n < 1) throw DomainError("translation group dimension must be positive");
  }

  int dim() const { return n_; }
  Element identity() const { return Element::Zero(n_); }
  Element compose(const Element& a, const Element& b) const { return a + b; }
  Element inverse(const Element& a) const { return -a; }
  Algebra zero() const { return Algebra::Zero(n_); }
  Matrix eye() const { return Matrix::Identity(n_, n_); }

  Algebra ad(const Element&, const Algebra& v) const { return v; }
  Algebra ad_transpose(const Element&, const Algebra& v) const { return v; }
  double inner(const Algebra& a, const Algebra& b) const { return a.dot(b); }

  TrivializationSide side() const { return TrivializationSide::Right; }

  Element tau(const Algebra& v) const { return v; }
  Algebra tau_inv(const Element& g) const { return g; }
  Matrix dtau(const Algebra&) const { return eye(); }
  Matrix dtau_inv(const Algebra&) const { return eye(); }

  Element translate(const Element& g, const Algebra& xi) const { return g + xi; }
  Algebra between(const Element& g, const Element& h) const { return h - g; }
  Algebra pull(const Element&, const Algebra& dx) const { return dx; }
  Algebra push(const Element&, const Algebra& v) const { return v; }
  Algebra trivialize(const Element&, const Algebra& grad) const { return grad; }

 private:
  int n_;
};

inline SO3Group so3_group(Retraction ret = Retraction::exp()) { return SO3Group(ret); }
inline TranslationGroup translation_group(int n) { return TranslationGroup(n); }

}  // namespace lgm
