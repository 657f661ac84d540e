#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "lgm/errors.hpp"
#include "lgm/so3.hpp"

namespace lgm {

/// Which translation pulls tangent vectors back to the algebra.
/// Right is the default everywhere; Left flips the sign of the odd terms.
enum class TrivializationSide { Left, Right };

enum class RetractionKind { Exp, Cayley, Skew };

inline std::string_view to_string(RetractionKind k) {
  switch (k) {
    case RetractionKind::Exp: return "exp";
    case RetractionKind::Cayley: return "cay";
    case RetractionKind::Skew: return "skw";
  }
  return "?";
}

namespace detail {

inline constexpr double kSeriesCutoff = 1e-4;

inline double sign_of(TrivializationSide side) {
  return side == TrivializationSide::Right ? 1.0 : -1.0;
}

// sin ω / ω
inline double sinc(double w) {
  double w2 = w * w;
  if (w < kSeriesCutoff) return 1.0 - w2 / 6.0 + w2 * w2 / 120.0 - w2 * w2 * w2 / 5040.0;
  return std::sin(w) / w;
}

// (1 - cos ω) / ω²
inline double one_minus_cos_over_sq(double w) {
  double w2 = w * w;
  if (w < kSeriesCutoff) return 0.5 - w2 / 24.0 + w2 * w2 / 720.0 - w2 * w2 * w2 / 40320.0;
  return (1.0 - std::cos(w)) / w2;
}

// (ω - sin ω) / ω³
inline double w_minus_sin_over_cube(double w) {
  double w2 = w * w;
  if (w < kSeriesCutoff)
    return 1.0 / 6.0 - w2 / 120.0 + w2 * w2 / 5040.0 - w2 * w2 * w2 / 362880.0;
  return (w - std::sin(w)) / (w2 * w);
}

// (2 - ω cot(ω/2)) / (2ω²)
inline double dlog_coefficient(double w) {
  double w2 = w * w;
  if (w < kSeriesCutoff)
    return 1.0 / 12.0 + w2 / 720.0 + w2 * w2 / 30240.0 + w2 * w2 * w2 / 1209600.0;
  return (2.0 - w / std::tan(0.5 * w)) / (2.0 * w2);
}

}  // namespace detail

// ---- exponential map ----

inline Rotation exp_so3(const Vec3& v) {
  double w = v.norm();
  Mat3 x = hat(v);
  return Rotation::unchecked(Mat3::Identity() + detail::sinc(w) * x +
                             detail::one_minus_cos_over_sq(w) * x * x);
}

inline Vec3 log_so3(const Rotation& r) {
  double tr = r.trace();
  if (tr <= -1.0 + 1e-9) throw SingularityError("log_so3: rotation angle is pi");
  Vec3 s = skew_vector(r.matrix());
  double sn = s.norm();
  if (sn < 1e-7) return s;
  double w = std::atan2(sn, 0.5 * (tr - 1.0));
  return (w / sn) * s;
}

inline Mat3 dexp(const Vec3& v, TrivializationSide side = TrivializationSide::Right) {
  double w = v.norm();
  Mat3 x = hat(v);
  return Mat3::Identity() + detail::sign_of(side) * detail::one_minus_cos_over_sq(w) * x +
         detail::w_minus_sin_over_cube(w) * x * x;
}

inline Mat3 dlog(const Vec3& v, TrivializationSide side = TrivializationSide::Right) {
  double w = v.norm();
  if (w >= 2.0 * std::numbers::pi - 1e-6) throw SingularityError("dlog: too close to the 2*pi pole");
  Mat3 x = hat(v);
  return Mat3::Identity() - detail::sign_of(side) * 0.5 * x + detail::dlog_coefficient(w) * x * x;
}

// ---- Cayley transform ----

inline Rotation cay(const Vec3& v) {
  double lam = 1.0 / (1.0 + v.squaredNorm());
  Mat3 x = hat(v);
  return Rotation::unchecked(Mat3::Identity() + 2.0 * lam * x + 2.0 * lam * x * x);
}

inline Vec3 cay_inv(const Rotation& r) {
  double tr = r.trace();
  if (tr <= -1.0 + 1e-9) throw SingularityError("cay_inv: trace is -1");
  return (2.0 / (1.0 + tr)) * skew_vector(r.matrix());
}

inline Mat3 dcay(const Vec3& v, TrivializationSide side = TrivializationSide::Right) {
  double lam = 1.0 / (1.0 + v.squaredNorm());
  return 2.0 * lam * (Mat3::Identity() + detail::sign_of(side) * hat(v));
}

inline Mat3 dcay_inv(const Vec3& v, TrivializationSide side = TrivializationSide::Right) {
  return 0.5 * (Mat3::Identity() - detail::sign_of(side) * hat(v) + outer(v));
}

// ---- inverse skew projection ----

/// γ = 1 / (1 + sqrt(1 - ‖v‖²)).
inline double unskew_gamma(const Vec3& v) {
  double n2 = v.squaredNorm();
  if (n2 >= 1.0) throw DomainError("unskew: norm must be below 1");
  return 1.0 / (1.0 + std::sqrt(1.0 - n2));
}

inline Rotation unskew(const Vec3& v) {
  double g = unskew_gamma(v);
  Mat3 x = hat(v);
  return Rotation::unchecked(Mat3::Identity() + x + g * x * x);
}

/// Inverse of unskew: axis vector of the skew part, for rotations by less than π/2.
inline Vec3 skew_inv(const Rotation& r) {
  if (r.trace() <= 1.0) throw DomainError("skew_inv: rotation angle must be below pi/2");
  return skew_vector(r.matrix());
}

inline Mat3 dunskew(const Vec3& v, TrivializationSide side = TrivializationSide::Right) {
  double g = unskew_gamma(v);
  double s = std::sqrt(1.0 - v.squaredNorm());
  Mat3 x = hat(v);
  return (1.0 / s) * Mat3::Identity() + detail::sign_of(side) * g * x + (g / s) * x * x;
}

inline Mat3 dskew(const Vec3& v, TrivializationSide side = TrivializationSide::Right) {
  double g = unskew_gamma(v);
  double s = std::sqrt(1.0 - v.squaredNorm());
  Mat3 x = hat(v);
  return s * Mat3::Identity() - detail::sign_of(side) * 0.5 * x - 0.5 * g * x * x;
}

/// A retraction on so(3) together with its trivialized tangents.
class Retraction {
 public:
  explicit Retraction(RetractionKind kind = RetractionKind::Exp,
                      TrivializationSide side = TrivializationSide::Right)
      : kind_(kind), side_(side) {}

  static Retraction exp(TrivializationSide s = TrivializationSide::Right) {
    return Retraction(RetractionKind::Exp, s);
  }
  static Retraction cayley(TrivializationSide s = TrivializationSide::Right) {
    return Retraction(RetractionKind::Cayley, s);
  }
  static Retraction skew(TrivializationSide s = TrivializationSide::Right) {
    return Retraction(RetractionKind::Skew, s);
  }

  RetractionKind kind() const { return kind_; }
  TrivializationSide side() const { return side_; }
  Retraction with_side(TrivializationSide s) const { return Retraction(kind_, s); }

  Rotation tau(const Vec3& v) const {
    switch (kind_) {
      case RetractionKind::Exp: return exp_so3(v);
      case RetractionKind::Cayley: return cay(v);
      case RetractionKind::Skew: return unskew(v);
    }
    return Rotation();
  }

  Vec3 tau_inv(const Rotation& r) const {
    switch (kind_) {
      case RetractionKind::Exp: return log_so3(r);
      case RetractionKind::Cayley: return cay_inv(r);
      case RetractionKind::Skew: return skew_inv(r);
    }
    return Vec3::Zero();
  }

  Mat3 dtau(const Vec3& v) const {
    switch (kind_) {
      case RetractionKind::Exp: return dexp(v, side_);
      case RetractionKind::Cayley: return dcay(v, side_);
      case RetractionKind::Skew: return dunskew(v, side_);
    }
    return Mat3::Identity();
  }

  Mat3 dtau_inv(const Vec3& v) const {
    switch (kind_) {
      case RetractionKind::Exp: return dlog(v, side_);
      case RetractionKind::Cayley: return dcay_inv(v, side_);
      case RetractionKind::Skew: return dskew(v, side_);
    }
    return Mat3::Identity();
  }

  bool in_domain(const Vec3& v) const {
    switch (kind_) {
      case RetractionKind::Exp: return v.norm() < std::numbers::pi;
      case RetractionKind::Cayley: return true;
      case RetractionKind::Skew: return v.squaredNorm() < 1.0;
    }
    return false;
  }

 private:
  RetractionKind kind_;
  TrivializationSide side_;
};

/// Checks dτ(v) = Ad_{τ(v)} dτ(-v) to 1e-10 (Ad_{τ(v)⁻¹} for the left side).
inline bool adjoint_tangent_identity_check(const Retraction& ret, const Vec3& v) {
  Mat3 lhs = ret.dtau(v);
  Mat3 ad = ret.tau(v).matrix();
  if (ret.side() == TrivializationSide::Left) ad.transposeInPlace();
  Mat3 rhs = ad * ret.dtau(-v);
  return (lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10;
}

}  // namespace lgm
