#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "lgm/errors.hpp"

namespace lgm {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kRotationTol = 1e-10;

/// Skew-symmetric matrix of v, so that hat(v) * w = v × w.
inline Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

/// Inverse of hat. Throws DomainError if m is not skew to 1e-10.
inline Vec3 vee(const Mat3& m) {
  if (((m + m.transpose()) * 0.5).cwiseAbs().maxCoeff() > 1e-10)
    throw DomainError("vee: matrix is not skew-symmetric");
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

inline Mat3 skew_part(const Mat3& m) { return 0.5 * (m - m.transpose()); }

/// Axis vector of the skew part, without the skew check of vee.
inline Vec3 skew_vector(const Mat3& m) {
  return 0.5 * Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

inline double frobenius_inner(const Mat3& a, const Mat3& b) {
  return (a.array() * b.array()).sum();
}

/// x ⊗ x as a matrix.
inline Mat3 outer(const Vec3& x) { return x * x.transpose(); }

class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  /// Validates orthogonality and det = +1 to 1e-10.
  explicit Rotation(const Mat3& m) : m_(m) {
    if (!m.allFinite()) throw DomainError("rotation has non-finite entries");
    if ((m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff() > kRotationTol)
      throw DomainError("matrix is not orthogonal");
    if (std::abs(m.determinant() - 1.0) > kRotationTol)
      throw DomainError("matrix does not have determinant +1");
  }

  /// Skips validation; caller guarantees the invariants.
  static Rotation unchecked(const Mat3& m) {
    Rotation r;
    r.m_ = m;
    return r;
  }

  static Rotation identity() { return Rotation(); }

  const Mat3& matrix() const { return m_; }
  double trace() const { return m_.trace(); }
  Rotation inverse() const { return unchecked(m_.transpose()); }
  Rotation operator*(const Rotation& o) const { return unchecked(m_ * o.m_); }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

  /// Largest entry of |RᵗR - I|.
  double orthogonality_error() const {
    return (m_.transpose() * m_ - Mat3::Identity()).cwiseAbs().maxCoeff();
  }

 private:
  Mat3 m_;
};

/// Ad_R v = R v.
inline Vec3 adjoint_apply(const Rotation& r, const Vec3& v) { return r.matrix() * v; }

/// Ad_Rᵗ v = Rᵗ v.
inline Vec3 adjoint_transpose_apply(const Rotation& r, const Vec3& v) {
  return r.matrix().transpose() * v;
}

/// Gram-Schmidt repair of a drifted rotation matrix.
inline Rotation orthonormalize(const Mat3& m) {
  Vec3 c0 = m.col(0).normalized();
  Vec3 c1 = (m.col(1) - c0.dot(m.col(1)) * c0).normalized();
  Vec3 c2 = c0.cross(c1);
  Mat3 out;
  out << c0, c1, c2;
  return Rotation::unchecked(out);
}

}  // namespace lgm
