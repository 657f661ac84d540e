#pragma once

#include <random>

#include "lgm/lgm.hpp"

namespace lgm::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed = 20240611) { return std::mt19937_64(seed); }

/// Uniform sample in the ball of the given radius.
inline Vec3 random_in_ball(std::mt19937_64& rng, double radius) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec3 d(n(rng), n(rng), n(rng));
  return d.normalized() * radius * std::cbrt(u(rng));
}

inline Vec3 random_vec(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Vec3(u(rng), u(rng), u(rng));
}

inline Rotation random_rotation(std::mt19937_64& rng) {
  return exp_so3(random_in_ball(rng, 0.95 * std::numbers::pi));
}

/// Central-difference trivialized tangent of τ at v.
/// Right: d/dt τ(v + t e_i) τ(v)⁻¹; Left: τ(v)⁻¹ d/dt τ(v + t e_i).
inline Mat3 fd_tangent(const Retraction& ret, const Vec3& v, double h = 1e-6) {
  const Mat3 base_inv = ret.tau(v).matrix().transpose();
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e(i) = h;
    Mat3 d = (ret.tau(v + e).matrix() - ret.tau(v - e).matrix()) / (2.0 * h);
    Mat3 pulled = ret.side() == TrivializationSide::Right ? Mat3(d * base_inv) : Mat3(base_inv * d);
    out.col(i) = skew_vector(pulled);
  }
  return out;
}

/// Central difference of t ↦ φ(exp(tΘ) R) at 0.
template <class Obj>
double fd_directional(const Obj& obj, const Rotation& r, const Vec3& theta, double h = 1e-6) {
  return (obj.value(exp_so3(h * theta) * r) - obj.value(exp_so3(-h * theta) * r)) / (2.0 * h);
}

inline double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace lgm::testing
