#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "lgm/errors.hpp"
#include "lgm/group.hpp"

namespace lgm {

/// Step size of the central differences used for numeric Jacobians.
inline constexpr double kJacobianStep = 1e-6;

/// Central-difference Jacobian of a map on algebra vectors.
template <class Vec, class F>
Eigen::MatrixXd numeric_jacobian(const F& f, const Vec& at, double h = kJacobianStep) {
  const auto n = at.size();
  Eigen::MatrixXd j(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec plus = at, minus = at;
    plus(i) += h;
    minus(i) -= h;
    Eigen::VectorXd d = (f(plus) - f(minus)) / (2.0 * h);
    j.col(i) = d;
  }
  return j;
}

/// Newton iteration on r(ξ) = 0 with a numeric Jacobian.
/// Converged when ‖r‖ ≤ tol · max(1, scale).
template <class Vec, class F>
Vec newton_solve(const F& residual, Vec x, double tol, int max_iter, double scale,
                 const char* what, int* iterations = nullptr, double* final_residual = nullptr) {
  double bound = tol * std::max(1.0, scale);
  double rn = 0.0;
  for (int it = 0; it <= max_iter; ++it) {
    Vec r = residual(x);
    rn = r.norm();
    if (!std::isfinite(rn)) throw SolverError(std::string(what) + ": non-finite residual", it, rn);
    if (rn <= bound) {
      if (iterations) *iterations = it;
      if (final_residual) *final_residual = rn;
      return x;
    }
    if (it == max_iter) break;
    Eigen::MatrixXd j = numeric_jacobian<Vec>(residual, x);
    Eigen::VectorXd d = j.partialPivLu().solve(Eigen::VectorXd(r));
    x -= Vec(d);
  }
  throw SolverError(std::string(what) + ": no convergence", max_iter, rn);
}

// ---- explicit SO(3) solvers ----

/// exp(dx) R on the right side, R exp(dx) on the left.
inline Rotation solve_exp(const Rotation& r, const Vec3& dx,
                          TrivializationSide side = TrivializationSide::Right) {
  Rotation e = exp_so3(dx);
  return side == TrivializationSide::Right ? e * r : r * e;
}

/// Root of ‖Ω‖³ + ‖Ω‖ - 2‖dx‖ = 0 via Cardano.
inline double cayley_root(double dx_norm) {
  double cap = std::cbrt(dx_norm + std::sqrt(dx_norm * dx_norm + 1.0 / 27.0));
  return cap - 1.0 / (3.0 * cap);
}

/// λ = 1 / (1 + ‖Ω‖²).
inline double cayley_coefficient(double dx_norm) {
  double w = cayley_root(dx_norm);
  return 1.0 / (1.0 + w * w);
}

inline Rotation solve_cay(const Rotation& r, const Vec3& dx,
                          TrivializationSide side = TrivializationSide::Right) {
  Rotation c = cay(2.0 * cayley_coefficient(dx.norm()) * dx);
  return side == TrivializationSide::Right ? c * r : r * c;
}

/// Root in [1/2, 2/3] of ‖dx‖²γ⁴ - 2γ + 1 = 0.
/// Newton from 7/12; falls back to bisection if Newton stalls or leaves the window.
inline double skew_gamma(double dx_norm) {
  if (!(dx_norm < 1.0)) throw DomainError("skw solver: increment norm must be below 1");
  const double a = dx_norm * dx_norm;
  auto f = [a](double g) { return a * g * g * g * g - 2.0 * g + 1.0; };
  double g = 7.0 / 12.0;
  for (int it = 0; it < 50; ++it) {
    double fg = f(g);
    double step = fg / (4.0 * a * g * g * g - 2.0);
    g -= step;
    if (!(g >= 0.5 && g <= 2.0 / 3.0)) break;
    if (std::abs(step) <= 1e-16 * g) return g;
  }
  double lo = 0.5, hi = 2.0 / 3.0;
  for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline Rotation solve_skw(const Rotation& r, const Vec3& dx,
                          TrivializationSide side = TrivializationSide::Right) {
  Rotation u = unskew(skew_gamma(dx.norm()) * dx);
  return side == TrivializationSide::Right ? u * r : r * u;
}

// ---- generic solver ----

template <class G>
struct FixedPointResult {
  typename G::Element element;
  typename G::Algebra xi;
  int iterations = 0;
  double residual = 0.0;
};

/// Solves ξ = dτ_ξᵗ η with η the pulled increment, then steps g by ξ.
template <class G>
FixedPointResult<G> solve_fixed_point_detailed(const G& group, const typename G::Element& g,
                                               const typename G::Algebra& dx,
                                               double tol = 1e-12, int max_iter = 100) {
  using Vec = typename G::Algebra;
  const Vec eta = group.pull(g, dx);
  auto residual = [&](const Vec& xi) -> Vec { return xi - group.dtau(xi).transpose() * eta; };
  FixedPointResult<G> out{g, eta, 0, 0.0};
  out.xi = newton_solve<Vec>(residual, eta, tol, max_iter, 1.0, "reconstruction fixed point",
                             &out.iterations, &out.residual);
  out.element = group.translate(g, out.xi);
  return out;
}

template <class G>
typename G::Element solve_fixed_point(const G& group, const typename G::Element& g,
                                      const typename G::Algebra& dx) {
  return solve_fixed_point_detailed(group, g, dx).element;
}

// ---- solver objects ----

/// One of the three closed-form SO(3) solvers.
class ExplicitSolver {
 public:
  explicit ExplicitSolver(RetractionKind kind = RetractionKind::Exp,
                          TrivializationSide side = TrivializationSide::Right)
      : kind_(kind), side_(side) {}

  Rotation step(const Rotation& g, const Vec3& dx) const {
    switch (kind_) {
      case RetractionKind::Exp: return solve_exp(g, dx, side_);
      case RetractionKind::Cayley: return solve_cay(g, dx, side_);
      case RetractionKind::Skew: return solve_skw(g, dx, side_);
    }
    return g;
  }

  RetractionKind kind() const { return kind_; }
  /// The retraction whose reconstruction equation this solver answers.
  Retraction retraction() const { return Retraction(kind_, side_); }
  SO3Group group() const { return SO3Group(retraction()); }

 private:
  RetractionKind kind_;
  TrivializationSide side_;
};

template <class G>
class FixedPointSolver {
 public:
  explicit FixedPointSolver(G group) : group_(std::move(group)) {}
  typename G::Element step(const typename G::Element& g, const typename G::Algebra& dx) const {
    return solve_fixed_point(group_, g, dx);
  }
  const G& group() const { return group_; }

 private:
  G group_;
};

/// Translation-group reconstruction: x + dx.
struct TranslationSolver {
  Eigen::VectorXd step(const Eigen::VectorXd& g, const Eigen::VectorXd& dx) const { return g + dx; }
};

}  // namespace lgm
