#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "lgm/errors.hpp"
#include "lgm/objectives.hpp"
#include "lgm/reconstruction.hpp"

namespace lgm {

/// (g_k, ξ_k, p_k). Momenta are stored as algebra vectors through the pairing.
template <class G>
struct PontryaginState {
  typename G::Element g;
  typename G::Algebra xi;
  typename G::Algebra p;
};

/// Time-dependent Lagrangian l̄_k(g, ξ) in trivialized form.
template <class G>
class TrivializedLagrangian {
 public:
  using Element = typename G::Element;
  using Algebra = typename G::Algebra;

  virtual ~TrivializedLagrangian() = default;
  virtual double value(int k, const Element& g, const Algebra& xi) const = 0;
  /// Derivative in g pulled to the algebra by left translation.
  virtual Algebra d_g(int k, const Element& g, const Algebra& xi) const = 0;
  virtual Algebra d_xi(int k, const Element& g, const Algebra& xi) const = 0;
};

/// a_k ½⟨ξ,ξ⟩ - b⁻_k φ(g) - b⁺_{k+1} φ(g τ(ξ)).
template <class G>
class PotentialLagrangian : public TrivializedLagrangian<G> {
 public:
  using Element = typename G::Element;
  using Algebra = typename G::Algebra;
  using Sequence = std::function<double(int)>;

  PotentialLagrangian(G group, std::shared_ptr<const Objective<G>> objective, Sequence a,
                      Sequence b_minus, Sequence b_plus)
      : group_(std::move(group)),
        obj_(std::move(objective)),
        a_(std::move(a)),
        bm_(std::move(b_minus)),
        bp_(std::move(b_plus)) {}

  double a(int k) const { return a_(k); }
  double b_minus(int k) const { return bm_(k); }
  double b_plus(int k) const { return bp_(k); }
  const Objective<G>& objective() const { return *obj_; }

  double value(int k, const Element& g, const Algebra& xi) const override {
    return a_(k) * 0.5 * group_.inner(xi, xi) - bm_(k) * obj_->value(g) -
           bp_(k + 1) * obj_->value(group_.compose(g, group_.tau(xi)));
  }

  Algebra d_g(int k, const Element& g, const Algebra& xi) const override {
    Element g1 = group_.compose(g, group_.tau(xi));
    Algebra right = -bm_(k) * obj_->grad(g) - bp_(k + 1) * obj_->grad(g1);
    return group_.ad_transpose(g, right);
  }

  Algebra d_xi(int k, const Element& g, const Algebra& xi) const override {
    Element g1 = group_.compose(g, group_.tau(xi));
    return a_(k) * xi -
           bp_(k + 1) * (group_.dtau(xi).transpose() * group_.ad_transpose(g, obj_->grad(g1)));
  }

 private:
  G group_;
  std::shared_ptr<const Objective<G>> obj_;
  Sequence a_, bm_, bp_;
};

/// Left-invariant kinetic Lagrangian ½⟨ξ, Jξ⟩ (rigid body for diagonal J on SO(3)).
template <class G>
class KineticLagrangian : public TrivializedLagrangian<G> {
 public:
  using Element = typename G::Element;
  using Algebra = typename G::Algebra;
  using Matrix = typename G::Matrix;

  KineticLagrangian(G group, Matrix inertia) : group_(std::move(group)), j_(std::move(inertia)) {}
  explicit KineticLagrangian(G group) : group_(std::move(group)), j_(group_.eye()) {}

  double value(int, const Element&, const Algebra& xi) const override {
    return 0.5 * group_.inner(xi, Algebra(j_ * xi));
  }
  Algebra d_g(int, const Element&, const Algebra&) const override { return group_.zero(); }
  Algebra d_xi(int, const Element&, const Algebra& xi) const override { return j_ * xi; }

 private:
  G group_;
  Matrix j_;
};

namespace detail {

template <class G>
void require_right_side(const G& group) {
  if (group.side() != TrivializationSide::Right)
    throw DomainError("Hamilton-Pontryagin schemes are implemented for the right side only");
}

}  // namespace detail

/// P = (dτ⁻¹_ξ)* p.
template <class G>
typename G::Algebra transported_momentum(const G& group, const PontryaginState<G>& s) {
  return group.dtau_inv(s.xi).transpose() * s.p;
}

/// Forward Euler scheme: g_{k+1} = g_k τ(ξ_k), then ξ_{k+1} from the implicit momentum balance.
template <class G>
PontryaginState<G> forward_step(const G& group, const TrivializedLagrangian<G>& lagr,
                                const PontryaginState<G>& s, int k, double tol = 1e-12,
                                int max_iter = 100) {
  using Vec = typename G::Algebra;
  detail::require_right_side(group);
  const auto step = group.tau(s.xi);
  const auto g1 = group.compose(s.g, step);
  const Vec target = group.ad_transpose(step, transported_momentum(group, s));
  auto residual = [&](const Vec& xi) -> Vec {
    return Vec(group.dtau_inv(xi).transpose() * lagr.d_xi(k + 1, g1, xi)) -
           lagr.d_g(k + 1, g1, xi) - target;
  };
  Vec xi1;
  try {
    xi1 = newton_solve<Vec>(residual, s.xi, tol, max_iter, target.norm(), "forward step");
  } catch (const SolverError& e) {
    throw NumericalError(e.what(), k);
  }
  return {g1, xi1, lagr.d_xi(k + 1, g1, xi1)};
}

/// Recovers the index-k state of the backward Euler scheme from index k+1.
/// The scheme reads g_{k+1} = g_k τ(ξ_{k+1}), p_k = ∂_ξ l̄_k(g_k, ξ_k) and
/// (dτ⁻¹_{ξ_{k+1}})* p_{k+1} = Ad*_{τ(ξ_k)} (dτ⁻¹_{ξ_k})* p_k + L*_{g_k} ∂_g l̄_k(g_k, ξ_k).
template <class G>
PontryaginState<G> backward_step_reverse(const G& group, const TrivializedLagrangian<G>& lagr,
                                         const PontryaginState<G>& next, int k,
                                         double tol = 1e-12, int max_iter = 100) {
  using Vec = typename G::Algebra;
  detail::require_right_side(group);
  const auto g0 = group.compose(next.g, group.inverse(group.tau(next.xi)));
  const Vec target = transported_momentum(group, next);
  auto residual = [&](const Vec& xi) -> Vec {
    Vec transported = group.dtau_inv(xi).transpose() * lagr.d_xi(k, g0, xi);
    return Vec(group.ad_transpose(group.tau(xi), transported)) + lagr.d_g(k, g0, xi) - target;
  };
  Vec xi0;
  try {
    xi0 = newton_solve<Vec>(residual, next.xi, tol, max_iter, target.norm(), "backward step");
  } catch (const SolverError& e) {
    throw NumericalError(e.what(), k);
  }
  return {g0, xi0, lagr.d_xi(k, g0, xi0)};
}

/// Residual norms of the forward scheme between s (index k) and s1 (index k+1):
/// {group reconstruction, momentum definition, momentum balance}.
template <class G>
std::array<double, 3> forward_scheme_residual(const G& group, const TrivializedLagrangian<G>& lagr,
                                              const PontryaginState<G>& s,
                                              const PontryaginState<G>& s1, int k) {
  using Vec = typename G::Algebra;
  const auto step = group.tau(s.xi);
  const auto g1 = group.compose(s.g, step);
  double r0 = group.between(g1, s1.g).norm();
  double r1 = (s1.p - lagr.d_xi(k + 1, s1.g, s1.xi)).norm();
  Vec lhs = transported_momentum(group, s1);
  Vec rhs = Vec(group.ad_transpose(step, transported_momentum(group, s))) +
            lagr.d_g(k + 1, s1.g, s1.xi);
  return {r0, r1, (lhs - rhs).norm()};
}

/// Residual norms of the backward scheme between s (index k) and s1 (index k+1).
template <class G>
std::array<double, 3> backward_scheme_residual(const G& group, const TrivializedLagrangian<G>& lagr,
                                               const PontryaginState<G>& s,
                                               const PontryaginState<G>& s1, int k) {
  using Vec = typename G::Algebra;
  const auto g1 = group.compose(s.g, group.tau(s1.xi));
  double r0 = group.between(g1, s1.g).norm();
  double r1 = (s.p - lagr.d_xi(k, s.g, s.xi)).norm();
  Vec lhs = transported_momentum(group, s1);
  Vec rhs = Vec(group.ad_transpose(group.tau(s.xi), transported_momentum(group, s))) +
            lagr.d_g(k, s.g, s.xi);
  return {r0, r1, (lhs - rhs).norm()};
}

/// States 0 … steps of the forward scheme.
template <class G>
std::vector<PontryaginState<G>> integrate_forward(const G& group,
                                                  const TrivializedLagrangian<G>& lagr,
                                                  PontryaginState<G> s0, int steps) {
  std::vector<PontryaginState<G>> out;
  out.reserve(steps + 1);
  out.push_back(std::move(s0));
  for (int k = 0; k < steps; ++k) out.push_back(forward_step(group, lagr, out.back(), k));
  return out;
}

/// Starting state (g, 0, ∂_ξ l̄_0(g, 0)).
template <class G>
PontryaginState<G> rest_state(const G& group, const TrivializedLagrangian<G>& lagr,
                              const typename G::Element& g) {
  return {g, group.zero(), lagr.d_xi(0, g, group.zero())};
}

/// max_k | ‖P_{k+1}‖ - ‖P_k‖ | along a run of a left-invariant Lagrangian.
template <class G>
double coadjoint_invariant_check(const G& group, const std::vector<PontryaginState<G>>& traj) {
  double drift = 0.0;
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    double a = transported_momentum(group, traj[k]).norm();
    double b = transported_momentum(group, traj[k + 1]).norm();
    drift = std::max(drift, std::abs(b - a));
  }
  return drift;
}

/// Increment Δx_k = Ad_{g_k⁻¹}ᵗ (dτ⁻¹_{ξ_k})ᵗ ξ_k of a Pontryagin state.
template <class G>
typename G::Algebra increment_of(const G& group, const PontryaginState<G>& s) {
  return group.push(s.g, group.dtau(s.xi).transpose().inverse() * s.xi);
}

/// Point-to-point discrete Euler-Lagrange residual of the potential Lagrangian,
/// a_k Δx_k - a_{k-1} Δx_{k-1} + (b⁻_k + b⁺_k) ∇φ(g_k), for k = 1 … N-1.
template <class G>
std::vector<double> pontryagin_del_residuals(const G& group, const PotentialLagrangian<G>& lagr,
                                             const std::vector<PontryaginState<G>>& traj) {
  std::vector<double> out;
  for (std::size_t j = 1; j + 1 < traj.size(); ++j) {
    const int k = static_cast<int>(j);
    auto r = lagr.a(k) * increment_of(group, traj[j]) -
             lagr.a(k - 1) * increment_of(group, traj[j - 1]) +
             (lagr.b_minus(k) + lagr.b_plus(k)) * lagr.objective().grad(traj[j].g);
    out.push_back(r.norm());
  }
  return out;
}

/// Same residual by central differences of the point-to-point Lagrangian
/// l_k(w₀, w₁) = l̄_k(w₀, τ⁻¹(w₀⁻¹w₁)) along g ↦ g τ(t e_i).
template <class G>
std::vector<double> pontryagin_del_residuals_numeric(const G& group,
                                                     const TrivializedLagrangian<G>& lagr,
                                                     const std::vector<PontryaginState<G>>& traj,
                                                     double h = 1e-6) {
  using Vec = typename G::Algebra;
  auto point = [&](int k, const typename G::Element& w0, const typename G::Element& w1) {
    return lagr.value(k, w0, group.between(w0, w1));
  };
  std::vector<double> out;
  for (std::size_t j = 1; j + 1 < traj.size(); ++j) {
    const int k = static_cast<int>(j);
    Vec r = group.zero();
    for (int i = 0; i < group.dim(); ++i) {
      Vec e = group.zero();
      e(i) = h;
      auto plus = group.compose(traj[j].g, group.tau(e));
      auto minus = group.compose(traj[j].g, group.tau(Vec(-e)));
      double fp = point(k, plus, traj[j + 1].g) + point(k - 1, traj[j - 1].g, plus);
      double fm = point(k, minus, traj[j + 1].g) + point(k - 1, traj[j - 1].g, minus);
      r(i) = (fp - fm) / (2.0 * h);
    }
    out.push_back(r.norm());
  }
  return out;
}

}  // namespace lgm
