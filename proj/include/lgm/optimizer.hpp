#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgm/errors.hpp"
#include "lgm/objectives.hpp"

namespace lgm {

/// Momentum coefficients μ_k and learning rates η_k as functions of the step index.
class Strategy {
 public:
  using Sequence = std::function<double(int)>;

  Strategy(Sequence mu, Sequence eta) : mu_(std::move(mu)), eta_(std::move(eta)) {}

  static Strategy constant(double mu, double eta) {
    if (!(mu >= 0.0)) throw ConfigError("mu", "must be non-negative");
    if (!(eta > 0.0)) throw ConfigError("eta", "must be positive");
    return Strategy([mu](int) { return mu; }, [eta](int) { return eta; });
  }

  /// Index k reads element k; past the end the last element is repeated.
  static Strategy from_sequences(std::vector<double> mu, std::vector<double> eta) {
    if (mu.empty() || eta.empty()) throw ConfigError("strategy", "sequences must be non-empty");
    for (double m : mu)
      if (!(m >= 0.0)) throw ConfigError("mu", "must be non-negative");
    for (double e : eta)
      if (!(e > 0.0)) throw ConfigError("eta", "must be positive");
    auto at = [](std::vector<double> v) {
      return [v = std::move(v)](int k) {
        return v[std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)), v.size() - 1)];
      };
    };
    return Strategy(at(std::move(mu)), at(std::move(eta)));
  }

  /// μ_k = a_{k-1}/a_k and η_k = (b⁻_k + b⁺_k)/a_k. a must be positive wherever it is read.
  static Strategy from_lagrangian(Sequence a, Sequence b_minus, Sequence b_plus) {
    auto checked = [a](int k) {
      double v = a(k);
      if (!(v > 0.0)) throw ConfigError("a", "coefficient a_" + std::to_string(k) + " must be positive");
      return v;
    };
    return Strategy([checked](int k) { return checked(k - 1) / checked(k); },
                    [checked, b_minus, b_plus](int k) { return (b_minus(k) + b_plus(k)) / checked(k); });
  }

  /// Sequence form of from_lagrangian; element k of each vector is index k.
  /// μ_0 needs a_{-1}, which is taken equal to a_0.
  static Strategy from_lagrangian(const std::vector<double>& a, const std::vector<double>& b_minus,
                                  const std::vector<double>& b_plus) {
    if (a.empty() || a.size() != b_minus.size() || a.size() != b_plus.size())
      throw ConfigError("strategy", "coefficient sequences must be non-empty and of equal length");
    std::vector<double> mu(a.size()), eta(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (!(a[k] > 0.0)) throw ConfigError("a", "coefficient a_" + std::to_string(k) + " must be positive");
      mu[k] = (k == 0 ? a[0] : a[k - 1]) / a[k];
      eta[k] = (b_minus[k] + b_plus[k]) / a[k];
    }
    return from_sequences(std::move(mu), std::move(eta));
  }

  double mu(int k) const { return mu_(k); }
  double eta(int k) const { return eta_(k); }

  Strategy without_momentum() const {
    return Strategy([](int) { return 0.0; }, eta_);
  }

 private:
  Sequence mu_;
  Sequence eta_;
};

enum class MethodKind { GD, PHB, NAG };

inline std::string_view to_string(MethodKind m) {
  switch (m) {
    case MethodKind::GD: return "gd";
    case MethodKind::PHB: return "phb";
    case MethodKind::NAG: return "nag";
  }
  return "?";
}

inline int epsilon_of(MethodKind m) { return m == MethodKind::NAG ? 1 : 0; }

template <class G>
struct TrajectoryPoint {
  int k;
  typename G::Element g;
  double residue;
  typename G::Algebra increment;  ///< the Δx that produced g_k from g_{k-1} (zero for k ≤ 1)
};

/// g_0 … g_N with g_1 = g_0.
template <class G>
using Trajectory = std::vector<TrajectoryPoint<G>>;

namespace detail {

template <class G>
double residue_of(const Objective<G>& obj, double value) {
  auto m = obj.minimum();
  return m ? value - *m : value;
}

template <class G>
typename G::Algebra checked_grad(const G& group, const Objective<G>& obj,
                                 const typename G::Element& g, int k) {
  typename G::Algebra v = group.trivialize(g, obj.grad(g));
  if (!v.allFinite()) throw NumericalError("non-finite gradient", k);
  return v;
}

template <class G, class S>
typename G::Element checked_step(const S& solver, const typename G::Element& g,
                                 const typename G::Algebra& dx, int k) {
  try {
    return solver.step(g, dx);
  } catch (const NumericalError&) {
    throw;
  } catch (const Error& e) {
    throw NumericalError(e.what(), k);
  }
}

template <class G>
void record(Trajectory<G>& traj, const Objective<G>& obj, int k, const typename G::Element& g,
            const typename G::Algebra& dx) {
  double v = obj.value(g);
  if (!std::isfinite(v)) throw NumericalError("non-finite objective value", k);
  traj.push_back({k, g, residue_of(obj, v), dx});
}

inline void check_epochs(int epochs) {
  if (epochs < 1) throw ConfigError("epochs", "must be at least 1");
}

}  // namespace detail

/// Momentum descent on a Lie group. epsilon = 0 gives PHB, 1 gives NAG.
template <class G, class S>
Trajectory<G> run_momentum(const G& group, const Objective<G>& obj, const S& solver,
                           const typename G::Element& g0, const Strategy& strategy, int epsilon,
                           int epochs) {
  using Vec = typename G::Algebra;
  detail::check_epochs(epochs);
  const double eps = epsilon ? 1.0 : 0.0;
  Trajectory<G> traj;
  traj.reserve(epochs + 1);
  const Vec zero = group.zero();
  detail::record(traj, obj, 0, g0, zero);
  detail::record(traj, obj, 1, g0, zero);

  typename G::Element g = g0;
  Vec x = zero;
  Vec y = -strategy.eta(0) * detail::checked_grad(group, obj, g0, 0);
  Vec z = eps * y;
  for (int k = 1; k <= epochs - 1; ++k) {
    Vec grad = detail::checked_grad(group, obj, g, k);
    Vec y_next = x - strategy.eta(k) * grad;
    Vec z_next = (1.0 - eps) * x + eps * y_next;
    Vec x_next = y_next + strategy.mu(k) * (z_next - z);
    Vec dx = x_next - x;
    g = detail::checked_step<G>(solver, g, dx, k);
    detail::record(traj, obj, k + 1, g, dx);
    x = std::move(x_next);
    y = std::move(y_next);
    z = std::move(z_next);
  }
  return traj;
}

/// Gradient descent on a Lie group.
template <class G, class S>
Trajectory<G> run_gd(const G& group, const Objective<G>& obj, const S& solver,
                     const typename G::Element& g0, const Strategy& strategy, int epochs) {
  using Vec = typename G::Algebra;
  detail::check_epochs(epochs);
  Trajectory<G> traj;
  traj.reserve(epochs + 1);
  const Vec zero = group.zero();
  detail::record(traj, obj, 0, g0, zero);
  detail::record(traj, obj, 1, g0, zero);

  typename G::Element g = g0;
  Vec x = zero;
  for (int k = 1; k <= epochs - 1; ++k) {
    Vec x_next = x - strategy.eta(k) * detail::checked_grad(group, obj, g, k);
    Vec dx = x_next - x;
    g = detail::checked_step<G>(solver, g, dx, k);
    detail::record(traj, obj, k + 1, g, dx);
    x = std::move(x_next);
  }
  return traj;
}

template <class G, class S>
Trajectory<G> run_method(MethodKind method, const G& group, const Objective<G>& obj,
                         const S& solver, const typename G::Element& g0, const Strategy& strategy,
                         int epochs) {
  if (method == MethodKind::GD) return run_gd(group, obj, solver, g0, strategy, epochs);
  return run_momentum(group, obj, solver, g0, strategy, epsilon_of(method), epochs);
}

/// Same method propagated through increments only, so no absolute x is kept.
template <class G, class S>
Trajectory<G> run_momentum_doubled(const G& group, const Objective<G>& obj, const S& solver,
                                   const typename G::Element& g0, const Strategy& strategy,
                                   int epsilon, int epochs) {
  using Vec = typename G::Algebra;
  detail::check_epochs(epochs);
  const double eps = epsilon ? 1.0 : 0.0;
  Trajectory<G> traj;
  traj.reserve(epochs + 1);
  const Vec zero = group.zero();
  detail::record(traj, obj, 0, g0, zero);
  detail::record(traj, obj, 1, g0, zero);

  typename G::Element g = g0;
  Vec dx = zero;
  Vec scaled_prev = strategy.eta(0) * detail::checked_grad(group, obj, g0, 0);
  // μ Δz carried between steps; its initial value makes the first momentum step vanish.
  Vec carry = scaled_prev;
  for (int k = 1; k <= epochs - 1; ++k) {
    Vec scaled = strategy.eta(k) * detail::checked_grad(group, obj, g, k);
    Vec dy = dx - (scaled - scaled_prev);
    Vec dz = (1.0 - eps) * dx + eps * dy;
    Vec carry_next = strategy.mu(k) * dz;
    Vec dx_next = dy + carry_next - carry;
    g = detail::checked_step<G>(solver, g, dx_next, k);
    detail::record(traj, obj, k + 1, g, dx_next);
    dx = std::move(dx_next);
    carry = std::move(carry_next);
    scaled_prev = std::move(scaled);
  }
  return traj;
}

/// Per-step residual of the discrete Euler-Lagrange equation along a trajectory.
/// Increments are recovered from consecutive group elements through the
/// reconstruction identity of `group`'s retraction; entry j is the residual of
/// the step g_{j+1} → g_{j+2}.
template <class G>
std::vector<double> del_residuals(const G& group, const Objective<G>& obj,
                                  const Trajectory<G>& traj, const Strategy& strategy,
                                  int epsilon) {
  using Vec = typename G::Algebra;
  const double eps = epsilon ? 1.0 : 0.0;
  std::vector<double> out;
  if (traj.size() < 3) return out;
  Vec prev_dx = group.zero();
  Vec prev_scaled = strategy.eta(0) * group.trivialize(traj[1].g, obj.grad(traj[1].g));
  for (std::size_t j = 1; j + 1 < traj.size(); ++j) {
    const int k = static_cast<int>(j);
    const auto& g = traj[j].g;
    Vec xi = group.between(g, traj[j + 1].g);
    Vec dx = group.push(g, group.dtau(xi).transpose().inverse() * xi);
    Vec scaled = strategy.eta(k) * group.trivialize(g, obj.grad(g));
    Vec r = dx - strategy.mu(k) * (prev_dx - eps * (scaled - prev_scaled)) + scaled;
    out.push_back(r.norm());
    prev_dx = dx;
    prev_scaled = scaled;
  }
  return out;
}

}  // namespace lgm
