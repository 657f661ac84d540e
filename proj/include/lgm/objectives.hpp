#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <utility>

#include "lgm/errors.hpp"
#include "lgm/group.hpp"

namespace lgm {

/// A smooth function on a group with its right-trivialized gradient,
/// expressed through the group's pairing.
template <class G>
class Objective {
 public:
  using Element = typename G::Element;
  using Algebra = typename G::Algebra;

  virtual ~Objective() = default;
  virtual double value(const Element& g) const = 0;
  virtual Algebra grad(const Element& g) const = 0;
  /// Known global minimum, if any. Residues are reported relative to it.
  virtual std::optional<double> minimum() const { return std::nullopt; }
};

/// Objective built from two callables.
template <class G>
class FunctionObjective : public Objective<G> {
 public:
  using Element = typename G::Element;
  using Algebra = typename G::Algebra;

  FunctionObjective(std::function<double(const Element&)> value,
                    std::function<Algebra(const Element&)> grad,
                    std::optional<double> minimum = std::nullopt)
      : value_(std::move(value)), grad_(std::move(grad)), minimum_(minimum) {}

  double value(const Element& g) const override { return value_(g); }
  Algebra grad(const Element& g) const override { return grad_(g); }
  std::optional<double> minimum() const override { return minimum_; }

 private:
  std::function<double(const Element&)> value_;
  std::function<Algebra(const Element&)> grad_;
  std::optional<double> minimum_;
};

// ---- Rosenbrock in n dimensions ----

inline double rosenbrock_nd(const Eigen::VectorXd& x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    double a = 1.0 - x(i);
    double b = x(i + 1) - x(i) * x(i);
    s += a * a + 100.0 * b * b;
  }
  return s;
}

inline Eigen::VectorXd rosenbrock_nd_grad(const Eigen::VectorXd& x) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    double b = x(i + 1) - x(i) * x(i);
    g(i) += -2.0 * (1.0 - x(i)) - 400.0 * x(i) * b;
    g(i + 1) += 200.0 * b;
  }
  return g;
}

// ---- SO(3) objectives ----

/// ½‖R - I‖²_F = 3 - tr R, gradient = axis of the skew part of R.
class FrobeniusObjective : public Objective<SO3Group> {
 public:
  double value(const Rotation& r) const override { return 3.0 - r.trace(); }
  Vec3 grad(const Rotation& r) const override { return skew_vector(r.matrix()); }
  std::optional<double> minimum() const override { return 0.0; }
};

/// Column-major flattening of 𝟙 + R - I (all-ones matrix plus R minus identity).
inline Eigen::Matrix<double, 9, 1> rosenbrock_point(const Rotation& r) {
  Mat3 a = Mat3::Ones() + r.matrix() - Mat3::Identity();
  return Eigen::Map<const Eigen::Matrix<double, 9, 1>>(a.data());
}

/// 9-D Rosenbrock evaluated on the entries of 𝟙 + R - I.
class RestrictedRosenbrock : public Objective<SO3Group> {
 public:
  double value(const Rotation& r) const override { return rosenbrock_nd(rosenbrock_point(r)); }
  Vec3 grad(const Rotation& r) const override {
    Eigen::VectorXd g9 = rosenbrock_nd_grad(rosenbrock_point(r));
    Mat3 m = Eigen::Map<const Mat3>(g9.data());
    return skew_vector(m * r.matrix().transpose());
  }
  std::optional<double> minimum() const override { return 0.0; }
};

/// 3-D Rosenbrock composed with the chart τ⁻¹ of a retraction.
/// Minimizer τ(1,1,1). Only exp and Cayley charts are accepted.
class RetractedRosenbrock : public Objective<SO3Group> {
 public:
  explicit RetractedRosenbrock(RetractionKind kind)
      : chart_(kind, TrivializationSide::Right) {
    if (kind == RetractionKind::Skew)
      throw DomainError("retracted Rosenbrock: skw chart cannot reach the minimizer (1,1,1)");
  }

  double value(const Rotation& r) const override { return rosenbrock_nd(coordinates(r)); }
  Vec3 grad(const Rotation& r) const override {
    Vec3 w = coordinates(r);
    Vec3 g = rosenbrock_nd_grad(w);
    return 0.5 * chart_.dtau_inv(w).transpose() * g;
  }
  std::optional<double> minimum() const override { return 0.0; }

  Vec3 coordinates(const Rotation& r) const {
    try {
      return chart_.tau_inv(r);
    } catch (const SingularityError& e) {
      throw DomainError(std::string("retracted Rosenbrock: ") + e.what());
    }
  }
  Rotation minimizer() const { return chart_.tau(Vec3::Ones()); }
  RetractionKind kind() const { return chart_.kind(); }

 private:
  Retraction chart_;
};

// ---- Euclidean objectives ----

/// ½ xᵗ diag(w) x on ℝⁿ.
class QuadraticObjective : public Objective<TranslationGroup> {
 public:
  explicit QuadraticObjective(Eigen::VectorXd weights) : w_(std::move(weights)) {}
  double value(const Eigen::VectorXd& x) const override {
    return 0.5 * x.dot(w_.cwiseProduct(x));
  }
  Eigen::VectorXd grad(const Eigen::VectorXd& x) const override { return w_.cwiseProduct(x); }
  std::optional<double> minimum() const override { return 0.0; }

 private:
  Eigen::VectorXd w_;
};

class EuclideanRosenbrock : public Objective<TranslationGroup> {
 public:
  double value(const Eigen::VectorXd& x) const override { return rosenbrock_nd(x); }
  Eigen::VectorXd grad(const Eigen::VectorXd& x) const override { return rosenbrock_nd_grad(x); }
  std::optional<double> minimum() const override { return 0.0; }
};

}  // namespace lgm
