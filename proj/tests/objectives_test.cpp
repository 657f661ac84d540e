#include <gtest/gtest.h>

#include "support.hpp"

using namespace lgm;
using lgm::testing::fd_directional;
using lgm::testing::make_rng;
using lgm::testing::random_in_ball;
using lgm::testing::random_rotation;
using lgm::testing::random_vec;

namespace {

/// Relative mismatch between ⟨grad, Θ⟩ and the directional finite difference.
template <class Obj>
double gradient_mismatch(const Obj& obj, const Rotation& r, const Vec3& theta) {
  double analytic = SO3Group().inner(obj.grad(r), theta);
  double numeric = fd_directional(obj, r, theta);
  return std::abs(analytic - numeric) / std::max(1.0, std::abs(numeric));
}

}  // namespace

TEST(Rosenbrock, Examples) {
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(5);
  EXPECT_EQ(rosenbrock_nd(ones), 0.0);
  EXPECT_EQ(rosenbrock_nd_grad(ones), Eigen::VectorXd::Zero(5));
  Eigen::VectorXd z = Eigen::VectorXd::Zero(3);
  EXPECT_EQ(rosenbrock_nd(z), 2.0);
  EXPECT_EQ(rosenbrock_nd_grad(z), Eigen::Vector3d(-2, -2, 0));
}

TEST(Rosenbrock, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 200; ++i) {
    Eigen::VectorXd x(9);
    for (auto& v : x) v = u(rng);
    Eigen::VectorXd g = rosenbrock_nd_grad(x);
    for (int j = 0; j < 9; ++j) {
      Eigen::VectorXd p = x, m = x;
      p(j) += 1e-6;
      m(j) -= 1e-6;
      double fd = (rosenbrock_nd(p) - rosenbrock_nd(m)) / 2e-6;
      EXPECT_LT(std::abs(fd - g(j)) / std::max(1.0, std::abs(g(j))), 1e-5);
    }
  }
}

TEST(Frobenius, Examples) {
  FrobeniusObjective f;
  EXPECT_EQ(f.value(Rotation()), 0.0);
  EXPECT_EQ(f.grad(Rotation()), Vec3::Zero());
  EXPECT_NEAR(f.value(exp_so3(Vec3(0, 0, std::numbers::pi))), 4.0, 1e-15);
  Rotation p = cay(Vec3(1, 1, 1));
  EXPECT_NEAR(f.value(p), 3.0, 1e-15);
  EXPECT_LT((f.grad(p) - Vec3(0.5, 0.5, 0.5)).norm(), 1e-15);
}

TEST(Frobenius, ValueIdentityAndGradient) {
  auto rng = make_rng(52);
  FrobeniusObjective f;
  for (int i = 0; i < 200; ++i) {
    Rotation r = random_rotation(rng);
    EXPECT_NEAR(f.value(r), 0.5 * (r.matrix() - Mat3::Identity()).squaredNorm(), 1e-12);
    EXPECT_LT(gradient_mismatch(f, r, random_vec(rng)), 1e-4);
  }
}

TEST(RestrictedRosenbrock, Examples) {
  RestrictedRosenbrock f;
  EXPECT_EQ(f.value(Rotation()), 0.0);
  EXPECT_LT(f.grad(Rotation()).norm(), 1e-12);
  Eigen::VectorXd cols(9);
  cols << 0, 2, 1, 1, 0, 2, 2, 1, 0;
  EXPECT_NEAR(f.value(cay(Vec3(1, 1, 1))), rosenbrock_nd(cols), 1e-12);
}

TEST(RestrictedRosenbrock, GradientMatchesFiniteDifferences) {
  auto rng = make_rng(53);
  RestrictedRosenbrock f;
  for (int i = 0; i < 200; ++i) {
    Rotation r = random_rotation(rng);
    EXPECT_LT(gradient_mismatch(f, r, random_vec(rng)), 1e-4);
  }
}

TEST(RetractedRosenbrock, Examples) {
  for (auto kind : {RetractionKind::Exp, RetractionKind::Cayley}) {
    RetractedRosenbrock f(kind);
    EXPECT_LT(f.value(f.minimizer()), 1e-24);
    EXPECT_LT(f.grad(f.minimizer()).norm(), 1e-12);
    EXPECT_NEAR(f.value(Rotation()), 2.0, 1e-15);
  }
  EXPECT_THROW(RetractedRosenbrock(RetractionKind::Skew), DomainError);
  EXPECT_THROW(RetractedRosenbrock(RetractionKind::Exp).value(exp_so3(Vec3(0, 0, std::numbers::pi))), DomainError);
}

TEST(RetractedRosenbrock, GradientMatchesFiniteDifferences) {
  auto rng = make_rng(54);
  for (auto kind : {RetractionKind::Exp, RetractionKind::Cayley}) {
    RetractedRosenbrock f(kind);
    for (int i = 0; i < 200; ++i) {
      Rotation r = exp_so3(random_in_ball(rng, 2.5));
      EXPECT_LT(gradient_mismatch(f, r, random_vec(rng)), 1e-4);
    }
  }
}

// The gradient as a transposed chart derivative, assembled through the
// adjoint relation of the tangent maps.
TEST(RetractedRosenbrock, ChainThroughAdjointRelation) {
  auto rng = make_rng(55);
  for (auto kind : {RetractionKind::Exp, RetractionKind::Cayley}) {
    RetractedRosenbrock f(kind);
    Retraction right(kind), left(kind, TrivializationSide::Left);
    for (int i = 0; i < 200; ++i) {
      Vec3 w = random_in_ball(rng, 2.0);
      Rotation r = right.tau(w);
      Vec3 g3 = rosenbrock_nd_grad(w);
      // dτ_R(w) = Ad_{τ(w)} dτ_R(-w), and dτ_L(w) = dτ_R(-w).
      Mat3 dtau_right = r.matrix() * left.dtau(w);
      Vec3 assembled = 0.5 * dtau_right.inverse().transpose() * g3;
      EXPECT_LT((f.grad(r) - assembled).norm(), 1e-10 * std::max(1.0, assembled.norm()));
    }
  }
}
