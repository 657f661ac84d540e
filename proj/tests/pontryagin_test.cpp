#include <gtest/gtest.h>

#include "support.hpp"

using namespace lgm;
using lgm::testing::make_rng;
using lgm::testing::max_abs;
using lgm::testing::random_in_ball;
using lgm::testing::random_rotation;

namespace {

constexpr double kRho = 0.7, kEta = 0.01;

PotentialLagrangian<SO3Group> dilated(const SO3Group& G, std::shared_ptr<const Objective<SO3Group>> f) {
  auto a = [](int k) { return std::pow(kRho, -k); };
  auto b = [](int k) { return 0.5 * kEta * std::pow(kRho, -k); };
  return PotentialLagrangian<SO3Group>(G, std::move(f), a, b, b);
}

}  // namespace

TEST(PotentialLagrangian, MomentumMatchesFiniteDifferences) {
  auto rng = make_rng(61);
  SO3Group G;
  auto L = dilated(G, std::make_shared<FrobeniusObjective>());
  for (int i = 0; i < 50; ++i) {
    Rotation g = random_rotation(rng);
    Vec3 xi = random_in_ball(rng, 1.0);
    Vec3 d = L.d_xi(3, g, xi);
    for (int j = 0; j < 3; ++j) {
      Vec3 e = Vec3::Zero();
      e(j) = 1e-6;
      double fd = (L.value(3, g, xi + e) - L.value(3, g, xi - e)) / 2e-6;
      EXPECT_NEAR(G.inner(d, Vec3::Unit(j)), fd, 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(PotentialLagrangian, GroupDerivativeMatchesFiniteDifferences) {
  auto rng = make_rng(62);
  SO3Group G;
  auto L = dilated(G, std::make_shared<RestrictedRosenbrock>());
  for (int i = 0; i < 50; ++i) {
    Rotation g = exp_so3(random_in_ball(rng, 0.5));
    Vec3 xi = random_in_ball(rng, 0.3);
    Vec3 d = L.d_g(2, g, xi);
    for (int j = 0; j < 3; ++j) {
      Vec3 e = 1e-6 * Vec3::Unit(j);
      double fd = (L.value(2, g * exp_so3(e), xi) - L.value(2, g * exp_so3(-e), xi)) / 2e-6;
      EXPECT_NEAR(G.inner(d, Vec3::Unit(j)), fd, 1e-4 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(ForwardStep, FreeLagrangianOnLineKeepsVelocity) {
  TranslationGroup T(2);
  KineticLagrangian<TranslationGroup> L(T);
  Eigen::VectorXd xi(2);
  xi << 0.3, -0.2;
  PontryaginState<TranslationGroup> s{Eigen::VectorXd::Zero(2), xi, xi};
  for (int k = 0; k < 10; ++k) {
    auto next = forward_step(T, L, s, k);
    EXPECT_LT((next.xi - xi).norm(), 1e-14);
    EXPECT_LT((next.g - s.g - xi).norm(), 1e-14);
    s = next;
  }
}

TEST(ForwardStep, SatisfiesSchemeEquations) {
  SO3Group G;
  auto L = dilated(G, std::make_shared<FrobeniusObjective>());
  auto traj = integrate_forward(G, L, rest_state(G, L, cay(Vec3(1, 1, 1))), 30);
  for (int k = 0; k < 30; ++k) {
    auto r = forward_scheme_residual(G, L, traj[k], traj[k + 1], k);
    EXPECT_LT(r[0], 1e-12);
    EXPECT_LT(r[1], 1e-12);
    EXPECT_LT(r[2], 1e-12 * std::max(1.0, traj[k + 1].p.norm()));
  }
}

TEST(ForwardStep, EquivalentToHeavyBall) {
  SO3Group G;
  auto f = std::make_shared<FrobeniusObjective>();
  auto L = dilated(G, f);
  Rotation g0 = cay(Vec3(1, 1, 1));
  auto traj = integrate_forward(G, L, rest_state(G, L, g0), 50);
  auto s = Strategy::constant(kRho, kEta);
  ExplicitSolver solver;
  auto phb = run_momentum(G, *f, solver, g0, s, 0, 50);
  for (int k = 0; k <= 50; ++k) EXPECT_LT(max_abs(traj[k].g.matrix() - phb[k].g.matrix()), 1e-9);
}

TEST(ForwardStep, DiscreteEulerLagrangeResidual) {
  SO3Group G;
  auto L = dilated(G, std::make_shared<FrobeniusObjective>());
  auto traj = integrate_forward(G, L, rest_state(G, L, cay(Vec3(1, 1, 1))), 40);
  // Residuals carry the weight a_k of the Lagrangian; compare them relative to it.
  auto analytic = pontryagin_del_residuals(G, L, traj);
  auto numeric = pontryagin_del_residuals_numeric(G, L, traj);
  for (std::size_t j = 0; j < analytic.size(); ++j) {
    EXPECT_LT(analytic[j] / L.a(j + 1), 1e-10);
    EXPECT_LT(numeric[j] / L.a(j + 1), 1e-6);
  }
}

TEST(ForwardStep, LeftInvariantCoadjointTransport) {
  auto rng = make_rng(63);
  SO3Group G;
  KineticLagrangian<SO3Group> L(G, Vec3(1.0, 2.0, 3.5).asDiagonal().toDenseMatrix());
  Vec3 xi0(0.3, -0.1, 0.2);
  auto traj = integrate_forward(G, L, {random_rotation(rng), xi0, L.d_xi(0, Rotation(), xi0)}, 100);
  EXPECT_LT(coadjoint_invariant_check(G, traj), 1e-10);
  for (int k = 0; k < 100; ++k) {
    Vec3 P0 = transported_momentum(G, traj[k]), P1 = transported_momentum(G, traj[k + 1]);
    EXPECT_LT((P1 - G.ad_transpose(G.tau(traj[k].xi), P0)).norm(), 1e-11);
  }
  auto rest = integrate_forward(G, L, {Rotation(), Vec3::Zero(), Vec3::Zero()}, 10);
  EXPECT_EQ(coadjoint_invariant_check(G, rest), 0.0);

  TranslationGroup T(3);
  KineticLagrangian<TranslationGroup> LT(T);
  Eigen::VectorXd v = Eigen::Vector3d(0.2, 0.1, -0.4);
  auto line = integrate_forward(T, LT, {Eigen::VectorXd::Zero(3), v, v}, 20);
  for (const auto& st : line) EXPECT_EQ(transported_momentum(T, st), v);
}

TEST(BackwardStep, SatisfiesSchemeEquations) {
  SO3Group G;
  auto L = dilated(G, std::make_shared<FrobeniusObjective>());
  PontryaginState<SO3Group> next{cay(Vec3(0.5, 0.4, 0.3)), Vec3(-0.02, 0.01, 0.03), Vec3::Zero()};
  next.p = L.d_xi(6, next.g, next.xi);
  auto prev = backward_step_reverse(G, L, next, 5);
  auto r = backward_scheme_residual(G, L, prev, next, 5);
  EXPECT_LT(r[0], 1e-12);
  EXPECT_LT(r[1], 1e-12);
  EXPECT_LT(r[2], 1e-12 * std::max(1.0, next.p.norm()));
}

TEST(BackwardStep, ScalarQuadraticMatchesHand) {
  // l̄_k(x, ξ) = ½ξ² - ½βx² - ½β(x+ξ)² on the line: the backward scheme reads
  // ξ_{k+1} = ξ_k + ∂_x l̄_k(x_k, ξ_k) - ∂_ξ l̄_k(x_k, ξ_k) + ξ_k with p = ∂_ξ l̄.
  TranslationGroup T(1);
  const double beta = 0.1;
  auto q = std::make_shared<QuadraticObjective>(Eigen::VectorXd::Constant(1, 1.0));
  PotentialLagrangian<TranslationGroup> L(T, q, [](int) { return 1.0; }, [&](int) { return beta; },
                                         [&](int) { return beta; });
  const double x0 = 0.8, xi0 = -0.05;
  const double p0 = xi0 - beta * (x0 + xi0);
  const double q1 = p0 + (-beta * x0 - beta * (x0 + xi0));
  // Solve ξ₁ - β(x₁ + ξ₁) = q1 with x₁ = x0 + ξ₁.
  const double xi1 = (q1 + beta * x0) / (1 - 2 * beta);
  PontryaginState<TranslationGroup> next{Eigen::VectorXd::Constant(1, x0 + xi1),
                                         Eigen::VectorXd::Constant(1, xi1), Eigen::VectorXd::Zero(1)};
  next.p = L.d_xi(1, next.g, next.xi);
  auto prev = backward_step_reverse(T, L, next, 0);
  EXPECT_NEAR(prev.g(0), x0, 1e-13);
  EXPECT_NEAR(prev.xi(0), xi0, 1e-12);
  EXPECT_NEAR(prev.p(0), p0, 1e-12);
}

TEST(BackwardStep, InvertsForwardOnFreeAbelianSystem) {
  TranslationGroup T(2);
  KineticLagrangian<TranslationGroup> L(T);
  Eigen::VectorXd g(2), xi(2);
  g << 1.0, -2.0;
  xi << 0.25, 0.5;
  PontryaginState<TranslationGroup> s{g, xi, xi};
  auto back = backward_step_reverse(T, L, s, 3);
  auto round = forward_step(T, L, back, 2);
  EXPECT_LT((round.g - s.g).norm(), 1e-12);
  EXPECT_LT((round.xi - s.xi).norm(), 1e-12);
  EXPECT_LT((round.p - s.p).norm(), 1e-12);
}

// Forward and backward Euler are adjoint schemes, not inverses of each other:
// on a non-abelian group or with a potential the round trip moves the state.
TEST(BackwardStep, IsNotTheInverseOfForwardInGeneral) {
  SO3Group G;
  auto L = dilated(G, std::make_shared<FrobeniusObjective>());
  PontryaginState<SO3Group> s{cay(Vec3(0.5, 0.4, 0.3)), Vec3(-0.2, 0.1, 0.3), Vec3::Zero()};
  s.p = L.d_xi(6, s.g, s.xi);
  auto round = forward_step(G, L, backward_step_reverse(G, L, s, 5), 5);
  EXPECT_GT(max_abs(round.g.matrix() - s.g.matrix()) + (round.xi - s.xi).norm(), 1e-6);
}

TEST(Pontryagin, RejectsLeftSide) {
  SO3Group G(Retraction::exp(TrivializationSide::Left));
  KineticLagrangian<SO3Group> L(G);
  EXPECT_THROW(forward_step(G, L, {Rotation(), Vec3::Zero(), Vec3::Zero()}, 0), DomainError);
}
