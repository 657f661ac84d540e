// Minimal use of the library: PHB and NAG on the Frobenius distance to the
// identity, starting from the cyclic permutation matrix.

#include <cstdio>

#include "lgm/lgm.hpp"

int main() {
  using namespace lgm;
  FrobeniusObjective objective;
  ExplicitSolver solver(RetractionKind::Exp);
  SO3Group group = solver.group();
  Rotation start = cay(Vec3(1, 1, 1));
  Strategy strategy = Strategy::constant(0.7, 0.1);

  for (MethodKind m : {MethodKind::GD, MethodKind::PHB, MethodKind::NAG}) {
    auto traj = run_method(m, group, objective, solver, start, strategy, 100);
    std::printf("%-3s residue after %zu epochs: %.3e\n", std::string(to_string(m)).c_str(),
                traj.size() - 1, traj.back().residue);
  }
}
