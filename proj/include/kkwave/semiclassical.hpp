#pragma once

#include <functional>
#include <vector>

#include "kkwave/forces.hpp"
#include "kkwave/potentials.hpp"
#include "kkwave/propagators.hpp"

namespace kkwave {

struct ClassicalState {
    double x = 0.0;
    double p = 0.0;
    double t = 0.0;
};

/// RK4 on the m = 1/2 Newton equations: dx/dt = 2p, dp/dt = F(t) - V'(x).
/// One state per step, including t = 0.
std::vector<ClassicalState> newton_evolve(const PotentialSpec& potential,
                                          const ForceSpec& force, double x_init,
                                          double p_init, double dt, double t_final);

/// X0(t) = -d + x0(t): where the force alone would carry a particle at rest.
std::function<double(double)> force_only_trajectory(const ForceSpec& force, double d);

/// max over interior strobes of |d<x>/dt - 2<p>| (central differences).
/// Requires a Hermitian-potential trajectory.
double ehrenfest_residual(const Trajectory& trajectory);

}  // namespace kkwave
