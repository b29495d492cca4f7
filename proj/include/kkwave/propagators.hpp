#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kkwave/forces.hpp"
#include "kkwave/grid.hpp"
#include "kkwave/potentials.hpp"

namespace kkwave {

/// Run aborted because the packet reached the boundary band of the
/// periodic domain (the sawtooth coordinate would corrupt the force term).
struct DomainGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double suggested)
        : std::runtime_error(what), suggested_dt(suggested) {}
    double suggested_dt;
};

struct RunMeta {
    std::string solver;
    double dt = 0.0;
    double t_final = 0.0;
    double strobe = 0.0;
    bool hermitian = true;
};

struct Trajectory {
    std::vector<WaveFunction> snapshots;  // strictly increasing .time, shared grid
    RunMeta meta;

    const WaveFunction& at_time(double t, double tol = 1e-9) const;
};

struct SplitStepOptions {
    double convergence_tol = 0.0;   // >0 enables the step-halving estimator
    bool boundary_guard = true;     // abort when |ψ| grows in the outer 10% band
    double guard_level = 1e-8;
};

/// Strang splitting for i ψ_t = -ψ_xx + V(x)ψ - F(t)xψ.
/// Position-diagonal half steps carry exp[-i(V - F x)dt/2] with the force
/// sampled at the midpoint of each half step; the kinetic step is exact in
/// momentum space. Global error O(dt²).
Trajectory split_step_evolve(const WaveFunction& wf0, const PotentialField& potential,
                             const ForceSpec& force, double dt, double t_final,
                             double strobe, const SplitStepOptions& opts = {});

/// Exact V = 0 evolution: each Gordon-Volkov mode picks up the phase
/// exp[-i ∫₀^t P²(p,ξ)dξ] and the common momentum shift exp[i Δ(t) x].
WaveFunction gordon_volkov_evolve(const MomentumSpectrum& g, const ForceSpec& force,
                                  double t);

/// RK4 integration of the momentum-space amplitudes c(p,t) of the
/// Gordon-Volkov expansion: i ∂c/∂t = ∫dq c(q) Ṽ(p-q) exp[iφ(p,q,t)],
/// with the q-integral evaluated as a spectral convolution (trapezoidal
/// on the periodic momentum lattice) per stage.
std::vector<MomentumSpectrum> momentum_space_evolve(const MomentumSpectrum& c0,
                                                    const PotentialField& potential,
                                                    const ForceSpec& force, double dt,
                                                    double t_final, double strobe);

/// Kramers-Henneberger frame: split-step with the rigidly translated
/// potential V(x + x0(t)) and no force, mapped back to the lab frame at
/// strobe times (shift by x0, boost by the impulse, Volkov phase).
Trajectory kh_frame_evolve(const WaveFunction& wf0, const PotentialField& potential,
                           const ForceSpec& force, double dt, double t_final,
                           double strobe, const SplitStepOptions& opts = {});

/// KH-frame propagation for an externally prescribed trajectory x0(t);
/// output stays in the translated frame.
Trajectory kh_frame_evolve_x0(const WaveFunction& wf0, const PotentialField& potential,
                              const std::function<double(double)>& x0, double dt,
                              double t_final, double strobe,
                              const SplitStepOptions& opts = {});

struct DilationOptions {
    double beta_min = 0.25;
    double beta_max = 4.0;
};

/// Momentum-space evolution under H = p² + (α(t)/2)(x p + p x) + V(x),
/// integrated on the co-dilated lattice q' = q exp(∫₀^t α) where the
/// rescaling term is diagonal-free; interpolation back to the fixed
/// lattice happens only at strobe times.
std::vector<MomentumSpectrum> dilation_evolve(const MomentumSpectrum& c0,
                                              const std::function<double(double)>& alpha,
                                              const PotentialSpec& potential, double dt,
                                              double t_final, double strobe,
                                              const DilationOptions& opts = {});

/// Free dispersing Gaussian in m = 1/2 units; analytic reference for tests.
WaveFunction free_gaussian_reference(const SpatialGrid& grid, double d, double w,
                                     double p0, double t);

double l2_distance(const WaveFunction& a, const WaveFunction& b);
double rel_l2_distance(const WaveFunction& a, const WaveFunction& b);

}  // namespace kkwave
