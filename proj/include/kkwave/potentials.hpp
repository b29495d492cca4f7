#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "kkwave/grid.hpp"

namespace kkwave {

struct GaussianBarrier {
    double v0;
    double alpha;  // V(x) = v0 exp(-alpha² x²)
};

/// V(x) = v0 / (x + i alpha): purely dissipative for v0, alpha > 0,
/// with one-sided Fourier spectrum (Kramers-Kronig).
struct SinglePoleKK {
    double v0;
    double alpha;
};

/// V(x) = -n(n+1) sech²(x) (reflectionless for integer n >= 1).
struct PoschlTeller {
    int n = 1;
};

struct TabulatedPotential {
    std::vector<double> x;
    std::vector<cplx> v;
};

struct SuperGaussianEnvelope {
    double b = 60.0;
    int order = 4;  // exp[-(x/b)^order]
};

struct PotentialSpec {
    std::variant<GaussianBarrier, SinglePoleKK, PoschlTeller, TabulatedPotential> shape;
    std::optional<SuperGaussianEnvelope> envelope;
};

/// Potential value at x, envelope included. Tabulated specs interpolate
/// linearly and are zero outside their tabulated range.
cplx evaluate(const PotentialSpec& spec, double x);

/// d/dx of the enveloped potential. Analytic for GaussianBarrier and
/// PoschlTeller; cubic finite differences on the table otherwise.
double gradient(const PotentialSpec& spec, double x);

bool is_real(const PotentialSpec& spec);

struct PotentialField {
    SpatialGrid grid;
    std::vector<cplx> samples;
    std::vector<cplx> spectrum;  // FFT order, same 1/2π convention as the grid transforms
    double truncation_length = 0.0;
    std::optional<PotentialSpec> spec;  // kept for off-lattice evaluation
};

PotentialField sample(const PotentialSpec& spec, const SpatialGrid& grid);
PotentialField make_field(const SpatialGrid& grid, std::vector<cplx> samples);

/// Σ_{q<0} |Ṽ|² / Σ_q |Ṽ|².  Zero potential reports 0.
double kk_one_sidedness(const PotentialField& field);

/// Relative L2 residual between Im V and the spectral Hilbert transform of Re V.
double hilbert_pair_check(const PotentialField& field);

/// V^(av)(x) = (1/tau) ∫₀^tau V(x + x0(t)) dt, composite Simpson with at
/// least 64 nodes per cycle; the shift is applied spectrally.
PotentialField cycle_average(const PotentialSpec& spec,
                             const std::function<double(double)>& x0_trajectory,
                             double tau, const SpatialGrid& grid);

}  // namespace kkwave
