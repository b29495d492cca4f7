#pragma once

#include <vector>

#include "kkwave/grid.hpp"
#include "kkwave/potentials.hpp"

namespace kkwave {

/// t, r_minus (left incidence), r_plus (right incidence) on a positive-p grid.
struct ScatteringAmplitudes {
    std::vector<double> p;
    std::vector<cplx> t;
    std::vector<cplx> r_minus;
    std::vector<cplx> r_plus;
};

/// 512 points on [0.05, 10]: log-spaced below 1, linear above.
std::vector<double> default_p_grid();

/// Integrates psi'' = (V - p^2) psi across the truncation interval [-L, L]
/// from right-asymptotic data t(p) e^{ipx} and matches plane waves at -L.
/// r_plus comes from the mirrored potential. Throws on p <= 0.
ScatteringAmplitudes solve_scattering(const PotentialField& field,
                                      const std::vector<double>& p_grid);

/// Spectral amplitudes over the scattering-state basis, p > 0 only.
struct ScatteredSpectra {
    std::vector<double> p;
    std::vector<cplx> g1;
    std::vector<cplx> g2;
};

/// G1(p) = G0(p)e^{ipd} + G0(-p) r_+ e^{-ipd} / (r_- r_+ - t^2),
/// G2(p) = -t G0(-p)e^{-ipd} / (r_- r_+ - t^2), where G0(p) is the
/// offset-stripped packet spectrum (packet centered at x = -d).
/// Throws when |r_- r_+ - t^2| < 1e-10 at some grid point.
ScatteredSpectra decompose_G1_G2(const MomentumSpectrum& g, const ScatteringAmplitudes& amps,
                                 double d);

/// Field at time t evaluated from the scattering-state superposition, valid
/// only outside the interaction region (|x| > L); trapezoid over the p grid.
std::vector<cplx> reconstruct_outside(const ScatteredSpectra& spectra,
                                      const ScatteringAmplitudes& amps, double L,
                                      const std::vector<double>& x, double t);

/// Leading stationary-phase amplitude on the probe line x = -d + v_d t:
/// sqrt(pi/t) [G0(v_d/2) + r_-(-v_d/2) G0(-v_d/2)] e^{i t v_d^2/4 - i pi/4};
/// the bracket reduces to G0(v_d/2) when amps is null.
cplx asymptotic_probe(const MomentumSpectrum& g, const ScatteringAmplitudes* amps,
                      double v_d, double d, double t);

}  // namespace kkwave
