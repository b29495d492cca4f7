#include "kkwave/stationary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

namespace kkwave {

namespace {

constexpr cplx kI{0.0, 1.0};

using OdeState = std::array<cplx, 2>;  // (psi, psi')

// Potential value off-lattice: spec evaluation when available, linear
// interpolation of the samples otherwise.
cplx field_value(const PotentialField& field, double x, bool mirrored) {
    const double xx = mirrored ? -x : x;
    if (field.spec) return evaluate(*field.spec, xx);
    const SpatialGrid& g = field.grid;
    if (xx <= g.x_min() || xx >= g.x_max() - g.dx()) return cplx{};
    const double u = (xx - g.x_min()) / g.dx();
    const auto j = static_cast<std::size_t>(u);
    const double s = u - static_cast<double>(j);
    return field.samples[j] * (1.0 - s) + field.samples[j + 1] * s;
}

struct OneSided {
    cplx t, r;
};

OneSided solve_one_side(const PotentialField& field, double p, double L, double h,
                        bool mirrored) {
    namespace ode = boost::numeric::odeint;
    ode::runge_kutta_fehlberg78<OdeState, double, OdeState, double,
                                ode::array_algebra>
        stepper;

    auto rhs = [&](const OdeState& y, OdeState& dy, double x) {
        dy[0] = y[1];
        dy[1] = (field_value(field, x, mirrored) - p * p) * y[0];
    };

    // start from the transmitted wave t e^{ipx} at x = +L with t := 1;
    // rescale the incident amplitude afterwards
    OdeState y{std::polar(1.0, p * L), kI * p * std::polar(1.0, p * L)};
    const auto steps = static_cast<std::size_t>(std::ceil(2.0 * L / h));
    const double step = -2.0 * L / static_cast<double>(steps);
    double x = L;
    for (std::size_t k = 0; k < steps; ++k) {
        stepper.do_step(rhs, y, x, step);
        x += step;
    }

    const cplx eL = std::polar(1.0, p * L);
    const cplx a = (y[0] + y[1] / (kI * p)) / 2.0 * eL;        // incident
    const cplx b = (y[0] - y[1] / (kI * p)) / 2.0 / eL;        // reflected
    return {1.0 / a, b / a};
}

// Offset-stripped spectrum G0(p*) = e^{-i p* d} (dx/2pi) sum_j psi_j e^{-i p* x_j},
// spectrally accurate off-lattice evaluation through the position samples.
cplx trig_spectrum(const std::vector<cplx>& pos, const SpatialGrid& grid, double p) {
    const std::size_t n = grid.size();
    const cplx step = std::polar(1.0, -p * grid.dx());
    cplx phase{};
    cplx acc{};
    for (std::size_t j = 0; j < n; ++j) {
        if (j % 256 == 0) phase = std::polar(1.0, -p * grid.x(j));
        acc += pos[j] * phase;
        phase *= step;
    }
    return acc * (grid.dx() / (2.0 * std::numbers::pi));
}

std::vector<double> trapezoid_weights(const std::vector<double>& p) {
    std::vector<double> w(p.size(), 0.0);
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        const double half = (p[k + 1] - p[k]) / 2.0;
        w[k] += half;
        w[k + 1] += half;
    }
    return w;
}

}  // namespace

std::vector<double> default_p_grid() {
    std::vector<double> p;
    p.reserve(512);
    const std::size_t n_log = 128, n_lin = 384;
    const double lo = 0.05, mid = 1.0, hi = 10.0;
    for (std::size_t k = 0; k < n_log; ++k)
        p.push_back(lo * std::pow(mid / lo, static_cast<double>(k) /
                                                static_cast<double>(n_log)));
    for (std::size_t k = 0; k < n_lin; ++k)
        p.push_back(mid + (hi - mid) * static_cast<double>(k) /
                              static_cast<double>(n_lin - 1));
    return p;
}

ScatteringAmplitudes solve_scattering(const PotentialField& field,
                                      const std::vector<double>& p_grid) {
    ScatteringAmplitudes out;
    out.p = p_grid;
    out.t.resize(p_grid.size());
    out.r_minus.resize(p_grid.size());
    out.r_plus.resize(p_grid.size());

    const double L = field.truncation_length;
    const double h = field.grid.dx() / 4.0;
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        const double p = p_grid[i];
        if (!(p > 0.0)) throw std::invalid_argument("solve_scattering: need p > 0");
        if (L <= 0.0) {
            out.t[i] = 1.0;
            out.r_minus[i] = out.r_plus[i] = 0.0;
            continue;
        }
        const OneSided left = solve_one_side(field, p, L, h, false);
        const OneSided right = solve_one_side(field, p, L, h, true);
        out.t[i] = left.t;
        out.r_minus[i] = left.r;
        out.r_plus[i] = right.r;
    }
    return out;
}

ScatteredSpectra decompose_G1_G2(const MomentumSpectrum& g,
                                 const ScatteringAmplitudes& amps, double d) {
    std::vector<cplx> pos;
    g.grid.inverse(g.amp, pos);
    auto g0 = [&](double p) {
        return trig_spectrum(pos, g.grid, p) * std::polar(1.0, -p * d);
    };

    ScatteredSpectra out;
    out.p = amps.p;
    out.g1.resize(amps.p.size());
    out.g2.resize(amps.p.size());
    for (std::size_t i = 0; i < amps.p.size(); ++i) {
        const double p = amps.p[i];
        const cplx denom = amps.r_minus[i] * amps.r_plus[i] - amps.t[i] * amps.t[i];
        if (std::abs(denom) < 1e-10) {
            std::ostringstream msg;
            msg << "decompose_G1_G2: r-*r+ - t^2 singular at p = " << p
                << " (|denom| = " << std::abs(denom) << ")";
            throw std::runtime_error(msg.str());
        }
        const cplx fwd = g0(p) * std::polar(1.0, p * d);
        const cplx bwd = g0(-p) * std::polar(1.0, -p * d);
        out.g1[i] = fwd + bwd * amps.r_plus[i] / denom;
        out.g2[i] = -amps.t[i] * bwd / denom;
    }
    return out;
}

std::vector<cplx> reconstruct_outside(const ScatteredSpectra& spectra,
                                      const ScatteringAmplitudes& amps, double L,
                                      const std::vector<double>& x, double t) {
    const std::vector<double> w = trapezoid_weights(spectra.p);
    std::vector<cplx> out(x.size(), cplx{});
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (std::abs(x[j]) <= L)
            throw std::invalid_argument(
                "reconstruct_outside: point inside the interaction region");
        const bool left = x[j] < 0.0;
        cplx acc{};
        for (std::size_t i = 0; i < spectra.p.size(); ++i) {
            const double p = spectra.p[i];
            const cplx ep = std::polar(1.0, p * x[j]);
            const cplx em = std::conj(ep);
            cplx phi1, phi2;
            if (left) {
                phi1 = ep + amps.r_minus[i] * em;
                phi2 = amps.t[i] * em;
            } else {
                phi1 = amps.t[i] * ep;
                phi2 = em + amps.r_plus[i] * ep;
            }
            acc += w[i] * (spectra.g1[i] * phi1 + spectra.g2[i] * phi2) *
                   std::polar(1.0, -p * p * t);
        }
        out[j] = acc;
    }
    return out;
}

cplx asymptotic_probe(const MomentumSpectrum& g, const ScatteringAmplitudes* amps,
                      double v_d, double d, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("asymptotic_probe: need t > 0");
    std::vector<cplx> pos;
    g.grid.inverse(g.amp, pos);
    auto g0 = [&](double p) {
        return trig_spectrum(pos, g.grid, p) * std::polar(1.0, -p * d);
    };

    cplx bracket = g0(v_d / 2.0);
    if (amps != nullptr) {
        const double pr = -v_d / 2.0;
        const auto& pg = amps->p;
        cplx r{};
        if (pr <= pg.front()) {
            r = amps->r_minus.front();
        } else if (pr >= pg.back()) {
            r = amps->r_minus.back();
        } else {
            const auto it = std::upper_bound(pg.begin(), pg.end(), pr);
            const auto i = static_cast<std::size_t>(it - pg.begin());
            const double s = (pr - pg[i - 1]) / (pg[i] - pg[i - 1]);
            r = amps->r_minus[i - 1] * (1.0 - s) + amps->r_minus[i] * s;
        }
        bracket += r * g0(-v_d / 2.0);
    }
    return bracket * std::sqrt(std::numbers::pi / t) *
           std::polar(1.0, t * v_d * v_d / 4.0 - std::numbers::pi / 4.0);
}

}  // namespace kkwave
