#include "kkwave/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kkwave {

namespace {

double envelope_value(const std::optional<SuperGaussianEnvelope>& env, double x) {
    if (!env) return 1.0;
    return std::exp(-std::pow(std::abs(x / env->b), env->order));
}

double envelope_derivative(const std::optional<SuperGaussianEnvelope>& env, double x) {
    if (!env) return 0.0;
    const double u = x / env->b;
    const int k = env->order;
    return -static_cast<double>(k) * std::pow(std::abs(u), k - 2) * u / env->b *
           envelope_value(env, x);
}

cplx bare_value(const PotentialSpec& spec, double x) {
    return std::visit(
        [x](const auto& s) -> cplx {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GaussianBarrier>) {
                return s.v0 * std::exp(-s.alpha * s.alpha * x * x);
            } else if constexpr (std::is_same_v<T, SinglePoleKK>) {
                if (!(s.alpha > 0.0))
                    throw std::invalid_argument("SinglePoleKK: alpha must be positive");
                return s.v0 / cplx(x, s.alpha);
            } else if constexpr (std::is_same_v<T, PoschlTeller>) {
                const double n = static_cast<double>(s.n);
                const double sech = 1.0 / std::cosh(x);
                return -n * (n + 1.0) * sech * sech;
            } else {  // TabulatedPotential
                if (s.x.empty()) return cplx{};
                if (x <= s.x.front() || x >= s.x.back()) return cplx{};
                const auto it = std::upper_bound(s.x.begin(), s.x.end(), x);
                const std::size_t i = static_cast<std::size_t>(it - s.x.begin());
                const double w = (x - s.x[i - 1]) / (s.x[i] - s.x[i - 1]);
                return s.v[i - 1] * (1.0 - w) + s.v[i] * w;
            }
        },
        spec.shape);
}

double bare_real_gradient(const PotentialSpec& spec, double x) {
    return std::visit(
        [x, &spec](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GaussianBarrier>) {
                return -2.0 * s.alpha * s.alpha * x * s.v0 *
                       std::exp(-s.alpha * s.alpha * x * x);
            } else if constexpr (std::is_same_v<T, PoschlTeller>) {
                const double n = static_cast<double>(s.n);
                const double sech = 1.0 / std::cosh(x);
                return 2.0 * n * (n + 1.0) * sech * sech * std::tanh(x);
            } else if constexpr (std::is_same_v<T, TabulatedPotential>) {
                // five-point stencil on the table's own resolution
                if (s.x.size() < 2) return 0.0;
                const double h = (s.x.back() - s.x.front()) /
                                 static_cast<double>(s.x.size() - 1);
                auto f = [&](double xx) { return bare_value(spec, xx).real(); };
                return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) /
                       (12.0 * h);
            } else {
                throw std::invalid_argument("gradient: complex potential unsupported");
            }
        },
        spec.shape);
}

}  // namespace

cplx evaluate(const PotentialSpec& spec, double x) {
    return bare_value(spec, x) * envelope_value(spec.envelope, x);
}

double gradient(const PotentialSpec& spec, double x) {
    if (!is_real(spec))
        throw std::invalid_argument("gradient: complex potential unsupported");
    const double v = bare_value(spec, x).real();
    const double dv = bare_real_gradient(spec, x);
    return dv * envelope_value(spec.envelope, x) + v * envelope_derivative(spec.envelope, x);
}

bool is_real(const PotentialSpec& spec) {
    return std::visit(
        [](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SinglePoleKK>) {
                return false;
            } else if constexpr (std::is_same_v<T, TabulatedPotential>) {
                for (const auto& v : s.v)
                    if (v.imag() != 0.0) return false;
                return true;
            } else {
                return true;
            }
        },
        spec.shape);
}

namespace {

double truncation_length_of(const SpatialGrid& grid, const std::vector<cplx>& samples) {
    double peak = 0.0;
    for (const auto& v : samples) peak = std::max(peak, std::abs(v));
    if (!(peak > 0.0)) return 0.0;
    double L = 0.0;
    bool interior = false;
    // outermost sample from either end still above 1e-10 * peak
    for (std::size_t j = 0; j < samples.size(); ++j) {
        if (std::abs(samples[j]) >= 1e-10 * peak) {
            L = std::max(L, std::abs(grid.x(j)));
            interior = true;
        }
    }
    return interior ? std::min(L + grid.dx(), std::max(std::abs(grid.x_min()),
                                                       std::abs(grid.x_max())))
                    : 0.0;
}

}  // namespace

PotentialField sample(const PotentialSpec& spec, const SpatialGrid& grid) {
    PotentialField field{grid, std::vector<cplx>(grid.size()), {}, 0.0, spec};
    for (std::size_t j = 0; j < grid.size(); ++j)
        field.samples[j] = evaluate(spec, grid.x(j));
    grid.forward(field.samples, field.spectrum);
    field.truncation_length = truncation_length_of(grid, field.samples);
    return field;
}

PotentialField make_field(const SpatialGrid& grid, std::vector<cplx> samples) {
    if (samples.size() != grid.size())
        throw std::invalid_argument("make_field: sample count does not match grid");
    PotentialField field{grid, std::move(samples), {}, 0.0, std::nullopt};
    grid.forward(field.samples, field.spectrum);
    field.truncation_length = truncation_length_of(grid, field.samples);
    return field;
}

double kk_one_sidedness(const PotentialField& field) {
    double neg = 0.0, tot = 0.0;
    const auto& p = field.grid.p_values();
    for (std::size_t k = 0; k < field.spectrum.size(); ++k) {
        const double m = std::norm(field.spectrum[k]);
        tot += m;
        if (p[k] < 0.0) neg += m;
    }
    if (!(tot > 0.0)) return 0.0;  // zero potential: trivially one-sided
    return neg / tot;
}

double hilbert_pair_check(const PotentialField& field) {
    const std::size_t n = field.grid.size();
    std::vector<cplx> re(n), hre;
    for (std::size_t j = 0; j < n; ++j) re[j] = field.samples[j].real();
    std::vector<cplx> spec;
    field.grid.forward(re, spec);
    const auto& p = field.grid.p_values();
    for (std::size_t k = 0; k < n; ++k) {
        const double s = p[k] > 0.0 ? 1.0 : (p[k] < 0.0 ? -1.0 : 0.0);
        spec[k] *= cplx(0.0, -s);
    }
    field.grid.inverse(spec, hre);
    double num = 0.0, d_im = 0.0, d_h = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double im = field.samples[j].imag();
        num += std::norm(im - hre[j].real());
        d_im += im * im;
        d_h += std::norm(hre[j]);
    }
    const double denom = std::max(d_im, d_h);
    if (!(denom > 0.0)) return 0.0;
    return std::sqrt(num / denom);
}

PotentialField cycle_average(const PotentialSpec& spec,
                             const std::function<double(double)>& x0_trajectory,
                             double tau, const SpatialGrid& grid) {
    if (!(tau > 0.0)) throw std::invalid_argument("cycle_average: tau must be positive");
    PotentialField base = sample(spec, grid);
    const std::size_t n = grid.size();
    const std::size_t segments = 128;  // Simpson nodes: 2*segments + 1
    const double h = tau / static_cast<double>(2 * segments);

    std::vector<cplx> accum_spec(n, cplx{});
    const auto& p = grid.p_values();
    // Simpson weights over the shifted spectra; the shift V(x + x0) is a
    // phase ramp exp(i q x0) on the cached spectrum, exact on the lattice.
    for (std::size_t node = 0; node <= 2 * segments; ++node) {
        const double t = h * static_cast<double>(node);
        const double s = x0_trajectory(t);
        double w = (node == 0 || node == 2 * segments) ? 1.0
                   : (node % 2 == 1)                   ? 4.0
                                                       : 2.0;
        w *= h / 3.0 / tau;
        for (std::size_t k = 0; k < n; ++k)
            accum_spec[k] += w * base.spectrum[k] * std::polar(1.0, p[k] * s);
    }

    PotentialField out{grid, {}, std::move(accum_spec), 0.0, std::nullopt};
    grid.inverse(out.spectrum, out.samples);
    out.truncation_length = truncation_length_of(grid, out.samples);
    return out;
}

}  // namespace kkwave
