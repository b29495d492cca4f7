#include "kkwave/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace kkwave {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// FFTW's planner is not thread safe; executing a plan on fresh arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct SpatialGrid::Impl {
    std::vector<double> x;
    std::vector<double> p;         // FFT order
    std::vector<cplx> phase_fwd;   // exp(-i p_k x_min)
    std::vector<cplx> phase_inv;   // exp(+i p_k x_min)
    fftw_plan plan_fwd = nullptr;
    fftw_plan plan_inv = nullptr;
    double scale_fwd = 0.0;        // dx/2π
    double scale_inv = 0.0;        // dp

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (plan_fwd) fftw_destroy_plan(plan_fwd);
        if (plan_inv) fftw_destroy_plan(plan_inv);
    }
};

SpatialGrid::SpatialGrid(double x_min, double x_max, std::size_t n_points)
    : n_(n_points), x_min_(x_min), x_max_(x_max) {
    if (!(x_max > x_min))
        throw std::invalid_argument("SpatialGrid: x_max must exceed x_min");
    if (!is_power_of_two(n_points) || n_points < 16)
        throw std::invalid_argument("SpatialGrid: n_points must be a power of two >= 16");

    const double length = x_max - x_min;
    dx_ = length / static_cast<double>(n_points);
    dp_ = kTwoPi / length;

    auto impl = std::make_shared<Impl>();
    impl->x.resize(n_);
    impl->p.resize(n_);
    impl->phase_fwd.resize(n_);
    impl->phase_inv.resize(n_);
    for (std::size_t j = 0; j < n_; ++j)
        impl->x[j] = x_min_ + dx_ * static_cast<double>(j);
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(n_ / 2);
    for (std::size_t k = 0; k < n_; ++k) {
        std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(k);
        if (idx >= half) idx -= static_cast<std::ptrdiff_t>(n_);
        impl->p[k] = dp_ * static_cast<double>(idx);
        impl->phase_fwd[k] = std::polar(1.0, -impl->p[k] * x_min_);
        impl->phase_inv[k] = std::polar(1.0, impl->p[k] * x_min_);
    }
    impl->scale_fwd = dx_ / kTwoPi;
    impl->scale_inv = dp_;

    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        std::vector<cplx> in(n_), out(n_);
        auto* fin = reinterpret_cast<fftw_complex*>(in.data());
        auto* fout = reinterpret_cast<fftw_complex*>(out.data());
        impl->plan_fwd = fftw_plan_dft_1d(static_cast<int>(n_), fin, fout,
                                          FFTW_FORWARD, FFTW_ESTIMATE);
        impl->plan_inv = fftw_plan_dft_1d(static_cast<int>(n_), fin, fout,
                                          FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    impl_ = std::move(impl);
}

double SpatialGrid::p_max() const { return std::numbers::pi / dx_; }

double SpatialGrid::p(std::size_t k) const { return impl_->p[k]; }

const std::vector<double>& SpatialGrid::x_values() const { return impl_->x; }
const std::vector<double>& SpatialGrid::p_values() const { return impl_->p; }

void SpatialGrid::forward(const std::vector<cplx>& pos, std::vector<cplx>& mom) const {
    if (pos.size() != n_) throw std::invalid_argument("forward: size mismatch");
    mom.resize(n_);
    auto* fin = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(pos.data()));
    auto* fout = reinterpret_cast<fftw_complex*>(mom.data());
    fftw_execute_dft(impl_->plan_fwd, fin, fout);
    for (std::size_t k = 0; k < n_; ++k)
        mom[k] *= impl_->scale_fwd * impl_->phase_fwd[k];
}

void SpatialGrid::inverse(const std::vector<cplx>& mom, std::vector<cplx>& pos) const {
    if (mom.size() != n_) throw std::invalid_argument("inverse: size mismatch");
    std::vector<cplx> tmp(n_);
    for (std::size_t k = 0; k < n_; ++k)
        tmp[k] = mom[k] * impl_->phase_inv[k];
    pos.resize(n_);
    auto* fin = reinterpret_cast<fftw_complex*>(tmp.data());
    auto* fout = reinterpret_cast<fftw_complex*>(pos.data());
    fftw_execute_dft(impl_->plan_inv, fin, fout);
    for (std::size_t j = 0; j < n_; ++j)
        pos[j] *= impl_->scale_inv;
}

SpatialGrid make_grid(double x_min, double x_max, std::size_t n_points) {
    return SpatialGrid(x_min, x_max, n_points);
}

WaveFunction gaussian_packet(const SpatialGrid& grid, double d, double w, double p0) {
    if (!(w > 0.0)) throw std::invalid_argument("gaussian_packet: w must be positive");
    WaveFunction wf{grid, std::vector<cplx>(grid.size()), 0.0};
    double peak = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.x(j);
        const double env = std::exp(-(x + d) * (x + d) / (w * w));
        wf.amp[j] = std::polar(env, p0 * x);
        peak = std::max(peak, env);
    }
    const double edge = std::max(std::abs(wf.amp.front()), std::abs(wf.amp.back()));
    if (!(peak > 0.0) || edge >= 1e-12 * peak)
        throw std::invalid_argument("gaussian_packet: packet clipped by grid boundary");
    const double n = norm(wf);
    for (auto& a : wf.amp) a /= n;
    return wf;
}

MomentumSpectrum to_momentum(const WaveFunction& wf) {
    MomentumSpectrum spec{wf.grid, {}, wf.time};
    wf.grid.forward(wf.amp, spec.amp);
    return spec;
}

WaveFunction from_momentum(const MomentumSpectrum& spec) {
    WaveFunction wf{spec.grid, {}, spec.time};
    spec.grid.inverse(spec.amp, wf.amp);
    return wf;
}

double norm(const WaveFunction& wf) {
    double s = 0.0;
    for (const auto& a : wf.amp) s += std::norm(a);
    return std::sqrt(s * wf.grid.dx());
}

double norm(const MomentumSpectrum& spec) {
    double s = 0.0;
    for (const auto& a : spec.amp) s += std::norm(a);
    return std::sqrt(s * spec.grid.dp() * kTwoPi);
}

double mean_x(const WaveFunction& wf) {
    double s = 0.0, w = 0.0;
    for (std::size_t j = 0; j < wf.amp.size(); ++j) {
        const double m = std::norm(wf.amp[j]);
        s += m * wf.grid.x(j);
        w += m;
    }
    if (!(w > 0.0)) throw std::domain_error("mean_x: zero-norm field");
    return s / w;
}

double mean_p(const MomentumSpectrum& spec) {
    double s = 0.0, w = 0.0;
    const auto& p = spec.grid.p_values();
    for (std::size_t k = 0; k < spec.amp.size(); ++k) {
        const double m = std::norm(spec.amp[k]);
        s += m * p[k];
        w += m;
    }
    if (!(w > 0.0)) throw std::domain_error("mean_p: zero-norm field");
    return s / w;
}

double mean_p(const WaveFunction& wf) { return mean_p(to_momentum(wf)); }

std::pair<MomentumSpectrum, MomentumSpectrum> split_right_left(const MomentumSpectrum& spec) {
    MomentumSpectrum right{spec.grid, std::vector<cplx>(spec.amp.size(), cplx{}), spec.time};
    MomentumSpectrum left = right;
    const auto& p = spec.grid.p_values();
    for (std::size_t k = 0; k < spec.amp.size(); ++k) {
        if (p[k] > 0.0)
            right.amp[k] = spec.amp[k];
        else
            left.amp[k] = spec.amp[k];  // p = 0 goes with the left/non-positive half
    }
    return {std::move(right), std::move(left)};
}

double negative_momentum_fraction(const MomentumSpectrum& spec) {
    double neg = 0.0, tot = 0.0;
    const auto& p = spec.grid.p_values();
    for (std::size_t k = 0; k < spec.amp.size(); ++k) {
        const double m = std::norm(spec.amp[k]);
        tot += m;
        if (p[k] <= 0.0) neg += m;
    }
    if (!(tot > 0.0)) throw std::domain_error("negative_momentum_fraction: zero-norm field");
    return neg / tot;
}

double negative_momentum_fraction(const WaveFunction& wf) {
    return negative_momentum_fraction(to_momentum(wf));
}

}  // namespace kkwave
