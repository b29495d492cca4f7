#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

namespace kkwave {

using cplx = std::complex<double>;

/// Uniform periodic 1D grid with its paired momentum lattice.
///
/// Units are ħ = 1, m = 1/2. The momentum lattice is FFT-ordered
/// (p_k = k*dp for k < n/2, then negative frequencies) and spans
/// [-π/dx, π/dx). dx*dp*n = 2π holds exactly.
///
/// Transform convention (matches the continuum 1/2π-on-forward pair):
///   G_k = (dx/2π) Σ_j ψ_j exp(-i p_k x_j)
///   ψ_j = dp     Σ_k G_k exp(+i p_k x_j)
/// Under this scaling, ∫|ψ|²dx = 2π ∫|G|²dp on the lattice (Parseval).
class SpatialGrid {
public:
    SpatialGrid(double x_min, double x_max, std::size_t n_points);

    std::size_t size() const { return n_; }
    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double dx() const { return dx_; }
    double dp() const { return dp_; }
    double p_max() const;

    double x(std::size_t j) const { return x_min_ + dx_ * static_cast<double>(j); }
    double p(std::size_t k) const;

    const std::vector<double>& x_values() const;
    const std::vector<double>& p_values() const;  // FFT order

    /// Position -> momentum amplitudes (1/2π convention above).
    void forward(const std::vector<cplx>& pos, std::vector<cplx>& mom) const;
    /// Momentum -> position amplitudes (exact inverse of forward()).
    void inverse(const std::vector<cplx>& mom, std::vector<cplx>& pos) const;

    bool operator==(const SpatialGrid& other) const { return impl_ == other.impl_; }
    bool operator!=(const SpatialGrid& other) const { return impl_ != other.impl_; }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    std::size_t n_;
    double x_min_, x_max_, dx_, dp_;
};

SpatialGrid make_grid(double x_min, double x_max, std::size_t n_points);

struct WaveFunction {
    SpatialGrid grid;
    std::vector<cplx> amp;
    double time = 0.0;
};

struct MomentumSpectrum {
    SpatialGrid grid;
    std::vector<cplx> amp;  // FFT order
    double time = 0.0;
};

/// ψ(x,0) = N exp[-(x+d)²/w² + i p0 x], unit L2 norm.
/// Throws if the packet is clipped by the grid boundary.
WaveFunction gaussian_packet(const SpatialGrid& grid, double d, double w, double p0);

MomentumSpectrum to_momentum(const WaveFunction& wf);
WaveFunction from_momentum(const MomentumSpectrum& spec);

double norm(const WaveFunction& wf);
double norm(const MomentumSpectrum& spec);
double mean_x(const WaveFunction& wf);
double mean_p(const WaveFunction& wf);
double mean_p(const MomentumSpectrum& spec);

/// Projection onto p > 0 (right) and p <= 0 (left). right + left == input
/// bit-for-bit; applying the split twice is a no-op.
std::pair<MomentumSpectrum, MomentumSpectrum> split_right_left(const MomentumSpectrum& spec);

/// Σ_{p<=0} |c|² / Σ |c|². Throws on zero norm.
double negative_momentum_fraction(const MomentumSpectrum& spec);
double negative_momentum_fraction(const WaveFunction& wf);

}  // namespace kkwave
