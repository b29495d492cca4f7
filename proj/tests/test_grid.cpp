#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kkwave/grid.hpp"

using namespace kkwave;

namespace {

// closed-form spectrum of gaussian_packet under the dx/2pi forward convention
cplx packet_spectrum(double d, double w, double p0, double p) {
    const double nrm = std::pow(2.0 / (std::numbers::pi * w * w), 0.25);
    const double mag = nrm * std::sqrt(std::numbers::pi) * w /
                       (2.0 * std::numbers::pi) *
                       std::exp(-(p - p0) * (p - p0) * w * w / 4.0);
    return mag * std::polar(1.0, -(p0 - p) * d);
}

}  // namespace

TEST_CASE("lattice geometry") {
    const SpatialGrid g = make_grid(-51.2, 51.2, 1024);
    CHECK(g.size() == 1024);
    CHECK(g.dx() == doctest::Approx(0.1));
    CHECK(g.dx() * g.dp() * 1024 == doctest::Approx(2.0 * std::numbers::pi));
    CHECK(g.p(0) == 0.0);
    CHECK(g.p(1) == doctest::Approx(g.dp()));
    CHECK(g.p(512) < 0.0);  // most negative frequency sits in the second half
    CHECK(g.p(1023) == doctest::Approx(-g.dp()));
    CHECK(g.x(0) == doctest::Approx(-51.2));
}

TEST_CASE("forward/inverse roundtrip") {
    const SpatialGrid g = make_grid(-20.0, 20.0, 256);
    std::vector<cplx> pos(256), mom, back;
    for (std::size_t j = 0; j < 256; ++j)
        pos[j] = cplx(std::sin(0.3 * g.x(j)), std::cos(0.7 * g.x(j)));
    g.forward(pos, mom);
    g.inverse(mom, back);
    for (std::size_t j = 0; j < 256; ++j)
        CHECK(std::abs(back[j] - pos[j]) < 1e-13);
}

TEST_CASE("gaussian packet moments and clipping") {
    const SpatialGrid g = make_grid(-102.4, 102.4, 2048);
    const WaveFunction wf = gaussian_packet(g, 30.0, 5.0, 1.5);
    CHECK(norm(wf) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean_x(wf) == doctest::Approx(-30.0).epsilon(1e-9));
    CHECK(mean_p(wf) == doctest::Approx(1.5).epsilon(1e-9));
    CHECK_THROWS(gaussian_packet(g, 100.0, 5.0, 1.5));  // clipped at the edge
}

TEST_CASE("packet spectrum matches the closed form") {
    const SpatialGrid g = make_grid(-102.4, 102.4, 2048);
    const double d = 25.0, w = 3.0, p0 = 2.0;
    const MomentumSpectrum spec = to_momentum(gaussian_packet(g, d, w, p0));
    for (std::size_t k : {std::size_t{0}, std::size_t{5}, std::size_t{40},
                          std::size_t{80}, std::size_t{2000}}) {
        const cplx expect = packet_spectrum(d, w, p0, g.p(k));
        CHECK(std::abs(spec.amp[k] - expect) < 1e-12);
    }
    // Parseval under the 1/2pi convention
    CHECK(norm(spec) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("from_momentum inverts to_momentum") {
    const SpatialGrid g = make_grid(-51.2, 51.2, 512);
    const WaveFunction wf = gaussian_packet(g, 10.0, 2.0, 1.0);
    const WaveFunction back = from_momentum(to_momentum(wf));
    for (std::size_t j = 0; j < g.size(); ++j)
        CHECK(std::abs(back.amp[j] - wf.amp[j]) < 1e-13);
}

TEST_CASE("right/left split is a partition and idempotent") {
    const SpatialGrid g = make_grid(-51.2, 51.2, 512);
    const MomentumSpectrum spec = to_momentum(gaussian_packet(g, 10.0, 2.0, 0.5));
    const auto [right, left] = split_right_left(spec);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(right.amp[k] + left.amp[k] == spec.amp[k]);
        if (g.p(k) > 0.0)
            CHECK(left.amp[k] == cplx{});
        else
            CHECK(right.amp[k] == cplx{});
    }
    const auto [rr, rl] = split_right_left(right);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(rr.amp[k] == right.amp[k]);
        CHECK(rl.amp[k] == cplx{});
    }
    CHECK(negative_momentum_fraction(right) == 0.0);
}

TEST_CASE("negative-momentum fraction matches the Gaussian tail") {
    const SpatialGrid g = make_grid(-204.8, 204.8, 4096);
    const double w = 2.0, p0 = 1.0;
    const MomentumSpectrum spec = to_momentum(gaussian_packet(g, 40.0, w, p0));
    // |G|^2 is Gaussian with sigma = 1/w in p; P(p <= 0) = erfc(p0 w / sqrt 2)/2.
    // The lattice sum counts the p = 0 bin fully, half a cell beyond the
    // continuum integral: add pi dp |G(0)|^2 (unit-norm packet).
    const double nrm = std::pow(2.0 / (std::numbers::pi * w * w), 0.25);
    const double g0 = nrm * std::sqrt(std::numbers::pi) * w /
                      (2.0 * std::numbers::pi) * std::exp(-p0 * p0 * w * w / 4.0);
    const double expect = 0.5 * std::erfc(p0 * w / std::sqrt(2.0)) +
                          std::numbers::pi * g.dp() * g0 * g0;
    CHECK(negative_momentum_fraction(spec) ==
          doctest::Approx(expect).epsilon(1e-3));
}
