#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kkwave/semiclassical.hpp"

using namespace kkwave;

TEST_CASE("ballistic motion without potential or force") {
    const PotentialSpec none{TabulatedPotential{}, std::nullopt};
    const auto path = newton_evolve(none, ForceSpec{ZeroForce{}}, -10.0, 1.5, 0.01, 4.0);
    REQUIRE(path.size() == 401);
    CHECK(path.back().t == doctest::Approx(4.0));
    CHECK(path.back().x == doctest::Approx(-10.0 + 2.0 * 1.5 * 4.0).epsilon(1e-12));
    CHECK(path.back().p == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("constant force gives the exact parabola") {
    const PotentialSpec none{TabulatedPotential{}, std::nullopt};
    const double f0 = 0.3, T = 4.0;
    TabulatedForce tab;
    tab.dt = 1e-3;
    tab.t_end = T;
    tab.switch_off = T;
    for (double t = 0.0; t <= T + 5e-4; t += 1e-3) tab.samples.push_back(f0);
    const auto path =
        newton_evolve(none, ForceSpec{tab}, -10.0, 0.5, 1e-3, T);
    // m = 1/2: x(t) = x0 + 2 p0 t + f0 t², p(t) = p0 + f0 t
    CHECK(path.back().p == doctest::Approx(0.5 + f0 * T).epsilon(1e-9));
    CHECK(path.back().x ==
          doctest::Approx(-10.0 + 2.0 * 0.5 * T + f0 * T * T).epsilon(1e-9));
}

TEST_CASE("energy conservation on a real barrier") {
    const PotentialSpec gauss{GaussianBarrier{2.0, 0.3}, std::nullopt};
    const auto path =
        newton_evolve(gauss, ForceSpec{ZeroForce{}}, -15.0, 2.0, 1e-3, 15.0);
    const double e0 = 2.0 * 2.0 + evaluate(gauss, -15.0).real();
    for (std::size_t i = 0; i < path.size(); i += 500) {
        const double e = path[i].p * path[i].p + evaluate(gauss, path[i].x).real();
        CHECK(e == doctest::Approx(e0).epsilon(1e-8));
    }
}

TEST_CASE("complex potential is refused") {
    const PotentialSpec pole{SinglePoleKK{2.0, 0.5}, std::nullopt};
    CHECK_THROWS(newton_evolve(pole, ForceSpec{ZeroForce{}}, -10.0, 1.0, 1e-3, 1.0));
}

TEST_CASE("force-only trajectory follows the closed-form displacement") {
    const ForceSpec pulse{CosinePulse{0.25, 40.0}};
    const auto x0 = force_only_trajectory(pulse, 100.0);
    const ForceIntegrals fi(pulse);
    for (double t : {0.0, 5.0, 13.0, 20.0, 45.0})
        CHECK(x0(t) == doctest::Approx(-100.0 + fi.displacement(t)).epsilon(1e-12));
    // peak swing of the F0 = 0.25, T = 40 pulse
    const double peak = 4.0 * 0.25 * std::pow(40.0 / (2.0 * std::numbers::pi), 2);
    CHECK(x0(20.0) == doctest::Approx(-100.0 + peak).epsilon(1e-12));
}

TEST_CASE("ehrenfest residual is small for a barrier run") {
    const SpatialGrid grid = make_grid(-102.4, 102.4, 2048);
    const PotentialField barrier =
        sample(PotentialSpec{GaussianBarrier{2.0, 0.5}, std::nullopt}, grid);
    const WaveFunction psi0 = gaussian_packet(grid, 10.0, 2.0, 2.0);
    const Trajectory traj = split_step_evolve(psi0, barrier, ForceSpec{ZeroForce{}},
                                              1e-3, 4.0, 0.05);
    CHECK(ehrenfest_residual(traj) < 1e-3);
}

TEST_CASE("ehrenfest residual refuses non-hermitian runs") {
    const SpatialGrid grid = make_grid(-51.2, 51.2, 512);
    const PotentialField pole = sample(
        PotentialSpec{SinglePoleKK{2.0, 0.5}, SuperGaussianEnvelope{10.0, 4}}, grid);
    const WaveFunction psi0 = gaussian_packet(grid, 10.0, 2.0, 2.0);
    const Trajectory traj =
        split_step_evolve(psi0, pole, ForceSpec{ZeroForce{}}, 1e-3, 1.0, 0.5);
    CHECK_FALSE(traj.meta.hermitian);
    CHECK_THROWS(ehrenfest_residual(traj));
}
