#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kkwave/diagnostics.hpp"
#include "kkwave/propagators.hpp"

using namespace kkwave;

namespace {

Trajectory free_trajectory(const SpatialGrid& grid, double d, double w, double p0,
                           double t_final, double strobe) {
    Trajectory traj;
    traj.meta = {"analytic", strobe, t_final, strobe, true};
    for (double t = 0.0; t <= t_final + 1e-9; t += strobe)
        traj.snapshots.push_back(free_gaussian_reference(grid, d, w, p0, t));
    return traj;
}

}  // namespace

TEST_CASE("probe samples the analytic field") {
    const SpatialGrid grid = make_grid(-204.8, 204.8, 4096);
    const double d = 100.0, w = 5.0, p0 = 1.0;
    const Trajectory traj = free_trajectory(grid, d, w, p0, 20.0, 2.0);
    const ProbeLine probe{80.0, -0.2};
    const ProbeSeries series = sample_probe(traj, probe);
    REQUIRE(series.samples.size() == traj.snapshots.size());
    CHECK_FALSE(series.truncated);
    for (const auto& s : series.samples) {
        const double x = -80.0 - 0.2 * s.t;
        const WaveFunction ref = free_gaussian_reference(grid, d, w, p0, s.t);
        const auto j = static_cast<std::size_t>((x - grid.x_min()) / grid.dx());
        const double local = std::abs(ref.amp[j]);
        CHECK(std::abs(s.psi - ref.amp[j]) < 1e-4 * std::max(local, 1e-6) + 1e-6);
    }
}

TEST_CASE("probe truncates when the line leaves the grid") {
    const SpatialGrid grid = make_grid(-25.6, 25.6, 512);
    const Trajectory traj = free_trajectory(grid, 10.0, 2.0, 0.0, 40.0, 5.0);
    const ProbeSeries series = sample_probe(traj, ProbeLine{10.0, -1.0});
    CHECK(series.truncated);
    CHECK(series.samples.size() < traj.snapshots.size());
}

TEST_CASE("delta statistics vanish for a phase-rotated copy") {
    const SpatialGrid grid = make_grid(-102.4, 102.4, 1024);
    const Trajectory free_run = free_trajectory(grid, 30.0, 4.0, 1.0, 10.0, 2.0);
    Trajectory rotated = free_run;
    const double phi0 = 0.7;
    for (auto& snap : rotated.snapshots)
        for (auto& a : snap.amp) a *= std::polar(1.0, -phi0);
    const Window window{20.0, 4.0};
    const DeltaStats stats = delta_statistics(rotated, free_run, phi0, window);
    CHECK(stats.delta_max < 1e-14);
    CHECK(stats.delta_l2 < 1e-14);

    const DeltaStats off = delta_statistics(rotated, free_run, 0.0, window);
    CHECK(off.delta_max > 1e-6);

    CHECK_THROWS(delta_statistics(rotated, free_run, phi0, Window{20.0, 100.0}));
}

TEST_CASE("reflection indicator refuses unsuitable forces") {
    const SpatialGrid grid = make_grid(-102.4, 102.4, 1024);
    const Trajectory free_run = free_trajectory(grid, 30.0, 4.0, 1.0, 4.0, 2.0);
    const Window window{20.0, 2.0};

    const PotentialSpec gauss{GaussianBarrier{1.0, 0.3}, std::nullopt};
    CHECK_THROWS(reflection_indicator(free_run, free_run,
                                      tailored_force(gauss, -30.0, 1.0, 4.0, 1e-3),
                                      window, 1e-8));

    TabulatedForce kick;  // net impulse: conditions violated
    kick.dt = 1e-2;
    kick.t_end = 1.0;
    kick.switch_off = 1.0;
    for (double t = 0.0; t <= 1.0 + 5e-3; t += 1e-2)
        kick.samples.push_back(std::sin(3.14159265358979 * t));
    CHECK_THROWS(
        reflection_indicator(free_run, free_run, ForceSpec{kick}, window, 1e-8));

    const auto report = reflection_indicator(free_run, free_run,
                                             ForceSpec{ZeroForce{}}, window, 1e-8);
    CHECK(report.reflectionless);
    CHECK(report.threshold == doctest::Approx(1e-7));
}

TEST_CASE("decay fit recovers a clean power law") {
    ProbeSeries series;
    for (double t = 10.0; t <= 200.0; t += 2.0)
        series.samples.push_back({t, 0.3 * std::pow(t, -1.5)});
    const DecayFit fit = decay_exponent_fit(series, 20.0);
    CHECK(fit.exponent == doctest::Approx(-1.5).epsilon(1e-10));
    CHECK(fit.ci < 1e-8);
    CHECK(fit.n_used >= 80);

    ProbeSeries tiny;
    for (double t = 10.0; t <= 20.0; t += 2.0)
        tiny.samples.push_back({t, 1.0 / t});
    CHECK_THROWS(decay_exponent_fit(tiny, 0.0));
}

TEST_CASE("strength curve orders synthetic perturbations") {
    const SpatialGrid grid = make_grid(-102.4, 102.4, 1024);
    const Trajectory free_run = free_trajectory(grid, 30.0, 4.0, 0.0, 10.0, 2.0);
    std::vector<Trajectory> runs;
    for (double eps : {0.0, 0.01, 0.03}) {
        Trajectory r = free_run;
        for (auto& snap : r.snapshots)
            for (auto& a : snap.amp) a *= 1.0 + eps;
        runs.push_back(std::move(r));
    }
    std::vector<std::pair<double, const Trajectory*>> keyed = {
        {0.0, &runs[0]}, {0.1, &runs[1]}, {0.3, &runs[2]}};
    const auto curve =
        reflection_strength_curve(keyed, free_run, ProbeLine{20.0, -0.2}, 4.0);
    REQUIRE(curve.size() == 3);
    CHECK(curve[0].measure < 1e-14);
    CHECK(curve[1].measure > curve[0].measure);
    CHECK(curve[2].measure > curve[1].measure);
}
