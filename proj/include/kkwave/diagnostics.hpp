#pragma once

#include <string>
#include <vector>

#include "kkwave/forces.hpp"
#include "kkwave/propagators.hpp"

namespace kkwave {

/// The space-time ray x = -d + v_d * t.
struct ProbeLine {
    double d = 100.0;
    double v_d = -0.2;
};

struct ProbeSample {
    double t;
    cplx psi;
};

struct ProbeSeries {
    std::vector<ProbeSample> samples;
    bool truncated = false;  // line left the grid before the last strobe
};

/// psi on the probe line at every strobe, cubic interpolation in x.
ProbeSeries sample_probe(const Trajectory& trajectory, const ProbeLine& probe);

/// Region {x <= -x_w} x {t >= t_w} where the difference field is judged.
struct Window {
    double x_w;
    double t_w;
};

struct DeltaStats {
    double delta_max = 0.0;
    double delta_l2 = 0.0;
};

/// Delta(x,t) = |psi_free - psi e^{i phi0}| over the window, from shared
/// strobes of the two trajectories.
DeltaStats delta_statistics(const Trajectory& run, const Trajectory& free_run,
                            double phi0, const Window& window);

struct ReflectionReport {
    DeltaStats stats;
    Window window{};
    double phi0 = 0.0;
    double floor = 0.0;      // measured V=0 same-force numerical floor
    double threshold = 0.0;  // 10 * floor
    bool reflectionless = false;
};

/// Judges reflectionlessness per the Delta criterion. phi0 comes from the
/// force's closed-form integrals; refuses tailored or condition-violating
/// forces (Delta is meaningless for them). floor must be measured by the
/// caller on a V = 0 run with the same force, grid and dt.
ReflectionReport reflection_indicator(const Trajectory& run, const Trajectory& free_run,
                                      const ForceSpec& force, const Window& window,
                                      double floor);

struct DecayFit {
    double exponent = 0.0;
    double ci = 0.0;  // 95% half-width
    std::size_t n_used = 0;
};

/// Least-squares slope of log|psi| vs log t over samples with t >= t_min
/// and |psi| > 1e-13. Throws when fewer than 20 samples qualify.
DecayFit decay_exponent_fit(const ProbeSeries& series, double t_min);

struct StrengthPoint {
    double f0;
    double measure;  // L2 of |psi|^2 - |psi_free|^2 over the probe window
};

std::vector<StrengthPoint> reflection_strength_curve(
    const std::vector<std::pair<double, const Trajectory*>>& runs,
    const Trajectory& free_run, const ProbeLine& probe, double t_min);

}  // namespace kkwave
