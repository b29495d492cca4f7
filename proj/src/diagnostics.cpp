#include "kkwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kkwave {

namespace {

cplx cubic_at(const WaveFunction& wf, double x) {
    const SpatialGrid& g = wf.grid;
    const double u = (x - g.x_min()) / g.dx();
    const std::size_t last = g.size() - 1;
    std::size_t i = std::min(static_cast<std::size_t>(u), last - 1);
    const double s = u - static_cast<double>(i);
    auto at = [&](std::ptrdiff_t j) {
        j = std::clamp<std::ptrdiff_t>(j, 0, static_cast<std::ptrdiff_t>(last));
        return wf.amp[static_cast<std::size_t>(j)];
    };
    const auto ii = static_cast<std::ptrdiff_t>(i);
    const cplx f0 = at(ii), f1 = at(ii + 1);
    const cplx m0 = 0.5 * (f1 - at(ii - 1));
    const cplx m1 = 0.5 * (at(ii + 2) - f0);
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * m0 +
           (-2 * s3 + 3 * s2) * f1 + (s3 - s2) * m1;
}

}  // namespace

ProbeSeries sample_probe(const Trajectory& trajectory, const ProbeLine& probe) {
    ProbeSeries out;
    for (const auto& snap : trajectory.snapshots) {
        const double x = -probe.d + probe.v_d * snap.time;
        const SpatialGrid& g = snap.grid;
        if (x < g.x_min() + g.dx() || x > g.x_max() - 2.0 * g.dx()) {
            out.truncated = true;
            break;
        }
        out.samples.push_back({snap.time, cubic_at(snap, x)});
    }
    return out;
}

DeltaStats delta_statistics(const Trajectory& run, const Trajectory& free_run,
                            double phi0, const Window& window) {
    DeltaStats stats;
    const cplx rot = std::polar(1.0, phi0);
    double l2 = 0.0;
    std::size_t cells = 0;
    for (const auto& snap : run.snapshots) {
        if (snap.time < window.t_w) continue;
        const WaveFunction& ref = free_run.at_time(snap.time);
        if (ref.grid != snap.grid)
            throw std::invalid_argument("delta_statistics: grid mismatch");
        const SpatialGrid& g = snap.grid;
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (g.x(j) > -window.x_w) break;
            const double d = std::abs(ref.amp[j] - snap.amp[j] * rot);
            stats.delta_max = std::max(stats.delta_max, d);
            l2 += d * d;
            ++cells;
        }
    }
    if (cells == 0)
        throw std::invalid_argument("delta_statistics: window selects no samples");
    stats.delta_l2 = std::sqrt(l2 / static_cast<double>(cells));
    return stats;
}

ReflectionReport reflection_indicator(const Trajectory& run, const Trajectory& free_run,
                                      const ForceSpec& force, const Window& window,
                                      double floor) {
    if (is_tailored(force))
        throw std::invalid_argument(
            "reflection_indicator: tailored force has nonzero net impulse or "
            "displacement; the phase-corrected comparison does not apply");
    const ConditionCheck cond = check_conditions(force);
    if (!cond.zero_impulse || !cond.zero_displacement)
        throw std::invalid_argument(
            "reflection_indicator: force violates the zero-impulse or "
            "zero-displacement condition; the phase-corrected comparison does not "
            "apply");
    if (!(floor > 0.0))
        throw std::invalid_argument("reflection_indicator: floor must be positive");

    ReflectionReport report;
    report.window = window;
    report.phi0 = ForceIntegrals(force).phi0();
    report.stats = delta_statistics(run, free_run, report.phi0, window);
    report.floor = floor;
    report.threshold = 10.0 * floor;
    report.reflectionless = report.stats.delta_max < report.threshold;
    return report;
}

DecayFit decay_exponent_fit(const ProbeSeries& series, double t_min) {
    std::vector<double> lt, la;
    for (const auto& s : series.samples) {
        if (s.t < t_min) continue;
        const double a = std::abs(s.psi);
        if (a <= 1e-13) continue;
        lt.push_back(std::log(s.t));
        la.push_back(std::log(a));
    }
    if (lt.size() < 20)
        throw std::runtime_error(
            "decay_exponent_fit: fewer than 20 usable samples above the signal "
            "floor");

    const auto n = static_cast<double>(lt.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
        sx += lt[i];
        sy += la[i];
        sxx += lt[i] * lt[i];
        sxy += lt[i] * la[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double ss = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
        const double r = la[i] - slope * lt[i] - intercept;
        ss += r * r;
    }
    const double var_slope = ss / (n - 2.0) * n / denom;
    return {slope, 1.96 * std::sqrt(var_slope), lt.size()};
}

std::vector<StrengthPoint> reflection_strength_curve(
    const std::vector<std::pair<double, const Trajectory*>>& runs,
    const Trajectory& free_run, const ProbeLine& probe, double t_min) {
    const ProbeSeries free_series = sample_probe(free_run, probe);
    std::vector<StrengthPoint> out;
    for (const auto& [f0, run] : runs) {
        const ProbeSeries series = sample_probe(*run, probe);
        if (series.samples.size() != free_series.samples.size())
            throw std::invalid_argument(
                "reflection_strength_curve: probe series length mismatch");
        double acc = 0.0;
        std::size_t used = 0;
        for (std::size_t i = 0; i < series.samples.size(); ++i) {
            if (series.samples[i].t < t_min) continue;
            if (std::abs(series.samples[i].t - free_series.samples[i].t) > 1e-9)
                throw std::invalid_argument(
                    "reflection_strength_curve: strobe times mismatch");
            const double diff = std::norm(series.samples[i].psi) -
                                std::norm(free_series.samples[i].psi);
            acc += diff * diff;
            ++used;
        }
        if (used == 0)
            throw std::invalid_argument(
                "reflection_strength_curve: empty probe window");
        out.push_back({f0, std::sqrt(acc / static_cast<double>(used))});
    }
    return out;
}

}  // namespace kkwave
