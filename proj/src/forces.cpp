#include "kkwave/forces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kkwave {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const TabulatedForce* table_of(const ForceSpec& force) {
    if (const auto* t = std::get_if<TabulatedForce>(&force.profile)) return t;
    if (const auto* t = std::get_if<TailoredForce>(&force.profile)) return &t->table;
    return nullptr;
}

// Catmull-Rom value of a uniformly tabulated function; zero outside.
double table_value(const TabulatedForce& tab, double t) {
    if (tab.samples.empty() || t < 0.0 || t > tab.t_end) return 0.0;
    const std::size_t last = tab.samples.size() - 1;
    const double u = t / tab.dt;
    std::size_t i = std::min(static_cast<std::size_t>(u), last - 1);
    const double s = u - static_cast<double>(i);
    auto at = [&](std::ptrdiff_t j) {
        j = std::clamp<std::ptrdiff_t>(j, 0, static_cast<std::ptrdiff_t>(last));
        return tab.samples[static_cast<std::size_t>(j)];
    };
    const double f0 = at(static_cast<std::ptrdiff_t>(i)), f1 = at(static_cast<std::ptrdiff_t>(i) + 1);
    const double m0 = 0.5 * (f1 - at(static_cast<std::ptrdiff_t>(i) - 1));
    const double m1 = 0.5 * (at(static_cast<std::ptrdiff_t>(i) + 2) - f0);
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * m0 +
           (-2 * s3 + 3 * s2) * f1 + (s3 - s2) * m1;
}

}  // namespace

double force_value(const ForceSpec& force, double t) {
    if (std::holds_alternative<ZeroForce>(force.profile)) return 0.0;
    if (const auto* c = std::get_if<CosinePulse>(&force.profile)) {
        if (t < 0.0 || t >= c->period) return 0.0;
        return c->f0 * std::cos(kTwoPi * t / c->period);
    }
    return table_value(*table_of(force), t);
}

double switch_off_time(const ForceSpec& force) {
    if (std::holds_alternative<ZeroForce>(force.profile)) return 0.0;
    if (const auto* c = std::get_if<CosinePulse>(&force.profile)) return c->period;
    return table_of(force)->switch_off;
}

bool is_tailored(const ForceSpec& force) {
    return std::holds_alternative<TailoredForce>(force.profile);
}

double max_abs_force(const ForceSpec& force) {
    if (std::holds_alternative<ZeroForce>(force.profile)) return 0.0;
    if (const auto* c = std::get_if<CosinePulse>(&force.profile)) return std::abs(c->f0);
    double m = 0.0;
    for (double f : table_of(force)->samples) m = std::max(m, std::abs(f));
    return m;
}

ForceIntegrals::ForceIntegrals(const ForceSpec& force) : data_(Closed{0.0, 0.0}) {
    if (std::holds_alternative<ZeroForce>(force.profile)) return;
    if (const auto* c = std::get_if<CosinePulse>(&force.profile)) {
        data_ = Closed{c->f0, c->period};
        return;
    }
    const TabulatedForce& tab = *table_of(force);
    auto tables = std::make_shared<Tables>();
    tables->dt = tab.dt;
    tables->t_end = tab.t_end;
    const std::size_t n = tab.samples.size();
    tables->force = tab.samples;
    tables->impulse.assign(n, 0.0);
    tables->displacement.assign(n, 0.0);
    tables->phase.assign(n, 0.0);
    const double h = tab.dt;
    // Cumulative integration of the cubic interpolants. Each integrand's
    // derivative at the nodes is known exactly, so the per-interval Hermite
    // quadrature h/2 (f_i + f_{i+1}) + h²/12 (f'_i - f'_{i+1}) applies.
    auto slope = [&](std::size_t i) {  // Catmull-Rom slope of F
        const std::size_t last = n - 1;
        const double fp = tab.samples[std::min(i + 1, last)];
        const double fm = tab.samples[i == 0 ? 0 : i - 1];
        return 0.5 * (fp - fm) / h * ((i == 0 || i == last) ? 2.0 : 1.0);
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
        tables->impulse[i + 1] =
            tables->impulse[i] + h / 2 * (tab.samples[i] + tab.samples[i + 1]) +
            h * h / 12 * (slope(i) - slope(i + 1));
        tables->displacement[i + 1] =
            tables->displacement[i] +
            2.0 * (h / 2 * (tables->impulse[i] + tables->impulse[i + 1]) +
                   h * h / 12 * (tab.samples[i] - tab.samples[i + 1]));
        const double g0 = tables->impulse[i] * tables->impulse[i];
        const double g1 = tables->impulse[i + 1] * tables->impulse[i + 1];
        const double dg0 = 2.0 * tables->impulse[i] * tab.samples[i];
        const double dg1 = 2.0 * tables->impulse[i + 1] * tab.samples[i + 1];
        tables->phase[i + 1] =
            tables->phase[i] + h / 2 * (g0 + g1) + h * h / 12 * (dg0 - dg1);
    }
    data_ = std::move(tables);
}

namespace {

// Hermite cubic evaluation from node values and exact node derivatives.
double hermite_eval(const std::vector<double>& v, const std::vector<double>& d,
                    double dt, double t_end, double t, double value_after) {
    if (t <= 0.0) return 0.0;
    if (t >= t_end) return value_after;
    const std::size_t last = v.size() - 1;
    const double u = t / dt;
    std::size_t i = std::min(static_cast<std::size_t>(u), last - 1);
    const double s = u - static_cast<double>(i);
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * v[i] + dt * (s3 - 2 * s2 + s) * d[i] +
           (-2 * s3 + 3 * s2) * v[i + 1] + dt * (s3 - s2) * d[i + 1];
}

}  // namespace

double ForceIntegrals::delta_p() const { return impulse(1e300); }

double ForceIntegrals::phi1() const {
    if (const auto* c = std::get_if<Closed>(&data_)) {
        (void)c;
        return 0.0;  // cosine pulse: x0(T) = 2 F0 (T/2π)² (1 - cos 2π) = 0
    }
    const auto& tb = *std::get<std::shared_ptr<const Tables>>(data_);
    return tb.displacement.back();
}

double ForceIntegrals::phi0() const {
    if (const auto* c = std::get_if<Closed>(&data_)) {
        if (c->period == 0.0) return 0.0;
        return c->f0 * c->f0 * c->period * c->period * c->period /
               (8.0 * std::numbers::pi * std::numbers::pi);
    }
    const auto& tb = *std::get<std::shared_ptr<const Tables>>(data_);
    return tb.phase.back();
}

double ForceIntegrals::impulse(double t) const {
    if (const auto* c = std::get_if<Closed>(&data_)) {
        if (c->period == 0.0 || t <= 0.0) return 0.0;
        const double tc = std::min(t, c->period);
        return c->f0 * c->period / kTwoPi * std::sin(kTwoPi * tc / c->period);
    }
    const auto& tb = *std::get<std::shared_ptr<const Tables>>(data_);
    return hermite_eval(tb.impulse, tb.force, tb.dt, tb.t_end, t, tb.impulse.back());
}

double ForceIntegrals::displacement(double t) const {
    if (const auto* c = std::get_if<Closed>(&data_)) {
        if (c->period == 0.0 || t <= 0.0) return 0.0;
        const double r = c->period / kTwoPi;
        if (t >= c->period) return 0.0;  // zero net impulse and displacement
        return 2.0 * c->f0 * r * r * (1.0 - std::cos(kTwoPi * t / c->period));
    }
    const auto& tb = *std::get<std::shared_ptr<const Tables>>(data_);
    std::vector<double> d(tb.impulse.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = 2.0 * tb.impulse[i];
    const double after = tb.displacement.back() +
                         2.0 * tb.impulse.back() * std::max(0.0, t - tb.t_end);
    return hermite_eval(tb.displacement, d, tb.dt, tb.t_end, t, after);
}

double ForceIntegrals::phase_accum(double t) const {
    if (const auto* c = std::get_if<Closed>(&data_)) {
        if (c->period == 0.0 || t <= 0.0) return 0.0;
        const double a = c->f0 * c->period / kTwoPi;
        const double w = kTwoPi / c->period;
        const double tc = std::min(t, c->period);
        return a * a * (tc / 2.0 - std::sin(2.0 * w * tc) / (4.0 * w));
    }
    const auto& tb = *std::get<std::shared_ptr<const Tables>>(data_);
    std::vector<double> d(tb.impulse.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = tb.impulse[i] * tb.impulse[i];
    const double after = tb.phase.back() + tb.impulse.back() * tb.impulse.back() *
                                               std::max(0.0, t - tb.t_end);
    return hermite_eval(tb.phase, d, tb.dt, tb.t_end, t, after);
}

ConditionCheck check_conditions(const ForceSpec& force, double tol) {
    ForceIntegrals fi(force);
    return {std::abs(fi.delta_p()) < tol, std::abs(fi.phi1()) < tol};
}

ForceSpec tailored_force(const PotentialSpec& potential, double x_init, double p_init,
                         double t_final, double dt_table) {
    if (!is_real(potential))
        throw std::invalid_argument("tailored_force: complex potential unsupported");
    if (!(dt_table > 0.0) || !(t_final > 0.0))
        throw std::invalid_argument("tailored_force: bad table parameters");
    TabulatedForce tab;
    tab.dt = dt_table;
    const std::size_t n = static_cast<std::size_t>(std::ceil(t_final / dt_table)) + 1;
    tab.t_end = dt_table * static_cast<double>(n - 1);
    tab.switch_off = tab.t_end;
    tab.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = dt_table * static_cast<double>(i);
        tab.samples[i] = gradient(potential, x_init + 2.0 * p_init * t);
    }
    return ForceSpec{TailoredForce{std::move(tab)}};
}

}  // namespace kkwave
