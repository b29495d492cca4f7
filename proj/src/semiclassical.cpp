#include "kkwave/semiclassical.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace kkwave {

std::vector<ClassicalState> newton_evolve(const PotentialSpec& potential,
                                          const ForceSpec& force, double x_init,
                                          double p_init, double dt, double t_final) {
    if (!is_real(potential))
        throw std::invalid_argument("newton_evolve: complex potential unsupported");
    if (!(dt > 0.0) || !(t_final > 0.0))
        throw std::invalid_argument("newton_evolve: dt and t_final must be positive");

    const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
    std::vector<ClassicalState> out;
    out.reserve(steps + 1);
    out.push_back({x_init, p_init, 0.0});

    auto fx = [&](double x) { return -gradient(potential, x); };
    double x = x_init, p = p_init;
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = dt * static_cast<double>(k);
        const double f0 = force_value(force, t);
        const double fh = force_value(force, t + 0.5 * dt);
        const double f1 = force_value(force, t + dt);

        const double k1x = 2.0 * p, k1p = f0 + fx(x);
        const double k2x = 2.0 * (p + 0.5 * dt * k1p), k2p = fh + fx(x + 0.5 * dt * k1x);
        const double k3x = 2.0 * (p + 0.5 * dt * k2p), k3p = fh + fx(x + 0.5 * dt * k2x);
        const double k4x = 2.0 * (p + dt * k3p), k4p = f1 + fx(x + dt * k3x);

        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        out.push_back({x, p, dt * static_cast<double>(k + 1)});
    }
    return out;
}

std::function<double(double)> force_only_trajectory(const ForceSpec& force, double d) {
    auto fi = std::make_shared<ForceIntegrals>(force);
    return [fi, d](double t) { return -d + fi->displacement(t); };
}

double ehrenfest_residual(const Trajectory& trajectory) {
    if (!trajectory.meta.hermitian)
        throw std::invalid_argument(
            "ehrenfest_residual: non-Hermitian run unsupported");
    const auto& snaps = trajectory.snapshots;
    if (snaps.size() < 3)
        throw std::invalid_argument("ehrenfest_residual: need at least 3 snapshots");

    std::vector<double> xs(snaps.size()), ps(snaps.size());
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        xs[i] = mean_x(snaps[i]);
        ps[i] = mean_p(snaps[i]);
    }
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < snaps.size(); ++i) {
        const double h = snaps[i + 1].time - snaps[i - 1].time;
        const double dxdt = (xs[i + 1] - xs[i - 1]) / h;
        worst = std::max(worst, std::abs(dxdt - 2.0 * ps[i]));
    }
    return worst;
}

}  // namespace kkwave
