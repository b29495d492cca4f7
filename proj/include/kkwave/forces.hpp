#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "kkwave/potentials.hpp"

namespace kkwave {

struct ZeroForce {};

/// F(t) = f0 cos(2πt/period) on [0, period], zero afterwards.
struct CosinePulse {
    double f0;
    double period;
};

/// Dense table over [0, t_end] with uniform spacing; zero outside.
/// switch_off marks the time after which F is treated as identically zero.
struct TabulatedForce {
    double t_end = 0.0;
    double dt = 0.0;
    std::vector<double> samples;
    double switch_off = 0.0;
};

/// F(t) = V'(x_init + 2 p_init t): cancels the potential force along the
/// unperturbed ballistic path. Stored as a dense table (see tailored_force).
struct TailoredForce {
    TabulatedForce table;
};

struct ForceSpec {
    std::variant<ZeroForce, CosinePulse, TailoredForce, TabulatedForce> profile;
};

double force_value(const ForceSpec& force, double t);
double switch_off_time(const ForceSpec& force);
bool is_tailored(const ForceSpec& force);
double max_abs_force(const ForceSpec& force);

/// All force-derived integrals: Δp, φ₁, φ₀, the running impulse ∫₀^t F,
/// the displacement x0(t) = 2∫₀^t∫₀^ξ F, and the Volkov phase piece
/// ∫₀^t (∫₀^ξ F)² dξ. Closed forms for Zero and CosinePulse; cumulative
/// Simpson tables otherwise.
class ForceIntegrals {
public:
    explicit ForceIntegrals(const ForceSpec& force);

    double delta_p() const;  // ∫₀^T F
    double phi1() const;     // 2 ∫₀^T ∫₀^t F
    double phi0() const;     // ∫₀^T (∫₀^t F)²

    double impulse(double t) const;
    double displacement(double t) const;  // x0(t)
    double phase_accum(double t) const;   // ∫₀^t impulse²

private:
    struct Closed {
        // CosinePulse parameters, or all-zero for ZeroForce
        double f0, period;
    };
    struct Tables {
        double dt = 0.0, t_end = 0.0;
        std::vector<double> force;       // F at nodes
        std::vector<double> impulse;     // cumulative ∫F
        std::vector<double> displacement;
        std::vector<double> phase;
    };
    std::variant<Closed, std::shared_ptr<const Tables>> data_;
};

struct ConditionCheck {
    bool zero_impulse = false;      // |Δp| < tol  (vanishing net impulse)
    bool zero_displacement = false; // |φ₁| < tol  (vanishing net displacement)
};

ConditionCheck check_conditions(const ForceSpec& force, double tol = 1e-9);

/// Builds the cancellation force of the semiclassical barrier-transparency
/// construction, tabulated at dt_table over [0, t_final].
ForceSpec tailored_force(const PotentialSpec& potential, double x_init, double p_init,
                         double t_final, double dt_table);

}  // namespace kkwave
