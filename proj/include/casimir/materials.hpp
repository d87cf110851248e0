#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Dielectric permittivity at imaginary frequency, eps(i xi), for the three
// surface/particle material models in play: a lossless plasma metal,
// a nondispersive dielectric, and a perfect conductor.

enum class MaterialKind { Plasma, Constant, PerfectConductor };

// eps(i xi) as an extended real.  The infinite case is a distinct state,
// not a large float: downstream reflection formulas switch to the
// analytic eps -> infinity limits.
struct Permittivity {
    bool infinite = false;
    double value = 1.0;       // valid when !infinite
    double minus_one = 0.0;   // eps - 1, computed without cancellation

    double reflection_weight() const
    {
        // (eps-1)/(eps+1)^2, the material weight of the vdW closed forms;
        // tends to 0 for both eps -> 1 and eps -> infinity.
        if (infinite) return 0.0;
        const double d = 2.0 + minus_one;
        return minus_one / (d * d);
    }
};

class PermittivityModel {
public:
    static PermittivityModel plasma(double omega_p)
    {
        if (!(omega_p > 0.0))
            throw std::invalid_argument("plasma model requires omega_p > 0");
        return {MaterialKind::Plasma, omega_p, 0.0};
    }
    static PermittivityModel constant(double eps)
    {
        if (!(eps >= 1.0))
            throw std::invalid_argument("constant model requires eps >= 1");
        return {MaterialKind::Constant, 0.0, eps};
    }
    static PermittivityModel perfect_conductor()
    {
        return {MaterialKind::PerfectConductor, 0.0, 0.0};
    }

    MaterialKind kind() const { return kind_; }
    double omega_p() const { return omega_p_; }
    double epsilon_constant() const { return eps_; }

    // eps(i xi), xi >= 0 in rad/s.  Plasma diverges at xi = 0.
    Permittivity at(double xi) const
    {
        if (!(xi >= 0.0))
            throw std::domain_error("permittivity: xi must be nonnegative");
        switch (kind_) {
        case MaterialKind::Plasma: {
            if (xi == 0.0) return {true, 0.0, 0.0};
            const double em1 = (omega_p_ / xi) * (omega_p_ / xi);
            return {false, 1.0 + em1, em1};
        }
        case MaterialKind::Constant:
            return {false, eps_, eps_ - 1.0};
        case MaterialKind::PerfectConductor:
        default:
            return {true, 0.0, 0.0};
        }
    }

    // Static (xi -> 0) model: plasma and perfect conductor both reduce to
    // the perfect-conductor reflection limits.
    PermittivityModel static_limit() const
    {
        if (kind_ == MaterialKind::Constant) return *this;
        return perfect_conductor();
    }

    bool dispersive() const { return kind_ == MaterialKind::Plasma; }

    std::string describe() const;

private:
    PermittivityModel(MaterialKind kind, double omega_p, double eps)
        : kind_(kind), omega_p_(omega_p), eps_(eps) {}

    MaterialKind kind_;
    double omega_p_;
    double eps_;
};

// lambda_p = 2 pi c / omega_p
double plasma_wavelength(double omega_p);

// Gold plasma frequency, rad/s.
inline constexpr double kGoldOmegaP = 1.385e16;

} // namespace casimir
