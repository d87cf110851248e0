#pragma once

#include <array>
#include <functional>

#include "casimir/polarizability.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/scattering.hpp"

namespace casimir {

// Sinusoidal corrugation and particle height.  h(x) = a cos(k_c x).
struct Geometry {
    double amplitude;   // a, m
    double k_c;         // corrugation wavenumber, rad/m
    double z0;          // particle height, m

    void validate() const;
    bool within_perturbative_validity() const { return amplitude <= 0.1 * z0; }
    double lambda_c() const;
    double u() const { return k_c * z0; }
};

// The four corrugation-response integrals, in SI, together with the
// factor that converts them to the dimensionless report
//   Vhat = V z0^4 / (eps0 V_particle omega_ref).
// With the representation used here (real/imaginary parts split per
// polarization channel) the residual imaginary parts of the components
// vanish identically; the complex-structure checks live on the integrand.
struct VComponents {
    double xx = 0, yy = 0, zz = 0, xz = 0;
    std::array<double, 4> error_estimates{};  // SI, same order
    double to_normalized = 0;                 // multiply an SI value by this
    std::size_t evaluations = 0;

    double sum() const { return xx + yy + zz; }
};

enum class ForceRegime { Peak, Valley, Intermediate };

struct RegimeReport {
    double amplitude = 0;   // A, same units as the V components (SI)
    double delta = 0;       // phase, rad, in (-pi, pi]
    ForceRegime regime = ForceRegime::Valley;
    double x_eq = 0;        // stable lateral equilibrium in [0, lambda_c), m
};

enum class EvalMode { Retarded, Vdw, Cp };

struct EvalOptions {
    // Light-speed multiplier; values >> 1 drive the retarded path into its
    // nonretarded limit (validation knob, not physics).
    double c_scale = 1.0;
};

// Reference frequency of the dimensionless report: the particle's plasma
// frequency when dispersive, else the surface's, else c/z0.
double reference_frequency(const ParticleModel& particle,
                           const PermittivityModel& surface, double z0);

// Full retarded scattering computation of the four V integrals.
VComponents v_components_retarded(const ParticleModel& particle,
                                  const PermittivityModel& surface,
                                  const Geometry& geom,
                                  const QuadratureConfig& quad,
                                  const EvalOptions& opts = {});

// Closed-form van der Waals path: a single frequency integral over the
// Bessel-function kernels.  Requires a dispersive particle or surface
// (otherwise the frequency integral does not converge).
VComponents v_components_vdw(const ParticleModel& particle,
                             const PermittivityModel& surface,
                             const Geometry& geom,
                             const QuadratureConfig& quad);

// Independent numeric route to the vdW limit: the c -> infinity integrand
// integrated over the wavevector plane, without the Bessel closed forms.
VComponents v_components_vdw_3d(const ParticleModel& particle,
                                const PermittivityModel& surface,
                                const Geometry& geom,
                                const QuadratureConfig& quad);

// Casimir-Polder (long-distance) limit: static polarizability and static
// permittivity in the retarded integrals.
VComponents v_components_cp(const ParticleModel& particle,
                            const PermittivityModel& surface,
                            const Geometry& geom,
                            const QuadratureConfig& quad,
                            const EvalOptions& opts = {});

VComponents v_components(EvalMode mode, const ParticleModel& particle,
                         const PermittivityModel& surface, const Geometry& geom,
                         const QuadratureConfig& quad, const EvalOptions& opts = {});

// Trace-only assembly valid for an isotropic particle; the anisotropic
// machinery must reproduce it.  Returns V_Sum in SI.
QuadratureResult v_sum_trace_form(const ParticleModel& particle,
                                  const PermittivityModel& surface,
                                  const Geometry& geom,
                                  const QuadratureConfig& quad,
                                  const EvalOptions& opts = {});

// The eight closed-form vdW kernels at u = k_c z0.
struct VdwKernels {
    double cond_xx, diel_xx;
    double cond_yy, diel_yy;
    double cond_zz, diel_zz;
    double cond_xz, diel_xz;
    bool underflowed;
};
VdwKernels kernels_vdw(double u);

// A = sqrt(V_Sum^2 + V_xz^2), delta = atan2(V_xz, V_Sum) in (-pi, pi].
// Throws for the degenerate all-zero configuration.
std::pair<double, double> amplitude_phase(const VComponents& v);

// U^(1)(x0) = (a hbar / 8 pi^3 eps0) A cos(k_c x0 - delta), Joules;
// amplitude_si is A in the SI units of the V components.
double lateral_energy(double x0, const Geometry& geom, double amplitude_si,
                      double delta);

// Stable equilibrium position x_eq in [0, lambda_c): k_c x_eq - delta = pi.
double equilibrium_position(const Geometry& geom, double delta);

} // namespace casimir
