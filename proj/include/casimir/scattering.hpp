#pragma once

#include <array>
#include <complex>

#include "casimir/materials.hpp"

namespace casimir {

using Complex = std::complex<double>;
using Mat3c = std::array<std::array<Complex, 3>, 3>;

enum class Polarization { TE, TM };

struct PolarizationChannel {
    Polarization in;   // polarization of the field incoming on the particle
    Polarization out;  // outgoing
};

// Lateral wavevector with the derived z-components, all in 1/m.
//   kappa   = sqrt(xi^2/c^2 + |k|^2)
//   kappa_t = sqrt(eps xi^2/c^2 + |k|^2)
struct WaveState {
    double kx, ky;
    double xi;
    double kappa;
    double kappa_t;

    static WaveState make(double kx, double ky, double xi, const Permittivity& eps,
                          double c_light);
    double mag() const;
};

// S = sin(phi - phi'), C = cos(phi - phi') between two lateral wavevectors;
// S^2 + C^2 = 1.  Zero-magnitude input is a domain error (quadrature nodes
// are strictly interior, so evaluation never lands there).
struct AngleFactors {
    double S, C;
};
AngleFactors angle_factors(double kx, double ky, double kpx, double kpy);

// [e^-_{p_out}(k_out)]_m [e^+_{p_in}(k_in)]_n for one polarization channel.
// TM channels carry 1/xi factors; xi must be positive here (the fused
// integrand below cancels them against the xi^2 prefactor).
Mat3c outer_product_matrix(PolarizationChannel ch, const WaveState& k_in,
                           const WaveState& k_out, double c_light);

// First-order corrugation reflection coefficient R^(1)_{p_in p_out}(k, k').
// The infinite-permittivity marker engages the analytic limit formulas.
double reflection_first_order(PolarizationChannel ch, const WaveState& k,
                              const WaveState& kp, const Permittivity& eps,
                              double c_light);

// ---------------------------------------------------------------------------
// Dimensionless internal evaluation (lengths in z0, frequencies in c/z0).
// ---------------------------------------------------------------------------

// Material evaluated at dimensionless imaginary frequency s = xi z0 / c.
// omega_hat = omega_p z0 / c for the plasma model.
struct SurfaceResponse {
    bool infinite;
    double eps;       // valid when !infinite
    double em1;       // eps - 1, exact
    double em1_s2;    // (eps - 1) s^2, exact (plasma: omega_hat^2)
};
SurfaceResponse surface_response(const PermittivityModel& m, double s, double omega_hat);

// Fused prefactored integrand s^2 a^{mn}(k', k'') in z0 units: the 1/xi
// factors of the TM outer products are cancelled algebraically against the
// s^2 prefactor, so the matrix is finite down to s -> 0.  Includes the
// round-trip factor e^{-(kappa' + kappa'')} / (2 kappa'').
Mat3c fused_integrand(double s, double kpx, double kpy, double kppx, double kppy,
                      const SurfaceResponse& eps);

// c -> infinity limit of the fused integrand: the van der Waals form
//   e^{-(|k'| + |k''|)} w(eps) [eps + C] G_mn,  w = (eps-1)/(eps+1)^2.
// For the infinite marker the bracket reduces to the conductor weight.
Mat3c vdw_limit_integrand(double kpx, double kpy, double kppx, double kppy,
                          const SurfaceResponse& eps);

} // namespace casimir
