#include "casimir/lateral_energy.hpp"

#include <cmath>

#include "casimir/bessel.hpp"
#include "casimir/constants.hpp"

namespace casimir {

void Geometry::validate() const
{
    if (!(amplitude > 0.0))
        throw std::invalid_argument("geometry: corrugation amplitude must be positive");
    if (!(k_c > 0.0))
        throw std::invalid_argument("geometry: corrugation wavenumber must be positive");
    if (!(z0 > 0.0))
        throw std::invalid_argument("geometry: particle height must be positive");
    if (!(amplitude < z0))
        throw std::invalid_argument("geometry: amplitude must be below the particle height");
}

double Geometry::lambda_c() const { return 2.0 * kPi / k_c; }

double reference_frequency(const ParticleModel& particle,
                           const PermittivityModel& surface, double z0)
{
    if (particle.material.dispersive()) return particle.material.omega_p();
    if (surface.dispersive()) return surface.omega_p();
    return kSpeedOfLight / z0;
}

namespace {

using Comp4 = std::array<double, 4>;  // xx, yy, zz, xz

// Scattering-formula triple integral in z0 units.  alpha_hat supplies the
// reduced polarizability tensor as a function of the dimensionless
// frequency s = xi z0 / c_eff.
VComponents scattering_integral(const std::function<PolarizabilityTensor(double)>& alpha_hat,
                                const PermittivityModel& surface,
                                const ParticleModel& particle, const Geometry& geom,
                                const QuadratureConfig& quad, double c_eff)
{
    geom.validate();
    particle.validate();
    const double u = geom.u();
    const double omega_hat_s = surface.dispersive()
                                   ? surface.omega_p() * geom.z0 / c_eff
                                   : 0.0;

    QuadratureConfig k_cfg = quad;
    k_cfg.rel_tol = quad.rel_tol * 2.0 / 3.0;
    k_cfg.scale = 0.5 + 0.3 * u;

    std::size_t inner_evals = 0;
    auto plane_integral = [&](double s) -> Comp4 {
        const SurfaceResponse eps = surface_response(surface, s, omega_hat_s);
        auto f = [&](double k, double phi) -> Comp4 {
            const double kpx = k * std::cos(phi);
            const double kpy = k * std::sin(phi);
            const Mat3c m = fused_integrand(s, kpx, kpy, kpx - u, kpy, eps);
            return {m[0][0].real(), m[1][1].real(), m[2][2].real(), m[0][2].imag()};
        };
        Comp4 w{};
        QuadratureResult r = integrate_k_polar_v(f, k_cfg, w);
        inner_evals += r.evaluations;
        return w;
    };

    auto outer = [&](double s) -> Comp4 {
        Comp4 w = plane_integral(s);
        const PolarizabilityTensor a = alpha_hat(s);
        return {a.xx * w[0], a.yy * w[1], a.zz * w[2], -2.0 * a.xz * w[3]};
    };

    QuadratureConfig s_cfg = quad;
    s_cfg.rel_tol = quad.rel_tol / 3.0;
    s_cfg.scale = 0.5 * std::max(1.0, std::sqrt(u));

    Comp4 vhat{};
    QuadratureResult res = integrate_semi_infinite_v(outer, s_cfg, vhat);

    // V = (eps0 V_p c_eff / z0^5) * dimensionless integral
    const double z0 = geom.z0;
    const double si = kVacuumPermittivity * particle.volume * c_eff / std::pow(z0, 5);
    const double omega_ref = reference_frequency(particle, surface, z0);
    VComponents v;
    v.xx = vhat[0] * si;
    v.yy = vhat[1] * si;
    v.zz = vhat[2] * si;
    v.xz = vhat[3] * si;
    v.error_estimates = {res.error_estimate * si, res.error_estimate * si,
                         res.error_estimate * si, res.error_estimate * si};
    v.to_normalized = std::pow(z0, 4) / (kVacuumPermittivity * particle.volume * omega_ref);
    v.evaluations = res.evaluations + inner_evals;
    return v;
}

void require_dispersive_pair(const ParticleModel& particle,
                             const PermittivityModel& surface)
{
    if (!particle.material.dispersive() && !surface.dispersive())
        throw std::invalid_argument(
            "vdW path: the frequency integral converges only for a dispersive "
            "particle or surface");
}

} // namespace

VComponents v_components_retarded(const ParticleModel& particle,
                                  const PermittivityModel& surface,
                                  const Geometry& geom, const QuadratureConfig& quad,
                                  const EvalOptions& opts)
{
    const double c_eff = kSpeedOfLight * opts.c_scale;
    const double z0 = geom.z0;
    auto alpha_hat = [&](double s) {
        return particle.reduced_tensor_at(s * c_eff / z0);
    };
    return scattering_integral(alpha_hat, surface, particle, geom, quad, c_eff);
}

VComponents v_components_cp(const ParticleModel& particle,
                            const PermittivityModel& surface, const Geometry& geom,
                            const QuadratureConfig& quad, const EvalOptions& opts)
{
    const double c_eff = kSpeedOfLight * opts.c_scale;
    const PolarizabilityTensor a0 = particle.reduced_static_tensor();
    auto alpha_hat = [a0](double) { return a0; };
    return scattering_integral(alpha_hat, surface.static_limit(), particle, geom,
                               quad, c_eff);
}

VdwKernels kernels_vdw(double u)
{
    if (!(u > 0.0))
        throw std::domain_error("kernels_vdw: u must be positive");
    VdwKernels k{};
    if (bessel_k_underflows(u)) {
        k.underflowed = true;
        return k;
    }
    const double k2 = bessel_k(BesselOrder::k2, u);
    const double k3 = bessel_k(BesselOrder::k3, u);
    const double u2 = u * u, u3 = u2 * u, u4 = u3 * u;
    k.cond_xx = u3 * k3 - u4 * k2;
    k.diel_xx = (56.0 / 3.0 * u2 + u4) * k2 - 11.0 / 3.0 * u3 * k3;
    k.cond_yy = u3 * k3;
    k.diel_yy = 8.0 * u2 * k2 - u3 * k3;
    k.cond_zz = (16.0 / 3.0 * u2 + u4) * k2 + 2.0 / 3.0 * u3 * k3;
    k.diel_zz = 2.0 * u3 * k3 - u4 * k2;
    k.cond_xz = 8.0 / 3.0 * u3 * k2 - u4 * k3;
    k.diel_xz = u4 * k3 - 16.0 / 3.0 * u3 * k2;
    k.underflowed = false;
    return k;
}

VComponents v_components_vdw(const ParticleModel& particle,
                             const PermittivityModel& surface, const Geometry& geom,
                             const QuadratureConfig& quad)
{
    geom.validate();
    particle.validate();
    require_dispersive_pair(particle, surface);

    const double z0 = geom.z0;
    const double omega_ref = reference_frequency(particle, surface, z0);
    const VdwKernels ker = kernels_vdw(geom.u());

    // xi = omega_ref * t
    auto integrand = [&](double t) -> Comp4 {
        const double xi = omega_ref * t;
        const PolarizabilityTensor a = particle.reduced_tensor_at(xi);
        const Permittivity eps = surface.at(xi);
        double b_xx, b_yy, b_zz, b_xz;
        if (eps.infinite) {
            b_xx = ker.cond_xx;
            b_yy = ker.cond_yy;
            b_zz = ker.cond_zz;
            b_xz = ker.cond_xz;
        } else {
            const double w = eps.reflection_weight();
            b_xx = w * (eps.value * ker.cond_xx + ker.diel_xx);
            b_yy = w * (eps.value * ker.cond_yy + ker.diel_yy);
            b_zz = w * (eps.value * ker.cond_zz + ker.diel_zz);
            b_xz = w * (eps.value * ker.cond_xz + ker.diel_xz);
        }
        constexpr double pref = -3.0 * kPi / 64.0;
        return {pref * a.xx * b_xx, pref * a.yy * b_yy, pref * a.zz * b_zz,
                -2.0 * pref * a.xz * b_xz};
    };

    QuadratureConfig cfg = quad;
    cfg.scale = 1.0;
    Comp4 vhat{};
    QuadratureResult res = integrate_semi_infinite_v(integrand, cfg, vhat);

    const double si = kVacuumPermittivity * particle.volume * omega_ref / std::pow(z0, 4);
    VComponents v;
    v.xx = vhat[0] * si;
    v.yy = vhat[1] * si;
    v.zz = vhat[2] * si;
    v.xz = vhat[3] * si;
    v.error_estimates = {res.error_estimate * si, res.error_estimate * si,
                         res.error_estimate * si, res.error_estimate * si};
    v.to_normalized = std::pow(z0, 4) / (kVacuumPermittivity * particle.volume * omega_ref);
    v.evaluations = res.evaluations;
    return v;
}

VComponents v_components_vdw_3d(const ParticleModel& particle,
                                const PermittivityModel& surface,
                                const Geometry& geom, const QuadratureConfig& quad)
{
    geom.validate();
    particle.validate();
    require_dispersive_pair(particle, surface);

    const double u = geom.u();
    const double z0 = geom.z0;
    const double omega_ref = reference_frequency(particle, surface, z0);

    QuadratureConfig k_cfg = quad;
    k_cfg.rel_tol = quad.rel_tol * 2.0 / 3.0;
    k_cfg.scale = 0.5 + 0.3 * u;

    std::size_t inner_evals = 0;
    auto plane_integral = [&](const SurfaceResponse& eps) -> Comp4 {
        auto f = [&](double k, double phi) -> Comp4 {
            const double kpx = k * std::cos(phi);
            const double kpy = k * std::sin(phi);
            const Mat3c m = vdw_limit_integrand(kpx, kpy, kpx - u, kpy, eps);
            return {m[0][0].real(), m[1][1].real(), m[2][2].real(), m[0][2].imag()};
        };
        Comp4 w{};
        QuadratureResult r = integrate_k_polar_v(f, k_cfg, w);
        inner_evals += r.evaluations;
        return w;
    };

    auto integrand = [&](double t) -> Comp4 {
        const double xi = omega_ref * t;
        const PolarizabilityTensor a = particle.reduced_tensor_at(xi);
        SurfaceResponse eps;
        if (surface.kind() == MaterialKind::PerfectConductor) {
            eps = {true, 0.0, 0.0, 0.0};
        } else {
            const Permittivity e = surface.at(xi);
            eps = {false, e.value, e.minus_one, 0.0};
        }
        const Comp4 w = plane_integral(eps);
        return {a.xx * w[0], a.yy * w[1], a.zz * w[2], -2.0 * a.xz * w[3]};
    };

    QuadratureConfig cfg = quad;
    cfg.rel_tol = quad.rel_tol / 3.0;
    cfg.scale = 1.0;
    Comp4 vhat{};
    QuadratureResult res = integrate_semi_infinite_v(integrand, cfg, vhat);

    const double si = kVacuumPermittivity * particle.volume * omega_ref / std::pow(z0, 4);
    VComponents v;
    v.xx = vhat[0] * si;
    v.yy = vhat[1] * si;
    v.zz = vhat[2] * si;
    v.xz = vhat[3] * si;
    v.error_estimates = {res.error_estimate * si, res.error_estimate * si,
                         res.error_estimate * si, res.error_estimate * si};
    v.to_normalized = std::pow(z0, 4) / (kVacuumPermittivity * particle.volume * omega_ref);
    v.evaluations = res.evaluations + inner_evals;
    return v;
}

VComponents v_components(EvalMode mode, const ParticleModel& particle,
                         const PermittivityModel& surface, const Geometry& geom,
                         const QuadratureConfig& quad, const EvalOptions& opts)
{
    switch (mode) {
    case EvalMode::Retarded:
        return v_components_retarded(particle, surface, geom, quad, opts);
    case EvalMode::Vdw:
        return v_components_vdw(particle, surface, geom, quad);
    case EvalMode::Cp:
    default:
        return v_components_cp(particle, surface, geom, quad, opts);
    }
}

QuadratureResult v_sum_trace_form(const ParticleModel& particle,
                                  const PermittivityModel& surface,
                                  const Geometry& geom, const QuadratureConfig& quad,
                                  const EvalOptions& opts)
{
    geom.validate();
    particle.validate();
    if (particle.aspect_ratio != 1.0)
        throw std::invalid_argument("trace-form assembly requires an isotropic particle");

    const double c_eff = kSpeedOfLight * opts.c_scale;
    const double z0 = geom.z0;
    const double u = geom.u();
    const double omega_hat_s = surface.dispersive()
                                   ? surface.omega_p() * z0 / c_eff
                                   : 0.0;

    QuadratureConfig k_cfg = quad;
    k_cfg.rel_tol = quad.rel_tol * 2.0 / 3.0;
    k_cfg.scale = 0.5 + 0.3 * u;

    auto outer = [&](double s) -> double {
        const SurfaceResponse eps = surface_response(surface, s, omega_hat_s);
        auto f = [&](double k, double phi) -> double {
            const double kpx = k * std::cos(phi);
            const double kpy = k * std::sin(phi);
            const Mat3c m = fused_integrand(s, kpx, kpy, kpx - u, kpy, eps);
            return (m[0][0] + m[1][1] + m[2][2]).real();
        };
        double w = 0.0;
        integrate_k_polar_v(f, k_cfg, w);
        const double alpha = particle.reduced_tensor_at(s * c_eff / z0).xx;
        return alpha * w;
    };

    QuadratureConfig s_cfg = quad;
    s_cfg.rel_tol = quad.rel_tol / 3.0;
    s_cfg.scale = 0.5 * std::max(1.0, std::sqrt(u));
    double vhat = 0.0;
    QuadratureResult res = integrate_semi_infinite_v(outer, s_cfg, vhat);

    const double si = kVacuumPermittivity * particle.volume * c_eff / std::pow(z0, 5);
    res.value = vhat * si;
    res.error_estimate *= si;
    return res;
}

std::pair<double, double> amplitude_phase(const VComponents& v)
{
    const double s = v.sum();
    if (s == 0.0 && v.xz == 0.0)
        throw std::domain_error("amplitude_phase: degenerate configuration (V_Sum = V_xz = 0)");
    return {std::hypot(s, v.xz), std::atan2(v.xz, s)};
}

double lateral_energy(double x0, const Geometry& geom, double amplitude_si,
                      double delta)
{
    const double pref = geom.amplitude * kHbar /
                        (8.0 * kPi * kPi * kPi * kVacuumPermittivity);
    return pref * amplitude_si * std::cos(geom.k_c * x0 - delta);
}

double equilibrium_position(const Geometry& geom, double delta)
{
    const double lc = geom.lambda_c();
    double x = (delta + kPi) / geom.k_c;
    x = std::fmod(x, lc);
    if (x < 0.0) x += lc;
    return x;
}

} // namespace casimir
