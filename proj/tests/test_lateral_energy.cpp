#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/lateral_energy.hpp"

using namespace casimir;

namespace {

ParticleModel gold_particle(double r, double theta, double phi = 0.0)
{
    ParticleModel p;
    p.aspect_ratio = r;
    p.volume = 1e-27;  // 1000 nm^3; cancels from every normalized quantity
    p.material = PermittivityModel::plasma(kGoldOmegaP);
    p.theta = theta;
    p.phi = phi;
    return p;
}

Geometry geom_of(double z0, double lambda_over_z0, double a = -1.0)
{
    if (a < 0.0) a = 0.05 * z0;
    return Geometry{a, 2.0 * kPi / (lambda_over_z0 * z0), z0};
}

} // namespace

TEST_CASE("geometry validation")
{
    CHECK_THROWS_AS((Geometry{5e-9, 1e7, 3e-9}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((Geometry{-1e-9, 1e7, 3e-8}).validate(), std::invalid_argument);
    const Geometry g = geom_of(30e-9, 4.0);
    g.validate();
    CHECK(g.lambda_c() == doctest::Approx(120e-9).epsilon(1e-14));
    CHECK(g.u() == doctest::Approx(2.0 * kPi / 4.0).epsilon(1e-14));
    CHECK(g.within_perturbative_validity());
    CHECK(!geom_of(30e-9, 4.0, 10e-9).within_perturbative_validity());
}

TEST_CASE("reference frequency fallback chain")
{
    const auto gold = PermittivityModel::plasma(kGoldOmegaP);
    const auto diel = PermittivityModel::constant(3.0);
    auto p = gold_particle(2.0, kPi / 2);
    CHECK(reference_frequency(p, diel, 30e-9) == kGoldOmegaP);
    p.material = diel;
    CHECK(reference_frequency(p, gold, 30e-9) == kGoldOmegaP);
    CHECK(reference_frequency(p, diel, 30e-9) ==
          doctest::Approx(kSpeedOfLight / 30e-9));
}

TEST_CASE("vdW kernels from the frozen Bessel references")
{
    const auto k = kernels_vdw(1.0);
    const double K2 = 1.62483889863517748, K3 = 7.10126282473794451;
    CHECK(!k.underflowed);
    CHECK(k.cond_yy == doctest::Approx(K3).epsilon(1e-12));
    CHECK(k.diel_yy == doctest::Approx(8.0 * K2 - K3).epsilon(1e-12));
    CHECK(k.cond_xx == doctest::Approx(K3 - K2).epsilon(1e-12));
    CHECK(k.diel_xx ==
          doctest::Approx((56.0 / 3.0 + 1.0) * K2 - 11.0 / 3.0 * K3).epsilon(1e-12));
    CHECK(k.cond_zz ==
          doctest::Approx((16.0 / 3.0 + 1.0) * K2 + 2.0 / 3.0 * K3).epsilon(1e-12));
    CHECK(k.diel_zz == doctest::Approx(2.0 * K3 - K2).epsilon(1e-12));
    CHECK(k.cond_xz == doctest::Approx(8.0 / 3.0 * K2 - K3).epsilon(1e-12));
    CHECK(k.diel_xz == doctest::Approx(K3 - 16.0 / 3.0 * K2).epsilon(1e-12));
    // conductor/dielectric pairs sum in a sign-locked way: at the conductor
    // limit the bracket eps*cond + diel is dominated by eps*cond
    CHECK(kernels_vdw(800.0).underflowed);
    CHECK_THROWS_AS(kernels_vdw(0.0), std::domain_error);
}

TEST_CASE("kernel sum rule: xx + zz = yy-like combination stays negative-definite in V_Sum prefactor")
{
    // the three conductor kernels are positive below the transition scale
    const auto k = kernels_vdw(0.5);
    CHECK(k.cond_yy > 0.0);
    CHECK(k.cond_zz > 0.0);
}

TEST_CASE("closed-form vdW path equals the wavevector-plane route")
{
    const auto p = gold_particle(2.0, kPi / 2);
    const auto surf = PermittivityModel::plasma(kGoldOmegaP);
    QuadratureConfig quad;
    quad.rel_tol = 1e-7;
    for (double lam : {2.0, 6.0}) {
        const Geometry g = geom_of(30e-9, lam);
        const VComponents a = v_components_vdw(p, surf, g, quad);
        const VComponents b = v_components_vdw_3d(p, surf, g, quad);
        CHECK(a.xx == doctest::Approx(b.xx).epsilon(2e-4));
        CHECK(a.yy == doctest::Approx(b.yy).epsilon(2e-4));
        CHECK(a.zz == doctest::Approx(b.zz).epsilon(2e-4));
        CHECK(a.sum() == doctest::Approx(b.sum()).epsilon(2e-3));
    }
}

TEST_CASE("closed-form vdW path, tilted axis: xz component cross-validates")
{
    const auto p = gold_particle(2.0, kPi / 3);
    const auto surf = PermittivityModel::plasma(kGoldOmegaP);
    QuadratureConfig quad;
    quad.rel_tol = 1e-7;
    const Geometry g = geom_of(30e-9, 3.0);
    const VComponents a = v_components_vdw(p, surf, g, quad);
    const VComponents b = v_components_vdw_3d(p, surf, g, quad);
    CHECK(a.xz != 0.0);
    CHECK(a.xz == doctest::Approx(b.xz).epsilon(1e-3));
}

TEST_CASE("vdW path rejects a nondispersive pair")
{
    ParticleModel p = gold_particle(2.0, kPi / 2);
    p.material = PermittivityModel::constant(3.0);
    const auto surf = PermittivityModel::constant(4.0);
    QuadratureConfig quad;
    CHECK_THROWS_AS(v_components_vdw(p, surf, geom_of(30e-9, 4.0), quad),
                    std::invalid_argument);
}

TEST_CASE("structural zero of V_xz at theta = pi/2 and theta = 0")
{
    const auto surf = PermittivityModel::plasma(kGoldOmegaP);
    QuadratureConfig quad;
    quad.rel_tol = 1e-6;
    for (double th : {0.0, kPi / 2}) {
        const auto p = gold_particle(2.0, th);
        const VComponents v = v_components_vdw(p, surf, geom_of(30e-9, 4.0), quad);
        CHECK(v.xz == 0.0);  // alpha_xz = 0 makes the integrand vanish exactly
    }
}

TEST_CASE("amplitude and phase")
{
    VComponents v;
    v.xx = 1.0;
    v.yy = 1.0;
    v.zz = 1.0;
    v.xz = 0.0;
    auto [a0, d0] = amplitude_phase(v);
    CHECK(a0 == doctest::Approx(3.0));
    CHECK(d0 == doctest::Approx(0.0));  // valley

    v.xx = -1.0; v.yy = -1.0; v.zz = -1.0;
    auto [a1, d1] = amplitude_phase(v);
    CHECK(a1 == doctest::Approx(3.0));
    CHECK(d1 == doctest::Approx(kPi));  // peak

    v.xx = 0.0; v.yy = 0.0; v.zz = 0.0; v.xz = 2.0;
    auto [a2, d2] = amplitude_phase(v);
    CHECK(a2 == doctest::Approx(2.0));
    CHECK(d2 == doctest::Approx(kPi / 2));

    v.xz = 0.0;
    CHECK_THROWS_AS(amplitude_phase(v), std::domain_error);
}

TEST_CASE("lateral energy and equilibrium")
{
    const Geometry g = geom_of(30e-9, 4.0, 2e-9);
    const double A = 5e11, delta = 1.1;
    // maximum at k_c x - delta = 0
    const double xmax = delta / g.k_c;
    CHECK(lateral_energy(xmax, g, A, delta) ==
          doctest::Approx(g.amplitude * kHbar * A /
                          (8.0 * kPi * kPi * kPi * kVacuumPermittivity))
              .epsilon(1e-12));
    const double xeq = equilibrium_position(g, delta);
    CHECK(xeq >= 0.0);
    CHECK(xeq < g.lambda_c());
    // minimum of the cosine: second derivative positive, energy minimal
    const double e0 = lateral_energy(xeq, g, A, delta);
    CHECK(e0 < lateral_energy(xeq + 0.01 * g.lambda_c(), g, A, delta));
    CHECK(e0 < lateral_energy(xeq - 0.01 * g.lambda_c(), g, A, delta));
}

TEST_CASE("retarded path collapses to vdW under inflated light speed")
{
    const auto p = gold_particle(2.0, kPi / 2);
    const auto surf = PermittivityModel::plasma(kGoldOmegaP);
    QuadratureConfig quad;
    quad.rel_tol = 1e-6;
    const Geometry g = geom_of(30e-9, 4.0);
    EvalOptions opts;
    opts.c_scale = 1e3;
    const VComponents ret = v_components_retarded(p, surf, g, quad, opts);
    const VComponents vdw = v_components_vdw(p, surf, g, quad);
    CHECK(ret.sum() == doctest::Approx(vdw.sum()).epsilon(2e-3));
    CHECK(ret.xx == doctest::Approx(vdw.xx).epsilon(2e-3));
    CHECK(ret.zz == doctest::Approx(vdw.zz).epsilon(2e-3));
}

TEST_CASE("trace-form assembly matches the anisotropic machinery for a sphere")
{
    const auto p = gold_particle(1.0, 0.9, 0.4);
    const auto surf = PermittivityModel::plasma(kGoldOmegaP);
    QuadratureConfig quad;
    quad.rel_tol = 1e-6;
    const Geometry g = geom_of(100e-9, 3.0);
    const VComponents v = v_components_retarded(p, surf, g, quad);
    const QuadratureResult t = v_sum_trace_form(p, surf, g, quad);
    CHECK(v.sum() == doctest::Approx(t.value).epsilon(1e-4));

    const auto spheroid = gold_particle(2.0, 0.0);
    CHECK_THROWS_AS(v_sum_trace_form(spheroid, surf, g, quad),
                    std::invalid_argument);
}

TEST_CASE("normalization factor is mode independent")
{
    const auto p = gold_particle(2.0, kPi / 2);
    const auto surf = PermittivityModel::plasma(kGoldOmegaP);
    QuadratureConfig quad;
    quad.rel_tol = 1e-5;
    const Geometry g = geom_of(30e-9, 4.0);
    const VComponents a = v_components_vdw(p, surf, g, quad);
    const VComponents b = v_components_retarded(p, surf, g, quad);
    CHECK(a.to_normalized == doctest::Approx(b.to_normalized).epsilon(1e-14));
    // z0^4 / (eps0 V omega_p)
    const double expect = std::pow(30e-9, 4) /
                          (kVacuumPermittivity * 1e-27 * kGoldOmegaP);
    CHECK(a.to_normalized == doctest::Approx(expect).epsilon(1e-14));
}
