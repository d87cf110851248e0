#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "casimir/constants.hpp"
#include "casimir/scattering.hpp"

using namespace casimir;

namespace {

const double c = 299792458.0;

WaveState ws(double kx, double ky, double xi, const Permittivity& eps)
{
    return WaveState::make(kx, ky, xi, eps, c);
}

const std::array<PolarizationChannel, 4> kChannels = {{
    {Polarization::TE, Polarization::TE},
    {Polarization::TE, Polarization::TM},
    {Polarization::TM, Polarization::TE},
    {Polarization::TM, Polarization::TM},
}};

} // namespace

TEST_CASE("angle factors")
{
    auto [S, C] = angle_factors(1.0, 0.0, 0.0, 2.0);
    CHECK(S == doctest::Approx(-1.0));
    CHECK(C == doctest::Approx(0.0));
    auto [S2, C2] = angle_factors(3.0, 4.0, 6.0, 8.0);  // parallel
    CHECK(S2 == doctest::Approx(0.0));
    CHECK(C2 == doctest::Approx(1.0));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const double a = d(rng), b = d(rng), e = d(rng), f = d(rng);
        if (std::hypot(a, b) < 1e-3 || std::hypot(e, f) < 1e-3) continue;
        auto [s1, c1] = angle_factors(a, b, e, f);
        CHECK(s1 * s1 + c1 * c1 == doctest::Approx(1.0).epsilon(1e-13));
        auto [s2r, c2r] = angle_factors(e, f, a, b);  // swap antisymmetry
        CHECK(s2r == doctest::Approx(-s1).epsilon(1e-12));
        CHECK(c2r == doctest::Approx(c1).epsilon(1e-12));
    }
    CHECK_THROWS_AS(angle_factors(0.0, 0.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("reflection vanishes for vacuum (eps = 1)")
{
    const Permittivity vac{false, 1.0, 0.0};
    const auto k = ws(2e7, 1e7, 3e15, vac);
    const auto kp = ws(-1e7, 2.5e7, 3e15, vac);
    for (auto ch : kChannels)
        CHECK(reflection_first_order(ch, k, kp, vac, c) == doctest::Approx(0.0));
}

TEST_CASE("finite eps = 1e10 approaches the conductor limits")
{
    const Permittivity big{false, 1e10, 1e10 - 1.0};
    const Permittivity inf{true, 0.0, 0.0};
    std::mt19937 rng(99);
    // the limit is approached as kappa/(sqrt(eps) xi/c); sample k of order
    // xi/c so eps = 1e10 sits inside its asymptotic regime
    std::uniform_real_distribution<double> ratio(0.1, 3.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> logxi(std::log(1e14), std::log(1e17));
    for (int i = 0; i < 100; ++i) {
        const double xi = std::exp(logxi(rng));
        const double km = ratio(rng) * xi / c, kpm = ratio(rng) * xi / c;
        const double a1 = ang(rng), a2 = ang(rng);
        const auto k = ws(km * std::cos(a1), km * std::sin(a1), xi, big);
        const auto kp = ws(kpm * std::cos(a2), kpm * std::sin(a2), xi, big);
        const auto ki = ws(k.kx, k.ky, xi, inf);
        const auto kpi = ws(kp.kx, kp.ky, xi, inf);
        for (auto ch : kChannels) {
            const double fin = reflection_first_order(ch, k, kp, big, c);
            const double lim = reflection_first_order(ch, ki, kpi, inf, c);
            const double scale = std::max(std::fabs(lim), 1e-30);
            CHECK(std::fabs(fin - lim) / scale <= 1e-4);
        }
    }
}

TEST_CASE("surface response")
{
    const auto gold = PermittivityModel::plasma(kGoldOmegaP);
    const double omega_hat = 0.7;
    auto r = surface_response(gold, 0.2, omega_hat);
    CHECK(!r.infinite);
    CHECK(r.em1 == doctest::Approx((0.7 / 0.2) * (0.7 / 0.2)).epsilon(1e-15));
    CHECK(r.em1_s2 == omega_hat * omega_hat);  // exact, no s round-trip

    auto d = surface_response(PermittivityModel::constant(3.0), 0.5, 0.0);
    CHECK(d.eps == 3.0);
    CHECK(d.em1_s2 == doctest::Approx(2.0 * 0.25));

    CHECK(surface_response(PermittivityModel::perfect_conductor(), 1.0, 0.0).infinite);
}

TEST_CASE("fused integrand complex structure")
{
    const SurfaceResponse eps{false, 4.0, 3.0, 3.0 * 0.09};
    const Mat3c f = fused_integrand(0.3, 0.8, -0.4, 0.3, 0.9, eps);
    // xx/yy/zz/xy blocks real, xz/yz blocks imaginary
    for (int m : {0, 1})
        for (int n : {0, 1}) CHECK(f[m][n].imag() == doctest::Approx(0.0));
    CHECK(f[2][2].imag() == doctest::Approx(0.0));
    CHECK(f[0][2].real() == doctest::Approx(0.0));
    CHECK(f[2][0].real() == doctest::Approx(0.0));
    CHECK(f[1][2].real() == doctest::Approx(0.0));
    CHECK(f[2][1].real() == doctest::Approx(0.0));
}

TEST_CASE("fused integrand is invariant under y-reflection on the diagonal")
{
    const SurfaceResponse eps{false, 2.5, 1.5, 1.5 * 0.04};
    const Mat3c a = fused_integrand(0.2, 0.6, 0.5, -0.3, 0.7, eps);
    const Mat3c b = fused_integrand(0.2, 0.6, -0.5, -0.3, -0.7, eps);
    for (int m = 0; m < 3; ++m)
        CHECK(a[m][m].real() == doctest::Approx(b[m][m].real()).epsilon(1e-13));
    CHECK(a[0][2].imag() == doctest::Approx(b[0][2].imag()).epsilon(1e-13));
}

TEST_CASE("fused integrand matches the vdW form as s -> 0")
{
    // constant dielectric: the c -> infinity limit is the s -> 0 limit
    const double s = 1e-7;
    for (double e : {1.5, 4.0, 50.0}) {
        const SurfaceResponse eps{false, e, e - 1.0, (e - 1.0) * s * s};
        const SurfaceResponse eps0{false, e, e - 1.0, 0.0};
        const Mat3c f = fused_integrand(s, 0.9, -0.2, 0.1, 0.6, eps);
        const Mat3c g = vdw_limit_integrand(0.9, -0.2, 0.1, 0.6, eps0);
        for (int m = 0; m < 3; ++m)
            for (int n = 0; n < 3; ++n) {
                CHECK(f[m][n].real() ==
                      doctest::Approx(g[m][n].real()).epsilon(1e-5));
                CHECK(f[m][n].imag() ==
                      doctest::Approx(g[m][n].imag()).epsilon(1e-5));
            }
    }
    // perfect conductor marker
    const SurfaceResponse inf{true, 0.0, 0.0, 0.0};
    const Mat3c f = fused_integrand(s, 0.9, -0.2, 0.1, 0.6, inf);
    const Mat3c g = vdw_limit_integrand(0.9, -0.2, 0.1, 0.6, inf);
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
            CHECK(std::abs(f[m][n] - g[m][n]) <= 1e-5 * std::abs(g[m][n]) + 1e-12);
}

TEST_CASE("plasma response drives the fused integrand to the conductor limit")
{
    // omega_hat -> infinity: eps(i s) -> infinity at every s
    const double s = 0.4;
    const double w = 1e6;
    const SurfaceResponse plasma{false, 1.0 + (w / s) * (w / s), (w / s) * (w / s),
                                 w * w};
    const SurfaceResponse inf{true, 0.0, 0.0, 0.0};
    const Mat3c f = fused_integrand(s, 1.1, 0.3, 0.2, -0.8, plasma);
    const Mat3c g = fused_integrand(s, 1.1, 0.3, 0.2, -0.8, inf);
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
            CHECK(std::abs(f[m][n] - g[m][n]) <= 1e-4 * std::abs(g[m][n]) + 1e-15);
}

TEST_CASE("raw reflection and fused integrand agree dimensionally")
{
    // the stripped/fused path must equal s^2 a^{mn} assembled from the raw
    // pieces (z0 = 1 units, so the raw path uses xi = s c)
    const double s = 0.35;
    const double e = 5.0;
    const Permittivity eps{false, e, e - 1.0};
    const SurfaceResponse sr{false, e, e - 1.0, (e - 1.0) * s * s};
    const double kpx = 0.7, kpy = -0.4, kppx = 0.2, kppy = 0.5;

    const auto kin = ws(kpx, kpy, s * c, eps);    // z0 = 1 m
    const auto kout = ws(kppx, kppy, s * c, eps);
    Mat3c raw{};
    for (auto ch : kChannels) {
        const double R = reflection_first_order(ch, kin, kout, eps, c);
        const Mat3c m = outer_product_matrix(ch, kin, kout, c);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) raw[i][j] += R * m[i][j];
    }
    const double round_trip =
        std::exp(-(kin.kappa + kout.kappa)) / (2.0 * kout.kappa);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) raw[i][j] *= s * s * round_trip;

    const Mat3c fused = fused_integrand(s, kpx, kpy, kppx, kppy, sr);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(raw[i][j] - fused[i][j]) <=
                  1e-12 * std::abs(fused[i][j]) + 1e-18);
}
