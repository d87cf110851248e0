#include "casimir/scattering.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace casimir {

namespace {
constexpr Complex kImag{0.0, 1.0};
}

WaveState WaveState::make(double kx, double ky, double xi, const Permittivity& eps,
                          double c_light)
{
    const double k2 = kx * kx + ky * ky;
    const double s = xi / c_light;
    WaveState w;
    w.kx = kx;
    w.ky = ky;
    w.xi = xi;
    w.kappa = std::sqrt(s * s + k2);
    w.kappa_t = eps.infinite ? std::numeric_limits<double>::infinity()
                             : std::sqrt(s * s + eps.minus_one * s * s + k2);
    return w;
}

double WaveState::mag() const { return std::hypot(kx, ky); }

AngleFactors angle_factors(double kx, double ky, double kpx, double kpy)
{
    const double m1 = std::hypot(kx, ky);
    const double m2 = std::hypot(kpx, kpy);
    if (!(m1 > 0.0) || !(m2 > 0.0))
        throw std::domain_error("angle_factors: zero-magnitude wavevector");
    const double inv = 1.0 / (m1 * m2);
    return {(ky * kpx - kx * kpy) * inv, (kx * kpx + ky * kpy) * inv};
}

Mat3c outer_product_matrix(PolarizationChannel ch, const WaveState& k_in,
                           const WaveState& k_out, double c_light)
{
    const double p = k_in.mag();
    const double q = k_out.mag();
    if (!(p > 0.0) || !(q > 0.0))
        throw std::domain_error("outer_product_matrix: zero-magnitude wavevector");
    const double inv = 1.0 / (p * q);
    Mat3c m{};
    if (ch.in == Polarization::TE && ch.out == Polarization::TE) {
        m[0][0] = k_out.ky * k_in.ky * inv;
        m[0][1] = -k_out.ky * k_in.kx * inv;
        m[1][0] = -k_out.kx * k_in.ky * inv;
        m[1][1] = k_out.kx * k_in.kx * inv;
        return m;
    }
    if (!(k_in.xi > 0.0))
        throw std::domain_error("outer_product_matrix: TM channels need xi > 0");
    const double cx = c_light / k_in.xi;
    if (ch.in == Polarization::TM && ch.out == Polarization::TE) {
        const double f = cx * inv;
        m[0][0] = -k_out.ky * k_in.kappa * k_in.kx * f;
        m[0][1] = -k_out.ky * k_in.kappa * k_in.ky * f;
        m[0][2] = -kImag * (k_out.ky * p * p * f);
        m[1][0] = k_out.kx * k_in.kappa * k_in.kx * f;
        m[1][1] = k_out.kx * k_in.kappa * k_in.ky * f;
        m[1][2] = kImag * (k_out.kx * p * p * f);
        return m;
    }
    if (ch.in == Polarization::TE && ch.out == Polarization::TM) {
        const double f = cx * inv;
        m[0][0] = k_out.kappa * k_out.kx * k_in.ky * f;
        m[0][1] = -k_out.kappa * k_out.kx * k_in.kx * f;
        m[1][0] = k_out.kappa * k_out.ky * k_in.ky * f;
        m[1][1] = -k_out.kappa * k_out.ky * k_in.kx * f;
        m[2][0] = -kImag * (k_in.ky * q * q * f);
        m[2][1] = kImag * (k_in.kx * q * q * f);
        return m;
    }
    // TM-TM
    const double f = cx * cx * inv;
    m[0][0] = -k_out.kappa * k_out.kx * k_in.kappa * k_in.kx * f;
    m[0][1] = -k_out.kappa * k_out.kx * k_in.kappa * k_in.ky * f;
    m[0][2] = -kImag * (k_out.kappa * k_out.kx * p * p * f);
    m[1][0] = -k_out.kappa * k_out.ky * k_in.kappa * k_in.kx * f;
    m[1][1] = -k_out.kappa * k_out.ky * k_in.kappa * k_in.ky * f;
    m[1][2] = -kImag * (k_out.kappa * k_out.ky * p * p * f);
    m[2][0] = kImag * (k_in.kappa * k_in.kx * q * q * f);
    m[2][1] = kImag * (k_in.kappa * k_in.ky * q * q * f);
    m[2][2] = -q * q * p * p * f;
    return m;
}

double reflection_first_order(PolarizationChannel ch, const WaveState& k,
                              const WaveState& kp, const Permittivity& eps,
                              double c_light)
{
    const auto [S, C] = angle_factors(k.kx, k.ky, kp.kx, kp.ky);
    const double s = k.xi / c_light;

    if (eps.infinite) {
        if (ch.in == Polarization::TE && ch.out == Polarization::TE)
            return -2.0 * kp.kappa * C;
        if (ch.in == Polarization::TE && ch.out == Polarization::TM)
            return -2.0 * s * S;
        if (ch.in == Polarization::TM && ch.out == Polarization::TE)
            return -2.0 * s * (kp.kappa / k.kappa) * S;
        return (2.0 / k.kappa) * (k.mag() * kp.mag() + s * s * C);
    }

    const double e = eps.value;
    const double em1 = eps.minus_one;
    // kappa - kappa_t = -(eps-1) s^2 / (kappa + kappa_t), cancellation-free
    const double dk = -em1 * s * s / (k.kappa + k.kappa_t);
    if (ch.in == Polarization::TE && ch.out == Polarization::TE)
        return 2.0 * kp.kappa * dk * C / (kp.kappa + kp.kappa_t);
    if (ch.in == Polarization::TE && ch.out == Polarization::TM)
        return 2.0 * kp.kappa * (c_light / k.xi) * kp.kappa_t * dk * S /
               (e * kp.kappa + kp.kappa_t);
    // TM rows share the denominator xi^2/c^2 - kappa^2 (eps + 1) < 0
    const double den = s * s - k.kappa * k.kappa * (e + 1.0);
    assert(den < 0.0);
    // eps kappa - kappa_t = (eps-1)(kappa - s^2/(kappa + kappa_t))
    const double ekmt = em1 * (k.kappa - s * s / (k.kappa + k.kappa_t));
    if (ch.in == Polarization::TM && ch.out == Polarization::TE)
        return 2.0 * kp.kappa * (s / (kp.kappa + kp.kappa_t)) * ekmt * k.kappa_t * S / den;
    return -2.0 * kp.kappa * ekmt * (e * k.mag() * kp.mag() + k.kappa_t * kp.kappa_t * C) /
           ((e * kp.kappa + kp.kappa_t) * den);
}

SurfaceResponse surface_response(const PermittivityModel& m, double s, double omega_hat)
{
    switch (m.kind()) {
    case MaterialKind::Plasma: {
        const double em1 = (omega_hat / s) * (omega_hat / s);
        return {false, 1.0 + em1, em1, omega_hat * omega_hat};
    }
    case MaterialKind::Constant: {
        const double em1 = m.epsilon_constant() - 1.0;
        return {false, m.epsilon_constant(), em1, em1 * s * s};
    }
    case MaterialKind::PerfectConductor:
    default:
        return {true, 0.0, 0.0, 0.0};
    }
}

Mat3c fused_integrand(double s, double kpx, double kpy, double kppx, double kppy,
                      const SurfaceResponse& eps)
{
    const double p = std::hypot(kpx, kpy);    // |k'|  (incoming on the particle)
    const double q = std::hypot(kppx, kppy);  // |k''|
    if (!(p > 0.0) || !(q > 0.0))
        throw std::domain_error("fused_integrand: zero-magnitude wavevector");
    const double s2 = s * s;
    const double kap_p = std::sqrt(s2 + p * p);
    const double kap_q = std::sqrt(s2 + q * q);
    const double inv_pq = 1.0 / (p * q);
    const double S = (kpy * kppx - kpx * kppy) * inv_pq;
    const double C = (kpx * kppx + kpy * kppy) * inv_pq;

    // reflection coefficients with the powers of s that cancel against the
    // TM outer products stripped off
    double r_tete, r_tetm, r_tmte, r_tmtm;
    if (eps.infinite) {
        r_tete = -2.0 * kap_q * C;
        r_tetm = -2.0 * s2 * S;
        r_tmte = -2.0 * (kap_q / kap_p) * S;
        r_tmtm = (2.0 / kap_p) * (p * q + s2 * C);
    } else {
        const double e = eps.eps;
        const double kt_p = std::sqrt(s2 + eps.em1_s2 + p * p);
        const double kt_q = std::sqrt(s2 + eps.em1_s2 + q * q);
        const double dk_p = -eps.em1_s2 / (kap_p + kt_p);  // kappa' - kappa_t'
        const double den_tm = s2 - kap_p * kap_p * (e + 1.0);
        assert(den_tm < 0.0);
        const double ekmt = eps.em1 * (kap_p - s2 / (kap_p + kt_p));  // eps kappa' - kappa_t'
        r_tete = 2.0 * kap_q * dk_p * C / (kap_q + kt_q);
        r_tetm = 2.0 * kap_q * kt_q * dk_p * S / (e * kap_q + kt_q);
        r_tmte = 2.0 * kap_q * ekmt * kt_p * S / ((kap_q + kt_q) * den_tm);
        r_tmtm = -2.0 * kap_q * ekmt * (e * p * q + kt_p * kt_q * C) /
                 ((e * kap_q + kt_q) * den_tm);
    }

    const double pref = std::exp(-(kap_p + kap_q)) / (2.0 * kap_q) * inv_pq;
    const double w1 = pref * s2 * r_tete;  // TE,TE
    const double w2 = pref * r_tetm;       // in TE, out TM
    const double w3 = pref * s2 * r_tmte;  // in TM, out TE
    const double w4 = pref * r_tmtm;       // TM,TM

    const double p2 = p * p;
    const double q2 = q * q;
    Mat3c f{};
    // in TE, out TE
    f[0][0] += w1 * (kppy * kpy);
    f[0][1] += w1 * (-kppy * kpx);
    f[1][0] += w1 * (-kppx * kpy);
    f[1][1] += w1 * (kppx * kpx);
    // in TE, out TM  (stripped third matrix; kappa'' on the TM side)
    f[0][0] += w2 * (kap_q * kppx * kpy);
    f[0][1] += w2 * (-kap_q * kppx * kpx);
    f[1][0] += w2 * (kap_q * kppy * kpy);
    f[1][1] += w2 * (-kap_q * kppy * kpx);
    f[2][0] += -kImag * (w2 * kpy * q2);
    f[2][1] += kImag * (w2 * kpx * q2);
    // in TM, out TE  (stripped second matrix; kappa' on the TM side)
    f[0][0] += w3 * (-kppy * kap_p * kpx);
    f[0][1] += w3 * (-kppy * kap_p * kpy);
    f[0][2] += -kImag * (w3 * kppy * p2);
    f[1][0] += w3 * (kppx * kap_p * kpx);
    f[1][1] += w3 * (kppx * kap_p * kpy);
    f[1][2] += kImag * (w3 * kppx * p2);
    // TM, TM
    f[0][0] += w4 * (-kap_q * kppx * kap_p * kpx);
    f[0][1] += w4 * (-kap_q * kppx * kap_p * kpy);
    f[0][2] += -kImag * (w4 * kap_q * kppx * p2);
    f[1][0] += w4 * (-kap_q * kppy * kap_p * kpx);
    f[1][1] += w4 * (-kap_q * kppy * kap_p * kpy);
    f[1][2] += -kImag * (w4 * kap_q * kppy * p2);
    f[2][0] += kImag * (w4 * kap_p * kpx * q2);
    f[2][1] += kImag * (w4 * kap_p * kpy * q2);
    f[2][2] += w4 * (-q2 * p2);
    return f;
}

Mat3c vdw_limit_integrand(double kpx, double kpy, double kppx, double kppy,
                          const SurfaceResponse& eps)
{
    const double p = std::hypot(kpx, kpy);
    const double q = std::hypot(kppx, kppy);
    if (!(p > 0.0) || !(q > 0.0))
        throw std::domain_error("vdw_limit_integrand: zero-magnitude wavevector");
    const double inv_pq = 1.0 / (p * q);
    const double C = (kpx * kppx + kpy * kppy) * inv_pq;
    double weight;
    if (eps.infinite) {
        weight = 1.0;  // lim (eps-1) eps / (eps+1)^2
    } else {
        const double d = 2.0 + eps.em1;
        weight = eps.em1 * (eps.eps + C) / (d * d);
    }
    const double f = weight * std::exp(-(p + q));
    Mat3c g{};
    g[0][0] = f * (-kppx * kpx);
    g[0][1] = f * (-kppx * kpy);
    g[0][2] = -kImag * (f * kppx * p);
    g[1][0] = f * (-kppy * kpx);
    g[1][1] = f * (-kppy * kpy);
    g[1][2] = -kImag * (f * kppy * p);
    g[2][0] = kImag * (f * kpx * q);
    g[2][1] = kImag * (f * kpy * q);
    g[2][2] = f * (-q * p);
    return g;
}

} // namespace casimir
