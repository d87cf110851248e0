#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace casimir {

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    std::size_t max_evaluations = 20'000'000;
    double tail_cutoff_multiplier = 40.0;
    double scale = 1.0;  // decay scale of the integrand (~ 1/beta)
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best, double err)
        : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

namespace detail {

// Value-type glue so the same adaptive scheme integrates scalars and small
// component bundles sharing one set of nodes.
template <class V> struct value_traits;

template <> struct value_traits<double> {
    static double zero() { return 0.0; }
    static void add(double& a, double b) { a += b; }
    static void sub(double& a, double b) { a -= b; }
    static void scale(double& a, double s) { a *= s; }
    static double norm(double a) { return std::fabs(a); }
};

template <std::size_t N> struct value_traits<std::array<double, N>> {
    using V = std::array<double, N>;
    static V zero() { V v{}; return v; }
    static void add(V& a, const V& b) { for (std::size_t i = 0; i < N; ++i) a[i] += b[i]; }
    static void sub(V& a, const V& b) { for (std::size_t i = 0; i < N; ++i) a[i] -= b[i]; }
    static void scale(V& a, double s) { for (std::size_t i = 0; i < N; ++i) a[i] *= s; }
    static double norm(const V& a)
    {
        double m = 0.0;
        for (double x : a) m = std::max(m, std::fabs(x));
        return m;
    }
};

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK dqk15).
inline constexpr std::array<double, 8> kGK15Nodes = {
    0.991455371120812639206854697526, 0.949107912342758524526189684048,
    0.864864423359769072789712788641, 0.741531185599394439863864773281,
    0.586087235467691130294144838259, 0.405845151377397166906606412077,
    0.207784955007898467600689403773, 0.0};
inline constexpr std::array<double, 8> kGK15WeightsK = {
    0.022935322010529224963732008059, 0.063092092629978553290700663189,
    0.104790010322250183839876322542, 0.140653259715525918745189590510,
    0.169004726639267902826583426599, 0.190350578064785409913256402421,
    0.204432940075298892414161999235, 0.209482141084727828012999174892};
inline constexpr std::array<double, 4> kGK15WeightsG = {
    0.129484966168869693270611432679, 0.279705391489276667901467771424,
    0.381830050505118944950369775489, 0.417959183673469387755102040816};

template <class V, class F>
void gk15(F&& f, double a, double b, V& integral, double& error)
{
    using T = value_traits<V>;
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    V sum_k = T::zero();
    V sum_g = T::zero();
    for (int i = 0; i < 8; ++i) {
        const double x = kGK15Nodes[i];
        V fv = f(c - h * x);
        if (i < 7) {
            V fv2 = f(c + h * x);
            T::add(fv, fv2);
        }
        V wk = fv;
        T::scale(wk, kGK15WeightsK[i]);
        T::add(sum_k, wk);
        if (i % 2 == 1 || i == 7) {
            // Kronrod nodes with odd index are the embedded Gauss-7 nodes
            V wg = fv;
            T::scale(wg, kGK15WeightsG[i / 2]);
            T::add(sum_g, wg);
        }
    }
    T::scale(sum_k, h);
    T::scale(sum_g, h);
    integral = sum_k;
    V diff = sum_k;
    T::sub(diff, sum_g);
    error = T::norm(diff);
}

template <class V> struct Panel {
    double a, b;
    V value;
    double error;
};

// Globally adaptive bisection on [a, b]: split the worst panel until the
// summed error estimate meets tolerance.  Panel sums are accumulated in
// left-to-right order so the result is independent of the refinement path.
template <class V, class F>
QuadratureResult adaptive_finite(F&& f, double a, double b,
                                 const QuadratureConfig& cfg, V& out)
{
    using T = value_traits<V>;
    std::size_t evals = 0;
    auto counted = [&](double x) { ++evals; return f(x); };

    auto cmp = [](const Panel<V>& p, const Panel<V>& q) { return p.error < q.error; };
    std::vector<Panel<V>> panels;
    {
        Panel<V> p{a, b, T::zero(), 0.0};
        gk15(counted, a, b, p.value, p.error);
        panels.push_back(std::move(p));
        std::push_heap(panels.begin(), panels.end(), cmp);
    }

    auto totals = [&] {
        V v = T::zero();
        double e = 0.0;
        for (const auto& p : panels) {
            T::add(v, p.value);
            e += p.error;
        }
        return std::pair<V, double>(v, e);
    };

    for (;;) {
        auto [v, e] = totals();
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * T::norm(v));
        if (e <= tol) break;
        if (evals + 30 > cfg.max_evaluations)
            throw ConvergenceError("quadrature: max evaluations exceeded",
                                   T::norm(v), e);
        std::pop_heap(panels.begin(), panels.end(), cmp);
        Panel<V> worst = panels.back();
        panels.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw ConvergenceError("quadrature: panel width underflow",
                                   T::norm(v), e);
        Panel<V> left{worst.a, mid, T::zero(), 0.0};
        Panel<V> right{mid, worst.b, T::zero(), 0.0};
        gk15(counted, left.a, left.b, left.value, left.error);
        gk15(counted, right.a, right.b, right.value, right.error);
        panels.push_back(std::move(left));
        std::push_heap(panels.begin(), panels.end(), cmp);
        panels.push_back(std::move(right));
        std::push_heap(panels.begin(), panels.end(), cmp);
    }

    std::sort(panels.begin(), panels.end(),
              [](const Panel<V>& p, const Panel<V>& q) { return p.a < q.a; });
    V v = T::zero();
    double e = 0.0;
    for (const auto& p : panels) {
        T::add(v, p.value);
        e += p.error;
    }
    out = v;
    return {T::norm(v), e, evals};
}

} // namespace detail

// integral_0^inf f(x) dx for f finite on (0, inf) and decaying at least
// exponentially on the scale cfg.scale.  The axis is compressed through
// x = scale (e^u - 1), which spends panels evenly over the decades that
// matter, and truncated at x = scale * tail_cutoff_multiplier.  Nodes are
// strictly interior: f is never called at x = 0.
template <class V, class F>
QuadratureResult integrate_semi_infinite_v(F&& f, const QuadratureConfig& cfg, V& out)
{
    if (!(cfg.rel_tol > 0.0))
        throw std::invalid_argument("quadrature: rel_tol must be positive");
    if (!(cfg.scale > 0.0))
        throw std::invalid_argument("quadrature: scale must be positive");
    const double umax = std::log1p(cfg.tail_cutoff_multiplier);
    auto g = [&](double u) {
        // expm1 keeps the mapped node strictly positive for tiny u
        V v = f(cfg.scale * std::expm1(u));
        detail::value_traits<V>::scale(v, cfg.scale * std::exp(u));
        return v;
    };
    return detail::adaptive_finite(g, 0.0, umax, cfg, out);
}

inline QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                                const QuadratureConfig& cfg)
{
    double out = 0.0;
    QuadratureResult r = integrate_semi_infinite_v(f, cfg, out);
    r.value = out;
    return r;
}

// integral_0^{2pi} f(phi) dphi for smooth 2pi-periodic f: midpoint
// trapezoid rule with doubling, spectrally accurate.  Error estimate is
// the last doubling difference.
template <class V, class F>
QuadratureResult integrate_periodic_v(F&& f, const QuadratureConfig& cfg, V& out)
{
    using T = detail::value_traits<V>;
    constexpr double two_pi = 6.283185307179586476925286766559;
    std::size_t evals = 0;
    auto sum_n = [&](std::size_t n) {
        V s = T::zero();
        const double h = two_pi / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) {
            V v = f(h * (static_cast<double>(j) + 0.5));
            T::add(s, v);
        }
        T::scale(s, h);
        evals += n;
        return s;
    };
    V prev = sum_n(16);
    for (std::size_t n = 32; n <= 16384; n *= 2) {
        if (evals + n > cfg.max_evaluations)
            throw ConvergenceError("periodic quadrature: max evaluations exceeded",
                                   T::norm(prev), 0.0);
        V cur = sum_n(n);
        V diff = cur;
        T::sub(diff, prev);
        const double err = T::norm(diff);
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * T::norm(cur));
        if (err <= tol) {
            out = cur;
            return {T::norm(cur), err, evals};
        }
        prev = cur;
    }
    out = prev;
    throw ConvergenceError("periodic quadrature: no convergence", T::norm(prev), 0.0);
}

// integral_0^inf dk k integral_0^{2pi} dphi f(k, phi) in polar coordinates,
// exponentially damped in k on scale cfg.scale.  Tolerances are budgeted
// between the radial and angular levels.
template <class V, class F>
QuadratureResult integrate_k_polar_v(F&& f, const QuadratureConfig& cfg, V& out)
{
    using T = detail::value_traits<V>;
    QuadratureConfig inner = cfg;
    inner.rel_tol = cfg.rel_tol * 0.5;
    inner.abs_tol = 0.0;
    std::size_t inner_evals = 0;
    auto radial = [&](double k) {
        V v = T::zero();
        auto slice = [&](double phi) { return f(k, phi); };
        try {
            QuadratureResult r = integrate_periodic_v(slice, inner, v);
            inner_evals += r.evaluations;
        } catch (const ConvergenceError&) {
            // non-smooth angular slice (the integrand has a kink where the
            // shifted wavevector magnitude crosses zero): fall back to
            // adaptive panels, which localize the feature
            constexpr double two_pi = 6.283185307179586476925286766559;
            QuadratureResult r = detail::adaptive_finite(slice, 0.0, two_pi,
                                                         inner, v);
            inner_evals += r.evaluations;
        }
        T::scale(v, k);
        return v;
    };
    QuadratureConfig outer = cfg;
    outer.rel_tol = cfg.rel_tol * 0.5;
    QuadratureResult r = integrate_semi_infinite_v(radial, outer, out);
    r.evaluations += inner_evals;
    return r;
}

inline QuadratureResult integrate_k_polar(const std::function<double(double, double)>& f,
                                          const QuadratureConfig& cfg)
{
    double out = 0.0;
    QuadratureResult r = integrate_k_polar_v(f, cfg, out);
    r.value = out;
    return r;
}

} // namespace casimir
