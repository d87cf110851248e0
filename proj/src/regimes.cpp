#include "casimir/regimes.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "casimir/constants.hpp"

namespace casimir {

ForceRegime classify(double delta, double delta_tol)
{
    if (!(delta > -kPi - 1e-12 && delta <= kPi + 1e-12))
        throw std::domain_error("classify: delta out of (-pi, pi]");
    if (std::fabs(std::fabs(delta) - kPi) <= delta_tol) return ForceRegime::Peak;
    if (std::fabs(delta) <= delta_tol) return ForceRegime::Valley;
    return ForceRegime::Intermediate;
}

std::string regime_name(ForceRegime r)
{
    switch (r) {
    case ForceRegime::Peak: return "peak";
    case ForceRegime::Valley: return "valley";
    default: return "intermediate";
    }
}

unsigned worker_thread_count()
{
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("CASIMIR_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v < 1024) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return n;
}

namespace {

Geometry geometry_for(double lambda_over_z0, double z0, double amplitude)
{
    return Geometry{amplitude, 2.0 * kPi / (lambda_over_z0 * z0), z0};
}

} // namespace

std::vector<SweepRow> sweep(const ParticleModel& particle,
                            const PermittivityModel& surface, double z0,
                            double corrugation_amplitude, const SweepRequest& req,
                            const QuadratureConfig& quad, const EvalOptions& opts)
{
    if (req.points < 2)
        throw std::invalid_argument("sweep: need at least 2 points");
    if (!(req.lambda_min >= 0.1 && req.lambda_max <= 50.0 && req.lambda_min < req.lambda_max))
        throw std::invalid_argument("sweep: range must lie within [0.1, 50]");

    std::vector<SweepRow> rows(req.points);
    const double step = (req.lambda_max - req.lambda_min) /
                        static_cast<double>(req.points - 1);

    auto eval_row = [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.lambda_over_z0 = req.lambda_min + step * static_cast<double>(i);
        try {
            const Geometry geom =
                geometry_for(row.lambda_over_z0, z0, corrugation_amplitude);
            row.v = v_components(req.mode, particle, surface, geom, quad, opts);
            const auto [amp, delta] = amplitude_phase(row.v);
            row.amplitude = amp;
            row.delta = delta;
            row.regime = classify(delta, req.delta_tol);
            row.x_eq = equilibrium_position(geom, delta);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    const unsigned workers =
        std::min<unsigned>(worker_thread_count(), static_cast<unsigned>(req.points));
    if (workers <= 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) eval_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= rows.size()) return;
                    eval_row(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return rows;
}

namespace {

// Evaluate V_Sum with a certified sign: tighten the quadrature tolerance
// until |V_Sum| exceeds 3x its error estimate or the floor is reached.
struct CertifiedSum {
    double value;
    double error;
};

CertifiedSum certified_v_sum(const ParticleModel& particle,
                             const PermittivityModel& surface, double z0,
                             double amplitude, EvalMode mode, double lambda,
                             const QuadratureConfig& quad, const EvalOptions& opts,
                             std::size_t& evals)
{
    const Geometry geom = geometry_for(lambda, z0, amplitude);
    QuadratureConfig cfg = quad;
    for (int attempt = 0; attempt < 5; ++attempt) {
        const VComponents v = v_components(mode, particle, surface, geom, cfg, opts);
        evals += v.evaluations;
        const double err = 4.0 * v.error_estimates[0];  // joint bound over components
        if (std::fabs(v.sum()) > 3.0 * err || cfg.rel_tol <= 1e-12)
            return {v.sum(), err};
        cfg.rel_tol *= 0.04;
    }
    return {0.0, 0.0};
}

} // namespace

std::optional<std::pair<double, double>> scan_for_bracket(
    const ParticleModel& particle, const PermittivityModel& surface, double z0,
    double corrugation_amplitude, EvalMode mode, double lo, double hi,
    std::size_t points, const QuadratureConfig& quad, const EvalOptions& opts)
{
    SweepRequest req;
    req.mode = mode;
    req.lambda_min = lo;
    req.lambda_max = hi;
    req.points = points;
    const auto rows =
        sweep(particle, surface, z0, corrugation_amplitude, req, quad, opts);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (!rows[i - 1].ok() || !rows[i].ok()) continue;
        if (rows[i - 1].v.sum() * rows[i].v.sum() < 0.0)
            return std::make_pair(rows[i - 1].lambda_over_z0, rows[i].lambda_over_z0);
    }
    return std::nullopt;
}

TransitionResult find_transition(const ParticleModel& particle,
                                 const PermittivityModel& surface, double z0,
                                 double corrugation_amplitude, EvalMode mode,
                                 double lo, double hi, const QuadratureConfig& quad,
                                 const EvalOptions& opts)
{
    if (!(lo < hi))
        throw std::invalid_argument("find_transition: empty bracket");
    std::size_t evals = 0;
    auto f = [&](double lambda) {
        return certified_v_sum(particle, surface, z0, corrugation_amplitude, mode,
                               lambda, quad, opts, evals);
    };
    CertifiedSum flo = f(lo);
    CertifiedSum fhi = f(hi);
    if (flo.value == 0.0 || fhi.value == 0.0)
        throw ToleranceFloorError("find_transition: sign not certifiable at bracket ends",
                                  lo, hi);
    if (flo.value * fhi.value > 0.0)
        throw BracketError("find_transition: no sign change over the bracket");

    while ((hi - lo) > 1e-4 * 0.5 * (hi + lo)) {
        const double mid = 0.5 * (lo + hi);
        const CertifiedSum fm = f(mid);
        if (fm.value == 0.0)
            throw ToleranceFloorError("find_transition: quadrature noise exceeds "
                                      "|V_Sum| near the root", lo, hi);
        if (flo.value * fm.value < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    // re-verify the flanks
    if (!(flo.value * fhi.value < 0.0))
        throw BracketError("find_transition: flank signs inconsistent after refinement");
    return {0.5 * (lo + hi), lo, hi, evals};
}

} // namespace casimir
