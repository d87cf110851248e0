#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casimir/lateral_energy.hpp"

namespace casimir {

// Quadrature noise is the only thing delta_tol needs to absorb; the
// structural zeros of V_xz are exact.
inline constexpr double kDefaultDeltaTol = 1e-6;

ForceRegime classify(double delta, double delta_tol = kDefaultDeltaTol);
std::string regime_name(ForceRegime r);

struct SweepRow {
    double lambda_over_z0 = 0;
    VComponents v;
    double amplitude = 0;  // SI
    double delta = 0;
    ForceRegime regime = ForceRegime::Valley;
    double x_eq = 0;
    std::string error;     // nonempty if this row failed

    bool ok() const { return error.empty(); }
};

struct SweepRequest {
    EvalMode mode = EvalMode::Retarded;
    double lambda_min = 1.0;   // lambda_c / z0
    double lambda_max = 12.0;
    std::size_t points = 50;
    double delta_tol = kDefaultDeltaTol;
};

// Evaluate a grid of lambda_c/z0 values; rows are independent and may be
// computed concurrently (capped by CASIMIR_THREADS), results ordered and
// deterministic.  Per-row failures are recorded, not fatal.
std::vector<SweepRow> sweep(const ParticleModel& particle,
                            const PermittivityModel& surface, double z0,
                            double corrugation_amplitude, const SweepRequest& req,
                            const QuadratureConfig& quad,
                            const EvalOptions& opts = {});

struct TransitionResult {
    double root = 0;            // lambda_c / z0 where V_Sum changes sign
    double bracket_lo = 0;      // certified enclosing interval
    double bracket_hi = 0;
    std::size_t evaluations = 0;
};

class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sign-certified tolerance floor: near the root, quadrature noise can drown
// |V_Sum|; the search tightens the tolerance before trusting a sign.
class ToleranceFloorError : public std::runtime_error {
public:
    ToleranceFloorError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}
    double bracket_lo, bracket_hi;
};

// Bisect V_Sum(lambda_c/z0) over [lo, hi] to relative width 1e-4.
// Requires a sign change over the bracket.
TransitionResult find_transition(const ParticleModel& particle,
                                 const PermittivityModel& surface, double z0,
                                 double corrugation_amplitude, EvalMode mode,
                                 double lo, double hi,
                                 const QuadratureConfig& quad,
                                 const EvalOptions& opts = {});

// Locate a sign-change bracket of V_Sum by a coarse scan, then refine.
std::optional<std::pair<double, double>> scan_for_bracket(
    const ParticleModel& particle, const PermittivityModel& surface, double z0,
    double corrugation_amplitude, EvalMode mode, double lo, double hi,
    std::size_t points, const QuadratureConfig& quad, const EvalOptions& opts = {});

// Thread cap for row-parallel evaluation (CASIMIR_THREADS, else hardware).
unsigned worker_thread_count();

} // namespace casimir
