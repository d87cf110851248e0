#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>

#include "casimir/constants.hpp"
#include "casimir/regimes.hpp"

using namespace casimir;

namespace {

ParticleModel gold_particle(double r, double theta)
{
    ParticleModel p;
    p.aspect_ratio = r;
    p.volume = 1e-27;
    p.material = PermittivityModel::plasma(kGoldOmegaP);
    p.theta = theta;
    p.phi = 0.0;
    return p;
}

} // namespace

TEST_CASE("classification")
{
    CHECK(classify(kPi) == ForceRegime::Peak);
    CHECK(classify(-kPi + 1e-9) == ForceRegime::Peak);
    CHECK(classify(0.0) == ForceRegime::Valley);
    CHECK(classify(1e-8) == ForceRegime::Valley);
    CHECK(classify(kPi / 4) == ForceRegime::Intermediate);
    CHECK(classify(-0.3) == ForceRegime::Intermediate);
    CHECK_THROWS_AS(classify(4.0), std::domain_error);
    CHECK(regime_name(ForceRegime::Peak) == "peak");
    CHECK(regime_name(ForceRegime::Valley) == "valley");
    CHECK(regime_name(ForceRegime::Intermediate) == "intermediate");
}

TEST_CASE("worker thread cap honors the environment")
{
    setenv("CASIMIR_THREADS", "1", 1);
    CHECK(worker_thread_count() == 1);
    unsetenv("CASIMIR_THREADS");
    CHECK(worker_thread_count() >= 1);
}

TEST_CASE("vdW sweep: dichotomy, ordering and a sign change")
{
    const auto p = gold_particle(2.0, kPi / 2);
    const auto surf = PermittivityModel::plasma(kGoldOmegaP);
    QuadratureConfig quad;
    quad.rel_tol = 1e-6;
    SweepRequest req;
    req.mode = EvalMode::Vdw;
    req.lambda_min = 0.5;
    req.lambda_max = 12.0;
    req.points = 23;

    const auto rows = sweep(p, surf, 30e-9, 1.5e-9, req, quad);
    REQUIRE(rows.size() == 23);
    bool saw_peak = false, saw_valley = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].ok());
        if (i > 0) CHECK(rows[i].lambda_over_z0 > rows[i - 1].lambda_over_z0);
        CHECK(rows[i].regime != ForceRegime::Intermediate);
        saw_peak = saw_peak || rows[i].regime == ForceRegime::Peak;
        saw_valley = saw_valley || rows[i].regime == ForceRegime::Valley;
        CHECK(rows[i].amplitude > 0.0);
    }
    CHECK(saw_peak);
    CHECK(saw_valley);
}

TEST_CASE("sweep is deterministic across thread counts")
{
    const auto p = gold_particle(2.0, kPi / 3);
    const auto surf = PermittivityModel::plasma(kGoldOmegaP);
    QuadratureConfig quad;
    quad.rel_tol = 1e-6;
    SweepRequest req;
    req.mode = EvalMode::Vdw;
    req.points = 7;

    setenv("CASIMIR_THREADS", "1", 1);
    const auto a = sweep(p, surf, 30e-9, 1.5e-9, req, quad);
    unsetenv("CASIMIR_THREADS");
    const auto b = sweep(p, surf, 30e-9, 1.5e-9, req, quad);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].v.sum() == b[i].v.sum());  // bitwise
        CHECK(a[i].delta == b[i].delta);
    }
}

TEST_CASE("sweep validation")
{
    const auto p = gold_particle(2.0, kPi / 2);
    const auto surf = PermittivityModel::plasma(kGoldOmegaP);
    QuadratureConfig quad;
    SweepRequest req;
    req.points = 1;
    CHECK_THROWS_AS(sweep(p, surf, 30e-9, 1e-9, req, quad),
                    std::invalid_argument);
    req.points = 5;
    req.lambda_min = 0.01;
    CHECK_THROWS_AS(sweep(p, surf, 30e-9, 1e-9, req, quad),
                    std::invalid_argument);
}

TEST_CASE("transition search against a dense-scan oracle")
{
    const auto p = gold_particle(2.0, kPi / 2);
    const auto surf = PermittivityModel::perfect_conductor();
    QuadratureConfig quad;
    quad.rel_tol = 1e-6;

    const auto bracket = scan_for_bracket(p, surf, 30e-9, 1.5e-9, EvalMode::Vdw,
                                          0.5, 12.0, 32, quad);
    REQUIRE(bracket.has_value());
    const TransitionResult t =
        find_transition(p, surf, 30e-9, 1.5e-9, EvalMode::Vdw, bracket->first,
                        bracket->second, quad);
    CHECK(t.root > bracket->first);
    CHECK(t.root < bracket->second);
    CHECK(t.bracket_hi - t.bracket_lo <= 1.0001e-4 * t.root);

    // dense scan localizes the same sign change
    const auto fine = scan_for_bracket(p, surf, 30e-9, 1.5e-9, EvalMode::Vdw,
                                       t.root - 0.5, t.root + 0.5, 200, quad);
    REQUIRE(fine.has_value());
    CHECK(t.root > fine->first - 1e-3);
    CHECK(t.root < fine->second + 1e-3);
}

TEST_CASE("transition root is stable under tighter quadrature")
{
    const auto p = gold_particle(2.0, kPi / 2);
    const auto surf = PermittivityModel::plasma(kGoldOmegaP);
    QuadratureConfig quad;
    quad.rel_tol = 1e-6;
    const auto bracket = scan_for_bracket(p, surf, 30e-9, 1.5e-9, EvalMode::Vdw,
                                          0.5, 12.0, 32, quad);
    REQUIRE(bracket.has_value());
    const auto t1 = find_transition(p, surf, 30e-9, 1.5e-9, EvalMode::Vdw,
                                    bracket->first, bracket->second, quad);
    QuadratureConfig tight = quad;
    tight.rel_tol = 5e-7;
    const auto t2 = find_transition(p, surf, 30e-9, 1.5e-9, EvalMode::Vdw,
                                    bracket->first, bracket->second, tight);
    CHECK(std::fabs(t1.root - t2.root) <= (t1.bracket_hi - t1.bracket_lo) +
                                              (t2.bracket_hi - t2.bracket_lo));
}

TEST_CASE("bracket without a sign change is rejected")
{
    const auto p = gold_particle(2.0, kPi / 2);
    const auto surf = PermittivityModel::plasma(kGoldOmegaP);
    QuadratureConfig quad;
    quad.rel_tol = 1e-6;
    CHECK_THROWS_AS(find_transition(p, surf, 30e-9, 1.5e-9, EvalMode::Vdw, 8.0,
                                    12.0, quad),
                    BracketError);
    CHECK_THROWS_AS(find_transition(p, surf, 30e-9, 1.5e-9, EvalMode::Vdw, 5.0,
                                    2.0, quad),
                    std::invalid_argument);
}
