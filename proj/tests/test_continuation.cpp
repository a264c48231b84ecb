#include <doctest.h>

#include <cmath>

#include "quadcycle/canonical.hpp"
#include "quadcycle/continuation.hpp"
#include "quadcycle/errors.hpp"
#include "quadcycle/scenarios.hpp"

using namespace quadcycle;

namespace {

Params24 two_focus(double gamma, double lambda) {
    Params24 p;
    p.gamma = gamma;
    p.lambda = lambda;
    p.a = 0.5;
    p.c = -1.0;
    return p;
}

} // namespace

TEST_CASE("lambda family contracts into the focus at the trace zero") {
    const Params24 base = two_focus(0.1, -0.05);
    const GeneralQuadraticField f = compile(base);
    const Section sec = section_for_focus(f, {0.0, 0.0}, 1e-3, 25.0);
    const auto cycles = scan_and_refine(f, sec, 48, IntegratorConfig{}, {});
    REQUIRE(cycles.size() == 1);

    const CycleFamily fam =
        continue_family(base, RotationParamId::Lambda, -0.05, -0.12,
                        cycles[0].s_star, {0.0, 0.0}, IntegratorConfig{});
    CHECK(fam.termination == TerminationClass::shrinks_to_focus);
    REQUIRE(fam.samples.size() >= 4);
    // near the flip the displacement signal scales like s^3 and sinks under
    // the integration noise around s ~ 1e-3; the family is tracked to there
    CHECK(fam.samples.back().s_star < 2e-3);
    CHECK(std::fabs(fam.mu_end() + 0.1) <= 1e-4); // dies at lambda = -gamma
    std::string why;
    CHECK(family_monotone(fam, &why));
    for (std::size_t i = 1; i < fam.samples.size(); ++i)
        CHECK(fam.samples[i].s_star < fam.samples[i - 1].s_star);
    CHECK(fam.samples.back().period < 3.0 * 2.0 * M_PI);
}

TEST_CASE("invalid seed is rejected") {
    const Params24 base = two_focus(0.1, 0.1); // same-sign: no cycle anywhere
    CHECK_THROWS_AS(continue_family(base, RotationParamId::Lambda, 0.1, -0.2, 0.5,
                                    {0.0, 0.0}, IntegratorConfig{}),
                    InvalidParameterError);
}

TEST_CASE("small-amplitude period of the canonical focus") {
    const GeneralQuadraticField f = compile(two_focus(0.1, -0.05));
    CHECK(small_amplitude_period(f, {0.0, 0.0}) ==
          doctest::Approx(2.0 * M_PI).epsilon(1e-3));
}
