#include <doctest.h>

#include <random>

#include "quadcycle/cycles.hpp"
#include "quadcycle/parallel.hpp"
#include "quadcycle/rotation.hpp"

using namespace quadcycle;

TEST_CASE("worker count is at least one") { CHECK(par::max_threads() >= 1); }

TEST_CASE("parallel_for writes every index exactly once") {
    std::vector<int> hits(10000, 0);
    par::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
}

TEST_CASE("parallel kernels reproduce the serial reference bit for bit") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> pr(-2.0, 2.0);
    std::uniform_real_distribution<double> xr(-3.0, 3.0);

    SUBCASE("delta batch") {
        std::vector<Params24> params(5000);
        std::vector<Point> pts(5000);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            params[i] = {pr(rng), pr(rng), pr(rng), pr(rng), pr(rng), pr(rng)};
            pts[i] = {xr(rng), xr(rng)};
        }
        const auto a = delta_batch_serial(RotationParamId::Gamma, params, pts);
        const auto b = delta_batch(RotationParamId::Gamma, params, pts);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].closed == b[i].closed);
            CHECK(a[i].numeric == b[i].numeric);
        }
    }
    SUBCASE("direction check") {
        std::vector<Point> pts(5000);
        for (Point& p : pts) p = {xr(rng), xr(rng)};
        const Params24 p = {-0.12, -0.05, 0.0, 0.1, 0.5, -1.0};
        const auto a = rotation_direction_check_serial(RotationParamId::Beta, p, 1e-5, pts);
        const auto b = rotation_direction_check(RotationParamId::Beta, p, 1e-5, pts);
        CHECK(a.checked == b.checked);
        CHECK(a.passed == b.passed);
        REQUIRE(a.samples.size() == b.samples.size());
        for (std::size_t i = 0; i < a.samples.size(); ++i) {
            CHECK(a.samples[i].delta == b.samples[i].delta);
            CHECK(a.samples[i].cross == b.samples[i].cross);
            CHECK(a.samples[i].pass == b.samples[i].pass);
        }
    }
    SUBCASE("displacement profile") {
        Params24 p;
        p.gamma = 0.1;
        p.lambda = -0.12;
        p.a = 0.5;
        p.c = -1.0;
        const GeneralQuadraticField f = compile(p);
        const Section sec = section_for_focus(f, {0.0, 0.0});
        const auto offsets = log_grid(0.01, 5.0, 24);
        const IntegratorConfig cfg;
        const auto a = displacement_profile_serial(f, sec, offsets, cfg);
        const auto b = displacement_profile(f, sec, offsets, cfg);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].status == b[i].status);
            CHECK(a[i].d == b[i].d);
            CHECK(a[i].period == b[i].period);
        }
    }
}
