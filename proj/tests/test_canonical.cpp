#include <doctest.h>

#include <random>

#include "quadcycle/canonical.hpp"
#include "quadcycle/errors.hpp"

using namespace quadcycle;

TEST_CASE("compiling the four-parameter family") {
    SUBCASE("two-center base system: a=1/2, c=-1, rotation parameters zero") {
        Params24 p;
        p.a = 0.5;
        p.c = -1.0;
        const GeneralQuadraticField f = compile(p);
        CHECK(f.p01 == -1.0);
        CHECK(f.p11 == -1.0);
        CHECK(f.p02 == 0.0);
        CHECK(f.q10 == 1.0);
        CHECK(f.q20 == 0.5);
        CHECK(f.q01 == 0.0);
        CHECK(f.q11 == 0.0);
        CHECK(f.q02 == 0.0);
    }
    SUBCASE("all parameters zero gives the linear center") {
        const GeneralQuadraticField f = compile(Params24{});
        CHECK(f.p01 == -1.0);
        CHECK(f.p11 == -1.0); // the xy term of P is structural
        CHECK(f.q10 == 1.0);
        CHECK(f.q20 == 0.0);
    }
    SUBCASE("gamma alone populates exactly the three gamma terms") {
        Params24 p;
        p.gamma = 0.1;
        p.a = 0.5;
        p.c = -1.0;
        const GeneralQuadraticField f = compile(p);
        CHECK(f.q01 == doctest::Approx(0.1));
        CHECK(f.q11 == doctest::Approx(0.1));
        CHECK(f.q02 == doctest::Approx(-0.1));
    }
}

TEST_CASE("compiling the nu-family") {
    Params25 p;
    SUBCASE("nu = 0") {
        const GeneralQuadraticField f = compile(p);
        CHECK(f.p01 == -1.0);
        CHECK(f.p02 == 0.0);
        CHECK(f.q10 == 1.0);
    }
    SUBCASE("nu = 1") {
        p.nu = 1;
        const GeneralQuadraticField f = compile(p);
        CHECK(f.p02 == -1.0);
    }
    SUBCASE("nu outside {0,1} is rejected") {
        p.nu = 2;
        CHECK_THROWS_AS(compile(p), InvalidParameterError);
    }
}

TEST_CASE("compiling the mixed two-parameter family") {
    SUBCASE("alpha = gamma = m = n = c = 0") {
        const GeneralQuadraticField f = compile(Params21{});
        CHECK(f.p01 == -1.0);
        CHECK(f.p10 == 0.0);
        CHECK(f.q10 == 1.0);
        CHECK(f.q20 == -1.0);
        CHECK(f.q01 == 0.0);
    }
    SUBCASE("alpha mixes the components") {
        Params21 p;
        p.alpha = 0.3;
        p.c = 0.5;
        const GeneralQuadraticField f = compile(p);
        CHECK(f.p10 == doctest::Approx(0.3));   // alpha * x from alpha*Q
        CHECK(f.p20 == doctest::Approx(-0.3));  // alpha * (-x^2)
        CHECK(f.q01 == doctest::Approx(0.3));   // -alpha * (-y)
        CHECK(f.p02 == doctest::Approx(0.15));  // (n-gamma) + alpha*c
    }
}

TEST_CASE("compiling the normal form") {
    SUBCASE("m=-1, everything else zero") {
        Params26 p;
        p.m = -1.0;
        const GeneralQuadraticField f = compile(p);
        CHECK(f.p01 == -1.0);
        CHECK(f.p11 == -1.0);
        CHECK(f.q10 == 1.0);
    }
    SUBCASE("m outside {-1,0} is rejected") {
        Params26 p;
        p.m = 0.5;
        CHECK_THROWS_AS(compile(p), InvalidParameterError);
        CHECK_THROWS_AS(embed_26_into_canonical(p), InvalidParameterError);
    }
}

TEST_CASE("embedding the normal form into the canonical families") {
    SUBCASE("worked example: m=-1, a=1/2, c=-1") {
        Params26 p;
        p.m = -1.0;
        p.a = 0.5;
        p.c = -1.0;
        const EmbedResult r = embed_26_into_canonical(p);
        REQUIRE(r.uses24);
        CHECK(r.as24.alpha == 0.0);
        CHECK(r.as24.gamma == 1.0);
        CHECK(r.as24.beta == -1.0);
        CHECK(r.as24.lambda == 0.0);
        CHECK(r.as24.a == 0.5);
        CHECK(r.as24.c == -1.0);
        CHECK(max_coeff_diff(compile(r.as24), compile(p)) <= 1e-15);
    }
    SUBCASE("m=0 with n=0") {
        Params26 p;
        const EmbedResult r = embed_26_into_canonical(p);
        REQUIRE(!r.uses24);
        CHECK(r.as25.nu == 0);
        CHECK(r.as25.gamma == 1.0);
        CHECK(r.as25.beta == -1.0);
        CHECK(r.as25.lambda == 0.0);
        CHECK(r.phase_scale == 1.0);
        CHECK(max_coeff_diff(compile(r.as25), compile(p)) <= 1e-15);
    }
    SUBCASE("m=-1 identity after cancellation") {
        Params26 p;
        p.m = -1.0;
        const EmbedResult r = embed_26_into_canonical(p);
        const GeneralQuadraticField f = compile(r.as24);
        CHECK(f.p01 == -1.0);
        CHECK(f.p11 == -1.0);
        CHECK(f.q10 == 1.0);
        CHECK(max_coeff_diff(f, compile(p)) <= 1e-15);
    }
    SUBCASE("coefficient-matching oracle over random m=-1 inputs") {
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int k = 0; k < 200; ++k) {
            Params26 p;
            p.m = -1.0;
            p.n = u(rng);
            p.lambda26 = u(rng);
            p.a = u(rng);
            p.b = u(rng);
            p.c = u(rng);
            const EmbedResult r = embed_26_into_canonical(p);
            REQUIRE(r.uses24);
            CHECK(max_coeff_diff(compile(r.as24), compile(p)) <= 1e-12);
        }
    }
    SUBCASE("m=0: exact after the recorded similarity, nu forced into {0,1}") {
        std::mt19937_64 rng(22);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int k = 0; k < 200; ++k) {
            Params26 p;
            p.n = u(rng);
            if (p.n == 0.0) p.n = 0.5;
            p.lambda26 = u(rng);
            p.a = u(rng);
            p.b = u(rng);
            p.c = u(rng);
            const EmbedResult r = embed_26_into_canonical(p);
            REQUIRE(!r.uses24);
            CHECK(r.as25.nu == 1);
            CHECK(r.phase_scale == -p.n);
            const GeneralQuadraticField rescaled =
                rescale_phase(compile(p), r.phase_scale);
            CHECK(max_coeff_diff(compile(r.as25), rescaled) <= 1e-12);
        }
    }
    SUBCASE("m=0 with n=-1 needs no rescaling at all") {
        Params26 p;
        p.n = -1.0;
        p.b = 0.7;
        p.lambda26 = 0.3;
        p.a = 1.1;
        p.c = -0.4;
        const EmbedResult r = embed_26_into_canonical(p);
        CHECK(r.phase_scale == 1.0);
        CHECK(max_coeff_diff(compile(r.as25), compile(p)) <= 1e-15);
    }
}

TEST_CASE("trace identities of the two-anti-saddle case") {
    // a = 1/2, c = -1: trace(0,0) = lambda+beta+gamma and
    // trace(-2,0) = lambda-2alpha-beta-gamma, exactly
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        Params24 p;
        p.lambda = u(rng);
        p.alpha = u(rng);
        p.beta = u(rng);
        p.gamma = u(rng);
        p.a = 0.5;
        p.c = -1.0;
        const GeneralQuadraticField f = compile(p);
        const double t0 = f.jacobian({0.0, 0.0}).trace();
        const double t2 = f.jacobian({-2.0, 0.0}).trace();
        CHECK(t0 == doctest::Approx(p.lambda + p.beta + p.gamma).epsilon(1e-13));
        CHECK(t2 ==
              doctest::Approx(p.lambda - 2 * p.alpha - p.beta - p.gamma).epsilon(1e-13));
    }
}
