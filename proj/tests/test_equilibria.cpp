#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "quadcycle/canonical.hpp"
#include "quadcycle/equilibria.hpp"
#include "quadcycle/errors.hpp"

using namespace quadcycle;

namespace {

// Brute-force oracle: Newton from a dense grid of starts, dedupe.  Slower
// and dumber than the production path, and independent of it.
std::vector<Point> brute_force_zeros(const GeneralQuadraticField& f, double extent = 8.0,
                                     int n = 60) {
    std::vector<Point> found;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            Point p{-extent + 2 * extent * i / n, -extent + 2 * extent * j / n};
            bool ok = false;
            for (int it = 0; it < 60; ++it) {
                const Point v = f.eval(p);
                if (!finite(p)) break;
                if (norm(v) < 1e-13) {
                    ok = true;
                    break;
                }
                const Jacobian J = f.jacobian(p);
                const double det = J.det();
                if (std::fabs(det) < 1e-14) break;
                p = {p.x - (J.qy * v.x - J.py * v.y) / det,
                     p.y - (-J.qx * v.x + J.px * v.y) / det};
            }
            if (!ok || norm(p) > extent) continue;
            bool dup = false;
            for (const Point& q : found)
                if (norm(p - q) < 1e-6 * (1.0 + norm(p))) dup = true;
            if (!dup) found.push_back(p);
        }
    }
    std::sort(found.begin(), found.end(), [](Point a, Point b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    return found;
}

Params24 two_focus(double gamma = 0.0, double lambda = 0.0) {
    Params24 p;
    p.gamma = gamma;
    p.lambda = lambda;
    p.a = 0.5;
    p.c = -1.0;
    return p;
}

} // namespace

TEST_CASE("two-center base system has two center candidates") {
    const auto eqs = find_equilibria(compile(two_focus()));
    REQUIRE(eqs.size() == 2);
    CHECK(eqs[0].location.x == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(eqs[0].location.y == doctest::Approx(0.0));
    CHECK(eqs[0].kind == EquilibriumKind::center_candidate);
    CHECK(eqs[0].trace == doctest::Approx(0.0));
    CHECK(eqs[0].det == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eqs[1].location.x == doctest::Approx(0.0));
    CHECK(eqs[1].kind == EquilibriumKind::center_candidate);
    CHECK(eqs[1].det == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gamma rotation turns the centers into opposite foci") {
    const auto eqs = find_equilibria(compile(two_focus(0.1)));
    REQUIRE(eqs.size() == 2);
    CHECK(eqs[0].kind == EquilibriumKind::focus); // (-2, 0)
    CHECK(eqs[0].trace == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(eqs[1].kind == EquilibriumKind::focus); // (0, 0)
    CHECK(eqs[1].trace == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("linear center has the single equilibrium") {
    GeneralQuadraticField f;
    f.p01 = -1.0;
    f.q10 = 1.0;
    const auto eqs = find_equilibria(f);
    REQUIRE(eqs.size() == 1);
    CHECK(norm(eqs[0].location) <= 1e-12);
    CHECK(eqs[0].det == doctest::Approx(1.0));
    CHECK(eqs[0].trace == doctest::Approx(0.0));
    CHECK(eqs[0].kind == EquilibriumKind::center_candidate);
}

TEST_CASE("zero field and degenerate zero sets are rejected") {
    CHECK_THROWS_AS(find_equilibria(GeneralQuadraticField{}), InvalidParameterError);

    GeneralQuadraticField shared; // P and Q both vanish on the unit circle
    shared.p00 = -1.0;
    shared.p20 = 1.0;
    shared.p02 = 1.0;
    shared.q00 = -2.0;
    shared.q20 = 2.0;
    shared.q02 = 2.0;
    CHECK_THROWS_AS(find_equilibria(shared), DegenerateFieldError);

    GeneralQuadraticField line; // P = -y(1+x), Q = y(x - 1): share the y = 0 line
    line.p01 = -1.0;
    line.p11 = -1.0;
    line.q01 = -1.0;
    line.q11 = 1.0;
    CHECK_THROWS_AS(find_equilibria(line), DegenerateFieldError);
}

TEST_CASE("random fields agree with the brute-force oracle") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    int checked = 0;
    for (int k = 0; k < 60; ++k) {
        GeneralQuadraticField f;
        f.p00 = u(rng); f.p10 = u(rng); f.p01 = u(rng);
        f.p20 = u(rng); f.p11 = u(rng); f.p02 = u(rng);
        f.q00 = u(rng); f.q10 = u(rng); f.q01 = u(rng);
        f.q20 = u(rng); f.q11 = u(rng); f.q02 = u(rng);
        std::vector<Equilibrium> eqs;
        try {
            eqs = find_equilibria(f);
        } catch (const DegenerateFieldError&) {
            continue;
        }
        const std::vector<Point> oracle = brute_force_zeros(f);
        // the oracle only sees roots within its grid extent
        std::vector<Point> mine;
        for (const Equilibrium& e : eqs)
            if (norm(e.location) <= 8.0) mine.push_back(e.location);
        REQUIRE(mine.size() == oracle.size());
        for (std::size_t i = 0; i < mine.size(); ++i)
            CHECK(norm(mine[i] - oracle[i]) <= 1e-6 * (1.0 + norm(mine[i])));
        // every reported equilibrium satisfies the residual bound
        for (const Equilibrium& e : eqs) CHECK(norm(f.eval(e.location)) <= 1e-12);
        ++checked;
    }
    CHECK(checked >= 50); // degenerate draws are measure-zero
}

TEST_CASE("classification thresholds") {
    Jacobian saddle{1.0, 2.0, 2.0, 1.0};   // det = -3
    CHECK(classify(saddle) == EquilibriumKind::saddle);
    Jacobian node{2.0, 0.0, 0.0, 1.0};     // trace^2 > 4 det
    CHECK(classify(node) == EquilibriumKind::node);
    Jacobian focus{0.1, -1.0, 1.0, 0.1};   // complex pair
    CHECK(classify(focus) == EquilibriumKind::focus);
    Jacobian center{1e-12, -1.0, 1.0, -1e-12};
    CHECK(classify(center) == EquilibriumKind::center_candidate);
    Jacobian degen{1.0, 1.0, 1.0, 1.0};    // det = 0
    CHECK(classify(degen) == EquilibriumKind::degenerate);
}
