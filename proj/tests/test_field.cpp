#include <doctest.h>

#include <random>

#include "quadcycle/canonical.hpp"
#include "quadcycle/field.hpp"

using namespace quadcycle;

namespace {

GeneralQuadraticField random_field(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    GeneralQuadraticField f;
    f.p00 = u(rng); f.p10 = u(rng); f.p01 = u(rng);
    f.p20 = u(rng); f.p11 = u(rng); f.p02 = u(rng);
    f.q00 = u(rng); f.q10 = u(rng); f.q01 = u(rng);
    f.q20 = u(rng); f.q11 = u(rng); f.q02 = u(rng);
    return f;
}

} // namespace

TEST_CASE("field evaluation equals the bilinear form of the coefficients") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 200; ++k) {
        const GeneralQuadraticField f = random_field(rng);
        const double x = u(rng), y = u(rng);
        const Point v = f.eval({x, y});
        const double pexp =
            f.p00 + f.p10 * x + f.p01 * y + f.p20 * x * x + f.p11 * x * y + f.p02 * y * y;
        const double qexp =
            f.q00 + f.q10 * x + f.q01 * y + f.q20 * x * x + f.q11 * x * y + f.q02 * y * y;
        CHECK(v.x == doctest::Approx(pexp).epsilon(1e-14));
        CHECK(v.y == doctest::Approx(qexp).epsilon(1e-14));
    }
}

TEST_CASE("analytic jacobian matches central finite differences") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const double h = 1e-6;
    for (int k = 0; k < 1000; ++k) {
        const GeneralQuadraticField f = random_field(rng);
        const Point p{u(rng), u(rng)};
        const Jacobian j = f.jacobian(p);
        const Point fx1 = f.eval({p.x + h, p.y}), fx0 = f.eval({p.x - h, p.y});
        const Point fy1 = f.eval({p.x, p.y + h}), fy0 = f.eval({p.x, p.y - h});
        const double scale = 1.0 + std::fabs(j.px) + std::fabs(j.py) +
                             std::fabs(j.qx) + std::fabs(j.qy);
        CHECK(std::fabs((fx1.x - fx0.x) / (2 * h) - j.px) <= 1e-6 * scale);
        CHECK(std::fabs((fy1.x - fy0.x) / (2 * h) - j.py) <= 1e-6 * scale);
        CHECK(std::fabs((fx1.y - fx0.y) / (2 * h) - j.qx) <= 1e-6 * scale);
        CHECK(std::fabs((fy1.y - fy0.y) / (2 * h) - j.qy) <= 1e-6 * scale);
    }
}

TEST_CASE("rotation-free canonical field is mirror symmetric about the x-axis") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    Params24 p;
    p.a = 0.5;
    p.c = -1.0;
    const GeneralQuadraticField f = compile(p);
    for (int k = 0; k < 100; ++k) {
        const double x = u(rng), y = u(rng);
        const Point up = f.eval({x, y});
        const Point dn = f.eval({x, -y});
        CHECK(dn.x == doctest::Approx(-up.x).epsilon(1e-14));
        CHECK(dn.y == doctest::Approx(up.y).epsilon(1e-14));
    }
}

TEST_CASE("phase rescaling maps solutions coefficientwise") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const GeneralQuadraticField f = random_field(rng);
    const double k = 1.7;
    const GeneralQuadraticField g = rescale_phase(f, k);
    for (int i = 0; i < 50; ++i) {
        const Point p{u(rng), u(rng)};
        // d(kx)/dt = k P(x, y) must equal the rescaled field at (kx, ky)
        const Point v = f.eval(p);
        const Point w = g.eval({k * p.x, k * p.y});
        CHECK(w.x == doctest::Approx(k * v.x).epsilon(1e-12));
        CHECK(w.y == doctest::Approx(k * v.y).epsilon(1e-12));
    }
}
