#include "quadcycle/equilibria.hpp"

#include <algorithm>
#include <cmath>

#include "quadcycle/errors.hpp"
#include "quadcycle/poly.hpp"

namespace quadcycle {

std::string to_string(EquilibriumKind k) {
    switch (k) {
        case EquilibriumKind::saddle: return "saddle";
        case EquilibriumKind::node: return "node";
        case EquilibriumKind::focus: return "focus";
        case EquilibriumKind::center_candidate: return "center_candidate";
        case EquilibriumKind::degenerate: return "degenerate";
    }
    return "degenerate";
}

EquilibriumKind classify(const Jacobian& j, const ClassifyTolerances& tol) {
    const double t = j.trace(), d = j.det();
    const double jn = std::max({1.0, std::fabs(j.px), std::fabs(j.py),
                                std::fabs(j.qx), std::fabs(j.qy)});
    if (std::fabs(d) <= tol.det_tol * jn * jn) return EquilibriumKind::degenerate;
    if (d < 0.0) return EquilibriumKind::saddle;
    if (std::fabs(t) <= tol.trace_tol) return EquilibriumKind::center_candidate;
    if (t * t < 4.0 * d) return EquilibriumKind::focus;
    return EquilibriumKind::node;
}

namespace {

constexpr double kResidualTol = 1e-12;

// Damped Newton on (P,Q); returns true when the residual target is met.
bool newton_polish(const GeneralQuadraticField& f, Point& p) {
    double res = norm(f.eval(p));
    for (int it = 0; it < 60 && res > 0.0; ++it) {
        const Jacobian j = f.jacobian(p);
        const double d = j.det();
        if (d == 0.0) break;
        const Point v = f.eval(p);
        Point step{-(j.qy * v.x - j.py * v.y) / d, -(-j.qx * v.x + j.px * v.y) / d};
        double lam = 1.0;
        Point cand = p + step;
        double cres = norm(f.eval(cand));
        int halvings = 0;
        while (cres > res && halvings < 25) {
            lam *= 0.5;
            cand = p + lam * step;
            cres = norm(f.eval(cand));
            ++halvings;
        }
        if (cres >= res && res <= kResidualTol) break;
        p = cand;
        res = cres;
        if (res <= 1e-15) break;
    }
    return res <= kResidualTol;
}

std::vector<double> quadratic_roots(double c0, double c1, double c2) {
    Poly p{{c0, c1, c2}};
    return real_roots(p);
}

void add_candidate(std::vector<Point>& out, const GeneralQuadraticField& f, Point p) {
    if (!finite(p)) return;
    if (!newton_polish(f, p)) return;
    for (const Point& q : out)
        if (norm(p - q) <= 1e-8 * (1.0 + norm(p))) return;
    out.push_back(p);
}

// P = y * (b0 + b1 x + b2 y): solve each branch in closed form.
void branch_roots(const GeneralQuadraticField& f, double b0, double b1, double b2,
                  std::vector<Point>& out) {
    const double qs = std::max(1.0, f.coeff_scale());
    const auto vanishes = [qs](double c0, double c1, double c2) {
        return std::fabs(c0) <= 1e-13 * qs && std::fabs(c1) <= 1e-13 * qs &&
               std::fabs(c2) <= 1e-13 * qs;
    };
    if (vanishes(f.q00, f.q10, f.q20))
        throw DegenerateFieldError("P and Q both vanish on the line y = 0");
    for (double x : quadratic_roots(f.q00, f.q10, f.q20))
        add_candidate(out, f, {x, 0.0});

    const double s = std::max({1.0, std::fabs(b0), std::fabs(b1), std::fabs(b2)});
    if (std::fabs(b1) > 1e-14 * s) {
        // x = u + v y on the second branch
        const double u = -b0 / b1, v = -b2 / b1;
        const double c0 = f.q00 + f.q10 * u + f.q20 * u * u;
        const double c1 = f.q10 * v + f.q01 + 2.0 * f.q20 * u * v + f.q11 * u;
        const double c2 = f.q20 * v * v + f.q11 * v + f.q02;
        if (vanishes(c0, c1, c2))
            throw DegenerateFieldError("P and Q both vanish on a line");
        for (double y : quadratic_roots(c0, c1, c2))
            add_candidate(out, f, {u + v * y, y});
    } else if (std::fabs(b2) > 1e-14 * s) {
        const double y0 = -b0 / b2;
        const double c0 = f.q00 + f.q01 * y0 + f.q02 * y0 * y0;
        const double c1 = f.q10 + f.q11 * y0;
        if (vanishes(c0, c1, f.q20))
            throw DegenerateFieldError("P and Q both vanish on a line");
        for (double x : quadratic_roots(c0, c1, f.q20))
            add_candidate(out, f, {x, y0});
    }
    // b1 = b2 = 0 leaves only the y = 0 branch (b0 != 0 has no zero set)
}

void resultant_roots(const GeneralQuadraticField& f, std::vector<Point>& out) {
    const std::vector<Poly> ay = {Poly{{f.p00, f.p10, f.p20}}, Poly{{f.p01, f.p11}},
                                  Poly{{f.p02}}};
    const std::vector<Poly> by = {Poly{{f.q00, f.q10, f.q20}}, Poly{{f.q01, f.q11}},
                                  Poly{{f.q02}}};
    Poly res = resultant_in_y(ay, by);
    if (res.degree() < 0)
        throw DegenerateFieldError("P and Q share a common factor: zero set is a curve");
    if (res.degree() == 0) {
        // no common root unless one component never involves y; fall back to
        // intersecting the univariate pieces
        Poly px{{f.p00, f.p10, f.p20}};
        for (double x : real_roots(px)) {
            for (double y : quadratic_roots(f.q00 + f.q10 * x + f.q20 * x * x,
                                            f.q01 + f.q11 * x, f.q02))
                add_candidate(out, f, {x, y});
            add_candidate(out, f, {x, 0.0});
        }
        return;
    }
    const double scale = std::max(1.0, f.coeff_scale());
    for (double x : real_roots(res)) {
        const double a0 = f.p00 + f.p10 * x + f.p20 * x * x;
        const double a1 = f.p01 + f.p11 * x;
        const double a2 = f.p02;
        bool p_trivial = std::fabs(a0) <= 1e-11 * scale && std::fabs(a1) <= 1e-11 * scale &&
                         std::fabs(a2) <= 1e-11 * scale;
        const std::vector<double> ys =
            p_trivial ? quadratic_roots(f.q00 + f.q10 * x + f.q20 * x * x,
                                        f.q01 + f.q11 * x, f.q02)
                      : quadratic_roots(a0, a1, a2);
        for (double y : ys) add_candidate(out, f, {x, y});
        // tangential intersections can hide between the candidate sets
        for (double y : quadratic_roots(f.q00 + f.q10 * x + f.q20 * x * x,
                                        f.q01 + f.q11 * x, f.q02))
            add_candidate(out, f, {x, y});
    }
}

} // namespace

std::vector<Equilibrium> find_equilibria(const GeneralQuadraticField& f) {
    if (f.is_zero(0.0))
        throw InvalidParameterError("find_equilibria: field is identically zero");

    const double scale = std::max(1.0, f.coeff_scale());
    std::vector<Point> pts;
    const bool p_has_y_factor = std::fabs(f.p00) <= 1e-14 * scale &&
                                std::fabs(f.p10) <= 1e-14 * scale &&
                                std::fabs(f.p20) <= 1e-14 * scale;
    if (p_has_y_factor && (f.p01 != 0.0 || f.p11 != 0.0 || f.p02 != 0.0))
        branch_roots(f, f.p01, f.p11, f.p02, pts);
    else
        resultant_roots(f, pts);

    std::vector<Equilibrium> eqs;
    eqs.reserve(pts.size());
    for (const Point& p : pts) {
        const Jacobian j = f.jacobian(p);
        eqs.push_back({p, j.trace(), j.det(), classify(j)});
    }
    std::sort(eqs.begin(), eqs.end(), [](const Equilibrium& a, const Equilibrium& b) {
        if (a.location.x != b.location.x) return a.location.x < b.location.x;
        return a.location.y < b.location.y;
    });
    return eqs;
}

std::vector<Equilibrium> find_foci(const GeneralQuadraticField& f) {
    std::vector<Equilibrium> eqs = find_equilibria(f);
    std::erase_if(eqs, [](const Equilibrium& e) { return e.det <= 0.0; });
    return eqs;
}

} // namespace quadcycle
