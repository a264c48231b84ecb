#include "quadcycle/poly.hpp"

#include <algorithm>
#include <cmath>

namespace quadcycle {

int Poly::degree() const {
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
        if (c[i] != 0.0) return i;
    return -1;
}

double Poly::eval(double x) const {
    double v = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * x + c[i];
    return v;
}

Poly Poly::derivative() const {
    Poly d;
    if (c.size() <= 1) return d;
    d.c.resize(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i)
        d.c[i - 1] = static_cast<double>(i) * c[i];
    return d;
}

void Poly::trim(double tol) {
    while (!c.empty() && std::fabs(c.back()) <= tol) c.pop_back();
}

double Poly::max_abs_coeff() const {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::fabs(v));
    return m;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.resize(a.c.size() + b.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

namespace {

// Magnitude of p at x with all terms taken positively; residual scale.
double eval_scale(const Poly& p, double x) {
    double v = 0.0, ax = std::fabs(x);
    for (int i = static_cast<int>(p.c.size()) - 1; i >= 0; --i)
        v = v * ax + std::fabs(p.c[i]);
    return std::max(v, 1e-300);
}

double bisect_root(const Poly& p, double lo, double hi, double flo) {
    for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + std::fabs(lo) + std::fabs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = p.eval(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    // Newton polish within the bracket
    const Poly d = p.derivative();
    for (int it = 0; it < 4; ++it) {
        const double fd = d.eval(x);
        if (fd == 0.0) break;
        const double xn = x - p.eval(x) / fd;
        if (!(xn >= lo && xn <= hi)) break;
        x = xn;
    }
    return x;
}

} // namespace

std::vector<double> real_roots(const Poly& p) {
    Poly q = p;
    q.trim(1e-13 * q.max_abs_coeff());
    const int deg = q.degree();
    std::vector<double> roots;
    if (deg <= 0) return roots;
    if (deg == 1) {
        roots.push_back(-q.c[0] / q.c[1]);
        return roots;
    }

    // Cauchy bound on root magnitude
    double bound = 0.0;
    for (int i = 0; i < deg; ++i) bound = std::max(bound, std::fabs(q.c[i] / q.c[deg]));
    bound += 1.0;

    std::vector<double> breaks = real_roots(q.derivative());
    std::erase_if(breaks, [&](double t) { return t <= -bound || t >= bound; });
    breaks.insert(breaks.begin(), -bound);
    breaks.push_back(bound);

    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        const double fa = q.eval(a), fb = q.eval(b);
        if (fa == 0.0) roots.push_back(a);
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0))
            roots.push_back(bisect_root(q, a, b, fa));
        // even-multiplicity root at an interior critical point
        if (i + 2 < breaks.size() && std::fabs(fb) <= 1e-10 * eval_scale(q, b))
            roots.push_back(b);
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots) {
        if (out.empty() || r - out.back() > 1e-10 * (1.0 + std::fabs(r)))
            out.push_back(r);
    }
    return out;
}

namespace {

Poly det_recursive(const std::vector<std::vector<Poly>>& m, std::vector<int> cols) {
    const std::size_t row = m.size() - cols.size();
    if (cols.size() == 1) return m[row][cols[0]];
    Poly acc;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        std::vector<int> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (j != k) rest.push_back(cols[j]);
        Poly term = m[row][cols[k]] * det_recursive(m, rest);
        acc = (k % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

Poly resultant_in_y(const std::vector<Poly>& ay, const std::vector<Poly>& by) {
    auto top_degree = [](const std::vector<Poly>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) {
            Poly t = v[i];
            t.trim(1e-14 * std::max(1.0, t.max_abs_coeff()));
            if (t.degree() >= 0) return i;
        }
        return -1;
    };
    const int da = top_degree(ay), db = top_degree(by);
    if (da < 0 || db < 0) return Poly{};          // one side identically zero
    if (da == 0 && db == 0) return Poly::constant(1.0);

    const int n = da + db;
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
    for (int i = 0; i < db; ++i)
        for (int k = 0; k <= da; ++k) m[i][i + k] = ay[da - k];
    for (int i = 0; i < da; ++i)
        for (int k = 0; k <= db; ++k) m[db + i][i + k] = by[db - k];

    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i) cols[i] = i;
    Poly res = det_recursive(m, cols);
    res.trim(1e-12 * res.max_abs_coeff());
    return res;
}

} // namespace quadcycle
