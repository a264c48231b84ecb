#include "quadcycle/field.hpp"

#include <algorithm>
#include <cmath>

namespace quadcycle {

namespace {
constexpr int kCoeffCount = 12;

const double* coeffs(const GeneralQuadraticField& f) { return &f.p00; }
} // namespace

bool GeneralQuadraticField::is_zero(double tol) const {
    const double* c = coeffs(*this);
    for (int i = 0; i < kCoeffCount; ++i)
        if (std::fabs(c[i]) > tol) return false;
    return true;
}

double GeneralQuadraticField::coeff_scale() const {
    const double* c = coeffs(*this);
    double s = 0.0;
    for (int i = 0; i < kCoeffCount; ++i) s = std::max(s, std::fabs(c[i]));
    return s;
}

double max_coeff_diff(const GeneralQuadraticField& a, const GeneralQuadraticField& b) {
    const double* ca = coeffs(a);
    const double* cb = coeffs(b);
    double d = 0.0;
    for (int i = 0; i < kCoeffCount; ++i) d = std::max(d, std::fabs(ca[i] - cb[i]));
    return d;
}

std::optional<double> factored_shape_alpha(const GeneralQuadraticField& f) {
    const double scale = std::max(1.0, f.coeff_scale());
    const double tol = 1e-14 * scale;
    if (std::fabs(f.p00) > tol || std::fabs(f.p10) > tol || std::fabs(f.p20) > tol)
        return std::nullopt;
    if (std::fabs(f.p01 + 1.0) > tol || std::fabs(f.p11 + 1.0) > tol)
        return std::nullopt;
    return -f.p02;
}

GeneralQuadraticField rescale_phase(const GeneralQuadraticField& f, double k) {
    GeneralQuadraticField g = f;
    g.p00 = k * f.p00;
    g.q00 = k * f.q00;
    g.p20 = f.p20 / k;
    g.p11 = f.p11 / k;
    g.p02 = f.p02 / k;
    g.q20 = f.q20 / k;
    g.q11 = f.q11 / k;
    g.q02 = f.q02 / k;
    return g;
}

} // namespace quadcycle
