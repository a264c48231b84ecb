#pragma once

#include <vector>

namespace quadcycle {

/// Dense univariate polynomial, c[i] is the coefficient of x^i.
struct Poly {
    std::vector<double> c;

    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) {}
    static Poly constant(double v) { return Poly{{v}}; }

    int degree() const; // -1 for the zero polynomial (after trimming noise)
    double eval(double x) const;
    Poly derivative() const;

    /// Drops trailing coefficients with |c| <= tol.
    void trim(double tol = 0.0);

    double max_abs_coeff() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
};

/// All real roots of p, ascending, with multiple roots reported once.
/// Isolation is recursive: roots of p' split the line into monotone pieces,
/// each bracketed root is polished by bisection.  Intended for the small
/// degrees (<= 8) that arise from planar quadratic intersection problems.
std::vector<double> real_roots(const Poly& p);

/// Resultant of two polynomials in y whose coefficients are polynomials in
/// x, eliminating y.  ay[j] / by[j] is the x-polynomial multiplying y^j.
/// Returns the zero polynomial when the inputs share a common factor.
Poly resultant_in_y(const std::vector<Poly>& ay, const std::vector<Poly>& by);

} // namespace quadcycle
