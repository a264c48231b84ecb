#pragma once

#include <optional>

#include "quadcycle/point.hpp"

namespace quadcycle {

/// Jacobian of a planar field at a point.
struct Jacobian {
    double px = 0.0, py = 0.0; // d(xdot)/dx, d(xdot)/dy
    double qx = 0.0, qy = 0.0; // d(ydot)/dx, d(ydot)/dy

    double trace() const { return px + qy; }
    double det() const { return px * qy - py * qx; }
};

/// Planar quadratic vector field
///   xdot = P(x,y) = p00 + p10 x + p01 y + p20 x^2 + p11 xy + p02 y^2
///   ydot = Q(x,y) = q00 + q10 x + q01 y + q20 x^2 + q11 xy + q02 y^2
/// The common currency every canonical family compiles to.
struct GeneralQuadraticField {
    double p00 = 0, p10 = 0, p01 = 0, p20 = 0, p11 = 0, p02 = 0;
    double q00 = 0, q10 = 0, q01 = 0, q20 = 0, q11 = 0, q02 = 0;

    Point eval(Point p) const {
        const double x = p.x, y = p.y;
        return {p00 + p10 * x + p01 * y + p20 * x * x + p11 * x * y + p02 * y * y,
                q00 + q10 * x + q01 * y + q20 * x * x + q11 * x * y + q02 * y * y};
    }

    Jacobian jacobian(Point p) const {
        const double x = p.x, y = p.y;
        return {p10 + 2 * p20 * x + p11 * y, p01 + p11 * x + 2 * p02 * y,
                q10 + 2 * q20 * x + q11 * y, q01 + q11 * x + 2 * q02 * y};
    }

    bool is_zero(double tol = 0.0) const;

    /// Largest |coefficient|, used to scale tolerances.
    double coeff_scale() const;

    friend GeneralQuadraticField operator-(const GeneralQuadraticField& a,
                                           const GeneralQuadraticField& b) {
        return {a.p00 - b.p00, a.p10 - b.p10, a.p01 - b.p01, a.p20 - b.p20,
                a.p11 - b.p11, a.p02 - b.p02, a.q00 - b.q00, a.q10 - b.q10,
                a.q01 - b.q01, a.q20 - b.q20, a.q11 - b.q11, a.q02 - b.q02};
    }
};

/// Maximum absolute coefficient difference between two fields.
double max_coeff_diff(const GeneralQuadraticField& a, const GeneralQuadraticField& b);

/// When xdot factors as -y (1 + x + alpha y), returns alpha.  This is the
/// shape shared by the four-rotation-parameter canonical family; the y = 0
/// and 1 + x + alpha y = 0 nullcline branches are exact lines then.
std::optional<double> factored_shape_alpha(const GeneralQuadraticField& f);

/// Rescale the phase plane isotropically, (x,y) -> (k x, k y), returning the
/// field expressed in the new coordinates.
GeneralQuadraticField rescale_phase(const GeneralQuadraticField& f, double k);

} // namespace quadcycle
