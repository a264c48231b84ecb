#pragma once

#include <string>
#include <vector>

#include "quadcycle/field.hpp"

namespace quadcycle {

enum class EquilibriumKind { saddle, node, focus, center_candidate, degenerate };

std::string to_string(EquilibriumKind k);

/// Finite singular point with its linearization data.
struct Equilibrium {
    Point location;
    double trace = 0.0;
    double det = 0.0;
    EquilibriumKind kind = EquilibriumKind::degenerate;
};

/// Classification thresholds.  A numerical method cannot certify a true
/// center, so |trace| <= trace_tol just flags a candidate.
struct ClassifyTolerances {
    double trace_tol = 1e-9;
    double det_tol = 1e-12;
};

EquilibriumKind classify(const Jacobian& j, const ClassifyTolerances& tol = {});

/// All finite real solutions of P = Q = 0, Newton-polished to residual
/// <= 1e-12 and sorted by (x, y).  Uses the factored-branch method when
/// xdot = y * (linear), otherwise the resultant of P and Q.
/// Throws InvalidParameterError for the zero field and DegenerateFieldError
/// when the zero set is not a finite point set.
std::vector<Equilibrium> find_equilibria(const GeneralQuadraticField& f);

/// Anti-saddles (det > 0) of the field, in find_equilibria order.
std::vector<Equilibrium> find_foci(const GeneralQuadraticField& f);

} // namespace quadcycle
