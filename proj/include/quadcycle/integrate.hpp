#pragma once

#include <algorithm>
#include <string_view>
#include <vector>

#include "quadcycle/field.hpp"
#include "quadcycle/point.hpp"

namespace quadcycle {

struct IntegratorConfig {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 1e-3;   // first trial step; adapted immediately
    double h_max = 0.5;
    double t_max = 1e3;
    double r_escape = 1e3;  // phase-space norm declaring the orbit unbounded

    IntegratorConfig tightened(double factor) const {
        IntegratorConfig c = *this;
        c.rtol = std::max(rtol / factor, 1e-13);
        c.atol = std::max(atol / factor, 2e-15);
        return c;
    }
};

enum class Terminal { time_limit, event, escape, equilibrium_trap };

std::string_view to_string(Terminal t);

/// Oriented crossing of a section ray.  The transversal coordinate is
/// g(p) = cross(direction, p - origin); a crossing fires when g changes sign
/// in the demanded direction with the along-ray offset inside [s_min, s_max].
struct EventSpec {
    Point origin;
    Point direction;      // unit vector
    double s_min = 0.0;
    double s_max = 1e308;
    int orientation = 0;  // +1: g rising, -1: g falling, 0: either

    double transversal(Point p) const { return cross(direction, p - origin); }
    double offset(Point p) const { return dot(p - origin, direction); }
};

/// Terse integration outcome for callers that do not need the trajectory.
struct CoreResult {
    Terminal terminal = Terminal::time_limit;
    double t = 0.0;
    Point y;
    double event_offset = 0.0; // valid when terminal == event
    std::size_t steps = 0;
};

struct OrbitSegment {
    std::vector<double> times;
    std::vector<Point> states;
    Terminal terminal = Terminal::time_limit;
    double event_offset = 0.0;
};

/// Adaptive Dormand-Prince 5(4) with PI step control and 4th-order dense
/// output; quadratic fields are smooth and non-stiff on bounded sets, so an
/// explicit pair is enough.  Event crossings are localized by bisection on
/// the dense solution to |t|-accuracy 1e-12 and the run ends exactly there.
/// Throws NumericalError on step underflow (h < 1e-15) or a NaN state.
CoreResult integrate_core(const GeneralQuadraticField& f, Point start,
                          const IntegratorConfig& cfg, const EventSpec* event = nullptr);

/// Same integration, recording the trajectory.  With sample_dt > 0 states
/// are emitted at uniform times from the dense interpolant, otherwise at
/// every accepted step.
OrbitSegment integrate(const GeneralQuadraticField& f, Point start,
                       const IntegratorConfig& cfg, const EventSpec* event = nullptr,
                       double sample_dt = 0.0);

/// Field with time reversed.
GeneralQuadraticField time_reversed(const GeneralQuadraticField& f);

} // namespace quadcycle
