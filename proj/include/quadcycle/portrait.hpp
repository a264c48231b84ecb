#pragma once

#include <string>
#include <vector>

#include "quadcycle/cycles.hpp"
#include "quadcycle/equilibria.hpp"
#include "quadcycle/field.hpp"
#include "quadcycle/integrate.hpp"

namespace quadcycle {

struct PortraitSpec {
    double xmin = -4.0, xmax = 2.0;
    double ymin = -2.5, ymax = 2.5;
    int width_px = 880, height_px = 660;
    int seeds_x = 7, seeds_y = 5;      // orbit seed grid
    double orbit_time = 25.0;          // per time direction
    int orbit_points = 700;            // samples per orbit polyline
    double stroke_width = 1.0;
    double marker_size = 4.0;
    bool draw_nullclines = true;
    bool draw_cycles = true;
    bool draw_section_rays = false;
    bool disc_inset = false;           // global view via p -> p/(1+|p|)
};

/// Deterministic SVG phase portrait: seed-grid orbits (both time
/// directions), classified equilibrium markers, detected cycles with
/// stability styling, and for the factored canonical shape the exact xdot=0
/// lines y=0 and 1+x+alpha*y=0.  Identical inputs give byte-identical
/// output.
std::string render_svg(const GeneralQuadraticField& f,
                       const std::vector<Equilibrium>& equilibria,
                       const std::vector<LimitCycle>& cycles, const PortraitSpec& spec,
                       const IntegratorConfig& cfg);

/// Orbit polylines used by the portrait (exposed for tests: symmetry and
/// closure checks run on world coordinates, not on the SVG text).
std::vector<std::vector<Point>> portrait_orbits(const GeneralQuadraticField& f,
                                                const PortraitSpec& spec,
                                                const IntegratorConfig& cfg);

} // namespace quadcycle
