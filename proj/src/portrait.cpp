#include "quadcycle/portrait.hpp"

#include <cmath>
#include <cstdio>

#include "quadcycle/parallel.hpp"

namespace quadcycle {

namespace {

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

struct Mapper {
    const PortraitSpec& spec;

    double X(double x) const {
        return (x - spec.xmin) / (spec.xmax - spec.xmin) * spec.width_px;
    }
    double Y(double y) const {
        return (spec.ymax - y) / (spec.ymax - spec.ymin) * spec.height_px;
    }
};

void append_polyline(std::string& svg, const Mapper& m, const std::vector<Point>& pts,
                     const std::string& style) {
    if (pts.size() < 2) return;
    svg += "<polyline fill=\"none\" " + style + " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) svg += ' ';
        svg += px(m.X(pts[i].x)) + ',' + px(m.Y(pts[i].y));
    }
    svg += "\"/>\n";
}

std::vector<Point> clip_to_box(const std::vector<Point>& pts, const PortraitSpec& s) {
    // orbits that leave the viewport are truncated at the first exit; the
    // margin keeps curves from stopping visibly short of the frame
    const double mx = 0.15 * (s.xmax - s.xmin), my = 0.15 * (s.ymax - s.ymin);
    std::vector<Point> out;
    for (const Point& p : pts) {
        if (p.x < s.xmin - mx || p.x > s.xmax + mx || p.y < s.ymin - my ||
            p.y > s.ymax + my)
            break;
        out.push_back(p);
    }
    return out;
}

Point disc_map(Point p) { return (1.0 / (1.0 + norm(p))) * p; }

} // namespace

std::vector<std::vector<Point>> portrait_orbits(const GeneralQuadraticField& f,
                                                const PortraitSpec& spec,
                                                const IntegratorConfig& cfg) {
    std::vector<Point> seeds;
    for (int iy = 0; iy < spec.seeds_y; ++iy)
        for (int ix = 0; ix < spec.seeds_x; ++ix) {
            const double x =
                spec.xmin + (spec.xmax - spec.xmin) * (ix + 0.5) / spec.seeds_x;
            const double y =
                spec.ymin + (spec.ymax - spec.ymin) * (iy + 0.5) / spec.seeds_y;
            seeds.push_back({x, y});
        }

    IntegratorConfig ocf = cfg;
    ocf.t_max = spec.orbit_time;
    const double dt = spec.orbit_time / spec.orbit_points;
    const GeneralQuadraticField rev = time_reversed(f);

    std::vector<std::vector<Point>> orbits(2 * seeds.size());
    par::parallel_for(2 * seeds.size(), [&](std::size_t k) {
        const Point seed = seeds[k / 2];
        const GeneralQuadraticField& dirf = (k % 2 == 0) ? f : rev;
        try {
            const OrbitSegment seg = integrate(dirf, seed, ocf, nullptr, dt);
            orbits[k] = clip_to_box(seg.states, spec);
        } catch (...) {
            // skipped orbit (integration failure); noted by its absence
        }
    });
    return orbits;
}

std::string render_svg(const GeneralQuadraticField& f,
                       const std::vector<Equilibrium>& equilibria,
                       const std::vector<LimitCycle>& cycles, const PortraitSpec& spec,
                       const IntegratorConfig& cfg) {
    const Mapper m{spec};
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(spec.width_px) + "\" height=\"" +
           std::to_string(spec.height_px) + "\" viewBox=\"0 0 " +
           std::to_string(spec.width_px) + " " + std::to_string(spec.height_px) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const std::string orbit_style = "stroke=\"#9db4d0\" stroke-width=\"" +
                                    px(0.8 * spec.stroke_width) + "\"";
    for (const std::vector<Point>& orbit : portrait_orbits(f, spec, cfg))
        append_polyline(svg, m, orbit, orbit_style);

    if (spec.draw_nullclines) {
        // xdot = 0 factors into exact lines for the canonical shape
        if (auto alpha = factored_shape_alpha(f)) {
            append_polyline(svg, m, {{spec.xmin, 0.0}, {spec.xmax, 0.0}},
                            "stroke=\"#caa46a\" stroke-width=\"" + px(spec.stroke_width) +
                                "\" stroke-dasharray=\"6 3\"");
            std::vector<Point> line;
            if (std::fabs(*alpha) > 1e-14) {
                line = {{spec.xmin, -(1.0 + spec.xmin) / *alpha},
                        {spec.xmax, -(1.0 + spec.xmax) / *alpha}};
            } else {
                line = {{-1.0, spec.ymin}, {-1.0, spec.ymax}};
            }
            append_polyline(svg, m, line,
                            "stroke=\"#caa46a\" stroke-width=\"" + px(spec.stroke_width) +
                                "\" stroke-dasharray=\"6 3\"");
        }
    }

    if (spec.draw_cycles) {
        for (const LimitCycle& cyc : cycles) {
            std::string style = "stroke-width=\"" + px(1.8 * spec.stroke_width) + "\"";
            switch (cyc.stability) {
                case Stability::stable: style += " stroke=\"#1c7c2a\""; break;
                case Stability::unstable:
                    style += " stroke=\"#b02318\" stroke-dasharray=\"5 4\"";
                    break;
                case Stability::semi_stable:
                    style += " stroke=\"#7a3b92\" stroke-dasharray=\"9 3 2 3\"";
                    break;
            }
            append_polyline(svg, m, cyc.orbit, style);
        }
    }

    if (spec.draw_section_rays) {
        for (const LimitCycle& cyc : cycles) {
            const Point tip = cyc.focus + 1.2 * cyc.s_star *
                                              Point{cyc.focus.x < -1.0 ? -1.0 : 1.0, 0.0};
            append_polyline(svg, m, {cyc.focus, tip},
                            "stroke=\"#444444\" stroke-width=\"" +
                                px(0.7 * spec.stroke_width) + "\"");
        }
    }

    for (const Equilibrium& eq : equilibria) {
        const double cx = m.X(eq.location.x), cy = m.Y(eq.location.y);
        const double r = spec.marker_size;
        switch (eq.kind) {
            case EquilibriumKind::saddle:
                svg += "<path d=\"M " + px(cx - r) + " " + px(cy - r) + " L " + px(cx + r) +
                       " " + px(cy + r) + " M " + px(cx - r) + " " + px(cy + r) + " L " +
                       px(cx + r) + " " + px(cy - r) +
                       "\" stroke=\"#222222\" stroke-width=\"1.6\"/>\n";
                break;
            case EquilibriumKind::center_candidate:
                svg += "<circle cx=\"" + px(cx) + "\" cy=\"" + px(cy) + "\" r=\"" + px(r) +
                       "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.3\"/>\n";
                svg += "<circle cx=\"" + px(cx) + "\" cy=\"" + px(cy) +
                       "\" r=\"1.2\" fill=\"#222222\"/>\n";
                break;
            case EquilibriumKind::degenerate:
                svg += "<rect x=\"" + px(cx - r) + "\" y=\"" + px(cy - r) + "\" width=\"" +
                       px(2 * r) + "\" height=\"" + px(2 * r) +
                       "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.3\"/>\n";
                break;
            default: { // focus or node: filled when attracting
                const bool attracting = eq.trace < 0.0;
                svg += "<circle cx=\"" + px(cx) + "\" cy=\"" + px(cy) + "\" r=\"" + px(r) +
                       "\" fill=\"" + (attracting ? "#222222" : "white") +
                       "\" stroke=\"#222222\" stroke-width=\"1.3\"/>\n";
            }
        }
    }

    if (spec.disc_inset) {
        // compressed global view p -> p/(1+|p|) in the top-right corner
        const double R = 0.16 * spec.width_px;
        const double cx = spec.width_px - R - 8.0, cy = R + 8.0;
        svg += "<g>\n<circle cx=\"" + px(cx) + "\" cy=\"" + px(cy) + "\" r=\"" + px(R) +
               "\" fill=\"#fbfbfb\" stroke=\"#888888\"/>\n";
        IntegratorConfig icf = cfg;
        icf.t_max = 4.0 * spec.orbit_time; // reach farther out for the inset
        PortraitSpec wide = spec;
        wide.xmin = 4.0 * spec.xmin;
        wide.xmax = 4.0 * spec.xmax;
        wide.ymin = 4.0 * spec.ymin;
        wide.ymax = 4.0 * spec.ymax;
        for (const std::vector<Point>& orbit : portrait_orbits(f, wide, icf)) {
            if (orbit.size() < 2) continue;
            svg += "<polyline fill=\"none\" stroke=\"#9db4d0\" stroke-width=\"0.6\" points=\"";
            for (std::size_t i = 0; i < orbit.size(); ++i) {
                const Point q = disc_map(orbit[i]);
                if (i) svg += ' ';
                svg += px(cx + R * q.x) + ',' + px(cy - R * q.y);
            }
            svg += "\"/>\n";
        }
        svg += "</g>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace quadcycle
