// Dormand-Prince 5(4) pair with the dense-output coefficients from Hairer,
// Norsett, Wanner, "Solving Ordinary Differential Equations I" (dopri5).

#include "quadcycle/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "quadcycle/errors.hpp"

namespace quadcycle {

std::string_view to_string(Terminal t) {
    switch (t) {
        case Terminal::time_limit: return "time_limit";
        case Terminal::event: return "event";
        case Terminal::escape: return "escape";
        case Terminal::equilibrium_trap: return "equilibrium_trap";
    }
    return "time_limit";
}

GeneralQuadraticField time_reversed(const GeneralQuadraticField& f) {
    return GeneralQuadraticField{} - f;
}

namespace {

// Butcher tableau
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// embedded error weights (b - bhat)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct Dense {
    double t0 = 0.0, h = 0.0;
    Point r1, r2, r3, r4, r5;

    Point at(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        // r1 + th*(r2 + th1*(r3 + th*(r4 + th1*r5)))
        return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
    }
};

struct Stepper {
    const GeneralQuadraticField& f;
    IntegratorConfig cfg;
    double t = 0.0;
    Point y;
    Point k1; // FSAL derivative at (t, y)
    double h = 0.0;
    double facold = 1e-4;

    Stepper(const GeneralQuadraticField& field, Point start, const IntegratorConfig& c)
        : f(field), cfg(c), y(start) {
        k1 = f.eval(y);
        h = std::min(cfg.h_init, cfg.h_max);
    }

    double error_norm(Point e, Point ynew) const {
        const double scx = cfg.atol + cfg.rtol * std::max(std::fabs(y.x), std::fabs(ynew.x));
        const double scy = cfg.atol + cfg.rtol * std::max(std::fabs(y.y), std::fabs(ynew.y));
        const double ex = e.x / scx, ey = e.y / scy;
        return std::sqrt(0.5 * (ex * ex + ey * ey));
    }

    // One accepted step; fills the dense interpolant.  Throws on breakdown.
    void step(Dense& dense) {
        for (int attempt = 0;; ++attempt) {
            if (h < 1e-15)
                throw NumericalError("integrate: step size underflow (stiff or degenerate)");
            if (attempt > 200) throw NumericalError("integrate: step control stalled");

            bool last = false;
            double hs = h;
            if (t + 1.01 * hs >= cfg.t_max) {
                hs = cfg.t_max - t;
                last = true;
            }

            const Point k2 = f.eval(y + (hs * a21) * k1);
            const Point k3 = f.eval(y + hs * (a31 * k1 + a32 * k2));
            const Point k4 = f.eval(y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
            const Point k5 = f.eval(y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Point k6 =
                f.eval(y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const Point ynew =
                y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Point k7 = f.eval(ynew);
            const Point errv =
                hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            if (!finite(ynew) || !finite(k7)) {
                h = 0.25 * hs;
                continue;
            }
            const double err = error_norm(errv, ynew);
            const double fac11 = std::pow(std::max(err, 1e-30), 0.17);
            if (err <= 1.0) {
                // accept; PI control, growth limited to x10, shrink to /10
                const double fac =
                    std::clamp(fac11 / (std::pow(facold, 0.04) * 0.9), 0.1, 5.0);
                facold = std::max(err, 1e-4);

                dense.t0 = t;
                dense.h = hs;
                dense.r1 = y;
                const Point ydiff = ynew - y;
                dense.r2 = ydiff;
                const Point bspl = hs * k1 - ydiff;
                dense.r3 = bspl;
                dense.r4 = ydiff - hs * k7 - bspl;
                dense.r5 = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

                t = last ? cfg.t_max : t + hs;
                y = ynew;
                k1 = k7;
                h = std::min(hs / fac, cfg.h_max);
                return;
            }
            h = hs / std::min(5.0, fac11 / 0.9);
        }
    }
};

struct EventState {
    const EventSpec* ev;
    bool armed = false;
    double g_prev = 0.0;

    explicit EventState(const EventSpec* e, Point start) : ev(e) {
        if (!ev) return;
        g_prev = ev->transversal(start);
        armed = std::fabs(g_prev) > 1e-9 * (1.0 + norm(start - ev->origin));
    }

    bool oriented(double from, double to) const {
        if (ev->orientation > 0) return from < 0.0 && to > 0.0;
        if (ev->orientation < 0) return from > 0.0 && to < 0.0;
        return (from < 0.0 && to > 0.0) || (from > 0.0 && to < 0.0);
    }

    // Scans the dense interpolant over the accepted step; true when a valid
    // crossing was localized (t_hit, y_hit set).
    bool find_crossing(const Dense& dense, double& t_hit, Point& y_hit) {
        const double t0 = dense.t0, t1 = dense.t0 + dense.h;
        constexpr int kProbes = 8;
        double ta = t0, ga = g_prev;
        for (int i = 1; i <= kProbes; ++i) {
            const double tb = t0 + (t1 - t0) * (static_cast<double>(i) / kProbes);
            const Point pb = (i == kProbes) ? dense.at(t1) : dense.at(tb);
            const double gb = ev->transversal(pb);
            if (!armed) {
                if (std::fabs(gb) > 1e-9 * (1.0 + norm(pb - ev->origin))) armed = true;
            } else if (ga != 0.0 && oriented(ga, gb)) {
                double lo = ta, hi = tb, glo = ga;
                while (hi - lo > 1e-13) {
                    const double mid = 0.5 * (lo + hi);
                    const double gm = ev->transversal(dense.at(mid));
                    if (gm == 0.0) {
                        lo = hi = mid;
                        break;
                    }
                    if ((gm < 0.0) == (glo < 0.0)) {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                const double tc = 0.5 * (lo + hi);
                const Point pc = dense.at(tc);
                const double off = ev->offset(pc);
                if (off >= ev->s_min && off <= ev->s_max) {
                    t_hit = tc;
                    y_hit = pc;
                    g_prev = gb;
                    return true;
                }
            }
            ta = tb;
            ga = gb;
        }
        g_prev = ga;
        return false;
    }
};

template <class Sink>
CoreResult run(const GeneralQuadraticField& f, Point start, const IntegratorConfig& cfg,
               const EventSpec* event, Sink&& sink) {
    if (!finite(start)) throw InvalidParameterError("integrate: start not finite");
    CoreResult res;
    Stepper st(f, start, cfg);
    EventState es(event, start);
    const double trap_floor = std::max(10.0 * cfg.atol, 1e-13);

    sink.start(st.t, st.y);
    if (norm(start) >= cfg.r_escape) {
        res = {Terminal::escape, st.t, st.y, 0.0, 0};
        sink.finish(res);
        return res;
    }

    Dense dense;
    while (st.t < cfg.t_max) {
        st.step(dense);
        ++res.steps;

        if (event) {
            double t_hit = 0.0;
            Point y_hit;
            if (es.find_crossing(dense, t_hit, y_hit)) {
                sink.accepted(dense, t_hit);
                res.terminal = Terminal::event;
                res.t = t_hit;
                res.y = y_hit;
                res.event_offset = event->offset(y_hit);
                sink.finish(res);
                return res;
            }
        }
        sink.accepted(dense, dense.t0 + dense.h);

        if (norm(st.y) >= cfg.r_escape) {
            res.terminal = Terminal::escape;
            res.t = st.t;
            res.y = st.y;
            sink.finish(res);
            return res;
        }
        if (norm(st.k1) <= trap_floor) {
            res.terminal = Terminal::equilibrium_trap;
            res.t = st.t;
            res.y = st.y;
            sink.finish(res);
            return res;
        }
    }
    res.terminal = Terminal::time_limit;
    res.t = st.t;
    res.y = st.y;
    sink.finish(res);
    return res;
}

struct NullSink {
    void start(double, Point) {}
    void accepted(const Dense&, double) {}
    void finish(const CoreResult&) {}
};

struct RecordSink {
    OrbitSegment& seg;
    double sample_dt;
    double next_t = 0.0;

    void start(double t, Point y) {
        seg.times.push_back(t);
        seg.states.push_back(y);
        next_t = t + sample_dt;
    }
    void accepted(const Dense& dense, double t_end) {
        if (sample_dt > 0.0) {
            while (next_t < t_end) {
                seg.times.push_back(next_t);
                seg.states.push_back(dense.at(next_t));
                next_t += sample_dt;
            }
        } else {
            seg.times.push_back(t_end);
            seg.states.push_back(dense.at(t_end));
        }
    }
    void finish(const CoreResult& res) {
        if (seg.times.empty() || seg.times.back() != res.t) {
            seg.times.push_back(res.t);
            seg.states.push_back(res.y);
        }
        seg.terminal = res.terminal;
        seg.event_offset = res.event_offset;
    }
};

} // namespace

CoreResult integrate_core(const GeneralQuadraticField& f, Point start,
                          const IntegratorConfig& cfg, const EventSpec* event) {
    return run(f, start, cfg, event, NullSink{});
}

OrbitSegment integrate(const GeneralQuadraticField& f, Point start,
                       const IntegratorConfig& cfg, const EventSpec* event,
                       double sample_dt) {
    OrbitSegment seg;
    run(f, start, cfg, event, RecordSink{seg, sample_dt});
    return seg;
}

} // namespace quadcycle
