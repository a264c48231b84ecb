#include "quadcycle/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "quadcycle/errors.hpp"
#include "quadcycle/parallel.hpp"

namespace quadcycle {

std::string_view to_string(ReturnStatus s) {
    switch (s) {
        case ReturnStatus::ok: return "ok";
        case ReturnStatus::escape: return "escape";
        case ReturnStatus::timeout: return "timeout";
        case ReturnStatus::trapped: return "trapped";
        case ReturnStatus::failed: return "failed";
    }
    return "failed";
}

std::string_view to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::unstable: return "unstable";
        case Stability::semi_stable: return "semi_stable";
    }
    return "semi_stable";
}

Section section_for_focus(const GeneralQuadraticField& f, Point focus, double s_min,
                          double s_max) {
    if (!(s_min > 0.0) || !(s_max > s_min))
        throw InvalidParameterError("section_for_focus: need 0 < s_min < s_max");
    Section sec;
    sec.focus = focus;
    sec.direction = {1.0, 0.0};
    if (factored_shape_alpha(f) && focus.x < -1.0) sec.direction = {-1.0, 0.0};
    sec.s_min = s_min;
    sec.s_max = s_max;

    // probe the transversal component along the ray to fix the orientation
    const double ratio = std::pow(s_max / s_min, 1.0 / 15.0);
    double s = s_min;
    for (int i = 0; i <= 15; ++i, s *= ratio) {
        const Point p = focus + s * sec.direction;
        const Point v = f.eval(p);
        const double tr = cross(sec.direction, v);
        if (std::fabs(tr) > 1e-12 * (1.0 + norm(v))) {
            sec.orientation = tr > 0.0 ? 1 : -1;
            return sec;
        }
    }
    throw SectionError("section_for_focus: ray is nowhere transversal");
}

ReturnResult return_map(const GeneralQuadraticField& f, const Section& sec, double s,
                        const IntegratorConfig& cfg) {
    EventSpec ev;
    ev.origin = sec.focus;
    ev.direction = sec.direction;
    ev.s_min = 0.0;
    ev.s_max = cfg.r_escape;
    ev.orientation = sec.orientation;

    const Point start = sec.focus + s * sec.direction;
    ReturnResult r;
    try {
        const CoreResult res = integrate_core(f, start, cfg, &ev);
        switch (res.terminal) {
            case Terminal::event:
                r.status = ReturnStatus::ok;
                r.s_next = res.event_offset;
                r.period = res.t;
                break;
            case Terminal::escape: r.status = ReturnStatus::escape; break;
            case Terminal::time_limit: r.status = ReturnStatus::timeout; break;
            case Terminal::equilibrium_trap: r.status = ReturnStatus::trapped; break;
        }
    } catch (const NumericalError&) {
        r.status = ReturnStatus::failed;
    }
    return r;
}

ReturnResult displacement(const GeneralQuadraticField& f, const Section& sec, double s,
                          const IntegratorConfig& cfg) {
    ReturnResult r = return_map(f, sec, s, cfg);
    if (r.status == ReturnStatus::ok) r.s_next -= s;
    return r;
}

namespace {

template <bool Parallel>
std::vector<DisplacementSample> profile_impl(const GeneralQuadraticField& f,
                                             const Section& sec,
                                             const std::vector<double>& offsets,
                                             const IntegratorConfig& cfg) {
    std::vector<DisplacementSample> out(offsets.size());
    auto body = [&](std::size_t i) {
        const ReturnResult r = displacement(f, sec, offsets[i], cfg);
        out[i] = {offsets[i], r.status, r.s_next, r.period};
    };
    if constexpr (Parallel)
        par::parallel_for(offsets.size(), body);
    else
        for (std::size_t i = 0; i < offsets.size(); ++i) body(i);
    return out;
}

} // namespace

std::vector<DisplacementSample> displacement_profile(const GeneralQuadraticField& f,
                                                     const Section& sec,
                                                     const std::vector<double>& offsets,
                                                     const IntegratorConfig& cfg) {
    return profile_impl<true>(f, sec, offsets, cfg);
}

std::vector<DisplacementSample> displacement_profile_serial(
    const GeneralQuadraticField& f, const Section& sec,
    const std::vector<double>& offsets, const IntegratorConfig& cfg) {
    return profile_impl<false>(f, sec, offsets, cfg);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] =
            std::exp(llo + (lhi - llo) * static_cast<double>(i) / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

double displacement_noise_gate(const IntegratorConfig& cfg, double s) {
    return 50.0 * (cfg.rtol * std::max(1.0, s) + cfg.atol);
}

double certified_slope_floor(const IntegratorConfig& cfg, double s) {
    return (cfg.rtol * std::max(1.0, s) + cfg.atol) / 1e-7;
}

namespace {

void attach_orbit(const GeneralQuadraticField& f, const Section& sec,
                  const IntegratorConfig& cfg, const ScanOptions& opt, LimitCycle& cyc) {
    if (!opt.keep_orbit || cyc.period <= 0.0) return;
    EventSpec ev;
    ev.origin = sec.focus;
    ev.direction = sec.direction;
    ev.s_min = 0.0;
    ev.s_max = cfg.r_escape;
    ev.orientation = sec.orientation;
    const Point start = sec.focus + cyc.s_star * sec.direction;
    // the root was polished at the tightened tolerance; sample the loop there
    // so it closes onto itself
    const OrbitSegment seg =
        integrate(f, start, cfg.tightened(10.0), &ev, cyc.period / opt.orbit_samples);
    cyc.orbit = seg.states;
}

std::optional<LimitCycle> refine_core(const GeneralQuadraticField& f, const Section& sec,
                                      double s_lo, double dlo, double period_lo,
                                      double s_hi, double dhi, double period_hi,
                                      IntegratorConfig cfg, const ScanOptions& opt) {
    bool certified = true;
    // A sign flip with noise-level endpoints is either a zero plateau (center
    // annulus) or a genuinely tiny cycle near a focus flip.  Re-measuring at
    // a tightened tolerance separates the two: noise collapses with the
    // tolerance, a real displacement does not.
    if (std::max(std::fabs(dlo), std::fabs(dhi)) < displacement_noise_gate(cfg, s_hi)) {
        certified = false;
        const double before = std::max(std::fabs(dlo), std::fabs(dhi));
        cfg = cfg.tightened(100.0);
        const ReturnResult rlo = displacement(f, sec, s_lo, cfg);
        const ReturnResult rhi = displacement(f, sec, s_hi, cfg);
        if (rlo.status != ReturnStatus::ok || rhi.status != ReturnStatus::ok)
            return std::nullopt;
        dlo = rlo.s_next;
        dhi = rhi.s_next;
        period_lo = rlo.period;
        period_hi = rhi.period;
        const double after = std::max(std::fabs(dlo), std::fabs(dhi));
        if (after < 0.2 * before || after < displacement_noise_gate(cfg, s_hi)) {
            if (std::getenv("QUADCYCLE_TRACE"))
                std::fprintf(stderr, "refine: noise-gate reject\n");
            return std::nullopt; // the "signal" shrank with the tolerance
        }
    }

    double s_best, d_best, period;
    if (std::fabs(dlo) <= std::fabs(dhi)) {
        s_best = s_lo;
        d_best = dlo;
        period = period_lo;
    } else {
        s_best = s_hi;
        d_best = dhi;
        period = period_hi;
    }
    const bool have_sign_change = (dlo > 0.0) != (dhi > 0.0);
    if (!have_sign_change && std::fabs(d_best) > opt.refine_tol) {
        if (std::getenv("QUADCYCLE_TRACE"))
            std::fprintf(stderr, "refine: no sign change dlo=%.3e dhi=%.3e\n", dlo, dhi);
        return std::nullopt;
    }
    if (have_sign_change &&
        (std::fabs(d_best) > opt.refine_tol || s_hi - s_lo > 1e-8 * (1.0 + s_hi))) {
        // Illinois (modified regula falsi): keeps the bracket, converges fast.
        double flo = dlo, fhi = dhi;
        double a = s_lo, b = s_hi;
        int side = 0, failures = 0;
        for (int it = 0; it < 80; ++it) {
            double m;
            if (fhi != flo)
                m = b - fhi * (b - a) / (fhi - flo);
            else
                m = 0.5 * (a + b);
            if (!(m > a && m < b)) m = 0.5 * (a + b);
            if (failures > 0) // dodge a previously failing midpoint
                m = a + (b - a) * (failures % 2 ? 0.382 : 0.618);
            const ReturnResult rm = displacement(f, sec, m, cfg);
            if (rm.status != ReturnStatus::ok) {
                if (++failures > 4) {
                    if (std::getenv("QUADCYCLE_TRACE"))
                        std::fprintf(stderr, "refine: midpoint statuses fail\n");
                    return std::nullopt;
                }
                continue;
            }
            failures = 0;
            const double dm = rm.s_next;
            if (std::fabs(dm) < std::fabs(d_best)) {
                s_best = m;
                d_best = dm;
                period = rm.period;
            }
            // converge both in displacement and in bracket width, so the
            // root location itself is pinned even where the slope is flat
            if (std::fabs(dm) <= opt.refine_tol && b - a <= 1e-8 * (1.0 + m)) break;
            if ((dm > 0.0) == (flo > 0.0)) {
                a = m;
                flo = dm;
                if (side == -1) fhi *= 0.5;
                side = -1;
            } else {
                b = m;
                fhi = dm;
                if (side == 1) flo *= 0.5;
                side = 1;
            }
            if (b - a <= 1e-14 * (1.0 + b)) break;
        }
        // keep the reported root inside the final bracket (noise can park the
        // smallest |d| slightly off it)
        if (s_best < a || s_best > b) {
            const double m = 0.5 * (a + b);
            const ReturnResult rm = displacement(f, sec, m, cfg);
            if (rm.status == ReturnStatus::ok && std::fabs(rm.s_next) <= opt.refine_tol) {
                s_best = m;
                d_best = rm.s_next;
                period = rm.period;
            }
        }
    }
    // adaptive-step artifacts can leave a micro-jump straddling zero, so the
    // bracket may exhaust slightly above tolerance; the fine polish below
    // settles those, anything grossly off is rejected here
    if (std::fabs(d_best) > 100.0 * opt.refine_tol) {
        if (std::getenv("QUADCYCLE_TRACE"))
            std::fprintf(stderr, "refine: |d_best|=%.3e above tol at s=%.6g\n", d_best,
                         s_best);
        return std::nullopt;
    }

    // final polish at a tighter tolerance: the base-tolerance displacement
    // carries an integration bias that line-hugging orbits amplify, shifting
    // the apparent root by more than the reporting precision
    {
        const IntegratorConfig fine = cfg.tightened(10.0);
        double slope = (dhi - dlo) / (s_hi - s_lo);
        double sA = s_best;
        const ReturnResult rA = displacement(f, sec, sA, fine);
        if (rA.status == ReturnStatus::ok) {
            const double bias = std::fabs(rA.s_next - d_best);
            d_best = rA.s_next;
            period = rA.period;
            for (int it = 0; it < 6 && std::fabs(d_best) > 0.5 * opt.refine_tol; ++it) {
                if (slope == 0.0 || !std::isfinite(slope)) break;
                double step = -d_best / slope;
                const double cap = 0.01 * (1.0 + sA);
                step = std::clamp(step, -cap, cap);
                const double sB = sA + step;
                const ReturnResult rB = displacement(f, sec, sB, fine);
                if (rB.status != ReturnStatus::ok) break;
                if (sB != sA) slope = (rB.s_next - d_best) / (sB - sA);
                sA = sB;
                d_best = rB.s_next;
                period = rB.period;
            }
            s_best = sA;
            // a measured bias this large moves the root by more than the
            // reporting precision when tolerances change again
            if (bias > 3e-6 * std::max(std::fabs(slope), 1e-12)) certified = false;
        }
    }
    if (std::fabs(d_best) > opt.refine_tol) {
        if (std::getenv("QUADCYCLE_TRACE"))
            std::fprintf(stderr, "refine: post-polish |d|=%.3e at s=%.6g\n", d_best,
                         s_best);
        return std::nullopt;
    }

    LimitCycle cyc;
    cyc.s_star = s_best;
    cyc.period = period;
    cyc.focus = sec.focus;
    cyc.certified = certified;

    // flanks give both the slope and the stability pattern
    const double delta = std::max(1e-6, 1e-4 * s_best);
    const ReturnResult rl = displacement(f, sec, s_best - delta, cfg);
    const ReturnResult rr = displacement(f, sec, s_best + delta, cfg);
    double left = dlo, right = dhi; // bracket endpoints as fallback
    if (rl.status == ReturnStatus::ok) left = rl.s_next;
    if (rr.status == ReturnStatus::ok) right = rr.s_next;
    if (rl.status == ReturnStatus::ok && rr.status == ReturnStatus::ok)
        cyc.d_prime = (right - left) / (2.0 * delta);
    else
        cyc.d_prime = (dhi - dlo) / (s_hi - s_lo);
    if (left > 0.0 && right < 0.0)
        cyc.stability = Stability::stable;
    else if (left < 0.0 && right > 0.0)
        cyc.stability = Stability::unstable;
    else
        cyc.stability = Stability::semi_stable;

    attach_orbit(f, sec, cfg, opt, cyc);
    return cyc;
}

} // namespace

std::optional<LimitCycle> refine_bracket(const GeneralQuadraticField& f,
                                         const Section& sec, double s_lo, double s_hi,
                                         const IntegratorConfig& cfg,
                                         const ScanOptions& opt) {
    if (s_lo > s_hi) std::swap(s_lo, s_hi);
    const ReturnResult rlo = displacement(f, sec, s_lo, cfg);
    const ReturnResult rhi = displacement(f, sec, s_hi, cfg);
    if (rlo.status != ReturnStatus::ok || rhi.status != ReturnStatus::ok)
        return std::nullopt;
    return refine_core(f, sec, s_lo, rlo.s_next, rlo.period, s_hi, rhi.s_next, rhi.period,
                       cfg, opt);
}

std::vector<LimitCycle> scan_and_refine(const GeneralQuadraticField& f, const Section& sec,
                                        int n_samples, const IntegratorConfig& cfg,
                                        const ScanOptions& opt) {
    if (n_samples < 16)
        throw InvalidParameterError("scan_and_refine: need at least 16 samples");
    const std::vector<double> grid = log_grid(sec.s_min, sec.s_max, n_samples);
    const std::vector<DisplacementSample> prof = displacement_profile(f, sec, grid, cfg);

    std::vector<LimitCycle> cycles;
    for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
        const DisplacementSample& a = prof[i];
        const DisplacementSample& b = prof[i + 1];
        if (a.status != ReturnStatus::ok || b.status != ReturnStatus::ok) continue;
        if (a.d == 0.0 || (a.d > 0.0) != (b.d > 0.0)) {
            if (auto cyc =
                    refine_core(f, sec, a.s, a.d, a.period, b.s, b.d, b.period, cfg, opt))
                cycles.push_back(*cyc);
        }
    }

    // isolated near-tangency without a sign change: semi-stable candidate,
    // confirmed at a tightened tolerance
    for (std::size_t i = 1; i + 1 < prof.size(); ++i) {
        const DisplacementSample& m = prof[i];
        if (m.status != ReturnStatus::ok) continue;
        if (std::fabs(m.d) >= opt.semi_stable_tol) continue;
        const DisplacementSample& l = prof[i - 1];
        const DisplacementSample& r = prof[i + 1];
        if (l.status != ReturnStatus::ok || r.status != ReturnStatus::ok) continue;
        if ((l.d > 0.0) != (r.d > 0.0)) continue; // handled as a sign change
        const double flank = std::min(std::fabs(l.d), std::fabs(r.d));
        if (flank < std::max(100.0 * std::fabs(m.d), 1e-7)) continue; // plateau, not a dip
        const ReturnResult confirm = displacement(f, sec, m.s, cfg.tightened(10.0));
        if (confirm.status != ReturnStatus::ok ||
            std::fabs(confirm.s_next) >= opt.semi_stable_tol)
            continue;
        LimitCycle cyc;
        cyc.s_star = m.s;
        cyc.period = m.period;
        cyc.focus = sec.focus;
        cyc.stability = Stability::semi_stable;
        cyc.d_prime = (r.d - l.d) / (r.s - l.s);
        attach_orbit(f, sec, cfg, opt, cyc);
        cycles.push_back(cyc);
    }

    std::sort(cycles.begin(), cycles.end(),
              [](const LimitCycle& x, const LimitCycle& y) { return x.s_star < y.s_star; });
    return cycles;
}

bool alternating_stability(const std::vector<LimitCycle>& cycles) {
    for (std::size_t i = 0; i + 1 < cycles.size(); ++i) {
        if (cycles[i].stability == Stability::semi_stable ||
            cycles[i + 1].stability == Stability::semi_stable)
            return false;
        if (cycles[i].stability == cycles[i + 1].stability) return false;
    }
    return true;
}

Distribution count_distribution(const GeneralQuadraticField& f, const IntegratorConfig& cfg,
                                const ScanOptions& opt, double s_max) {
    Distribution dist;
    std::vector<Equilibrium> foci = find_foci(f);
    std::sort(foci.begin(), foci.end(), [](const Equilibrium& a, const Equilibrium& b) {
        const double na = norm(a.location), nb = norm(b.location);
        if (na != nb) return na < nb;
        return a.location.x < b.location.x;
    });
    for (const Equilibrium& eq : foci) {
        FocusCycles fc;
        fc.focus = eq;
        try {
            const Section sec = section_for_focus(f, eq.location, 1e-3, s_max);
            fc.cycles = scan_and_refine(f, sec, opt.n_samples, cfg, opt);
        } catch (const SectionError&) {
            // no transversal ray (e.g. a node with no rotation): no cycles
        }
        dist.per_focus.push_back(std::move(fc));
    }
    dist.label = "(";
    for (std::size_t i = 0; i < dist.per_focus.size(); ++i) {
        if (i) dist.label += ":";
        dist.label += std::to_string(dist.per_focus[i].cycles.size());
    }
    dist.label += ")";
    return dist;
}

} // namespace quadcycle
