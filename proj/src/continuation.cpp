#include "quadcycle/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "quadcycle/errors.hpp"
#include "quadcycle/report.hpp"

namespace quadcycle {

std::string_view to_string(TerminationClass t) {
    switch (t) {
        case TerminationClass::shrinks_to_focus: return "shrinks_to_focus";
        case TerminationClass::separatrix_like: return "separatrix_like";
        case TerminationClass::unbounded: return "unbounded";
        case TerminationClass::range_end: return "range_end";
        case TerminationClass::fold_end: return "fold_end";
    }
    return "range_end";
}

double small_amplitude_period(const GeneralQuadraticField& f, Point focus) {
    const double det = f.jacobian(focus).det();
    if (det <= 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * M_PI / std::sqrt(det);
}

namespace {

Params24 with_param(const Params24& base, RotationParamId id, double mu) {
    Params24 q = base;
    switch (id) {
        case RotationParamId::Lambda: q.lambda = mu; break;
        case RotationParamId::Alpha: q.alpha = mu; break;
        case RotationParamId::Beta: q.beta = mu; break;
        case RotationParamId::Gamma: q.gamma = mu; break;
    }
    return q;
}

struct ProbeDiag {
    double min_abs_d = std::numeric_limits<double>::infinity();
    int n_ok = 0, n_escape = 0, n_timeout = 0;
};

struct CycleHit {
    LimitCycle cycle;
    std::optional<LimitCycle> sibling; // second root, when a pair is visible
};

// Displacement with the flank sign factored out, so the dip near a fold is a
// smooth minimum whose negative values mean a hidden root pair.
double signed_dip(const GeneralQuadraticField& f, const Section& sec, double s,
                  double flank_sign, const IntegratorConfig& cfg, bool& ok) {
    const ReturnResult r = displacement(f, sec, s, cfg);
    ok = r.status == ReturnStatus::ok;
    return ok ? r.s_next * flank_sign : std::numeric_limits<double>::quiet_NaN();
}

// Parabola-accelerated minimization of the signed dip over [sl, sr].
bool dip_vertex(const GeneralQuadraticField& f, const Section& sec, double sl, double sm,
                double sr, double flank_sign, const IntegratorConfig& cfg, double& s_v,
                double& m_v) {
    bool ok = false;
    double ml = signed_dip(f, sec, sl, flank_sign, cfg, ok);
    if (!ok) return false;
    double mm = signed_dip(f, sec, sm, flank_sign, cfg, ok);
    if (!ok) return false;
    double mr = signed_dip(f, sec, sr, flank_sign, cfg, ok);
    if (!ok) return false;
    for (int it = 0; it < 14; ++it) {
        // successive parabolic interpolation toward the dip vertex
        const double num = (sm - sl) * (sm - sl) * (mm - mr) -
                           (sm - sr) * (sm - sr) * (mm - ml);
        const double den = 2.0 * ((sm - sl) * (mm - mr) - (sm - sr) * (mm - ml));
        double s_new = den != 0.0 ? sm - num / den : 0.5 * (sl + sr);
        if (!(s_new > sl && s_new < sr) || s_new == sm)
            s_new = sm - sl > sr - sm ? 0.5 * (sl + sm) : 0.5 * (sm + sr);
        const double m_new = signed_dip(f, sec, s_new, flank_sign, cfg, ok);
        if (!ok) return false;
        // keep the three points around the smallest value
        if (s_new < sm) {
            if (m_new <= mm) {
                sr = sm;
                mr = mm;
                sm = s_new;
                mm = m_new;
            } else {
                sl = s_new;
                ml = m_new;
            }
        } else {
            if (m_new <= mm) {
                sl = sm;
                ml = mm;
                sm = s_new;
                mm = m_new;
            } else {
                sr = s_new;
                mr = m_new;
            }
        }
        if (mm < 0.0) break; // crossing certain, no need to polish further
        if (sr - sl < 1e-8 * (1.0 + sr)) break;
    }
    s_v = sm;
    m_v = mm;
    return true;
}

std::optional<CycleHit> find_cycle_near(const GeneralQuadraticField& f, const Section& sec,
                                        double s_pred, IntegratorConfig cfg,
                                        const ContinuationConfig& ccfg, ProbeDiag& diag) {
    const double lo = std::max(sec.s_min, s_pred / ccfg.probe_span);
    const double hi = std::min(sec.s_max, s_pred * ccfg.probe_span);
    if (!(hi > lo)) return std::nullopt;
    const std::vector<double> grid = log_grid(lo, hi, ccfg.probe_count);
    std::vector<DisplacementSample> prof = displacement_profile(f, sec, grid, cfg);

    auto fill_diag = [&] {
        diag = ProbeDiag{};
        for (const DisplacementSample& p : prof) {
            switch (p.status) {
                case ReturnStatus::ok:
                    ++diag.n_ok;
                    diag.min_abs_d = std::min(diag.min_abs_d, std::fabs(p.d));
                    break;
                case ReturnStatus::escape: ++diag.n_escape; break;
                case ReturnStatus::timeout: ++diag.n_timeout; break;
                default: break;
            }
        }
    };
    fill_diag();

    // tiny cycles push the whole profile to the noise floor; remeasure at a
    // tightened tolerance so brackets come from signal, not noise
    double max_abs_d = 0.0;
    for (const DisplacementSample& p : prof)
        if (p.status == ReturnStatus::ok) max_abs_d = std::max(max_abs_d, std::fabs(p.d));
    bool laddered = false;
    if (diag.n_ok > 0 && max_abs_d < displacement_noise_gate(cfg, hi)) {
        laddered = true;
        cfg = cfg.tightened(100.0);
        prof = displacement_profile(f, sec, grid, cfg);
        fill_diag();
    }

    // collect sign-change brackets, nearest to the prediction first
    std::vector<std::size_t> brackets;
    for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
        if (prof[i].status != ReturnStatus::ok || prof[i + 1].status != ReturnStatus::ok)
            continue;
        if ((prof[i].d > 0.0) != (prof[i + 1].d > 0.0)) brackets.push_back(i);
    }
    std::sort(brackets.begin(), brackets.end(), [&](std::size_t i, std::size_t j) {
        const double mi = std::sqrt(prof[i].s * prof[i + 1].s);
        const double mj = std::sqrt(prof[j].s * prof[j + 1].s);
        return std::fabs(std::log(mi / s_pred)) < std::fabs(std::log(mj / s_pred));
    });

    CycleHit hit;
    bool have = false;
    for (std::size_t bi : brackets) {
        auto cyc = refine_bracket(f, sec, prof[bi].s, prof[bi + 1].s, cfg, ccfg.scan);
        if (!cyc) continue;
        if (laddered) cyc->certified = false;
        if (!have) {
            hit.cycle = *cyc;
            have = true;
        } else if (std::fabs(cyc->s_star - hit.cycle.s_star) >
                   1e-7 * (1.0 + cyc->s_star)) {
            hit.sibling = *cyc;
            break;
        }
    }
    if (have) return hit;

    // no visible sign change: hunt for a root pair hidden in a dip
    std::size_t best = prof.size();
    for (std::size_t i = 1; i + 1 < prof.size(); ++i) {
        if (prof[i - 1].status != ReturnStatus::ok || prof[i].status != ReturnStatus::ok ||
            prof[i + 1].status != ReturnStatus::ok)
            continue;
        if (std::fabs(prof[i].d) < std::fabs(prof[i - 1].d) &&
            std::fabs(prof[i].d) < std::fabs(prof[i + 1].d)) {
            if (best == prof.size() || std::fabs(prof[i].d) < std::fabs(prof[best].d))
                best = i;
        }
    }
    if (best == prof.size()) return std::nullopt;
    const double flank = prof[best - 1].d > 0.0 ? 1.0 : -1.0;
    if ((prof[best + 1].d > 0.0 ? 1.0 : -1.0) != flank) return std::nullopt;

    double s_v = 0.0, m_v = 0.0;
    if (!dip_vertex(f, sec, prof[best - 1].s, prof[best].s, prof[best + 1].s, flank, cfg,
                    s_v, m_v))
        return std::nullopt;
    diag.min_abs_d = std::min(diag.min_abs_d, std::fabs(m_v));
    if (m_v >= 0.0) return std::nullopt; // genuine gap, no crossing

    auto c1 = refine_bracket(f, sec, prof[best - 1].s, s_v, cfg, ccfg.scan);
    auto c2 = refine_bracket(f, sec, s_v, prof[best + 1].s, cfg, ccfg.scan);
    if (!c1 && !c2) return std::nullopt;
    if (c1 && c2) {
        const bool first_nearer =
            std::fabs(std::log(c1->s_star / s_pred)) <= std::fabs(std::log(c2->s_star / s_pred));
        hit.cycle = first_nearer ? *c1 : *c2;
        hit.sibling = first_nearer ? *c2 : *c1;
    } else {
        hit.cycle = c1 ? *c1 : *c2;
    }
    return hit;
}

double dprime_at(const GeneralQuadraticField& f, const Section& sec, double s,
                 const IntegratorConfig& cfg) {
    const double delta = std::max(1e-6, 1e-4 * s);
    const ReturnResult rl = displacement(f, sec, s - delta, cfg);
    const ReturnResult rr = displacement(f, sec, s + delta, cfg);
    if (rl.status != ReturnStatus::ok || rr.status != ReturnStatus::ok)
        return std::numeric_limits<double>::quiet_NaN();
    return (rr.s_next - rl.s_next) / (2.0 * delta);
}

} // namespace

std::optional<LimitCycle> locate_cycle_near(const GeneralQuadraticField& f,
                                            const Section& sec, double s_pred,
                                            const IntegratorConfig& cfg,
                                            const ContinuationConfig& ccfg) {
    ProbeDiag diag;
    const std::optional<CycleHit> hit = find_cycle_near(f, sec, s_pred, cfg, ccfg, diag);
    if (!hit) return std::nullopt;
    return hit->cycle;
}

CycleFamily continue_family(const Params24& base, RotationParamId param, double mu_from,
                            double mu_to, double seed_s, Point focus,
                            const IntegratorConfig& cfg, const ContinuationConfig& ccfg) {
    CycleFamily fam;
    fam.param = param;
    const double dir = mu_to >= mu_from ? 1.0 : -1.0;

    auto section_at = [&](double mu) {
        const GeneralQuadraticField f = compile(with_param(base, param, mu));
        return section_for_focus(f, focus, 1e-7, 0.5 * cfg.r_escape);
    };

    double mu = mu_from;
    GeneralQuadraticField f = compile(with_param(base, param, mu));
    Section sec = section_at(mu);
    ProbeDiag diag;
    std::optional<CycleHit> hit = find_cycle_near(f, sec, seed_s, cfg, ccfg, diag);
    if (!hit)
        throw InvalidParameterError("continue_family: seed does not refine to a cycle");
    std::optional<LimitCycle> last_sibling = hit->sibling;
    fam.samples.push_back({mu, hit->cycle.s_star, hit->cycle.period, hit->cycle.d_prime,
                           hit->cycle.certified &&
                               std::fabs(hit->cycle.d_prime) >=
                                   certified_slope_floor(cfg, hit->cycle.s_star)});

    const double blowup = ccfg.period_blowup_factor * small_amplitude_period(f, focus);
    double dmu = dir * ccfg.mu_step_init;
    double mu_fail_best = std::numeric_limits<double>::quiet_NaN();
    ProbeDiag fail_diag;
    bool branch_flip_seen = false;

    auto classify_stop = [&](TerminationClass cls, const std::string& note) {
        fam.termination = cls;
        fam.note = note;
    };

    for (int step = 0; step < ccfg.max_steps; ++step) {
        const FamilySample& cur = fam.samples.back();
        if (cur.s_star < ccfg.s_collapse) {
            classify_stop(TerminationClass::shrinks_to_focus, "");
            return fam;
        }
        if (cur.period > blowup) {
            classify_stop(TerminationClass::separatrix_like, "period blowup");
            return fam;
        }
        if (cur.s_star > 0.45 * cfg.r_escape) {
            classify_stop(TerminationClass::unbounded, "cycle reached escape radius");
            return fam;
        }
        if (mu == mu_to) {
            classify_stop(TerminationClass::range_end, "");
            return fam;
        }

        double mu_next = mu + dmu;
        if (dir * (mu_next - mu_to) > 0.0) mu_next = mu_to;

        // secant prediction for s*, clamped against wild extrapolation
        double s_pred = cur.s_star;
        if (fam.samples.size() >= 2) {
            const FamilySample& prev = fam.samples[fam.samples.size() - 2];
            if (prev.mu != cur.mu) {
                const double slope = (cur.s_star - prev.s_star) / (cur.mu - prev.mu);
                s_pred = cur.s_star + slope * (mu_next - cur.mu);
            }
        }
        s_pred = std::clamp(s_pred, 0.25 * cur.s_star, 4.0 * cur.s_star);
        s_pred = std::max(s_pred, 2e-7);

        f = compile(with_param(base, param, mu_next));
        sec = section_at(mu_next);
        hit = find_cycle_near(f, sec, s_pred, cfg, ccfg, diag);

        bool accept = hit.has_value();
        if (accept && std::fabs(cur.d_prime) > 1e-5 &&
            std::fabs(hit->cycle.d_prime) > 1e-5 &&
            (cur.d_prime > 0.0) != (hit->cycle.d_prime > 0.0)) {
            accept = false; // landed on the sibling branch: past the fold
            branch_flip_seen = true;
        }

        if (std::getenv("QUADCYCLE_TRACE"))
            std::fprintf(stderr,
                         "cont: mu_next=%.12g s_pred=%.8g -> %s ok=%d esc=%d to=%d "
                         "min|d|=%.3g flip=%d\n",
                         mu_next, s_pred, accept ? "accept" : "fail", diag.n_ok,
                         diag.n_escape, diag.n_timeout, diag.min_abs_d,
                         (int)branch_flip_seen);
        if (accept) {
            mu = mu_next;
            last_sibling = hit->sibling;
            const bool cert =
                hit->cycle.certified &&
                std::fabs(hit->cycle.d_prime) >=
                    certified_slope_floor(cfg, hit->cycle.s_star);
            fam.samples.push_back({mu, hit->cycle.s_star, hit->cycle.period,
                                   hit->cycle.d_prime, cert});
            dmu = std::clamp(dmu * 1.4, -ccfg.mu_step_max, ccfg.mu_step_max);
            if (std::isnan(mu_fail_best) ||
                dir * (mu_fail_best - mu) <= 0.0) // failure record now stale
                mu_fail_best = std::numeric_limits<double>::quiet_NaN();
            continue;
        }

        if (std::isnan(mu_fail_best) || dir * (mu_next - mu_fail_best) < 0.0) {
            mu_fail_best = mu_next;
            fail_diag = diag;
        }
        dmu *= 0.5;
        if (std::fabs(dmu) >= ccfg.mu_step_min) continue;

        // cannot advance: decide why
        {
            // a stall with a tiny cycle at a vanishing focus trace is the
            // family dying into the focus, below the displacement resolution
            const GeneralQuadraticField fcur = compile(with_param(base, param, mu));
            const double tr = fcur.jacobian(focus).trace();
            if (fam.samples.back().s_star < 1e-2 && std::fabs(tr) < 2e-3 &&
                !branch_flip_seen) {
                classify_stop(TerminationClass::shrinks_to_focus,
                              "below displacement resolution");
                return fam;
            }
            // a cycle grazing the invariant line of the factored shape has
            // reached the separatrix structure carrying the hemi-cycle
            if (const auto alpha_shape = factored_shape_alpha(fcur);
                alpha_shape && !branch_flip_seen) {
                const Section scur = section_at(mu);
                EventSpec ev;
                ev.origin = scur.focus;
                ev.direction = scur.direction;
                ev.s_min = 0.0;
                ev.s_max = cfg.r_escape;
                ev.orientation = scur.orientation;
                const FamilySample& last = fam.samples.back();
                const Point start = scur.focus + last.s_star * scur.direction;
                const OrbitSegment loop =
                    integrate(fcur, start, cfg, &ev, last.period / 400.0);
                double line_dist = std::numeric_limits<double>::infinity();
                for (const Point& q : loop.states)
                    line_dist = std::min(
                        line_dist, std::fabs(1.0 + q.x + *alpha_shape * q.y));
                if (line_dist < 1e-4) {
                    classify_stop(TerminationClass::separatrix_like,
                                  "cycle grazes the invariant line (distance " +
                                      fmt17(line_dist) + ")");
                    return fam;
                }
            }
        }
        if (fail_diag.n_ok == 0 && fail_diag.n_escape > 0) {
            classify_stop(TerminationClass::unbounded, "probes escape");
            return fam;
        }
        if (fail_diag.n_timeout > 0) {
            classify_stop(TerminationClass::separatrix_like, "returns time out");
            return fam;
        }
        if (branch_flip_seen || fail_diag.min_abs_d <= 1e-4) {
            FoldPoint fold;
            fold.mu_width = std::fabs(mu_fail_best - mu);
            fold.mu_fold = 0.5 * (mu + mu_fail_best);
            if (last_sibling)
                fold.s_fold = 0.5 * (fam.samples.back().s_star + last_sibling->s_star);
            else
                fold.s_fold = fam.samples.back().s_star;
            const GeneralQuadraticField ff =
                compile(with_param(base, param, fold.mu_fold));
            const Section fsec = section_at(fold.mu_fold);
            const double dp = dprime_at(ff, fsec, fold.s_fold, cfg);
            fold.d_prime = std::isnan(dp) ? 0.0 : dp;
            fam.folds.push_back(fold);
            classify_stop(TerminationClass::fold_end, "");
            return fam;
        }
        classify_stop(TerminationClass::range_end, "continuation-stall");
        return fam;
    }
    classify_stop(TerminationClass::range_end, "step budget exhausted");
    return fam;
}

} // namespace quadcycle
