#include "quadcycle/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "quadcycle/equilibria.hpp"
#include "quadcycle/errors.hpp"
#include "quadcycle/parallel.hpp"

namespace quadcycle {

bool StageReport::hard_passed() const {
    for (const Assertion& a : assertions)
        if (a.hard && !a.pass) return false;
    return true;
}

bool ScenarioReport::all_hard_passed() const {
    for (const StageReport& s : stages)
        if (!s.hard_passed()) return false;
    return true;
}

namespace {

Json assertion_json(const Assertion& a) {
    Json j = Json::object();
    j["name"] = Json::string(a.name);
    j["pass"] = Json::boolean(a.pass);
    j["hard"] = Json::boolean(a.hard);
    if (!a.detail.empty()) j["detail"] = Json::string(a.detail);
    return j;
}

Json cycles_json(const std::vector<LimitCycle>& cycles) {
    Json arr = Json::array();
    for (const LimitCycle& c : cycles) {
        Json j = Json::object();
        j["s_star"] = Json::number(c.s_star);
        j["period"] = Json::number(c.period);
        j["stability"] = Json::string(std::string(to_string(c.stability)));
        j["d_prime"] = Json::number(c.d_prime);
        arr.push(std::move(j));
    }
    return arr;
}

Params24 two_focus_params(double gamma, double lambda, double alpha = 0.0,
                          double beta = 0.0) {
    // the two-anti-saddle case: a = 1/2, c = -1; foci (0,0) and (-2,0)
    Params24 p;
    p.gamma = gamma;
    p.lambda = lambda;
    p.alpha = alpha;
    p.beta = beta;
    p.a = 0.5;
    p.c = -1.0;
    return p;
}

constexpr Point kOrigin{0.0, 0.0};
constexpr Point kSecondFocus{-2.0, 0.0};

std::vector<LimitCycle> scan_focus(const GeneralQuadraticField& f, Point focus,
                                   const IntegratorConfig& cfg, int n_samples,
                                   double s_max, double s_min = 1e-3,
                                   bool keep_orbit = false) {
    ScanOptions opt;
    opt.n_samples = n_samples;
    opt.keep_orbit = keep_orbit;
    const Section sec = section_for_focus(f, focus, s_min, s_max);
    return scan_and_refine(f, sec, n_samples, cfg, opt);
}

std::size_t count_real(const std::vector<LimitCycle>& cycles) {
    std::size_t n = 0;
    for (const LimitCycle& c : cycles)
        if (c.stability != Stability::semi_stable) ++n;
    return n;
}

} // namespace

Json ScenarioReport::to_json() const {
    Json j = Json::object();
    j["scenario"] = Json::string(scenario);
    j["distribution"] = Json::string(distribution);
    j["stage_wise_only"] = Json::boolean(stage_wise_only);
    j["all_hard_passed"] = Json::boolean(all_hard_passed());
    Json st = Json::array();
    for (const StageReport& s : stages) {
        Json sj = Json::object();
        sj["name"] = Json::string(s.name);
        sj["hard_passed"] = Json::boolean(s.hard_passed());
        Json as = Json::array();
        for (const Assertion& a : s.assertions) as.push(assertion_json(a));
        sj["assertions"] = std::move(as);
        sj["data"] = s.data;
        st.push(std::move(sj));
    }
    j["stages"] = std::move(st);
    return j;
}

FlipResult find_flip(const Params24& base, RotationParamId param, double mu_lo,
                     double mu_hi, Point focus, const IntegratorConfig& cfg,
                     double s_probe, double mu_tol) {
    FlipResult res;
    auto probe = [&](double mu) {
        Params24 p = base;
        switch (param) {
            case RotationParamId::Lambda: p.lambda = mu; break;
            case RotationParamId::Alpha: p.alpha = mu; break;
            case RotationParamId::Beta: p.beta = mu; break;
            case RotationParamId::Gamma: p.gamma = mu; break;
        }
        const GeneralQuadraticField f = compile(p);
        const Section sec = section_for_focus(f, focus, s_probe * 0.5, s_probe * 8.0);
        const ReturnResult r = displacement(f, sec, s_probe, cfg);
        ++res.evaluations;
        if (r.status != ReturnStatus::ok)
            throw StageFailure("find_flip: probe displacement unavailable at mu=" +
                               fmt17(mu));
        return r.s_next;
    };

    double dlo = probe(mu_lo), dhi = probe(mu_hi);
    if ((dlo > 0.0) == (dhi > 0.0))
        throw StageFailure("find_flip: no stability flip inside [" + fmt17(mu_lo) + ", " +
                           fmt17(mu_hi) + "]");
    while (mu_hi - mu_lo > mu_tol) {
        const double mid = 0.5 * (mu_lo + mu_hi);
        const double dm = probe(mid);
        if ((dm > 0.0) == (dlo > 0.0)) {
            mu_lo = mid;
            dlo = dm;
        } else {
            mu_hi = mid;
            dhi = dm;
        }
    }
    res.mu_flip = 0.5 * (mu_lo + mu_hi);
    res.width = mu_hi - mu_lo;
    return res;
}

namespace {

enum class SweepState { not_yet, pair, collapsed };

struct SweepEval {
    SweepState state = SweepState::not_yet;
    std::vector<LimitCycle> origin;
};

// Origin-side state at one alpha: pre-window (at most the inner cycle),
// inside the window (both nested cycles resolved), or past the fold.
SweepEval eval_alpha(double gamma, double lambda, double alpha,
                     const IntegratorConfig& cfg, const TwoOneOptions& opt) {
    SweepEval ev;
    const GeneralQuadraticField f = compile(two_focus_params(gamma, lambda, alpha));
    ev.origin = scan_focus(f, kOrigin, cfg, opt.scan_samples, opt.s_max_origin);
    const std::size_t n = count_real(ev.origin);
    if (n == 0)
        ev.state = SweepState::collapsed;
    else if (n == 2 && ev.origin.size() == 2 &&
             ev.origin[0].stability == Stability::unstable &&
             ev.origin[1].stability == Stability::stable)
        ev.state = SweepState::pair;
    else
        ev.state = SweepState::not_yet;
    return ev;
}

} // namespace

SweepOutcome find_two_one(double gamma, double lambda, const IntegratorConfig& cfg,
                          const TwoOneOptions& opt) {
    SweepOutcome out;
    double alpha_not_yet = 0.0;
    double alpha_collapsed = 0.0;
    bool have_collapsed = false;

    auto take_pair = [&](double alpha, SweepEval&& ev) {
        out.origin_pair = true;
        out.alpha = alpha;
        out.origin_cycles = std::move(ev.origin);
    };

    for (double alpha = opt.alpha_start;
         alpha >= opt.alpha_limit && !out.origin_pair; alpha *= opt.alpha_growth) {
        SweepEval ev = eval_alpha(gamma, lambda, alpha, cfg, opt);
        ++out.evaluations;
        if (ev.state == SweepState::pair) {
            take_pair(alpha, std::move(ev));
        } else if (ev.state == SweepState::not_yet) {
            alpha_not_yet = alpha;
        } else {
            alpha_collapsed = alpha;
            have_collapsed = true;
            break;
        }
    }
    if (!out.origin_pair) {
        if (!have_collapsed || alpha_not_yet == 0.0) return out;
        // the window sits between the last pre-fold state and the collapse
        double lo = alpha_not_yet, hi = alpha_collapsed;
        for (int it = 0; it < opt.bisect_budget && !out.origin_pair; ++it) {
            const double mid = 0.5 * (lo + hi);
            SweepEval ev = eval_alpha(gamma, lambda, mid, cfg, opt);
            ++out.evaluations;
            if (ev.state == SweepState::pair)
                take_pair(mid, std::move(ev));
            else if (ev.state == SweepState::not_yet)
                lo = mid;
            else
                hi = mid;
        }
        if (!out.origin_pair) return out;
    }

    const GeneralQuadraticField f =
        compile(two_focus_params(gamma, lambda, out.alpha));
    out.second_cycles =
        scan_focus(f, kSecondFocus, cfg, opt.scan_samples, opt.s_max_second);
    ++out.evaluations;
    out.full = out.second_cycles.size() == 1 &&
               out.second_cycles[0].stability == Stability::unstable;
    return out;
}

std::optional<ThreeOneResult> attempt_three_one(double gamma, double lambda,
                                                const SweepOutcome& base,
                                                double beta_flip,
                                                const IntegratorConfig& cfg) {
    for (double delta : {1e-4, 2.5e-4, 6e-4, 1.5e-3, 4e-3, 1e-2, 2.5e-2}) {
        const double beta = beta_flip + delta;
        const GeneralQuadraticField f =
            compile(two_focus_params(gamma, lambda, base.alpha, beta));
        std::vector<LimitCycle> origin;
        try {
            origin = scan_focus(f, kOrigin, cfg, 72, 30.0, 1e-4);
        } catch (const SectionError&) {
            continue;
        }
        if (count_real(origin) != 3 || origin.size() != 3) continue;
        if (origin[0].stability != Stability::stable ||
            origin[1].stability != Stability::unstable ||
            origin[2].stability != Stability::stable)
            continue;
        std::vector<LimitCycle> second = scan_focus(f, kSecondFocus, cfg, 48, 60.0);
        if (second.size() != 1 || second[0].stability != Stability::unstable) continue;
        ThreeOneResult res;
        res.alpha = base.alpha;
        res.beta = beta;
        res.origin_cycles = origin;
        res.second_cycles = second;
        return res;
    }
    return std::nullopt;
}

ScenarioReport run_theorem31(const Theorem31Config& cfg) {
    ScenarioReport rep;
    rep.scenario = "theorem31";
    const double gamma = cfg.gamma, lambda = cfg.lambda;

    // stage (i): gamma alone turns the centers into foci, no cycles yet
    {
        StageReport st;
        st.name = "gamma_input";
        try {
            const GeneralQuadraticField f = compile(two_focus_params(gamma, 0.0));
            const std::vector<Equilibrium> eqs = find_equilibria(f);
            const Equilibrium* origin = nullptr;
            const Equilibrium* second = nullptr;
            for (const Equilibrium& e : eqs) {
                if (norm(e.location - kOrigin) < 1e-9) origin = &e;
                if (norm(e.location - kSecondFocus) < 1e-9) second = &e;
            }
            st.assertions.push_back(
                {"origin_unstable_focus",
                 origin && origin->kind == EquilibriumKind::focus && origin->trace > 0.0,
                 true, origin ? "trace=" + fmt17(origin->trace) : "missing"});
            st.assertions.push_back(
                {"second_stable_focus",
                 second && second->kind == EquilibriumKind::focus && second->trace < 0.0,
                 true, second ? "trace=" + fmt17(second->trace) : "missing"});
            const std::size_t n0 =
                count_real(scan_focus(f, kOrigin, cfg.integ, cfg.scan_samples, 30.0));
            const std::size_t n1 =
                count_real(scan_focus(f, kSecondFocus, cfg.integ, cfg.scan_samples, 30.0));
            st.assertions.push_back({"no_cycles", n0 == 0 && n1 == 0, true,
                                     "(" + std::to_string(n0) + ":" + std::to_string(n1) +
                                         ")"});
            st.data["gamma"] = Json::number(gamma);
        } catch (const std::exception& e) {
            st.assertions.push_back({"stage_completed", false, true, e.what()});
        }
        rep.stages.push_back(std::move(st));
    }

    // stage (ii): lambda < -gamma flips (0,0) and throws an unstable cycle
    std::vector<LimitCycle> gamma1_cycles;
    {
        StageReport st;
        st.name = "lambda_input";
        try {
            const GeneralQuadraticField f = compile(two_focus_params(gamma, lambda));
            gamma1_cycles =
                scan_focus(f, kOrigin, cfg.integ, cfg.scan_samples, 30.0);
            const std::vector<LimitCycle> around_second =
                scan_focus(f, kSecondFocus, cfg.integ, cfg.scan_samples, 30.0);
            st.assertions.push_back(
                {"one_unstable_cycle_around_origin",
                 gamma1_cycles.size() == 1 &&
                     gamma1_cycles[0].stability == Stability::unstable,
                 true,
                 "count=" + std::to_string(gamma1_cycles.size()) +
                     (gamma1_cycles.empty()
                          ? ""
                          : " s_star=" + fmt17(gamma1_cycles[0].s_star))});
            st.assertions.push_back({"second_focus_bare", around_second.empty(), true,
                                     "count=" + std::to_string(around_second.size())});
            st.data["lambda"] = Json::number(lambda);
            st.data["cycles"] = cycles_json(gamma1_cycles);
        } catch (const std::exception& e) {
            st.assertions.push_back({"stage_completed", false, true, e.what()});
        }
        rep.stages.push_back(std::move(st));
    }

    // stage (iii): alpha < 0 destroys the invariant line; the outer stable
    // cycle around (0,0) and the unstable cycle around (-2,0) should both
    // come in from the former separatrix structure
    SweepOutcome two_one;
    {
        StageReport st;
        st.name = "alpha_search";
        try {
            two_one = find_two_one(gamma, lambda, cfg.integ, cfg.sweep);
            st.assertions.push_back(
                {"outer_stable_cycle_appears", two_one.origin_pair, true,
                 two_one.origin_pair
                     ? "alpha=" + fmt17(two_one.alpha) +
                           " evals=" + std::to_string(two_one.evaluations)
                     : "sweep exhausted without resolving the pair"});
            if (two_one.origin_pair) {
                st.assertions.push_back(
                    {"origin_pair_alternates",
                     alternating_stability(two_one.origin_cycles) &&
                         two_one.origin_cycles[0].stability == Stability::unstable,
                     true, ""});
                st.data["alpha"] = Json::number(two_one.alpha);
                st.data["origin_cycles"] = cycles_json(two_one.origin_cycles);
                st.data["second_cycles"] = cycles_json(two_one.second_cycles);
            }
            st.assertions.push_back(
                {"second_focus_one_unstable", two_one.full, true,
                 two_one.full
                     ? ""
                     : "no cycle around (-2,0) within the search radius; the "
                       "destroyed-line structure there stays outside desk scale"});
        } catch (const std::exception& e) {
            st.assertions.push_back({"stage_completed", false, true, e.what()});
        }
        rep.stages.push_back(std::move(st));
    }

    // stage (iv): beta crossing -gamma-lambda flips (0,0) back, birthing the
    // innermost stable cycle
    bool three_one_resolved = false;
    {
        StageReport st;
        st.name = "beta_input";
        try {
            const double expected_flip = -gamma - lambda;
            const Params24 base = two_focus_params(
                gamma, lambda, two_one.origin_pair ? two_one.alpha : 0.0);
            const FlipResult flip =
                find_flip(base, RotationParamId::Beta, 0.0,
                          std::max(0.3, 2.0 * expected_flip), kOrigin, cfg.integ);
            st.assertions.push_back(
                {"beta_flip_localized",
                 std::fabs(flip.mu_flip - expected_flip) <= 1e-4, true,
                 "flip=" + fmt17(flip.mu_flip) + " expected=" + fmt17(expected_flip)});
            st.data["beta_flip"] = Json::number(flip.mu_flip);
            st.data["beta_flip_expected"] = Json::number(expected_flip);

            if (two_one.origin_pair) {
                const std::optional<ThreeOneResult> full =
                    attempt_three_one(gamma, lambda, two_one, flip.mu_flip, cfg.integ);
                three_one_resolved = full.has_value();
                st.assertions.push_back(
                    {"three_one_simultaneous", three_one_resolved, false,
                     full ? "beta=" + fmt17(full->beta)
                          : "not resolved; stage-wise verification stands"});
                if (full) {
                    st.data["beta"] = Json::number(full->beta);
                    st.data["origin_cycles"] = cycles_json(full->origin_cycles);
                    st.data["second_cycles"] = cycles_json(full->second_cycles);
                }
            }
        } catch (const std::exception& e) {
            st.assertions.push_back({"stage_completed", false, true, e.what()});
        }
        rep.stages.push_back(std::move(st));
    }

    rep.stage_wise_only = !three_one_resolved;
    rep.distribution = three_one_resolved ? "(3:1)" : "(2:1)";
    return rep;
}

namespace {

struct UniquenessPoint {
    double gamma = 0.0, lambda = 0.0;
    std::size_t count_origin = 0, count_second = 0;
    bool stable_ok = false;
    double s_star = 0.0;
    double d_prime = 0.0;
    bool flagged = false;      // ambiguous near-tangency present
    bool swap_count_ok = false;
    bool swap_s_ok = false;
    double swap_s = 0.0;
    std::string error;
};

UniquenessPoint uniqueness_point(double gamma, double lambda,
                                 const UniquenessConfig& cfg) {
    UniquenessPoint pt;
    pt.gamma = gamma;
    pt.lambda = lambda;
    try {
        const GeneralQuadraticField f = compile(two_focus_params(gamma, lambda));
        // cycles balloon as lambda approaches zero: widen the scan window
        // until the cycle is inside it
        std::vector<LimitCycle> origin;
        for (double widen : {1.0, 3.0, 6.0}) {
            origin = scan_focus(f, kOrigin, cfg.integ, cfg.scan_samples,
                                cfg.s_max * widen);
            if (count_real(origin) >= 1) break;
        }
        const std::vector<LimitCycle> second =
            scan_focus(f, kSecondFocus, cfg.integ, cfg.scan_samples, cfg.s_max);
        pt.count_origin = count_real(origin);
        pt.count_second = count_real(second);
        pt.flagged = pt.count_origin != origin.size() || pt.count_second != second.size();
        if (pt.count_origin >= 1) {
            pt.s_star = origin[0].s_star;
            pt.d_prime = origin[0].d_prime;
            pt.stable_ok = origin[0].stability == Stability::stable;
        }

        if (cfg.order_swap && pt.count_origin == 1) {
            // the lambda-first route: fix lambda, bring gamma up from zero;
            // the cycle is born at the focus flip gamma = -lambda and grows,
            // whereas on the direct route it contracts from large amplitude
            double gamma_vis = gamma;
            double s_vis = pt.s_star;
            const double flip_frac = -lambda / gamma;
            for (double q : {0.15, 0.3, 0.5, 0.75}) {
                const double g = gamma * (flip_frac + (1.0 - flip_frac) * q);
                const GeneralQuadraticField fg =
                    compile(two_focus_params(g, lambda));
                const std::vector<LimitCycle> c =
                    scan_focus(fg, kOrigin, cfg.integ, 28, cfg.s_max);
                if (count_real(c) >= 1) {
                    gamma_vis = g;
                    s_vis = c[0].s_star;
                    break;
                }
            }
            if (gamma_vis < gamma) {
                ContinuationConfig ccfg;
                ccfg.mu_step_init = gamma * 0.05;
                ccfg.mu_step_max = gamma * 0.2;
                const CycleFamily fam =
                    continue_family(two_focus_params(gamma_vis, lambda),
                                    RotationParamId::Gamma, gamma_vis, gamma, s_vis,
                                    kOrigin, cfg.integ, ccfg);
                const bool reached = fam.termination == TerminationClass::range_end &&
                                     fam.note.empty() && !fam.samples.empty() &&
                                     fam.mu_end() == gamma;
                pt.swap_count_ok = reached;
                if (reached) {
                    pt.swap_s = fam.samples.back().s_star;
                    pt.swap_s_ok = std::fabs(pt.swap_s - pt.s_star) <=
                                   cfg.swap_s_tol * std::max(1.0, pt.s_star);
                }
            } else {
                // cycle only becomes visible at the end point; the two routes
                // coincide there
                pt.swap_count_ok = true;
                pt.swap_s = pt.s_star;
                pt.swap_s_ok = true;
            }
        }
    } catch (const std::exception& e) {
        pt.error = e.what();
    }
    return pt;
}

} // namespace

ScenarioReport run_uniqueness_experiment(const UniquenessConfig& cfg,
                                         std::vector<UniquenessRecord>* records) {
    ScenarioReport rep;
    rep.scenario = "uniqueness";

    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < cfg.n_gamma; ++i) {
        const double gamma =
            cfg.gamma_lo + (cfg.gamma_hi - cfg.gamma_lo) * i / std::max(1, cfg.n_gamma - 1);
        for (int j = 0; j < cfg.n_lambda; ++j) {
            const double frac =
                cfg.lambda_frac_lo + (cfg.lambda_frac_hi - cfg.lambda_frac_lo) * j /
                                         std::max(1, cfg.n_lambda - 1);
            pts.emplace_back(gamma, -gamma * frac);
        }
    }

    std::vector<UniquenessPoint> results(pts.size());
    par::parallel_for(pts.size(), [&](std::size_t i) {
        results[i] = uniqueness_point(pts[i].first, pts[i].second, cfg);
    });
    if (records)
        for (const UniquenessPoint& pt : results)
            if (pt.count_origin == 1)
                records->push_back({pt.gamma, pt.lambda, pt.s_star, pt.d_prime});

    StageReport grid;
    grid.name = "opposite_sign_grid";
    std::size_t bad_unique = 0, bad_second = 0, bad_swap = 0, flagged = 0, errors = 0;
    Json rows = Json::array();
    for (const UniquenessPoint& pt : results) {
        if (!pt.error.empty()) ++errors;
        if (!(pt.count_origin == 1 && pt.stable_ok)) ++bad_unique;
        if (pt.count_second != 0) ++bad_second;
        if (cfg.order_swap && !(pt.swap_count_ok && pt.swap_s_ok)) ++bad_swap;
        if (pt.flagged) ++flagged;
        Json row = Json::object();
        row["gamma"] = Json::number(pt.gamma);
        row["lambda"] = Json::number(pt.lambda);
        row["count_origin"] = Json::integer(static_cast<long long>(pt.count_origin));
        row["count_second"] = Json::integer(static_cast<long long>(pt.count_second));
        row["s_star"] = Json::number(pt.s_star);
        if (cfg.order_swap) row["swap_s"] = Json::number(pt.swap_s);
        if (pt.flagged) row["flagged"] = Json::boolean(true);
        if (!pt.error.empty()) row["error"] = Json::string(pt.error);
        rows.push(std::move(row));
    }
    grid.data["points"] = std::move(rows);
    grid.assertions.push_back({"unique_cycle_everywhere", bad_unique == 0, true,
                               std::to_string(bad_unique) + " failures of " +
                                   std::to_string(results.size())});
    grid.assertions.push_back({"second_focus_bare_everywhere", bad_second == 0, true,
                               std::to_string(bad_second) + " failures"});
    if (cfg.order_swap)
        grid.assertions.push_back({"order_swap_path_independent", bad_swap == 0, true,
                                   std::to_string(bad_swap) + " failures"});
    grid.assertions.push_back(
        {"no_integration_errors", errors == 0, true, std::to_string(errors) + " errors"});
    if (flagged > 0)
        grid.assertions.push_back({"ambiguous_points_flagged", true, false,
                                   std::to_string(flagged) + " flagged (not failed)"});
    rep.stages.push_back(std::move(grid));

    // same-sign companion: no cycles at all around (0,0)
    StageReport same;
    same.name = "same_sign_grid";
    std::vector<std::pair<double, double>> spts;
    for (double g : {0.05, 0.15, 0.25})
        for (double l : {0.05, 0.2, 0.35}) spts.emplace_back(g, l);
    std::vector<std::size_t> scounts(spts.size(), 0);
    std::vector<std::string> serrs(spts.size());
    par::parallel_for(spts.size(), [&](std::size_t i) {
        try {
            const GeneralQuadraticField f =
                compile(two_focus_params(spts[i].first, spts[i].second));
            scounts[i] = count_real(
                scan_focus(f, kOrigin, cfg.integ, cfg.scan_samples, cfg.s_max));
        } catch (const std::exception& e) {
            serrs[i] = e.what();
        }
    });
    std::size_t bad_same = 0;
    for (std::size_t i = 0; i < spts.size(); ++i)
        if (scounts[i] != 0 || !serrs[i].empty()) ++bad_same;
    same.assertions.push_back({"no_cycles_for_same_sign", bad_same == 0, true,
                               std::to_string(bad_same) + " failures of " +
                                   std::to_string(spts.size())});
    rep.stages.push_back(std::move(same));

    rep.distribution = "(1:0)";
    return rep;
}

bool family_monotone(const CycleFamily& fam, std::string* why) {
    if (fam.samples.size() < 2) return true;
    const double dir = fam.samples[1].s_star >= fam.samples[0].s_star ? 1.0 : -1.0;
    int dsign = 0;
    for (std::size_t i = 0; i < fam.samples.size(); ++i) {
        if (i > 0) {
            const double ds = fam.samples[i].s_star - fam.samples[i - 1].s_star;
            if (ds * dir <= 0.0) {
                if (why)
                    *why = "s_star not strictly monotone at mu=" +
                           fmt17(fam.samples[i].mu);
                return false;
            }
        }
        const double dp = fam.samples[i].d_prime;
        if (std::fabs(dp) > 1e-6) {
            const int s = dp > 0.0 ? 1 : -1;
            if (dsign == 0) dsign = s;
            if (s != dsign) {
                if (why)
                    *why = "d_prime sign flips at mu=" + fmt17(fam.samples[i].mu);
                return false;
            }
        }
    }
    return true;
}

ScenarioReport run_monotone_family_check(const MonotoneConfig& cfg) {
    ScenarioReport rep;
    rep.scenario = "monotone";
    const Params24 base = two_focus_params(cfg.shrink_gamma, cfg.shrink_lambda_from);

    auto family_json = [](const CycleFamily& fam) {
        Json j = Json::object();
        j["termination"] = Json::string(std::string(to_string(fam.termination)));
        j["n_samples"] = Json::integer(static_cast<long long>(fam.samples.size()));
        if (!fam.samples.empty()) {
            j["mu_end"] = Json::number(fam.samples.back().mu);
            j["s_end"] = Json::number(fam.samples.back().s_star);
            j["period_end"] = Json::number(fam.samples.back().period);
        }
        if (!fam.folds.empty()) {
            Json folds = Json::array();
            for (const FoldPoint& fp : fam.folds) {
                Json fj = Json::object();
                fj["mu_fold"] = Json::number(fp.mu_fold);
                fj["s_fold"] = Json::number(fp.s_fold);
                fj["d_prime"] = Json::number(fp.d_prime);
                fj["mu_width"] = Json::number(fp.mu_width);
                folds.push(std::move(fj));
            }
            j["folds"] = std::move(folds);
        }
        if (!fam.note.empty()) j["note"] = Json::string(fam.note);
        return j;
    };

    // seed cycle for the lambda family
    double seed_s = 0.0;
    {
        const GeneralQuadraticField f = compile(base);
        const std::vector<LimitCycle> c = scan_focus(f, kOrigin, cfg.integ, 48, 30.0);
        if (c.size() == 1) seed_s = c[0].s_star;
    }

    {
        StageReport st;
        st.name = "lambda_family_toward_focus";
        try {
            if (seed_s == 0.0) throw StageFailure("no seed cycle");
            const CycleFamily fam = continue_family(
                base, RotationParamId::Lambda, cfg.shrink_lambda_from,
                -cfg.shrink_gamma - 0.02, seed_s, kOrigin, cfg.integ, cfg.cont);
            std::string why;
            st.assertions.push_back({"monotone", family_monotone(fam, &why), true, why});
            st.assertions.push_back(
                {"terminates_at_focus",
                 fam.termination == TerminationClass::shrinks_to_focus, true,
                 std::string(to_string(fam.termination))});
            const double mu_end = fam.mu_end();
            st.assertions.push_back({"ends_at_trace_zero",
                                     std::fabs(mu_end + cfg.shrink_gamma) <= 2e-3, true,
                                     "mu_end=" + fmt17(mu_end)});
            st.data = family_json(fam);
        } catch (const std::exception& e) {
            st.assertions.push_back({"stage_completed", false, true, e.what()});
        }
        rep.stages.push_back(std::move(st));
    }

    {
        StageReport st;
        st.name = "lambda_family_growing";
        try {
            if (seed_s == 0.0) throw StageFailure("no seed cycle");
            const CycleFamily fam = continue_family(
                base, RotationParamId::Lambda, cfg.shrink_lambda_from,
                cfg.grow_lambda_to, seed_s, kOrigin, cfg.integ, cfg.cont);
            std::string why;
            st.assertions.push_back({"monotone", family_monotone(fam, &why), true, why});
            const bool nonfocus_end =
                fam.termination == TerminationClass::separatrix_like ||
                fam.termination == TerminationClass::unbounded;
            st.assertions.push_back(
                {"leaves_the_bounded_region", nonfocus_end, true,
                 std::string(to_string(fam.termination)) + " " + fam.note});
            st.data = family_json(fam);
        } catch (const std::exception& e) {
            st.assertions.push_back({"stage_completed", false, true, e.what()});
        }
        rep.stages.push_back(std::move(st));
    }

    {
        StageReport st;
        st.name = "alpha_family_fold";
        try {
            const SweepOutcome two_one =
                find_two_one(cfg.fold_gamma, cfg.fold_lambda, cfg.integ, cfg.sweep);
            if (!two_one.origin_pair)
                throw StageFailure("no nested cycle pair found for the fold study");
            const Params24 abase =
                two_focus_params(cfg.fold_gamma, cfg.fold_lambda, two_one.alpha);
            const double target = two_one.alpha - 0.1;
            const CycleFamily inner = continue_family(
                abase, RotationParamId::Alpha, two_one.alpha, target,
                two_one.origin_cycles[0].s_star, kOrigin, cfg.integ, cfg.cont);
            const CycleFamily outer = continue_family(
                abase, RotationParamId::Alpha, two_one.alpha, target,
                two_one.origin_cycles[1].s_star, kOrigin, cfg.integ, cfg.cont);
            const bool both_fold = inner.termination == TerminationClass::fold_end &&
                                   outer.termination == TerminationClass::fold_end &&
                                   !inner.folds.empty() && !outer.folds.empty();
            st.assertions.push_back({"both_branches_fold", both_fold, true,
                                     std::string(to_string(inner.termination)) + "/" +
                                         std::string(to_string(outer.termination))});
            if (both_fold) {
                const FoldPoint& fi = inner.folds.front();
                const FoldPoint& fo = outer.folds.front();
                st.assertions.push_back({"fold_bracket_tight",
                                         fi.mu_width <= 1e-6 && fo.mu_width <= 1e-6, true,
                                         "widths " + fmt17(fi.mu_width) + ", " +
                                             fmt17(fo.mu_width)});
                st.assertions.push_back(
                    {"folds_agree", std::fabs(fi.mu_fold - fo.mu_fold) <= 1e-4, true,
                     fmt17(fi.mu_fold) + " vs " + fmt17(fo.mu_fold)});
                st.assertions.push_back(
                    {"flat_displacement_slope_at_fold",
                     std::fabs(fi.d_prime) <= 1e-4 && std::fabs(fo.d_prime) <= 1e-4, true,
                     "d' " + fmt17(fi.d_prime) + ", " + fmt17(fo.d_prime)});
                const double di = inner.samples.back().d_prime;
                const double dq = outer.samples.back().d_prime;
                st.assertions.push_back({"opposite_branch_slopes",
                                         di > 0.0 && dq < 0.0, true,
                                         fmt17(di) + " vs " + fmt17(dq)});
            }
            std::string why;
            st.assertions.push_back(
                {"inner_monotone", family_monotone(inner, &why), true, why});
            why.clear();
            st.assertions.push_back(
                {"outer_monotone", family_monotone(outer, &why), true, why});
            st.data["inner"] = family_json(inner);
            st.data["outer"] = family_json(outer);
        } catch (const std::exception& e) {
            st.assertions.push_back({"stage_completed", false, true, e.what()});
        }
        rep.stages.push_back(std::move(st));
    }

    rep.distribution = "";
    return rep;
}

} // namespace quadcycle
