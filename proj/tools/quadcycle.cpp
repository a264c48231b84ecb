// Command-line front end: every subcommand reads flags (and optionally a
// JSON config), writes machine-readable output, and is deterministic for a
// fixed seed.  Exit codes: 0 success, 1 usage error, 2 numerical failure,
// 3 assertion failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "quadcycle/config_json.hpp"
#include "quadcycle/continuation.hpp"
#include "quadcycle/cycles.hpp"
#include "quadcycle/equilibria.hpp"
#include "quadcycle/errors.hpp"
#include "quadcycle/integrate.hpp"
#include "quadcycle/portrait.hpp"
#include "quadcycle/report.hpp"
#include "quadcycle/rotation.hpp"
#include "quadcycle/scenarios.hpp"

namespace {

using namespace quadcycle;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitAssertion = 3;

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParameterError("cannot open output file: " + path);
    out << text;
}

Point parse_point(const std::string& s) {
    Point p;
    if (std::sscanf(s.c_str(), "%lf,%lf", &p.x, &p.y) != 2)
        throw InvalidParameterError("expected 'x,y', got: " + s);
    return p;
}

struct CommonOpts {
    std::string system = "canonical24";
    std::string params = "{}";
    std::string config_path;
    std::string out;
    std::string integ_json = "{}";

    IntegratorConfig integrator() const {
        IntegratorConfig base;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw InvalidParameterError("cannot read config: " + config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            base = parse_integrator_config(ss.str(), base);
        }
        return parse_integrator_config(integ_json, base);
    }

    GeneralQuadraticField field() const { return compile_system(system, params); }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_field = true) {
    if (with_field) {
        cmd->add_option("--system", o.system,
                        "canonical24|canonical25|canonical21|canonical26|general");
        cmd->add_option("--params", o.params, "parameter tuple as a JSON object");
    }
    cmd->add_option("--integrator", o.integ_json, "integrator overrides (JSON)");
    cmd->add_option("--config", o.config_path, "JSON file with integrator settings");
    cmd->add_option("--out", o.out, "output file ('-' = stdout)");
}

int cmd_simulate(const CommonOpts& o, const std::string& start, double tmax,
                 double rtol) {
    IntegratorConfig cfg = o.integrator();
    if (tmax > 0) cfg.t_max = tmax;
    if (rtol > 0) cfg.rtol = rtol;
    const GeneralQuadraticField f = o.field();
    const OrbitSegment seg =
        integrate(f, parse_point(start), cfg, nullptr, cfg.t_max / 2000.0);
    std::string csv = "t,x,y\n";
    for (std::size_t i = 0; i < seg.times.size(); ++i)
        csv += csv_row({fmt17(seg.times[i]), fmt17(seg.states[i].x),
                        fmt17(seg.states[i].y)});
    csv += "# terminal," + std::string(to_string(seg.terminal)) + "\n";
    write_output(o.out, csv);
    return kExitOk;
}

int cmd_equilibria(const CommonOpts& o) {
    const std::vector<Equilibrium> eqs = find_equilibria(o.field());
    Json arr = Json::array();
    for (const Equilibrium& e : eqs) {
        Json j = Json::object();
        j["x"] = Json::number(e.location.x);
        j["y"] = Json::number(e.location.y);
        j["trace"] = Json::number(e.trace);
        j["det"] = Json::number(e.det);
        j["kind"] = Json::string(to_string(e.kind));
        arr.push(std::move(j));
    }
    write_output(o.out, arr.dump() + "\n");
    return kExitOk;
}

int cmd_rotation_check(const CommonOpts& o, int n, unsigned long long seed, double dmu) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> par(-2.0, 2.0);
    std::uniform_real_distribution<double> px(-3.0, 3.0);

    std::string csv = "x,y,id,delta_closed,delta_numeric,cross_sign,pass\n";
    std::size_t checked = 0, passed = 0;
    for (int i = 0; i < n; ++i) {
        Params24 p;
        p.lambda = par(rng);
        p.alpha = par(rng);
        p.beta = par(rng);
        p.gamma = par(rng);
        p.a = par(rng);
        p.c = par(rng);
        const Point pt{px(rng), px(rng)};
        for (RotationParamId id : {RotationParamId::Lambda, RotationParamId::Alpha,
                                   RotationParamId::Beta, RotationParamId::Gamma}) {
            const DirectionReport rep = rotation_direction_check_serial(id, p, dmu, {pt});
            const DirectionSample& s = rep.samples.front();
            const double dn = delta_numeric(id, p, pt);
            const int cross_sign = s.cross > 0.0 ? 1 : (s.cross < 0.0 ? -1 : 0);
            if (!s.degenerate) {
                ++checked;
                if (s.pass) ++passed;
            }
            csv += csv_row({fmt17(pt.x), fmt17(pt.y), std::string(to_string(id)),
                            fmt17(s.delta), fmt17(dn), std::to_string(cross_sign),
                            s.pass ? "1" : "0"});
        }
    }
    csv += "# checked," + std::to_string(checked) + "\n";
    csv += "# passed," + std::to_string(passed) + "\n";
    write_output(o.out, csv);
    return kExitOk;
}

int cmd_cycles(const CommonOpts& o, int n_samples, double s_max) {
    ScanOptions opt;
    opt.n_samples = n_samples;
    opt.keep_orbit = false;
    const Distribution dist = count_distribution(o.field(), o.integrator(), opt, s_max);
    Json j = Json::object();
    j["distribution"] = Json::string(dist.label);
    Json foci = Json::array();
    for (const FocusCycles& fc : dist.per_focus) {
        Json fj = Json::object();
        fj["focus_x"] = Json::number(fc.focus.location.x);
        fj["focus_y"] = Json::number(fc.focus.location.y);
        fj["kind"] = Json::string(to_string(fc.focus.kind));
        fj["trace"] = Json::number(fc.focus.trace);
        Json cyc = Json::array();
        for (const LimitCycle& c : fc.cycles) {
            Json cj = Json::object();
            cj["s_star"] = Json::number(c.s_star);
            cj["period"] = Json::number(c.period);
            cj["stability"] = Json::string(std::string(to_string(c.stability)));
            cj["d_prime"] = Json::number(c.d_prime);
            cyc.push(std::move(cj));
        }
        fj["cycles"] = std::move(cyc);
        foci.push(std::move(fj));
    }
    j["per_focus"] = std::move(foci);
    write_output(o.out, j.dump() + "\n");
    return kExitOk;
}

int cmd_continue(const CommonOpts& o, const std::string& param, double mu_to,
                 double seed_s, const std::string& focus_str) {
    const Params24 base = parse_params24(o.params);
    const RotationParamId id = rotation_param_from_string(param);
    double mu_from = 0.0;
    switch (id) {
        case RotationParamId::Lambda: mu_from = base.lambda; break;
        case RotationParamId::Alpha: mu_from = base.alpha; break;
        case RotationParamId::Beta: mu_from = base.beta; break;
        case RotationParamId::Gamma: mu_from = base.gamma; break;
    }
    const Point focus = parse_point(focus_str);
    const CycleFamily fam = continue_family(base, id, mu_from, mu_to, seed_s, focus,
                                            o.integrator(), ContinuationConfig{});
    std::string csv = "mu,s_star,period,d_prime\n";
    for (const FamilySample& s : fam.samples)
        csv += csv_row({fmt17(s.mu), fmt17(s.s_star), fmt17(s.period), fmt17(s.d_prime)});
    csv += "# termination," + std::string(to_string(fam.termination)) +
           (fam.note.empty() ? "" : "," + fam.note) + "\n";
    for (const FoldPoint& fp : fam.folds)
        csv += "# fold," + fmt17(fp.mu_fold) + "," + fmt17(fp.s_fold) + "," +
               fmt17(fp.d_prime) + "," + fmt17(fp.mu_width) + "\n";
    write_output(o.out, csv);
    return kExitOk;
}

int cmd_scenario(const CommonOpts& o, const std::string& name) {
    ScenarioReport rep;
    IntegratorConfig integ = o.integrator();
    if (name == "theorem31") {
        Theorem31Config cfg;
        cfg.integ = integ;
        rep = run_theorem31(cfg);
    } else if (name == "uniqueness") {
        UniquenessConfig cfg;
        cfg.integ = integ;
        rep = run_uniqueness_experiment(cfg);
    } else if (name == "monotone") {
        MonotoneConfig cfg;
        cfg.integ = integ;
        rep = run_monotone_family_check(cfg);
    } else {
        throw CLI::ValidationError("scenario must be theorem31|uniqueness|monotone");
    }
    write_output(o.out, rep.to_json().dump() + "\n");
    return rep.all_hard_passed() ? kExitOk : kExitAssertion;
}

int cmd_sweep(const CommonOpts& o, double gamma, double lambda,
              const std::string& target) {
    const IntegratorConfig integ = o.integrator();
    const SweepOutcome two_one = find_two_one(gamma, lambda, integ);
    Json j = Json::object();
    j["gamma"] = Json::number(gamma);
    j["lambda"] = Json::number(lambda);
    j["target"] = Json::string(target);
    j["origin_pair_found"] = Json::boolean(two_one.origin_pair);
    j["second_focus_cycle_found"] = Json::boolean(two_one.full);
    if (!two_one.origin_pair) {
        j["found"] = Json::boolean(false);
        write_output(o.out, j.dump() + "\n");
        return kExitAssertion;
    }
    j["alpha"] = Json::number(two_one.alpha);
    Json cyc = Json::array();
    for (const LimitCycle& c : two_one.origin_cycles) {
        Json cj = Json::object();
        cj["s_star"] = Json::number(c.s_star);
        cj["stability"] = Json::string(std::string(to_string(c.stability)));
        cyc.push(std::move(cj));
    }
    j["origin_cycles"] = std::move(cyc);
    bool found = target == "2:1" ? two_one.full : false;
    if (target == "3:1" && two_one.origin_pair) {
        const Params24 base = [&] {
            Params24 p;
            p.gamma = gamma;
            p.lambda = lambda;
            p.alpha = two_one.alpha;
            p.a = 0.5;
            p.c = -1.0;
            return p;
        }();
        const FlipResult flip =
            find_flip(base, RotationParamId::Beta, 0.0, 0.3, Point{0.0, 0.0}, integ);
        j["beta_flip"] = Json::number(flip.mu_flip);
        const std::optional<ThreeOneResult> full =
            attempt_three_one(gamma, lambda, two_one, flip.mu_flip, integ);
        found = full.has_value();
        if (full) j["beta"] = Json::number(full->beta);
    }
    j["found"] = Json::boolean(found);
    write_output(o.out, j.dump() + "\n");
    return found ? kExitOk : kExitAssertion;
}

int cmd_portrait(const CommonOpts& o, const std::string& bounds,
                 const std::string& seeds, bool with_cycles, bool inset) {
    PortraitSpec spec;
    if (!bounds.empty()) {
        if (std::sscanf(bounds.c_str(), "%lf,%lf,%lf,%lf", &spec.xmin, &spec.xmax,
                        &spec.ymin, &spec.ymax) != 4)
            throw InvalidParameterError("expected --bounds xmin,xmax,ymin,ymax");
    }
    if (!seeds.empty()) {
        if (std::sscanf(seeds.c_str(), "%d,%d", &spec.seeds_x, &spec.seeds_y) != 2)
            throw InvalidParameterError("expected --seeds nx,ny");
    }
    spec.disc_inset = inset;
    const GeneralQuadraticField f = o.field();
    const IntegratorConfig integ = o.integrator();
    std::vector<Equilibrium> eqs = find_equilibria(f);
    std::vector<LimitCycle> cycles;
    if (with_cycles) {
        ScanOptions opt;
        opt.n_samples = 40;
        const Distribution dist = count_distribution(f, integ, opt);
        for (const FocusCycles& fc : dist.per_focus)
            cycles.insert(cycles.end(), fc.cycles.begin(), fc.cycles.end());
    }
    write_output(o.out, render_svg(f, eqs, cycles, spec, integ));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for limit cycles of planar quadratic systems"};
    app.require_subcommand(1);

    CommonOpts o_sim, o_eq, o_rot, o_cyc, o_cont, o_scen, o_sweep, o_port;

    auto* sim = app.add_subcommand("simulate", "integrate one orbit, emit CSV (t,x,y)");
    std::string sim_start = "1,0";
    double sim_tmax = 0.0, sim_rtol = 0.0;
    add_common(sim, o_sim);
    sim->add_option("--start", sim_start, "initial point x,y");
    sim->add_option("--tmax", sim_tmax, "integration time limit");
    sim->add_option("--rtol", sim_rtol, "relative tolerance");

    auto* eq = app.add_subcommand("equilibria", "finite singular points as JSON");
    add_common(eq, o_eq);

    auto* rot = app.add_subcommand(
        "rotation-check", "rotation determinants and direction law on random samples");
    int rot_n = 1000;
    unsigned long long rot_seed = 1;
    double rot_dmu = 1e-5;
    add_common(rot, o_rot, false);
    rot->add_option("--n", rot_n, "sample count");
    rot->add_option("--seed", rot_seed, "RNG seed");
    rot->add_option("--dmu", rot_dmu, "parameter increment");

    auto* cyc = app.add_subcommand("cycles", "limit cycle inventory per focus (JSON)");
    int cyc_n = 48;
    double cyc_smax = 30.0;
    add_common(cyc, o_cyc);
    cyc->add_option("--n", cyc_n, "scan samples per section");
    cyc->add_option("--smax", cyc_smax, "outer scan offset");

    auto* cont = app.add_subcommand(
        "continue", "continue a cycle family in one rotation parameter (CSV)");
    std::string cont_param = "lambda", cont_focus = "0,0";
    double cont_to = 0.0, cont_seed_s = 0.0;
    add_common(cont, o_cont);
    cont->add_option("--param", cont_param, "lambda|alpha|beta|gamma")->required();
    cont->add_option("--to", cont_to, "target parameter value")->required();
    cont->add_option("--seed-s", cont_seed_s, "section offset of the seed cycle")
        ->required();
    cont->add_option("--focus", cont_focus, "focus x,y");

    auto* scen = app.add_subcommand("scenario", "staged theorem scenarios");
    auto* scen_run = scen->add_subcommand("run", "run one scenario");
    std::string scen_name;
    add_common(scen_run, o_scen, false);
    scen_run->add_option("name", scen_name, "theorem31|uniqueness|monotone")->required();

    auto* sweep = app.add_subcommand("sweep", "search for the (2:1) / (3:1) states");
    double sweep_gamma = 0.7, sweep_lambda = -0.72;
    std::string sweep_target = "2:1";
    add_common(sweep, o_sweep, false);
    sweep->add_option("--gamma", sweep_gamma, "gamma > 0");
    sweep->add_option("--lambda", sweep_lambda, "lambda < -gamma");
    sweep->add_option("--target", sweep_target, "2:1|3:1");

    auto* port = app.add_subcommand("portrait", "phase portrait as SVG");
    std::string port_bounds, port_seeds;
    bool port_cycles = false, port_inset = false;
    add_common(port, o_port);
    port->add_option("--bounds", port_bounds, "xmin,xmax,ymin,ymax");
    port->add_option("--seeds", port_seeds, "nx,ny orbit seed grid");
    port->add_flag("--cycles", port_cycles, "detect and draw limit cycles");
    port->add_flag("--inset", port_inset, "add the compressed global inset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(o_sim, sim_start, sim_tmax, sim_rtol);
        if (eq->parsed()) return cmd_equilibria(o_eq);
        if (rot->parsed()) return cmd_rotation_check(o_rot, rot_n, rot_seed, rot_dmu);
        if (cyc->parsed()) return cmd_cycles(o_cyc, cyc_n, cyc_smax);
        if (cont->parsed())
            return cmd_continue(o_cont, cont_param, cont_to, cont_seed_s, cont_focus);
        if (scen->parsed()) {
            if (!scen_run->parsed())
                throw CLI::ValidationError("usage: scenario run <name>");
            return cmd_scenario(o_scen, scen_name);
        }
        if (sweep->parsed()) return cmd_sweep(o_sweep, sweep_gamma, sweep_lambda,
                                              sweep_target);
        if (port->parsed())
            return cmd_portrait(o_port, port_bounds, port_seeds, port_cycles, port_inset);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const StageFailure& e) {
        std::cerr << "assertion failure: " << e.what() << "\n";
        return kExitAssertion;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
