#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadcycle/canonical.hpp"
#include "quadcycle/continuation.hpp"
#include "quadcycle/cycles.hpp"
#include "quadcycle/integrate.hpp"
#include "quadcycle/report.hpp"
#include "quadcycle/rotation.hpp"

namespace quadcycle {

struct Assertion {
    std::string name;
    bool pass = false;
    bool hard = true; // soft assertions report without failing the scenario
    std::string detail;
};

struct StageReport {
    std::string name;
    std::vector<Assertion> assertions;
    Json data = Json::object();

    bool hard_passed() const;
};

struct ScenarioReport {
    std::string scenario;
    std::vector<StageReport> stages;
    std::string distribution; // final cycle distribution label
    bool stage_wise_only = false;

    bool all_hard_passed() const;
    Json to_json() const;
};

/// Localizes the parameter value where the focus flips stability, by
/// bisecting the sign of the displacement at a small probe offset (the
/// dynamical observable of the analytic trace zero).
struct FlipResult {
    double mu_flip = 0.0;
    double width = 0.0; // final bracket width
    int evaluations = 0;
};

FlipResult find_flip(const Params24& base, RotationParamId param, double mu_lo,
                     double mu_hi, Point focus, const IntegratorConfig& cfg,
                     double s_probe = 1e-3, double mu_tol = 1e-6);

/// Sweep harness for the alpha stage.  Starting from the one-cycle state
/// (gamma > 1/2 so the focus flip is subcritical and the unstable cycle
/// lives below lambda = -gamma), walks alpha downward hunting for the
/// configuration with two nested cycles around (0,0) (inner unstable, outer
/// stable) plus one unstable cycle around (-2,0).  The window with both
/// origin cycles sits just above the fold where they merge; the cycle around
/// (-2,0) descends from the destroyed invariant-line structure and may stay
/// outside the search radius, in which case only the origin pair is
/// reported.
struct TwoOneOptions {
    double alpha_start = -2e-3;
    double alpha_growth = 1.6;
    double alpha_limit = -1.5;
    int bisect_budget = 48;
    int scan_samples = 48;
    double s_max_origin = 80.0;
    double s_max_second = 120.0;
};

struct SweepOutcome {
    bool origin_pair = false; // two nested cycles around (0,0) resolved
    bool full = false;        // origin pair plus the cycle around (-2,0)
    double alpha = 0.0;
    std::vector<LimitCycle> origin_cycles;
    std::vector<LimitCycle> second_cycles;
    int evaluations = 0;
};

SweepOutcome find_two_one(double gamma, double lambda, const IntegratorConfig& cfg,
                          const TwoOneOptions& opt = {});

/// Stretch configuration: beta pushed just past the flip so a small stable
/// cycle coexists with the two-one state, giving (3:1).
struct ThreeOneResult {
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<LimitCycle> origin_cycles; // stable, unstable, stable
    std::vector<LimitCycle> second_cycles; // one unstable
};

std::optional<ThreeOneResult> attempt_three_one(double gamma, double lambda,
                                                const SweepOutcome& base,
                                                double beta_flip,
                                                const IntegratorConfig& cfg);

struct Theorem31Config {
    // gamma > 1/2 puts the focus flip in the subcritical regime, where the
    // staged construction (unstable cycle below the flip) is realized by the
    // actual dynamics; -gamma-lambda = 0.02 keeps the beta flip at 0.02.
    double gamma = 0.7;
    double lambda = -0.72;
    IntegratorConfig integ;
    TwoOneOptions sweep;
    int scan_samples = 48;
};

/// The four staged parameter inputs, each with its per-stage assertions.
ScenarioReport run_theorem31(const Theorem31Config& cfg = {});

struct UniquenessConfig {
    int n_gamma = 10;
    int n_lambda = 10;
    double gamma_lo = 0.02, gamma_hi = 0.3;
    // lambda runs over -gamma * [frac_hi, frac_lo]: opposite signs with the
    // focus trace lambda+gamma positive, where the unique cycle lives; the
    // band stays clear of the birth at frac 1 and of the finite value where
    // the cycle escapes through the separatrix structure (frac ~0.7 at
    // gamma = 0.3)
    double lambda_frac_lo = 0.92;
    double lambda_frac_hi = 0.78;
    bool order_swap = true;
    int scan_samples = 40;
    double s_max = 30.0;
    double swap_s_tol = 1e-6;           // agreement of the two routes
    IntegratorConfig integ;
};

struct UniquenessRecord {
    double gamma = 0.0;
    double lambda = 0.0;
    double s_star = 0.0;
    double d_prime = 0.0;
};

/// Uniqueness grid over (gamma, lambda) of opposite signs (trace positive):
/// exactly one cycle around (0,0), none around (-2,0); the order-swap route
/// (lambda first, then continuation in gamma from the flip) must reproduce
/// the same cycle.  Same-sign pairs must give no cycles.  Ambiguous
/// near-tangencies are flagged.  The detected cycles are appended to
/// `records` when given.
ScenarioReport run_uniqueness_experiment(const UniquenessConfig& cfg = {},
                                         std::vector<UniquenessRecord>* records = nullptr);

struct MonotoneConfig {
    // the contracting family lives at small gamma (supercritical flip)
    double shrink_gamma = 0.1;
    double shrink_lambda_from = -0.05;
    double grow_lambda_to = -0.004; // cycle leaves the bounded region en route
    // the fold study runs in the subcritical regime
    double fold_gamma = 0.7;
    double fold_lambda = -0.72;
    IntegratorConfig integ;
    ContinuationConfig cont;
    TwoOneOptions sweep;
};

/// Monotone-family and fold invariants on the lambda family (both
/// directions) and the alpha family through its fold.
ScenarioReport run_monotone_family_check(const MonotoneConfig& cfg = {});

/// Strict monotonicity of s* and constant sign of d' along fold-free
/// stretches of a family.
bool family_monotone(const CycleFamily& fam, std::string* why = nullptr);

} // namespace quadcycle
