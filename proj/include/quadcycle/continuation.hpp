#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quadcycle/canonical.hpp"
#include "quadcycle/cycles.hpp"
#include "quadcycle/rotation.hpp"

namespace quadcycle {

enum class TerminationClass {
    shrinks_to_focus,
    separatrix_like,
    unbounded,
    range_end,
    fold_end
};

std::string_view to_string(TerminationClass t);

struct FamilySample {
    double mu = 0.0;
    double s_star = 0.0;
    double period = 0.0;
    double d_prime = 0.0;
    bool certified = true; // see LimitCycle::certified
};

/// Fold of a one-parameter cycle family: displacement and its slope vanish
/// together (the even-multiplicity, semi-stable case).
struct FoldPoint {
    double mu_fold = 0.0;
    double s_fold = 0.0;
    double d_prime = 0.0;   // slope at the fold estimate
    double mu_width = 0.0;  // final bracket width in mu
};

struct CycleFamily {
    RotationParamId param = RotationParamId::Lambda;
    std::vector<FamilySample> samples;
    std::vector<FoldPoint> folds;
    TerminationClass termination = TerminationClass::range_end;
    std::string note;

    double mu_end() const { return samples.empty() ? 0.0 : samples.back().mu; }
};

struct ContinuationConfig {
    double mu_step_init = 2e-3;
    double mu_step_min = 1e-9;
    double mu_step_max = 2e-2;
    double fold_mu_width = 1e-6;       // bracket width demanded at a fold
    double s_collapse = 1e-4;          // family has shrunk into the focus
    double period_blowup_factor = 50;  // x small-amplitude period 2*pi/sqrt(det)
    int max_steps = 600;
    int probe_count = 13;              // bracket probes around the prediction
    double probe_span = 1.9;           // geometric half-width of the probe window
    ScanOptions scan;

    ContinuationConfig() { scan.keep_orbit = false; }
};

/// Continues the cycle seeded at (mu_from, seed_s) in one rotation parameter
/// of the canonical family toward mu_to, with adaptive steps, secant
/// prediction, fold bracketing and termination classification.
/// Throws InvalidParameterError when the seed does not refine to a cycle.
CycleFamily continue_family(const Params24& base, RotationParamId param, double mu_from,
                            double mu_to, double seed_s, Point focus,
                            const IntegratorConfig& cfg,
                            const ContinuationConfig& ccfg = {});

/// 2*pi/sqrt(det J) at the focus: the small-amplitude period used to scale
/// the period-blowup threshold.
double small_amplitude_period(const GeneralQuadraticField& f, Point focus);

/// Locates the cycle nearest the predicted offset, resolving close sibling
/// pairs (near folds) and dips hiding a root pair.  The workhorse behind
/// continue_family, exposed for re-verification passes.
std::optional<LimitCycle> locate_cycle_near(const GeneralQuadraticField& f,
                                            const Section& sec, double s_pred,
                                            const IntegratorConfig& cfg,
                                            const ContinuationConfig& ccfg = {});

} // namespace quadcycle
