#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadcycle/equilibria.hpp"
#include "quadcycle/field.hpp"
#include "quadcycle/integrate.hpp"

namespace quadcycle {

/// Transversal ray through a focus.  On the x-axis sections used for the
/// canonical families crossings are exactly vertical (xdot = 0 on y = 0), so
/// transversality only fails at equilibria.
struct Section {
    Point focus;
    Point direction;      // unit vector
    double s_min = 1e-3;
    double s_max = 30.0;
    int orientation = 0;  // required sign of the transversal crossing
};

/// Default section through a focus: along +x, flipped to -x when the field
/// has the factored shape and the focus lies left of the invariant line
/// x = -1.  The orientation is probed from the field; throws SectionError if
/// the ray is nowhere transversal.
Section section_for_focus(const GeneralQuadraticField& f, Point focus,
                          double s_min = 1e-3, double s_max = 30.0);

enum class ReturnStatus { ok, escape, timeout, trapped, failed };

std::string_view to_string(ReturnStatus s);

struct ReturnResult {
    ReturnStatus status = ReturnStatus::failed;
    double s_next = 0.0; // crossing offset (status ok)
    double period = 0.0; // first-return time (status ok)
};

/// First return to the section ray from offset s.
ReturnResult return_map(const GeneralQuadraticField& f, const Section& sec, double s,
                        const IntegratorConfig& cfg);

/// displacement(s) = return_map(s) - s; zeros are limit cycles.
ReturnResult displacement(const GeneralQuadraticField& f, const Section& sec, double s,
                          const IntegratorConfig& cfg);

struct DisplacementSample {
    double s = 0.0;
    ReturnStatus status = ReturnStatus::failed;
    double d = 0.0;
    double period = 0.0;
};

/// Displacement at each offset; samples are independent integrations, the
/// parallel kernel writes results by index.
std::vector<DisplacementSample> displacement_profile(const GeneralQuadraticField& f,
                                                     const Section& sec,
                                                     const std::vector<double>& offsets,
                                                     const IntegratorConfig& cfg);
std::vector<DisplacementSample> displacement_profile_serial(
    const GeneralQuadraticField& f, const Section& sec,
    const std::vector<double>& offsets, const IntegratorConfig& cfg);

/// Log-spaced grid on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

/// Displacement magnitudes below this are indistinguishable from integration
/// noise at the given tolerances (drives the tolerance-laddering in the
/// refiners).
double displacement_noise_gate(const IntegratorConfig& cfg, double s);

/// Roots with |d'| below this floor move by more than ~1e-6 when tolerances
/// change (location uncertainty is noise/|d'|): their positions count as
/// diagnostics, not tolerance-robust measurements.
double certified_slope_floor(const IntegratorConfig& cfg, double s);

enum class Stability { stable, unstable, semi_stable };

std::string_view to_string(Stability s);

struct LimitCycle {
    double s_star = 0.0;
    double period = 0.0;
    Stability stability = Stability::semi_stable;
    double d_prime = 0.0;
    Point focus;
    std::vector<Point> orbit; // one period, sampled
    // false when the displacement signal sat at the noise floor and the
    // refiner had to fall back to its deep tolerance ladder; such values are
    // diagnostics, not tolerance-robust measurements
    bool certified = true;
};

struct ScanOptions {
    int n_samples = 48;
    double refine_tol = 1e-9;     // |displacement| at accepted cycles
    int orbit_samples = 512;      // points stored per detected cycle
    bool keep_orbit = true;
    double semi_stable_tol = 1e-9;
};

/// Scans the displacement map on a log-spaced grid, brackets every sign
/// change, refines each to |d| <= refine_tol (bisection, then secant) and
/// classifies stability from the displacement sign on both flanks.
/// Near-tangencies (|d| < tol, no sign change, confirmed at a tightened
/// tolerance) are reported as semi-stable candidates.
std::vector<LimitCycle> scan_and_refine(const GeneralQuadraticField& f, const Section& sec,
                                        int n_samples, const IntegratorConfig& cfg,
                                        const ScanOptions& opt = {});

/// Refines a cycle from a bracketing pair of offsets; nullopt when the
/// bracket does not hold a sign change or refinement breaks down.
std::optional<LimitCycle> refine_bracket(const GeneralQuadraticField& f,
                                         const Section& sec, double s_lo, double s_hi,
                                         const IntegratorConfig& cfg,
                                         const ScanOptions& opt = {});

/// Nested cycles around one focus must alternate stability.
bool alternating_stability(const std::vector<LimitCycle>& cycles);

struct FocusCycles {
    Equilibrium focus;
    std::vector<LimitCycle> cycles;
};

struct Distribution {
    std::vector<FocusCycles> per_focus; // ordered by |focus location|
    std::string label;                  // "(n:m)" for the two-focus case
};

/// Cycle inventory per anti-saddle.
Distribution count_distribution(const GeneralQuadraticField& f, const IntegratorConfig& cfg,
                                const ScanOptions& opt = {}, double s_max = 30.0);

} // namespace quadcycle
