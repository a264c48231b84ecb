#pragma once

#include <string>
#include <vector>

#include "quadcycle/canonical.hpp"
#include "quadcycle/field.hpp"

namespace quadcycle {

/// The four field-rotation parameters of the canonical family.
enum class RotationParamId { Lambda, Alpha, Beta, Gamma };

std::string to_string(RotationParamId id);
RotationParamId rotation_param_from_string(const std::string& s);

/// Closed-form rotation determinant P Q'_mu - Q P'_mu at pt:
///   Lambda: -y^2 (1 + x + alpha y)
///   Beta:   -y^2 (1 + x)(1 + x + alpha y)
///   Gamma:  -y^2 (1 + x + c y)(1 + x + alpha y)
///   Alpha:   y^2 ((lambda+beta+gamma) y + (a-1) x^2 + (beta+gamma) xy + c gamma y^2)
double delta_closed(RotationParamId id, const Params24& p, Point pt);

/// Same determinant from the compiled field and its exact parameter-partial
/// (the field is affine in each rotation parameter, so the partial is the
/// coefficient difference of two compiles).  Independent of delta_closed.
double delta_numeric(RotationParamId id, const Params24& p, Point pt);

/// Three-parameter analogue for the nu-family (no Alpha; expanded by hand
/// from the same determinant definition):
///   Lambda: -y^2 (1 + nu y)
///   Beta:   -y^2 (1 + nu y)(1 + x)
///   Gamma:  -y^2 (1 + nu y)(1 + x + c y)
double delta_closed25(RotationParamId id, const Params25& p, Point pt);
double delta_numeric25(RotationParamId id, const Params25& p, Point pt);

Params24 bump(const Params24& p, RotationParamId id, double dmu);

/// One pointwise check of the rotation-direction law: increasing mu by dmu
/// turns the field vector by the sign of delta * dmu.
struct DirectionSample {
    Point pt;
    double delta = 0.0;  // closed-form determinant at pt
    double cross = 0.0;  // P * Q(mu+dmu) - Q * P(mu+dmu)
    bool degenerate = false; // |delta| below the floor: sign not asserted
    bool pass = false;
};

struct DirectionReport {
    std::vector<DirectionSample> samples;
    std::size_t checked = 0; // nondegenerate samples
    std::size_t passed = 0;
};

/// Degeneracy floor below which the sign comparison is skipped.
inline constexpr double kDirectionFloor = 1e-8;

/// Evaluates the direction law at each sample point.  Throws SectionError
/// when every point is degenerate (inconclusive).
DirectionReport rotation_direction_check(RotationParamId id, const Params24& p,
                                         double dmu, const std::vector<Point>& pts);

/// Batch comparison of the two determinant routes; results indexed like pts.
struct DeltaSample {
    double closed = 0.0;
    double numeric = 0.0;
};

std::vector<DeltaSample> delta_batch(RotationParamId id,
                                     const std::vector<Params24>& params,
                                     const std::vector<Point>& pts);
std::vector<DeltaSample> delta_batch_serial(RotationParamId id,
                                            const std::vector<Params24>& params,
                                            const std::vector<Point>& pts);

DirectionReport rotation_direction_check_serial(RotationParamId id, const Params24& p,
                                                double dmu, const std::vector<Point>& pts);

} // namespace quadcycle
