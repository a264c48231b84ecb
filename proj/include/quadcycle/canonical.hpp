#pragma once

#include "quadcycle/field.hpp"

namespace quadcycle {

/// Four-rotation-parameter canonical family:
///   xdot = -y (1 + x + alpha y)
///   ydot = x + (lambda+beta+gamma) y + a x^2 + (alpha+beta+gamma) xy + c gamma y^2
struct Params24 {
    double lambda = 0, alpha = 0, beta = 0, gamma = 0, a = 0, c = 0;
};

/// Three-rotation-parameter limit family (nu in {0,1}):
///   xdot = -y (1 + nu y)
///   ydot = x + (lambda+beta+gamma) y + a x^2 + (beta+gamma) xy + c gamma y^2
struct Params25 {
    double lambda = 0, beta = 0, gamma = 0, a = 0, c = 0;
    int nu = 0;
};

/// Two-rotation-parameter family, alpha mixed into both components:
///   xdot = P + alpha Q,  ydot = Q - alpha P, where
///   P = -y + m xy + (n-gamma) y^2,  Q = x - x^2 + gamma xy + c y^2
struct Params21 {
    double alpha = 0, gamma = 0, m = 0, n = 0, c = 0;
};

/// Rotation-free normal form (m = -1 or m = 0):
///   xdot = -y + m xy + n y^2
///   ydot = x + lambda26 y + a x^2 + b xy + c y^2
struct Params26 {
    double m = 0, n = 0, lambda26 = 0, a = 0, b = 0, c = 0;
};

GeneralQuadraticField compile(const Params24& p);
GeneralQuadraticField compile(const Params25& p); // throws InvalidParameterError unless nu in {0,1}
GeneralQuadraticField compile(const Params21& p);
GeneralQuadraticField compile(const Params26& p); // throws InvalidParameterError unless m in {-1,0}

/// Result of re-expressing a Params26 system in a rotation-parameter family.
///
/// For m = -1 the embedding is exact: compiling `as24` reproduces
/// compile(p26) coefficient for coefficient.  For m = 0 the y^2 coefficient
/// of xdot is forced to -nu with nu in {0,1}, which requires the isotropic
/// similarity (x,y) -> (phase_scale x, phase_scale y) unless n is 0 or -1;
/// compiling `as25` reproduces rescale_phase(compile(p), phase_scale)
/// coefficient for coefficient, and phase_scale is 1 when no rescaling
/// happened.
struct EmbedResult {
    bool uses24 = false;
    Params24 as24;
    Params25 as25;
    double phase_scale = 1.0; // 1 when no rescaling is needed
};

EmbedResult embed_26_into_canonical(const Params26& p);

} // namespace quadcycle
