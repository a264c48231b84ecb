#include "quadcycle/canonical.hpp"

#include <cmath>

#include "quadcycle/errors.hpp"

namespace quadcycle {

GeneralQuadraticField compile(const Params24& p) {
    GeneralQuadraticField f;
    f.p01 = -1.0;
    f.p11 = -1.0;
    f.p02 = -p.alpha;
    f.q10 = 1.0;
    f.q01 = p.lambda + p.beta + p.gamma;
    f.q20 = p.a;
    f.q11 = p.alpha + p.beta + p.gamma;
    f.q02 = p.c * p.gamma;
    return f;
}

GeneralQuadraticField compile(const Params25& p) {
    if (p.nu != 0 && p.nu != 1)
        throw InvalidParameterError("Params25: nu must be 0 or 1");
    GeneralQuadraticField f;
    f.p01 = -1.0;
    f.p02 = -static_cast<double>(p.nu);
    f.q10 = 1.0;
    f.q01 = p.lambda + p.beta + p.gamma;
    f.q20 = p.a;
    f.q11 = p.beta + p.gamma;
    f.q02 = p.c * p.gamma;
    return f;
}

GeneralQuadraticField compile(const Params21& p) {
    // Base pair before mixing: P = -y + m xy + (n-gamma) y^2,
    // Q = x - x^2 + gamma xy + c y^2.
    GeneralQuadraticField f;
    f.p10 = p.alpha;                        // alpha * x
    f.p01 = -1.0;                           // -y
    f.p20 = -p.alpha;                       // alpha * (-x^2)
    f.p11 = p.m + p.alpha * p.gamma;        // m xy + alpha gamma xy
    f.p02 = (p.n - p.gamma) + p.alpha * p.c;
    f.q10 = 1.0;
    f.q01 = p.alpha;                        // -alpha * (-y)
    f.q20 = -1.0;
    f.q11 = p.gamma - p.alpha * p.m;
    f.q02 = p.c - p.alpha * (p.n - p.gamma);
    return f;
}

GeneralQuadraticField compile(const Params26& p) {
    if (p.m != -1.0 && p.m != 0.0)
        throw InvalidParameterError("Params26: m must be -1 or 0");
    GeneralQuadraticField f;
    f.p01 = -1.0;
    f.p11 = p.m;
    f.p02 = p.n;
    f.q10 = 1.0;
    f.q01 = p.lambda26;
    f.q20 = p.a;
    f.q11 = p.b;
    f.q02 = p.c;
    return f;
}

EmbedResult embed_26_into_canonical(const Params26& p) {
    if (p.m != -1.0 && p.m != 0.0)
        throw InvalidParameterError("embed_26_into_canonical: m must be -1 or 0");
    EmbedResult r;
    if (p.m == -1.0) {
        r.uses24 = true;
        Params24& q = r.as24;
        q.gamma = 1.0;
        q.alpha = -p.n;
        q.beta = p.b - q.alpha - 1.0;         // alpha+beta+gamma = b
        q.lambda = p.lambda26 - q.beta - 1.0; // lambda+beta+gamma = lambda26
        q.a = p.a;
        q.c = p.c;                            // c*gamma = c26
        return r;
    }
    // n != 0 needs the similarity (x,y) -> (k x, k y) with k = -n to land on
    // the nu = 1 normal form; it divides the quadratic coefficients by k.
    // The factor is recorded so the caller knows which coordinates as25 uses.
    const double k = (p.n == 0.0) ? 1.0 : -p.n;
    Params25& q = r.as25;
    q.nu = (p.n == 0.0) ? 0 : 1;
    q.gamma = 1.0;
    q.beta = p.b / k - 1.0;
    q.lambda = p.lambda26 - q.beta - 1.0;
    q.a = p.a / k;
    q.c = p.c / k;
    r.phase_scale = k;
    return r;
}

} // namespace quadcycle
