#include "quadcycle/rotation.hpp"

#include <cmath>

#include "quadcycle/errors.hpp"
#include "quadcycle/parallel.hpp"

namespace quadcycle {

std::string to_string(RotationParamId id) {
    switch (id) {
        case RotationParamId::Lambda: return "lambda";
        case RotationParamId::Alpha: return "alpha";
        case RotationParamId::Beta: return "beta";
        case RotationParamId::Gamma: return "gamma";
    }
    return "lambda";
}

RotationParamId rotation_param_from_string(const std::string& s) {
    if (s == "lambda") return RotationParamId::Lambda;
    if (s == "alpha") return RotationParamId::Alpha;
    if (s == "beta") return RotationParamId::Beta;
    if (s == "gamma") return RotationParamId::Gamma;
    throw InvalidParameterError("unknown rotation parameter: " + s);
}

double delta_closed(RotationParamId id, const Params24& p, Point pt) {
    const double x = pt.x, y = pt.y;
    const double y2 = y * y;
    const double line = 1.0 + x + p.alpha * y;
    switch (id) {
        case RotationParamId::Lambda:
            return -y2 * line;
        case RotationParamId::Beta:
            return -y2 * (1.0 + x) * line;
        case RotationParamId::Gamma:
            return -y2 * (1.0 + x + p.c * y) * line;
        case RotationParamId::Alpha:
            return y2 * ((p.lambda + p.beta + p.gamma) * y + (p.a - 1.0) * x * x +
                         (p.beta + p.gamma) * x * y + p.c * p.gamma * y2);
    }
    return 0.0;
}

Params24 bump(const Params24& p, RotationParamId id, double dmu) {
    Params24 q = p;
    switch (id) {
        case RotationParamId::Lambda: q.lambda += dmu; break;
        case RotationParamId::Alpha: q.alpha += dmu; break;
        case RotationParamId::Beta: q.beta += dmu; break;
        case RotationParamId::Gamma: q.gamma += dmu; break;
    }
    return q;
}

namespace {

Params25 bump25(const Params25& p, RotationParamId id, double dmu) {
    Params25 q = p;
    switch (id) {
        case RotationParamId::Lambda: q.lambda += dmu; break;
        case RotationParamId::Beta: q.beta += dmu; break;
        case RotationParamId::Gamma: q.gamma += dmu; break;
        case RotationParamId::Alpha:
            throw InvalidParameterError("the nu-family has no alpha rotation parameter");
    }
    return q;
}

double determinant_from_partial(const GeneralQuadraticField& f,
                                const GeneralQuadraticField& partial, Point pt) {
    const Point v = f.eval(pt);
    const Point dv = partial.eval(pt);
    return v.x * dv.y - v.y * dv.x;
}

} // namespace

double delta_numeric(RotationParamId id, const Params24& p, Point pt) {
    const GeneralQuadraticField f = compile(p);
    const GeneralQuadraticField df = compile(bump(p, id, 1.0)) - f;
    return determinant_from_partial(f, df, pt);
}

double delta_closed25(RotationParamId id, const Params25& p, Point pt) {
    const double x = pt.x, y = pt.y;
    const double y2 = y * y;
    const double nuline = 1.0 + static_cast<double>(p.nu) * y;
    switch (id) {
        case RotationParamId::Lambda:
            return -y2 * nuline;
        case RotationParamId::Beta:
            return -y2 * nuline * (1.0 + x);
        case RotationParamId::Gamma:
            return -y2 * nuline * (1.0 + x + p.c * y);
        case RotationParamId::Alpha:
            throw InvalidParameterError("the nu-family has no alpha rotation parameter");
    }
    return 0.0;
}

double delta_numeric25(RotationParamId id, const Params25& p, Point pt) {
    const GeneralQuadraticField f = compile(p);
    const GeneralQuadraticField df = compile(bump25(p, id, 1.0)) - f;
    return determinant_from_partial(f, df, pt);
}

namespace {

DirectionSample direction_sample(RotationParamId id, const GeneralQuadraticField& f,
                                 const GeneralQuadraticField& fplus, const Params24& p,
                                 double dmu, Point pt) {
    DirectionSample s;
    s.pt = pt;
    s.delta = delta_closed(id, p, pt);
    const Point v = f.eval(pt);
    const Point vplus = fplus.eval(pt);
    s.cross = v.x * vplus.y - v.y * vplus.x;
    if (std::fabs(s.delta) <= kDirectionFloor || dmu == 0.0) {
        s.degenerate = true;
        s.pass = true;
        return s;
    }
    const double want = s.delta * dmu;
    s.pass = (s.cross > 0.0) == (want > 0.0) && s.cross != 0.0;
    return s;
}

template <bool Parallel>
DirectionReport direction_check_impl(RotationParamId id, const Params24& p, double dmu,
                                     const std::vector<Point>& pts) {
    DirectionReport rep;
    rep.samples.resize(pts.size());
    const GeneralQuadraticField f = compile(p);
    const GeneralQuadraticField fplus = compile(bump(p, id, dmu));
    auto body = [&](std::size_t i) {
        rep.samples[i] = direction_sample(id, f, fplus, p, dmu, pts[i]);
    };
    if constexpr (Parallel)
        par::parallel_for(pts.size(), body);
    else
        for (std::size_t i = 0; i < pts.size(); ++i) body(i);

    for (const DirectionSample& s : rep.samples) {
        if (s.degenerate) continue;
        ++rep.checked;
        if (s.pass) ++rep.passed;
    }
    if (rep.checked == 0 && !pts.empty() && dmu != 0.0)
        throw SectionError("rotation_direction_check: every sample degenerate");
    return rep;
}

} // namespace

DirectionReport rotation_direction_check(RotationParamId id, const Params24& p,
                                         double dmu, const std::vector<Point>& pts) {
    return direction_check_impl<true>(id, p, dmu, pts);
}

DirectionReport rotation_direction_check_serial(RotationParamId id, const Params24& p,
                                                double dmu, const std::vector<Point>& pts) {
    return direction_check_impl<false>(id, p, dmu, pts);
}

namespace {

template <bool Parallel>
std::vector<DeltaSample> delta_batch_impl(RotationParamId id,
                                          const std::vector<Params24>& params,
                                          const std::vector<Point>& pts) {
    std::vector<DeltaSample> out(pts.size());
    auto body = [&](std::size_t i) {
        const Params24& p = params[params.size() == 1 ? 0 : i];
        out[i] = {delta_closed(id, p, pts[i]), delta_numeric(id, p, pts[i])};
    };
    if constexpr (Parallel)
        par::parallel_for(pts.size(), body);
    else
        for (std::size_t i = 0; i < pts.size(); ++i) body(i);
    return out;
}

} // namespace

std::vector<DeltaSample> delta_batch(RotationParamId id, const std::vector<Params24>& params,
                                     const std::vector<Point>& pts) {
    return delta_batch_impl<true>(id, params, pts);
}

std::vector<DeltaSample> delta_batch_serial(RotationParamId id,
                                            const std::vector<Params24>& params,
                                            const std::vector<Point>& pts) {
    return delta_batch_impl<false>(id, params, pts);
}

} // namespace quadcycle
