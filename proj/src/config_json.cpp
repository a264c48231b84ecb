#include "quadcycle/config_json.hpp"

#include <json.hpp>

#include "quadcycle/errors.hpp"

namespace quadcycle {

namespace {

using nlohmann::json;

json parse_object(const std::string& text, const char* what) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidParameterError(std::string(what) + ": bad JSON: " + e.what());
    }
    if (!j.is_object())
        throw InvalidParameterError(std::string(what) + ": expected a JSON object");
    return j;
}

struct FieldMap {
    const char* name;
    double* slot;
};

void read_fields(const json& j, const std::vector<FieldMap>& fields, const char* what) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const FieldMap& fm : fields) {
            if (key == fm.name) {
                if (!value.is_number())
                    throw InvalidParameterError(std::string(what) + ": field '" + key +
                                                "' must be a number");
                *fm.slot = value.get<double>();
                known = true;
                break;
            }
        }
        if (!known)
            throw InvalidParameterError(std::string(what) + ": unknown key '" + key + "'");
    }
}

} // namespace

Params24 parse_params24(const std::string& text) {
    const json j = parse_object(text, "params24");
    Params24 p;
    read_fields(j,
                {{"lambda", &p.lambda},
                 {"alpha", &p.alpha},
                 {"beta", &p.beta},
                 {"gamma", &p.gamma},
                 {"a", &p.a},
                 {"c", &p.c}},
                "params24");
    return p;
}

Params25 parse_params25(const std::string& text) {
    const json j = parse_object(text, "params25");
    Params25 p;
    double nu = 0.0;
    read_fields(j,
                {{"lambda", &p.lambda},
                 {"beta", &p.beta},
                 {"gamma", &p.gamma},
                 {"a", &p.a},
                 {"c", &p.c},
                 {"nu", &nu}},
                "params25");
    if (nu != 0.0 && nu != 1.0)
        throw InvalidParameterError("params25: nu must be 0 or 1");
    p.nu = static_cast<int>(nu);
    return p;
}

Params21 parse_params21(const std::string& text) {
    const json j = parse_object(text, "params21");
    Params21 p;
    read_fields(j,
                {{"alpha", &p.alpha},
                 {"gamma", &p.gamma},
                 {"m", &p.m},
                 {"n", &p.n},
                 {"c", &p.c}},
                "params21");
    return p;
}

Params26 parse_params26(const std::string& text) {
    const json j = parse_object(text, "params26");
    Params26 p;
    read_fields(j,
                {{"m", &p.m},
                 {"n", &p.n},
                 {"lambda26", &p.lambda26},
                 {"a", &p.a},
                 {"b", &p.b},
                 {"c", &p.c}},
                "params26");
    return p;
}

GeneralQuadraticField parse_general_field(const std::string& text) {
    const json j = parse_object(text, "general");
    GeneralQuadraticField f;
    read_fields(j,
                {{"p00", &f.p00},
                 {"p10", &f.p10},
                 {"p01", &f.p01},
                 {"p20", &f.p20},
                 {"p11", &f.p11},
                 {"p02", &f.p02},
                 {"q00", &f.q00},
                 {"q10", &f.q10},
                 {"q01", &f.q01},
                 {"q20", &f.q20},
                 {"q11", &f.q11},
                 {"q02", &f.q02}},
                "general");
    return f;
}

GeneralQuadraticField compile_system(const std::string& family,
                                     const std::string& params_json) {
    if (family == "canonical24") return compile(parse_params24(params_json));
    if (family == "canonical25") return compile(parse_params25(params_json));
    if (family == "canonical21") return compile(parse_params21(params_json));
    if (family == "canonical26") return compile(parse_params26(params_json));
    if (family == "general") return parse_general_field(params_json);
    throw InvalidParameterError("unknown system family: " + family);
}

Json to_json(const Params24& p) {
    Json j = Json::object();
    j["lambda"] = Json::number(p.lambda);
    j["alpha"] = Json::number(p.alpha);
    j["beta"] = Json::number(p.beta);
    j["gamma"] = Json::number(p.gamma);
    j["a"] = Json::number(p.a);
    j["c"] = Json::number(p.c);
    return j;
}

Json to_json(const Params25& p) {
    Json j = Json::object();
    j["lambda"] = Json::number(p.lambda);
    j["beta"] = Json::number(p.beta);
    j["gamma"] = Json::number(p.gamma);
    j["a"] = Json::number(p.a);
    j["c"] = Json::number(p.c);
    j["nu"] = Json::integer(p.nu);
    return j;
}

Json to_json(const Params21& p) {
    Json j = Json::object();
    j["alpha"] = Json::number(p.alpha);
    j["gamma"] = Json::number(p.gamma);
    j["m"] = Json::number(p.m);
    j["n"] = Json::number(p.n);
    j["c"] = Json::number(p.c);
    return j;
}

Json to_json(const Params26& p) {
    Json j = Json::object();
    j["m"] = Json::number(p.m);
    j["n"] = Json::number(p.n);
    j["lambda26"] = Json::number(p.lambda26);
    j["a"] = Json::number(p.a);
    j["b"] = Json::number(p.b);
    j["c"] = Json::number(p.c);
    return j;
}

Json to_json(const GeneralQuadraticField& f) {
    Json j = Json::object();
    j["p00"] = Json::number(f.p00);
    j["p10"] = Json::number(f.p10);
    j["p01"] = Json::number(f.p01);
    j["p20"] = Json::number(f.p20);
    j["p11"] = Json::number(f.p11);
    j["p02"] = Json::number(f.p02);
    j["q00"] = Json::number(f.q00);
    j["q10"] = Json::number(f.q10);
    j["q01"] = Json::number(f.q01);
    j["q20"] = Json::number(f.q20);
    j["q11"] = Json::number(f.q11);
    j["q02"] = Json::number(f.q02);
    return j;
}

IntegratorConfig parse_integrator_config(const std::string& text, IntegratorConfig base) {
    const json j = parse_object(text, "integrator");
    read_fields(j,
                {{"rtol", &base.rtol},
                 {"atol", &base.atol},
                 {"h_init", &base.h_init},
                 {"h_max", &base.h_max},
                 {"t_max", &base.t_max},
                 {"r_escape", &base.r_escape}},
                "integrator");
    if (base.rtol <= 0 || base.atol <= 0 || base.h_init <= 0 || base.h_max <= 0 ||
        base.t_max <= 0 || base.r_escape <= 0)
        throw InvalidParameterError("integrator: all settings must be positive");
    return base;
}

} // namespace quadcycle
