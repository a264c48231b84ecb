#pragma once

#include <string>

#include "quadcycle/canonical.hpp"
#include "quadcycle/integrate.hpp"
#include "quadcycle/report.hpp"

namespace quadcycle {

/// Parameter tuples (de)serialize as flat JSON objects carrying exactly the
/// tuple's field names; unknown keys are rejected, missing keys default to
/// zero.  Throws InvalidParameterError on malformed input.
Params24 parse_params24(const std::string& json_text);
Params25 parse_params25(const std::string& json_text);
Params21 parse_params21(const std::string& json_text);
Params26 parse_params26(const std::string& json_text);
GeneralQuadraticField parse_general_field(const std::string& json_text);

/// Compiles any supported family name ("canonical24", "canonical25",
/// "canonical21", "canonical26", "general") with its JSON parameter object.
GeneralQuadraticField compile_system(const std::string& family,
                                     const std::string& params_json);

Json to_json(const Params24& p);
Json to_json(const Params25& p);
Json to_json(const Params21& p);
Json to_json(const Params26& p);
Json to_json(const GeneralQuadraticField& f);

/// Integrator overrides: {"rtol", "atol", "h_init", "h_max", "t_max",
/// "r_escape"}, all optional, unknown keys rejected.
IntegratorConfig parse_integrator_config(const std::string& json_text,
                                         IntegratorConfig base = {});

} // namespace quadcycle
