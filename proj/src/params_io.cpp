#include "kgws/params_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

double number_field(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

}  // namespace

PotentialParams ParamsDraft::build() const {
    if (alpha_given) return PotentialParams::from_alpha(V0, q, alpha, m, variant, R0);
    return PotentialParams(V0, q, a, m, variant, R0);
}

ParamsDraft parse_params_json(const std::string& text, ParamsDraft base) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("parameter file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "V0") {
            base.V0 = number_field(j, "V0");
        } else if (key == "q") {
            base.q = number_field(j, "q");
        } else if (key == "a") {
            base.a = number_field(j, "a");
            base.alpha_given = false;
        } else if (key == "m") {
            base.m = number_field(j, "m");
        } else if (key == "R0") {
            base.R0 = number_field(j, "R0");
        } else if (key == "variant") {
            if (!value.is_string()) throw ConfigError("field 'variant' must be a string");
            base.variant = variant_from_string(value.get<std::string>());
        } else {
            throw ConfigError("unknown field '" + key + "' in parameter file");
        }
    }
    return base;
}

ParamsDraft load_params_file(const std::string& path, ParamsDraft base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_params_json(buf.str(), base);
}

std::string params_to_json(const PotentialParams& p) {
    nlohmann::ordered_json j;
    j["V0"] = p.V0();
    j["q"] = p.q();
    j["a"] = p.a();
    j["m"] = p.m();
    j["R0"] = p.R0();
    j["variant"] = std::string(to_string(p.variant()));
    return j.dump();
}

}  // namespace kgws
