#pragma once

#include <string>

#include "kgws/core.hpp"

namespace kgws {

inline constexpr const char* kVersion = "0.1.0";

/// Problem definition as read from JSON:
/// {"V0": f, "q": f, "a": f, "m": f, "R0": f?, "variant": "real"|"pt"|"nonpt"|"pseudo"}.
/// Fields absent from the file keep the values of `base`; command-line flags
/// are applied afterwards and win.
struct ParamsDraft {
    double V0 = 0.0;
    double q = 1.0;
    double a = 1.0;
    double m = 1.0;
    double R0 = 0.0;
    Variant variant = Variant::RealHermitian;
    bool alpha_given = false;
    double alpha = 1.0;

    PotentialParams build() const;
};

/// Throws ConfigError on malformed JSON, wrong types or unknown keys.
ParamsDraft parse_params_json(const std::string& text, ParamsDraft base = {});
ParamsDraft load_params_file(const std::string& path, ParamsDraft base = {});

/// Canonical JSON for a parameter set (ordered keys, compact).
std::string params_to_json(const PotentialParams& p);

}  // namespace kgws
