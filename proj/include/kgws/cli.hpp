#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kgws/core.hpp"

namespace kgws {

/// Named sweep configuration for one plot panel.
struct ScanPreset {
    std::string name;
    Variant variant;
    std::string axis;       ///< "V0" or "alpha"
    std::vector<double> qs; ///< one curve per q
    double V0;              ///< fixed value when sweeping alpha (units of m)
    double a;               ///< fixed diffuseness when sweeping V0
    int n_max;
    double from;
    double to;
    int steps;
};

const std::vector<ScanPreset>& scan_presets();
/// Throws ConfigError for an unknown name.
const ScanPreset& find_preset(const std::string& name);

struct ScanRow {
    double sweep_value;
    int n;
    int branch;
    double q;
    Complex E;
    bool emitted;
};

struct ScanSetup {
    PotentialParams base;
    std::string axis;
    std::vector<double> qs;
    double from;
    double to;
    int steps;
    int n_max;
};

/// Evaluates every sweep point (in parallel with `jobs` workers) and returns
/// rows in sweep order. Points where an existence condition is violated
/// contribute no rows and are listed in `skipped`.
std::vector<ScanRow> run_scan(const ScanSetup& setup, int jobs,
                              std::vector<std::string>* skipped = nullptr);

/// Entry point of the kgws executable. Exit codes: 0 success, 2 invalid or
/// violated configuration, 3 verification mismatch.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kgws
