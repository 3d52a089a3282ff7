#pragma once

#include <string>
#include <vector>

#include "npstrain/config.hpp"

namespace npstrain {

/// Outcome of one CLI command. `report` is printed to stdout.
struct CommandResult {
    std::vector<std::string> files;
    std::string report;
    bool ok = true;
};

CommandResult cmd_eigs(const RunConfig& cfg);
/// One curve CSV per period plus calibration.csv.
CommandResult cmd_sweep(const RunConfig& cfg);
CommandResult cmd_scatter(const RunConfig& cfg);
CommandResult cmd_invert(const RunConfig& cfg, double peak_wavelength_nm);
/// ok is false if any check fails.
CommandResult cmd_validate(const RunConfig& cfg);

/// Maps library exceptions to the documented exit codes (2 config, 3 domain,
/// 4 numerical, 1 anything else).
int exit_code_for(const std::exception& e);

} // namespace npstrain
