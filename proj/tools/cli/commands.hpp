#pragma once

#include "cli/config.hpp"
#include "cli/report.hpp"

namespace unitfrac::cli {

/// Runs one normalized configuration. Throws ValidationError or CapacityError from the core.
Report dispatch(const RunConfig& config);

}  // namespace unitfrac::cli
