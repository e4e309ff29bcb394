#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mmw/cli/envelope.hpp"

namespace mmw::cli {

ResultEnvelope cmd_dispersion(const RunConfig& config);
ResultEnvelope cmd_fringes(const RunConfig& config);
ResultEnvelope cmd_sweep(const RunConfig& config);
ResultEnvelope cmd_beats(const RunConfig& config);
ResultEnvelope cmd_evolve(const RunConfig& config);
ResultEnvelope cmd_matrix(const RunConfig& config);

// Full command-line entry point. Exit status: 0 success, 2 configuration
// error, 3 physics-domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mmw::cli
