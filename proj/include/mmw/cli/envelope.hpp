#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmw/cli/config.hpp"

namespace mmw::cli {

struct ScalarWithUnit {
    std::string name;
    double value;
    std::string unit;
};

// Side-by-side comparison against a published reference value, attached
// automatically when a run matches one of the documented scenarios.
struct ReferenceNote {
    std::string quantity;
    double computed;
    std::string unit;
    double quoted;
    std::string source;
    std::string remark;
};

struct ResultEnvelope {
    std::string command;
    json config_echo;
    std::vector<ScalarWithUnit> derived;
    std::vector<ReferenceNote> notes;
    std::optional<std::string> csv_path;
    std::vector<std::string> csv_columns;
    json extra;  // command-specific results
};

json envelope_to_json(const ResultEnvelope& envelope);

// Scenario-matched notes. All inputs SI; field_gauss only set for the
// magnetic case.
std::vector<ReferenceNote> reference_notes(const RunConfig& config, double velocity,
                                           double omega_eff, double lambda_l1);

}  // namespace mmw::cli
