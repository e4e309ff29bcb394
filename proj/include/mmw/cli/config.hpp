#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmw/analysis.hpp"
#include "mmw/system.hpp"

namespace mmw::cli {

using nlohmann::json;

// Run configuration: one JSON file per run, lab units at the boundary,
// unknown keys rejected. Parsing materializes defaults, so an emitted echo
// parses back to an identical value.

struct LandauConfig {
    double field_gauss;
    bool operator==(const LandauConfig&) const = default;
};

struct VibrationalConfig {
    double wavenumber_cm;
    double reduced_mass_amu;
    bool operator==(const VibrationalConfig&) const = default;
};

struct RotationalConfig {
    double reduced_mass_amu;
    double internuclear_distance_angstrom;
    bool operator==(const RotationalConfig&) const = default;
};

struct SystemConfig {
    std::optional<LandauConfig> landau;
    std::optional<VibrationalConfig> vibrational;
    std::optional<RotationalConfig> rotational;
    bool rydberg = false;
    bool operator==(const SystemConfig&) const = default;
};

struct BeamConfig {
    std::optional<double> energy_ev;     // total energy
    std::optional<double> velocity_m_s;  // alternative: beam speed
    bool mass_is_electron = false;
    double mass_amu = 0.0;
    std::int64_t quantum_number = 0;
    double pitch_angle_deg = 0.0;
    bool operator==(const BeamConfig&) const = default;
};

struct GeometryConfig {
    double x1_m = 0.0;
    double x2_m = 0.0;
    std::complex<double> coupling1{1.0, 0.0};
    std::complex<double> coupling2{1.0, 0.0};
    bool operator==(const GeometryConfig&) const = default;
};

struct HarmonicConfig {
    int l = 1;
    std::complex<double> weight{1.0, 0.0};
    std::complex<double> beta{1.0, 0.0};
    bool operator==(const HarmonicConfig&) const = default;
};

struct RovibConfig {
    std::int64_t j = 1;
    int l_vib = 1;
    int l_rot = 1;
    double internuclear_distance_angstrom = 1.0;
    std::complex<double> gamma{1.0, 0.0};
    bool operator==(const RovibConfig&) const = default;
};

struct SweepLengthConfig {
    std::string label;
    double length_m = 0.0;
    bool operator==(const SweepLengthConfig&) const = default;
};

struct SweepBlock {
    std::optional<double> delta_x_min_m;  // fringe sweeps
    std::optional<double> delta_x_max_m;
    std::optional<double> energy_min_ev;  // energy sweeps
    std::optional<double> energy_max_ev;
    std::int64_t samples = 2048;
    std::vector<SweepLengthConfig> lengths_m;
    std::vector<HarmonicConfig> harmonics{HarmonicConfig{}};
    std::optional<double> min_prominence;
    std::optional<RovibConfig> rovib;
    bool operator==(const SweepBlock&) const = default;
};

struct EvolveBlock {
    std::int64_t grid_points = 1024;
    double domain_length_m = 1.0;
    int mode_l = 1;
    std::optional<double> gyroaction_j_s;  // default: quantum_number * hbar
    std::optional<double> omega_rad_s;     // default: system effective frequency
    double omega_modulation = 0.0;         // relative cosine modulation of omega(x)
    int omega_modulation_periods = 1;
    std::string initial = "plane_wave";    // or "gaussian"
    std::int64_t mode_index = 8;           // plane-wave / packet carrier bin
    std::optional<double> packet_center_m;
    std::optional<double> packet_width_m;
    double time_step_s = 0.0;
    std::int64_t steps = 0;
    bool operator==(const EvolveBlock&) const = default;
};

struct MatrixBlock {
    std::string kind;         // "linear", "quadratic", "gaussian"
    double strength = 1.0;    // J/m, J/m^2 or J per kind
    double width_m = 0.0;     // gaussian only
    std::int64_t nu = 0;
    std::int64_t l = 0;
    bool operator==(const MatrixBlock&) const = default;
};

struct OutputBlock {
    std::string directory = ".";
    std::string csv;       // default derived from the command
    std::string envelope = "envelope.json";
    bool operator==(const OutputBlock&) const = default;
};

struct RunConfig {
    SystemConfig system;
    std::optional<BeamConfig> beam;
    GeometryConfig geometry;
    std::optional<SweepBlock> sweep;
    std::optional<EvolveBlock> evolve;
    std::optional<MatrixBlock> matrix;
    OutputBlock output;
    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const json& j);
RunConfig parse_config_text(const std::string& text);
json config_to_json(const RunConfig& config);

// Resolved physics objects, SI.
InternalSystem build_system(const SystemConfig& config,
                            const PhysicalConstants& pc = PhysicalConstants::codata());
BeamSpec build_beam(const BeamConfig& beam, const SystemConfig& system_config,
                    const PhysicalConstants& pc = PhysicalConstants::codata());

}  // namespace mmw::cli
