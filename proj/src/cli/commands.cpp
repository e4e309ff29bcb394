#include "mmw/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "mmw/analysis.hpp"
#include "mmw/cli/csv.hpp"
#include "mmw/dispersion.hpp"
#include "mmw/errors.hpp"
#include "mmw/evolution.hpp"
#include "mmw/interference.hpp"
#include "mmw/matrix_elements.hpp"

namespace mmw::cli {

namespace {

namespace fs = std::filesystem;

struct ResolvedBeam {
    InternalSystem system;
    BeamSpec beam;
    double qn;         // central quantum number as a real
    double velocity;   // m/s
    double omega_eff;  // rad/s
    double k;          // rad/m
    double lambda;     // m, l = 1
};

ResolvedBeam resolve_beam(const RunConfig& config) {
    if (!config.beam) throw ConfigError("this command needs a beam block");
    ResolvedBeam r;
    r.system = build_system(config.system);
    r.beam = build_beam(*config.beam, config.system);
    r.qn = static_cast<double>(r.beam.central_quantum_number);
    r.velocity = beam_velocity(r.beam, r.system, r.qn);
    r.omega_eff = effective_frequency(r.system, r.qn);
    r.k = r.omega_eff / r.velocity;
    r.lambda = macroscopic_wavelength(r.velocity, r.omega_eff, 1);
    return r;
}

void push_common_scalars(ResultEnvelope& envelope, const ResolvedBeam& r) {
    envelope.derived.push_back({"total_energy", units::joule_to_ev(r.beam.total_energy), "eV"});
    envelope.derived.push_back({"quantum_number", r.qn, "1"});
    envelope.derived.push_back(
        {"classical_action", classical_action(r.system, r.qn).value, "J s"});
    envelope.derived.push_back({"velocity", r.velocity, "m/s"});
    envelope.derived.push_back({"omega_eff", r.omega_eff, "rad/s"});
    envelope.derived.push_back({"k", r.k, "rad/m"});
    envelope.derived.push_back({"lambda", r.lambda, "m"});
}

std::string csv_path(const RunConfig& config, const std::string& command) {
    fs::create_directories(config.output.directory);
    const std::string name = config.output.csv.empty() ? command + ".csv" : config.output.csv;
    return (fs::path(config.output.directory) / name).string();
}

const SweepBlock& require_sweep(const RunConfig& config) {
    if (!config.sweep) throw ConfigError("this command needs a sweep block");
    return *config.sweep;
}

HarmonicMixture mixture_from(const SweepBlock& sweep) {
    HarmonicMixture mixture;
    for (const auto& h : sweep.harmonics) mixture.entries.emplace_back(h.l, h.weight);
    validate_mixture(mixture);
    return mixture;
}

SweepConfig energy_sweep_config(const RunConfig& config, const ResolvedBeam& r) {
    const SweepBlock& sweep = require_sweep(config);
    if (!sweep.energy_min_ev || !sweep.energy_max_ev)
        throw ConfigError("sweep needs energy_min_ev and energy_max_ev");
    if (sweep.lengths_m.empty()) throw ConfigError("sweep needs lengths_m");
    SweepConfig out;
    out.energy_min = units::ev_to_joule(*sweep.energy_min_ev);
    out.energy_max = units::ev_to_joule(*sweep.energy_max_ev);
    out.sample_count = sweep.samples;
    for (const auto& sl : sweep.lengths_m) out.lengths.push_back({sl.label, sl.length_m});
    out.system = r.system;
    out.beam = r.beam;
    out.mixture = mixture_from(sweep);
    return out;
}

json peak_report_json(const PeakReport& report) {
    json j;
    j["count"] = report.peak_positions.size();
    json positions = json::array();
    for (double p : report.peak_positions) positions.push_back(units::joule_to_ev(p));
    j["positions_ev"] = positions;
    j["mean_spacing_ev"] = units::joule_to_ev(report.mean_spacing);
    return j;
}

double default_prominence(const std::vector<double>& signal) {
    const auto [lo, hi] = std::minmax_element(signal.begin(), signal.end());
    return std::max(0.05 * (*hi - *lo), 1e-12);
}

}  // namespace

ResultEnvelope cmd_dispersion(const RunConfig& config) {
    const ResolvedBeam r = resolve_beam(config);
    ResultEnvelope envelope;
    envelope.command = "dispersion";
    envelope.config_echo = config_to_json(config);
    push_common_scalars(envelope, r);

    const double kappa = kappa_exact(r.beam, r.system, r.qn);
    envelope.derived.push_back({"kappa", kappa, "rad/m"});
    envelope.derived.push_back({"lambda_de_broglie", 2.0 * units::pi / kappa, "m"});
    if (config.system.landau) {
        envelope.derived.push_back(
            {"nu_at_full_energy",
             landau_quantum_number(r.beam.total_energy, r.omega_eff), "1"});
    }

    std::vector<int> l_values{1};
    if (config.sweep) {
        l_values.clear();
        for (const auto& h : config.sweep->harmonics) l_values.push_back(h.l);
    }
    json harmonics = json::array();
    for (int l : l_values) {
        json one;
        one["l"] = l;
        one["k_l"] = l * r.k;
        one["lambda_l"] = macroscopic_wavelength(r.velocity, r.omega_eff, l);
        try {
            const WaveNumberPair pair = delta_kappa(r.beam, r.system, r.qn, l);
            one["delta_kappa_exact"] = pair.delta_kappa_exact;
            one["delta_kappa_approx"] = pair.delta_kappa_approx;
            one["expansion_relative_error"] = pair.relative_error;
        } catch (const DomainError& e) {
            one["expansion_unavailable"] = e.what();
        }
        harmonics.push_back(one);
    }
    envelope.extra = json{{"harmonics", harmonics}};
    envelope.notes = reference_notes(config, r.velocity, r.omega_eff, r.lambda);
    return envelope;
}

ResultEnvelope cmd_fringes(const RunConfig& config) {
    const ResolvedBeam r = resolve_beam(config);
    const SweepBlock& sweep = require_sweep(config);
    if (!sweep.delta_x_min_m || !sweep.delta_x_max_m)
        throw ConfigError("fringes needs sweep.delta_x_min_m and sweep.delta_x_max_m");
    if (!(*sweep.delta_x_min_m < *sweep.delta_x_max_m))
        throw ConfigError("fringes needs delta_x_min_m < delta_x_max_m");
    if (sweep.samples < 16) throw ConfigError("fringes needs at least 16 samples");

    double k_vib = 0.0, k_rot = 0.0;
    if (sweep.rovib) {
        if (!config.system.vibrational)
            throw ConfigError("rovib fringes need the vibrational system block");
        const RovibConfig& rv = *sweep.rovib;
        const Rotational rot{units::amu_to_kg(config.system.vibrational->reduced_mass_amu),
                             units::angstrom_to_m(rv.internuclear_distance_angstrom)};
        k_vib = r.k;
        k_rot = effective_frequency(rot, static_cast<double>(rv.j)) / r.velocity;
    }

    HarmonicMixture mixture = mixture_from(sweep);
    std::map<int, Complex> betas;
    for (const auto& h : sweep.harmonics) betas[h.l] = h.beta;

    CsvTable table;
    table.columns = {"X1_minus_X2_m", "intensity"};
    const auto n = static_cast<std::size_t>(sweep.samples);
    const double step = (*sweep.delta_x_max_m - *sweep.delta_x_min_m) / static_cast<double>(n - 1);
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = *sweep.delta_x_min_m + step * static_cast<double>(i);
        const ScattererGrid g1{dx, config.geometry.coupling1, "G1"};
        const ScattererGrid g2{0.0, config.geometry.coupling2, "G2"};
        const double intensity =
            sweep.rovib ? rovib_intensity(g1, g2, k_vib, k_rot, sweep.rovib->l_vib,
                                          sweep.rovib->l_rot, sweep.rovib->gamma)
                        : mixture_intensity(g1, g2, r.k, mixture, betas);
        xs[i] = dx;
        ys[i] = intensity;
        table.rows.push_back({dx, intensity});
    }
    const std::string path = csv_path(config, "fringes");
    write_csv(path, table);

    ResultEnvelope envelope;
    envelope.command = "fringes";
    envelope.config_echo = config_to_json(config);
    push_common_scalars(envelope, r);
    envelope.csv_path = path;
    envelope.csv_columns = table.columns;
    const PeakReport peaks =
        detect_peaks(xs, ys, sweep.min_prominence.value_or(default_prominence(ys)));
    json extra;
    extra["maxima_count"] = peaks.peak_positions.size();
    extra["maxima_mean_spacing_m"] = peaks.mean_spacing;
    if (sweep.rovib) {
        extra["k_vib"] = k_vib;
        extra["k_rot"] = k_rot;
    }
    envelope.extra = extra;
    envelope.notes = reference_notes(config, r.velocity, r.omega_eff, r.lambda);
    return envelope;
}

namespace {

ResultEnvelope run_energy_sweep(const RunConfig& config, const char* command, bool beats) {
    const ResolvedBeam r = resolve_beam(config);
    const SweepConfig sweep_config = energy_sweep_config(config, r);
    if (beats && sweep_config.lengths.size() != 2)
        throw ConfigError("beats needs exactly two entries in sweep.lengths_m");
    const Spectrum spectrum = transmission_sweep(sweep_config);

    CsvTable table;
    table.columns = {"energy_eV", "signal"};
    for (std::size_t i = 0; i < spectrum.abscissa.size(); ++i)
        table.rows.push_back({units::joule_to_ev(spectrum.abscissa[i]), spectrum.signal[i]});
    const std::string path = csv_path(config, command);
    write_csv(path, table);

    ResultEnvelope envelope;
    envelope.command = command;
    envelope.config_echo = config_to_json(config);
    push_common_scalars(envelope, r);
    envelope.csv_path = path;
    envelope.csv_columns = table.columns;

    json extra;
    extra["signal_model"] =
        "sum over lengths and harmonics of |w_l|^2 [1 + cos(l k(E) L)]; the two path "
        "lengths contribute additive phases, the minimal reading of the geometry";
    if (beats) {
        const PeakReport report = beat_envelope(spectrum);
        extra["carrier"] = peak_report_json(report);
        if (report.envelope_period) {
            extra["envelope_period_ev"] = units::joule_to_ev(*report.envelope_period);
            const auto ratio = beat_period_ratio(spectrum);
            if (ratio) extra["envelope_to_carrier_ratio"] = *ratio;
        } else {
            extra["envelope_period_ev"] = nullptr;
        }
    } else {
        const double prominence = config.sweep->min_prominence.value_or(
            default_prominence(spectrum.signal));
        extra["peaks"] = peak_report_json(detect_peaks(spectrum, prominence));
    }
    envelope.extra = extra;
    envelope.notes = reference_notes(config, r.velocity, r.omega_eff, r.lambda);
    return envelope;
}

}  // namespace

ResultEnvelope cmd_sweep(const RunConfig& config) { return run_energy_sweep(config, "sweep", false); }

ResultEnvelope cmd_beats(const RunConfig& config) { return run_energy_sweep(config, "beats", true); }

ResultEnvelope cmd_evolve(const RunConfig& config) {
    if (!config.evolve) throw ConfigError("evolve needs an evolve block");
    const EvolveBlock& block = *config.evolve;
    const InternalSystem system = build_system(config.system);

    double gyroaction;
    std::int64_t qn = config.beam ? config.beam->quantum_number : 0;
    if (block.gyroaction_j_s) {
        gyroaction = *block.gyroaction_j_s;
    } else {
        if (qn < 1)
            throw ConfigError("evolve needs gyroaction_j_s or a beam quantum_number >= 1");
        gyroaction = classical_action(system, static_cast<double>(qn)).value;
    }
    const double omega0 = block.omega_rad_s
                              ? *block.omega_rad_s
                              : effective_frequency(system, static_cast<double>(qn));

    WaveField field;
    field.domain_length = block.domain_length_m;
    field.mode_l = block.mode_l;
    field.gyroaction = gyroaction;
    const auto n = static_cast<std::size_t>(block.grid_points);
    field.samples.resize(n);
    if (block.omega_modulation == 0.0) {
        field.omega = {omega0};
    } else {
        field.omega.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = block.domain_length_m * static_cast<double>(i) / static_cast<double>(n);
            field.omega[i] =
                omega0 * (1.0 + block.omega_modulation *
                                    std::cos(2.0 * units::pi * block.omega_modulation_periods * x /
                                             block.domain_length_m));
        }
    }

    const double dx = field.domain_length / static_cast<double>(n);
    const double wave_k =
        2.0 * units::pi * static_cast<double>(block.mode_index) / block.domain_length_m;
    if (block.initial == "plane_wave") {
        for (std::size_t i = 0; i < n; ++i)
            field.samples[i] = std::polar(1.0, wave_k * dx * static_cast<double>(i));
    } else {
        const double center = block.packet_center_m.value_or(0.5 * block.domain_length_m);
        const double width = block.packet_width_m.value_or(block.domain_length_m / 40.0);
        if (!(width > 0.0)) throw ConfigError("packet width must be positive");
        for (std::size_t i = 0; i < n; ++i) {
            const double x = dx * static_cast<double>(i);
            const double envelope_val = std::exp(-(x - center) * (x - center) / (4.0 * width * width));
            field.samples[i] = std::polar(envelope_val, wave_k * x);
        }
    }

    const double norm_initial = field_norm(field);
    const double centroid_initial = field_centroid(field);
    const EvolutionParams params{block.time_step_s, block.steps};
    const WaveField final_field = evolve(field, params);
    const double norm_final = field_norm(final_field);
    const double elapsed = block.time_step_s * static_cast<double>(block.steps);

    CsvTable table;
    table.columns = {"x_m", "re", "im", "abs2"};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = dx * static_cast<double>(i);
        const auto z = final_field.samples[i];
        table.rows.push_back({x, z.real(), z.imag(), std::norm(z)});
    }
    const std::string path = csv_path(config, "evolve");
    write_csv(path, table);

    ResultEnvelope envelope;
    envelope.command = "evolve";
    envelope.config_echo = config_to_json(config);
    envelope.csv_path = path;
    envelope.csv_columns = table.columns;
    envelope.derived.push_back({"gyroaction", gyroaction, "J s"});
    envelope.derived.push_back({"omega", omega0, "rad/s"});
    envelope.derived.push_back({"wave_number", wave_k, "rad/m"});

    json extra;
    extra["norm_initial"] = norm_initial;
    extra["norm_final"] = norm_final;
    extra["norm_drift"] = std::abs(norm_final - norm_initial) / norm_initial;
    const double omega_analytic = dispersion_check(gyroaction, omega0, block.mode_l, wave_k);
    extra["omega_analytic_rad_s"] = omega_analytic;
    if (gyroaction > 0.0) {
        // accuracy guideline only; the spectral stepper is unconditionally stable
        extra["time_step_accuracy_bound_s"] = dx * dx * block.mode_l / gyroaction;
    }
    if (block.initial == "plane_wave" && block.omega_modulation == 0.0 && block.steps > 0) {
        const double measured =
            std::arg(final_field.samples[0] * std::conj(field.samples[0]));
        const double expected = -omega_analytic * elapsed;
        const double residual =
            std::abs(std::remainder(measured - expected, 2.0 * units::pi));
        extra["phase_residual_rel"] = residual / std::abs(expected);
    }
    if (block.initial == "gaussian") {
        const double centroid_final = field_centroid(final_field);
        const double group_velocity = 2.0 * (gyroaction / block.mode_l) * wave_k;
        extra["centroid_initial_m"] = centroid_initial;
        extra["centroid_final_m"] = centroid_final;
        extra["group_velocity_analytic"] = group_velocity;
        if (elapsed > 0.0)
            extra["group_velocity_measured"] = (centroid_final - centroid_initial) / elapsed;
    }
    envelope.extra = extra;
    return envelope;
}

ResultEnvelope cmd_matrix(const RunConfig& config) {
    if (!config.matrix) throw ConfigError("matrix needs a matrix block");
    const MatrixBlock& block = *config.matrix;

    OscillatorBasis basis{};
    if (config.system.landau) {
        basis = make_oscillator_basis(PhysicalConstants::codata().electron_mass,
                                      gyrofrequency(config.system.landau->field_gauss));
    } else if (config.system.vibrational) {
        basis = make_oscillator_basis(
            units::amu_to_kg(config.system.vibrational->reduced_mass_amu),
            units::wavenumber_cm_to_omega(config.system.vibrational->wavenumber_cm));
    } else {
        throw ConfigError("matrix elements need the landau or vibrational system block");
    }

    Perturbation pert;
    if (block.kind == "linear") {
        pert = LinearPerturbation{block.strength};
    } else if (block.kind == "quadratic") {
        pert = QuadraticPerturbation{block.strength};
    } else {
        if (!(block.width_m > 0.0)) throw ConfigError("gaussian perturbation needs width_m > 0");
        pert = GaussianPerturbation{block.strength, block.width_m};
    }

    const double value = beta(basis, pert, block.nu, block.l);
    const double reference = beta_quadrature(basis, pert, block.nu, block.l);
    const double scale = std::max(std::abs(value), std::abs(reference));
    const double difference = scale > 0.0 ? std::abs(value - reference) / scale : 0.0;

    CsvTable table;
    table.columns = {"nu", "l", "beta", "beta_quadrature"};
    table.rows.push_back({static_cast<double>(block.nu), static_cast<double>(block.l), value,
                          reference});
    const std::string path = csv_path(config, "matrix");
    write_csv(path, table);

    ResultEnvelope envelope;
    envelope.command = "matrix";
    envelope.config_echo = config_to_json(config);
    envelope.csv_path = path;
    envelope.csv_columns = table.columns;
    envelope.derived.push_back({"length_scale", basis.length_scale, "m"});
    envelope.derived.push_back({"beta", value, "J"});
    envelope.extra = json{{"beta", value},
                          {"beta_quadrature", reference},
                          {"relative_difference", difference}};
    return envelope;
}

namespace {

using CommandFn = ResultEnvelope (*)(const RunConfig&);

const std::map<std::string, CommandFn>& command_table() {
    static const std::map<std::string, CommandFn> table{
        {"dispersion", cmd_dispersion}, {"fringes", cmd_fringes}, {"sweep", cmd_sweep},
        {"beats", cmd_beats},           {"evolve", cmd_evolve},   {"matrix", cmd_matrix},
    };
    return table;
}

void apply_set_overrides(json& j, const std::vector<std::string>& sets) {
    for (const std::string& item : sets) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key.path=value, got '" + item + "'");
        std::string pointer = "/" + item.substr(0, eq);
        std::replace(pointer.begin(), pointer.end(), '.', '/');
        json value;
        try {
            value = json::parse(item.substr(eq + 1));
        } catch (const json::parse_error&) {
            value = item.substr(eq + 1);  // bare string
        }
        try {
            j[json::json_pointer(pointer)] = value;
        } catch (const json::exception& e) {
            throw ConfigError("cannot apply --set '" + item + "': " + e.what());
        }
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"macroscopic matter-wave toolkit"};
    app.require_subcommand(1);

    std::string config_file;
    std::vector<std::string> sets;
    std::string output_dir;
    std::string command;
    for (const auto& [name, fn] : command_table()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("config", config_file, "run configuration (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--set", sets, "override a config value, key.path=value");
        sub->add_option("--output-dir", output_dir, "override the output directory");
        sub->callback([&command, name = name] { command = name; });
    }

    std::vector<std::string> argv_like = args;
    argv_like.insert(argv_like.begin(), "mmwave");
    std::vector<const char*> argv;
    for (const auto& a : argv_like) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help() << std::endl;
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << std::endl;
        return 2;
    }

    try {
        std::ifstream in(config_file);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError("'" + config_file + "' is not valid JSON: " + e.what());
        }
        apply_set_overrides(j, sets);
        RunConfig config = parse_config(j);
        if (const char* env_dir = std::getenv("MMWAVE_OUTPUT_DIR"))
            config.output.directory = env_dir;
        if (!output_dir.empty()) config.output.directory = output_dir;

        const ResultEnvelope envelope = command_table().at(command)(config);
        const json envelope_json = envelope_to_json(envelope);
        std::filesystem::create_directories(config.output.directory);
        const auto envelope_path =
            std::filesystem::path(config.output.directory) / config.output.envelope;
        std::ofstream envelope_out(envelope_path);
        envelope_out << envelope_json.dump(2) << '\n';
        out << envelope_json.dump(2) << std::endl;
        return 0;
    } catch (const ConfigError& e) {
        err << "configuration error (" << config_file << "): " << e.what() << std::endl;
        return 2;
    } catch (const DomainError& e) {
        err << "physics error (" << config_file << "): " << e.what() << std::endl;
        return 3;
    } catch (const CapabilityError& e) {
        err << "capability error (" << config_file << "): " << e.what() << std::endl;
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << std::endl;
        return 1;
    }
}

}  // namespace mmw::cli
