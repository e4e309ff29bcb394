#include "mmw/cli/config.hpp"

#include <cmath>
#include <set>

#include "mmw/errors.hpp"

namespace mmw::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config error at '" + path + "': " + what);
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) fail(path + "." + key, "unknown key");
    }
}

double get_double(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) fail(path + "." + key, "missing required number");
    if (!j.at(key).is_number()) fail(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

double get_double_or(const json& j, const std::string& path, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) fail(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

std::int64_t get_int_or(const json& j, const std::string& path, const char* key,
                        std::int64_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) fail(path + "." + key, "expected an integer");
    return j.at(key).get<std::int64_t>();
}

std::int64_t get_int(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) fail(path + "." + key, "missing required integer");
    return get_int_or(j, path, key, 0);
}

std::complex<double> get_complex_or(const json& j, const std::string& path, const char* key,
                                    std::complex<double> fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail(path + "." + key, "expected [re, im]");
    return {v[0].get<double>(), v[1].get<double>()};
}

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

SystemConfig parse_system(const json& j) {
    check_keys(j, "system", {"landau", "vibrational", "rotational", "rydberg"});
    SystemConfig out;
    int populated = 0;
    if (j.contains("landau")) {
        const json& b = j.at("landau");
        check_keys(b, "system.landau", {"field_gauss"});
        out.landau = LandauConfig{get_double(b, "system.landau", "field_gauss")};
        ++populated;
    }
    if (j.contains("vibrational")) {
        const json& b = j.at("vibrational");
        check_keys(b, "system.vibrational", {"wavenumber_cm", "reduced_mass_amu"});
        out.vibrational = VibrationalConfig{get_double(b, "system.vibrational", "wavenumber_cm"),
                                            get_double(b, "system.vibrational", "reduced_mass_amu")};
        ++populated;
    }
    if (j.contains("rotational")) {
        const json& b = j.at("rotational");
        check_keys(b, "system.rotational", {"reduced_mass_amu", "internuclear_distance_angstrom"});
        out.rotational =
            RotationalConfig{get_double(b, "system.rotational", "reduced_mass_amu"),
                             get_double(b, "system.rotational", "internuclear_distance_angstrom")};
        ++populated;
    }
    if (j.contains("rydberg")) {
        check_keys(j.at("rydberg"), "system.rydberg", {});
        out.rydberg = true;
        ++populated;
    }
    if (populated != 1) fail("system", "exactly one system block is required");
    return out;
}

BeamConfig parse_beam(const json& j) {
    check_keys(j, "beam",
               {"energy_ev", "velocity_m_s", "mass", "quantum_number", "pitch_angle_deg"});
    BeamConfig out;
    if (j.contains("energy_ev")) out.energy_ev = get_double(j, "beam", "energy_ev");
    if (j.contains("velocity_m_s")) out.velocity_m_s = get_double(j, "beam", "velocity_m_s");
    if (out.energy_ev.has_value() == out.velocity_m_s.has_value())
        fail("beam", "give exactly one of energy_ev or velocity_m_s");
    if (!j.contains("mass")) fail("beam.mass", "missing (\"electron\" or a number in amu)");
    const json& mass = j.at("mass");
    if (mass.is_string()) {
        if (mass.get<std::string>() != "electron")
            fail("beam.mass", "the only named mass is \"electron\"");
        out.mass_is_electron = true;
    } else if (mass.is_number()) {
        out.mass_amu = mass.get<double>();
        if (!(out.mass_amu > 0.0)) fail("beam.mass", "mass must be positive");
    } else {
        fail("beam.mass", "expected \"electron\" or a number in amu");
    }
    out.quantum_number = get_int_or(j, "beam", "quantum_number", 0);
    out.pitch_angle_deg = get_double_or(j, "beam", "pitch_angle_deg", 0.0);
    return out;
}

GeometryConfig parse_geometry(const json& j) {
    check_keys(j, "geometry", {"x1_m", "x2_m", "coupling1", "coupling2"});
    GeometryConfig out;
    out.x1_m = get_double_or(j, "geometry", "x1_m", 0.0);
    out.x2_m = get_double_or(j, "geometry", "x2_m", 0.0);
    out.coupling1 = get_complex_or(j, "geometry", "coupling1", {1.0, 0.0});
    out.coupling2 = get_complex_or(j, "geometry", "coupling2", {1.0, 0.0});
    return out;
}

std::vector<HarmonicConfig> parse_harmonics(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array");
    std::vector<HarmonicConfig> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string hp = path + "[" + std::to_string(i) + "]";
        check_keys(j[i], hp, {"l", "weight", "beta"});
        HarmonicConfig h;
        h.l = static_cast<int>(get_int(j[i], hp, "l"));
        h.weight = get_complex_or(j[i], hp, "weight", {1.0, 0.0});
        h.beta = get_complex_or(j[i], hp, "beta", {1.0, 0.0});
        out.push_back(h);
    }
    return out;
}

RovibConfig parse_rovib(const json& j) {
    check_keys(j, "sweep.rovib",
               {"j", "l_vib", "l_rot", "internuclear_distance_angstrom", "gamma"});
    RovibConfig out;
    out.j = get_int(j, "sweep.rovib", "j");
    out.l_vib = static_cast<int>(get_int_or(j, "sweep.rovib", "l_vib", 1));
    out.l_rot = static_cast<int>(get_int_or(j, "sweep.rovib", "l_rot", 1));
    out.internuclear_distance_angstrom =
        get_double(j, "sweep.rovib", "internuclear_distance_angstrom");
    out.gamma = get_complex_or(j, "sweep.rovib", "gamma", {1.0, 0.0});
    return out;
}

SweepBlock parse_sweep(const json& j) {
    check_keys(j, "sweep",
               {"delta_x_min_m", "delta_x_max_m", "energy_min_ev", "energy_max_ev", "samples",
                "lengths_m", "harmonics", "min_prominence", "rovib"});
    SweepBlock out;
    if (j.contains("delta_x_min_m")) out.delta_x_min_m = get_double(j, "sweep", "delta_x_min_m");
    if (j.contains("delta_x_max_m")) out.delta_x_max_m = get_double(j, "sweep", "delta_x_max_m");
    if (j.contains("energy_min_ev")) out.energy_min_ev = get_double(j, "sweep", "energy_min_ev");
    if (j.contains("energy_max_ev")) out.energy_max_ev = get_double(j, "sweep", "energy_max_ev");
    out.samples = get_int_or(j, "sweep", "samples", 2048);
    if (j.contains("lengths_m")) {
        const json& arr = j.at("lengths_m");
        if (!arr.is_array()) fail("sweep.lengths_m", "expected an array");
        out.lengths_m.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string lp = "sweep.lengths_m[" + std::to_string(i) + "]";
            check_keys(arr[i], lp, {"label", "length_m"});
            SweepLengthConfig sl;
            if (!arr[i].contains("label") || !arr[i].at("label").is_string())
                fail(lp + ".label", "missing required string");
            sl.label = arr[i].at("label").get<std::string>();
            sl.length_m = get_double(arr[i], lp, "length_m");
            out.lengths_m.push_back(sl);
        }
    }
    if (j.contains("harmonics")) out.harmonics = parse_harmonics(j.at("harmonics"), "sweep.harmonics");
    if (j.contains("min_prominence"))
        out.min_prominence = get_double(j, "sweep", "min_prominence");
    if (j.contains("rovib")) out.rovib = parse_rovib(j.at("rovib"));
    return out;
}

EvolveBlock parse_evolve(const json& j) {
    check_keys(j, "evolve",
               {"grid_points", "domain_length_m", "mode_l", "gyroaction_j_s", "omega_rad_s",
                "omega_modulation", "omega_modulation_periods", "initial", "mode_index",
                "packet_center_m", "packet_width_m", "time_step_s", "steps"});
    EvolveBlock out;
    out.grid_points = get_int_or(j, "evolve", "grid_points", 1024);
    out.domain_length_m = get_double_or(j, "evolve", "domain_length_m", 1.0);
    out.mode_l = static_cast<int>(get_int_or(j, "evolve", "mode_l", 1));
    if (j.contains("gyroaction_j_s")) out.gyroaction_j_s = get_double(j, "evolve", "gyroaction_j_s");
    if (j.contains("omega_rad_s")) out.omega_rad_s = get_double(j, "evolve", "omega_rad_s");
    out.omega_modulation = get_double_or(j, "evolve", "omega_modulation", 0.0);
    out.omega_modulation_periods =
        static_cast<int>(get_int_or(j, "evolve", "omega_modulation_periods", 1));
    if (j.contains("initial")) {
        if (!j.at("initial").is_string()) fail("evolve.initial", "expected a string");
        out.initial = j.at("initial").get<std::string>();
        if (out.initial != "plane_wave" && out.initial != "gaussian")
            fail("evolve.initial", "expected \"plane_wave\" or \"gaussian\"");
    }
    out.mode_index = get_int_or(j, "evolve", "mode_index", 8);
    if (j.contains("packet_center_m")) out.packet_center_m = get_double(j, "evolve", "packet_center_m");
    if (j.contains("packet_width_m")) out.packet_width_m = get_double(j, "evolve", "packet_width_m");
    out.time_step_s = get_double(j, "evolve", "time_step_s");
    out.steps = get_int(j, "evolve", "steps");
    return out;
}

MatrixBlock parse_matrix(const json& j) {
    check_keys(j, "matrix", {"perturbation", "nu", "l"});
    if (!j.contains("perturbation")) fail("matrix.perturbation", "missing required block");
    const json& p = j.at("perturbation");
    check_keys(p, "matrix.perturbation", {"linear", "quadratic", "gaussian"});
    if (p.size() != 1) fail("matrix.perturbation", "exactly one perturbation kind is required");
    MatrixBlock out;
    if (p.contains("linear")) {
        check_keys(p.at("linear"), "matrix.perturbation.linear", {"strength"});
        out.kind = "linear";
        out.strength = get_double(p.at("linear"), "matrix.perturbation.linear", "strength");
    } else if (p.contains("quadratic")) {
        check_keys(p.at("quadratic"), "matrix.perturbation.quadratic", {"strength"});
        out.kind = "quadratic";
        out.strength = get_double(p.at("quadratic"), "matrix.perturbation.quadratic", "strength");
    } else {
        check_keys(p.at("gaussian"), "matrix.perturbation.gaussian", {"strength", "width_m"});
        out.kind = "gaussian";
        out.strength = get_double(p.at("gaussian"), "matrix.perturbation.gaussian", "strength");
        out.width_m = get_double(p.at("gaussian"), "matrix.perturbation.gaussian", "width_m");
    }
    out.nu = get_int(j, "matrix", "nu");
    out.l = get_int(j, "matrix", "l");
    return out;
}

OutputBlock parse_output(const json& j) {
    check_keys(j, "output", {"directory", "csv", "envelope"});
    OutputBlock out;
    if (j.contains("directory")) {
        if (!j.at("directory").is_string()) fail("output.directory", "expected a string");
        out.directory = j.at("directory").get<std::string>();
    }
    if (j.contains("csv")) {
        if (!j.at("csv").is_string()) fail("output.csv", "expected a string");
        out.csv = j.at("csv").get<std::string>();
    }
    if (j.contains("envelope")) {
        if (!j.at("envelope").is_string()) fail("output.envelope", "expected a string");
        out.envelope = j.at("envelope").get<std::string>();
    }
    return out;
}

}  // namespace

RunConfig parse_config(const json& j) {
    check_keys(j, "(root)",
               {"system", "beam", "geometry", "sweep", "evolve", "matrix", "output"});
    if (!j.contains("system")) throw ConfigError("config error: missing system block");
    RunConfig out;
    out.system = parse_system(j.at("system"));
    if (j.contains("beam")) out.beam = parse_beam(j.at("beam"));
    if (j.contains("geometry")) out.geometry = parse_geometry(j.at("geometry"));
    if (j.contains("sweep")) out.sweep = parse_sweep(j.at("sweep"));
    if (j.contains("evolve")) out.evolve = parse_evolve(j.at("evolve"));
    if (j.contains("matrix")) out.matrix = parse_matrix(j.at("matrix"));
    if (j.contains("output")) out.output = parse_output(j.at("output"));
    return out;
}

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

json config_to_json(const RunConfig& config) {
    json j;
    json sys;
    if (config.system.landau) sys["landau"] = {{"field_gauss", config.system.landau->field_gauss}};
    if (config.system.vibrational)
        sys["vibrational"] = {{"wavenumber_cm", config.system.vibrational->wavenumber_cm},
                              {"reduced_mass_amu", config.system.vibrational->reduced_mass_amu}};
    if (config.system.rotational)
        sys["rotational"] = {{"reduced_mass_amu", config.system.rotational->reduced_mass_amu},
                             {"internuclear_distance_angstrom",
                              config.system.rotational->internuclear_distance_angstrom}};
    if (config.system.rydberg) sys["rydberg"] = json::object();
    j["system"] = sys;

    if (config.beam) {
        json b;
        if (config.beam->energy_ev) b["energy_ev"] = *config.beam->energy_ev;
        if (config.beam->velocity_m_s) b["velocity_m_s"] = *config.beam->velocity_m_s;
        if (config.beam->mass_is_electron)
            b["mass"] = "electron";
        else
            b["mass"] = config.beam->mass_amu;
        b["quantum_number"] = config.beam->quantum_number;
        b["pitch_angle_deg"] = config.beam->pitch_angle_deg;
        j["beam"] = b;
    }

    j["geometry"] = {{"x1_m", config.geometry.x1_m},
                     {"x2_m", config.geometry.x2_m},
                     {"coupling1", complex_to_json(config.geometry.coupling1)},
                     {"coupling2", complex_to_json(config.geometry.coupling2)}};

    if (config.sweep) {
        json s;
        if (config.sweep->delta_x_min_m) s["delta_x_min_m"] = *config.sweep->delta_x_min_m;
        if (config.sweep->delta_x_max_m) s["delta_x_max_m"] = *config.sweep->delta_x_max_m;
        if (config.sweep->energy_min_ev) s["energy_min_ev"] = *config.sweep->energy_min_ev;
        if (config.sweep->energy_max_ev) s["energy_max_ev"] = *config.sweep->energy_max_ev;
        s["samples"] = config.sweep->samples;
        json lengths = json::array();
        for (const auto& sl : config.sweep->lengths_m)
            lengths.push_back({{"label", sl.label}, {"length_m", sl.length_m}});
        if (!lengths.empty()) s["lengths_m"] = lengths;
        json harmonics = json::array();
        for (const auto& h : config.sweep->harmonics)
            harmonics.push_back({{"l", h.l},
                                 {"weight", complex_to_json(h.weight)},
                                 {"beta", complex_to_json(h.beta)}});
        s["harmonics"] = harmonics;
        if (config.sweep->min_prominence) s["min_prominence"] = *config.sweep->min_prominence;
        if (config.sweep->rovib)
            s["rovib"] = {{"j", config.sweep->rovib->j},
                          {"l_vib", config.sweep->rovib->l_vib},
                          {"l_rot", config.sweep->rovib->l_rot},
                          {"internuclear_distance_angstrom",
                           config.sweep->rovib->internuclear_distance_angstrom},
                          {"gamma", complex_to_json(config.sweep->rovib->gamma)}};
        j["sweep"] = s;
    }

    if (config.evolve) {
        json e;
        e["grid_points"] = config.evolve->grid_points;
        e["domain_length_m"] = config.evolve->domain_length_m;
        e["mode_l"] = config.evolve->mode_l;
        if (config.evolve->gyroaction_j_s) e["gyroaction_j_s"] = *config.evolve->gyroaction_j_s;
        if (config.evolve->omega_rad_s) e["omega_rad_s"] = *config.evolve->omega_rad_s;
        e["omega_modulation"] = config.evolve->omega_modulation;
        e["omega_modulation_periods"] = config.evolve->omega_modulation_periods;
        e["initial"] = config.evolve->initial;
        e["mode_index"] = config.evolve->mode_index;
        if (config.evolve->packet_center_m) e["packet_center_m"] = *config.evolve->packet_center_m;
        if (config.evolve->packet_width_m) e["packet_width_m"] = *config.evolve->packet_width_m;
        e["time_step_s"] = config.evolve->time_step_s;
        e["steps"] = config.evolve->steps;
        j["evolve"] = e;
    }

    if (config.matrix) {
        json pert;
        if (config.matrix->kind == "gaussian")
            pert[config.matrix->kind] = {{"strength", config.matrix->strength},
                                         {"width_m", config.matrix->width_m}};
        else
            pert[config.matrix->kind] = {{"strength", config.matrix->strength}};
        j["matrix"] = {{"perturbation", pert}, {"nu", config.matrix->nu}, {"l", config.matrix->l}};
    }

    j["output"] = {{"directory", config.output.directory},
                   {"csv", config.output.csv},
                   {"envelope", config.output.envelope}};
    return j;
}

InternalSystem build_system(const SystemConfig& config, const PhysicalConstants& pc) {
    if (config.landau) return Landau{gyrofrequency(config.landau->field_gauss, pc)};
    if (config.vibrational) {
        const double omega = units::wavenumber_cm_to_omega(config.vibrational->wavenumber_cm);
        if (!(omega > 0.0)) throw ConfigError("vibrational wavenumber must be positive");
        const double mass = units::amu_to_kg(config.vibrational->reduced_mass_amu);
        if (!(mass > 0.0)) throw ConfigError("reduced mass must be positive");
        return Vibrational{omega, mass};
    }
    if (config.rotational) {
        const double mass = units::amu_to_kg(config.rotational->reduced_mass_amu);
        const double distance =
            units::angstrom_to_m(config.rotational->internuclear_distance_angstrom);
        if (!(mass > 0.0) || !(distance > 0.0))
            throw ConfigError("rotational parameters must be positive");
        return Rotational{mass, distance};
    }
    return RydbergAtom{};
}

BeamSpec build_beam(const BeamConfig& beam, const SystemConfig& system_config,
                    const PhysicalConstants& pc) {
    const InternalSystem system = build_system(system_config, pc);
    BeamSpec out;
    out.com_mass = beam.mass_is_electron ? pc.electron_mass : units::amu_to_kg(beam.mass_amu);
    out.central_quantum_number = beam.quantum_number;
    out.pitch_angle = units::deg_to_rad(beam.pitch_angle_deg);
    if (!system_config.landau && beam.pitch_angle_deg != 0.0)
        throw ConfigError("pitch angle applies to the landau system only");
    if (!system_config.landau && beam.quantum_number < 1)
        throw ConfigError("excited-state systems need beam.quantum_number >= 1");
    const double e_int =
        internal_energy(system, static_cast<double>(beam.quantum_number), pc);
    if (beam.energy_ev) {
        out.total_energy = units::ev_to_joule(*beam.energy_ev);
    } else {
        const double v = *beam.velocity_m_s;
        if (!(v > 0.0)) throw ConfigError("beam velocity must be positive");
        out.total_energy = 0.5 * out.com_mass * v * v + e_int;
    }
    validate_beam(out, system, pc);
    return out;
}

}  // namespace mmw::cli
