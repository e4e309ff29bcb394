#include "mmw/system.hpp"

#include <cmath>
#include <string>

#include "mmw/errors.hpp"

namespace mmw {

const PhysicalConstants& PhysicalConstants::codata() {
    static const PhysicalConstants pc{
        kElectronChargeC, kElectronMassKg, kPlanckReducedJs,
        kLightSpeedMs,    units::ev_to_joule(kRydbergEnergyEv),
    };
    return pc;
}

PhysicalConstants PhysicalConstants::with_hbar_scaled(double factor) const {
    if (!(factor > 0.0)) throw DomainError("hbar scaling factor must be positive");
    PhysicalConstants out = *this;
    out.planck_reduced *= factor;
    out.rydberg_energy /= factor * factor;  // E_Ry = m e^4 / (2 hbar^2)
    return out;
}

double gyrofrequency(double field_gauss, const PhysicalConstants& pc) {
    if (!(field_gauss > 0.0))
        throw DomainError("magnetic field must be positive, got " + std::to_string(field_gauss) + " G");
    return pc.electron_charge * units::gauss_to_tesla(field_gauss) / pc.electron_mass;
}

namespace {

double rotational_constant(const Rotational& r) {
    // K = 1 / (2 m R^2), so that E_j = K hbar^2 j (j+1).
    return 1.0 / (2.0 * r.reduced_mass * r.internuclear_distance * r.internuclear_distance);
}

void check_quantum_number(const InternalSystem& sys, double n) {
    if (std::holds_alternative<RydbergAtom>(sys)) {
        if (!(n >= 1.0)) throw DomainError("Rydberg level requires n >= 1");
    } else if (!(n >= 0.0)) {
        throw DomainError("quantum number must be nonnegative");
    }
}

}  // namespace

double internal_energy(const InternalSystem& sys, double n, const PhysicalConstants& pc) {
    check_quantum_number(sys, n);
    const double hbar = pc.planck_reduced;
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Landau>) {
                return (n + 0.5) * hbar * s.gyro_frequency;
            } else if constexpr (std::is_same_v<T, Vibrational>) {
                return (n + 0.5) * hbar * s.omega;
            } else if constexpr (std::is_same_v<T, Rotational>) {
                return rotational_constant(s) * hbar * hbar * n * (n + 1.0);
            } else {
                return -pc.rydberg_energy / (n * n);
            }
        },
        sys);
}

double internal_energy_difference(const InternalSystem& sys, double n, double l,
                                  const PhysicalConstants& pc) {
    check_quantum_number(sys, n);
    check_quantum_number(sys, n - l);
    const double hbar = pc.planck_reduced;
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Landau>) {
                return l * hbar * s.gyro_frequency;
            } else if constexpr (std::is_same_v<T, Vibrational>) {
                return l * hbar * s.omega;
            } else if constexpr (std::is_same_v<T, Rotational>) {
                // n(n+1) - (n-l)(n-l+1) = l (2n - l + 1)
                return rotational_constant(s) * hbar * hbar * l * (2.0 * n - l + 1.0);
            } else {
                // -E/n^2 + E/(n-l)^2 = E l (2n - l) / (n^2 (n-l)^2)
                const double m = n - l;
                return pc.rydberg_energy * l * (2.0 * n - l) / (n * n * m * m);
            }
        },
        sys);
}

double effective_frequency(const InternalSystem& sys, double n, const PhysicalConstants& pc) {
    check_quantum_number(sys, n);
    const double hbar = pc.planck_reduced;
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Landau>) {
                return s.gyro_frequency;
            } else if constexpr (std::is_same_v<T, Vibrational>) {
                return s.omega;
            } else if constexpr (std::is_same_v<T, Rotational>) {
                if (!(n > 0.0)) throw DomainError("rotational frequency undefined at j = 0");
                // omega_j = J / (m R^2) with J = hbar j
                return hbar * n /
                       (s.reduced_mass * s.internuclear_distance * s.internuclear_distance);
            } else {
                // omega_n = 2 |E_n| / (n hbar)
                return 2.0 * pc.rydberg_energy / (n * n * n * hbar);
            }
        },
        sys);
}

double landau_quantum_number(double e_perp, double omega, const PhysicalConstants& pc) {
    if (!(e_perp >= 0.0)) throw DomainError("perpendicular energy must be nonnegative");
    if (!(omega > 0.0)) throw DomainError("gyrofrequency must be positive");
    return e_perp / (pc.planck_reduced * omega);
}

ClassicalAction classical_action(const InternalSystem& sys, double n, const PhysicalConstants& pc) {
    check_quantum_number(sys, n);
    const ActionKind kind = std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Landau>) return ActionKind::Gyroaction;
            else if constexpr (std::is_same_v<T, Vibrational>) return ActionKind::Vibrational;
            else if constexpr (std::is_same_v<T, Rotational>) return ActionKind::Angular;
            else return ActionKind::Principal;
        },
        sys);
    return {n * pc.planck_reduced, kind};
}

void validate_beam(const BeamSpec& beam, const InternalSystem& sys, const PhysicalConstants& pc) {
    if (!(beam.com_mass > 0.0)) throw DomainError("centre-of-mass mass must be positive");
    if (beam.central_quantum_number < 0) throw DomainError("quantum number must be nonnegative");
    if (!(beam.pitch_angle >= 0.0 && beam.pitch_angle < units::pi / 2.0))
        throw DomainError("pitch angle must lie in [0, pi/2)");
    const double e_int =
        internal_energy(sys, static_cast<double>(beam.central_quantum_number), pc);
    if (!(beam.total_energy > e_int))
        throw EvanescentError("total energy " + std::to_string(beam.total_energy) +
                              " J does not exceed the internal level energy " +
                              std::to_string(e_int) + " J");
}

}  // namespace mmw
