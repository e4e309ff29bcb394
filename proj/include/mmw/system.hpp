#pragma once

#include <cstdint>
#include <variant>

#include "mmw/constants.hpp"

namespace mmw {

// The four internal-excitation models. All parameters strictly positive.
struct Landau {
    double gyro_frequency;  // rad/s
};

struct Vibrational {
    double omega;         // rad/s
    double reduced_mass;  // kg
};

struct Rotational {
    double reduced_mass;           // kg
    double internuclear_distance;  // m
};

struct RydbergAtom {};

using InternalSystem = std::variant<Landau, Vibrational, Rotational, RydbergAtom>;

// Beam of composite particles: total energy, centre-of-mass mass, the central
// internal quantum number, and (Landau geometry only) the pitch angle.
struct BeamSpec {
    double total_energy;                  // J
    double com_mass;                      // kg
    std::int64_t central_quantum_number;  // nu, j or n
    double pitch_angle = 0.0;             // rad, [0, pi/2)
};

enum class ActionKind { Gyroaction, Vibrational, Angular, Principal };

// Classical action n*hbar of the internal motion (the object that plays the
// role of hbar in the macrodomain amplitude equations).
struct ClassicalAction {
    double value;  // J s
    ActionKind kind;
};

// Cyclotron angular frequency e B / m for a field given in gauss.
double gyrofrequency(double field_gauss,
                     const PhysicalConstants& pc = PhysicalConstants::codata());

// Level energy of the internal system at (real-valued) quantum number n.
//   Landau / vibrational : (n + 1/2) hbar w
//   rotational           : hbar^2 n (n+1) / (2 m R^2)
//   Rydberg              : -E_Ry / n^2   (negative, n >= 1)
double internal_energy(const InternalSystem& sys, double n,
                       const PhysicalConstants& pc = PhysicalConstants::codata());

// internal_energy(sys, n) - internal_energy(sys, n - l), evaluated in a
// cancellation-free closed form. Positive for every system when l > 0.
double internal_energy_difference(const InternalSystem& sys, double n, double l,
                                  const PhysicalConstants& pc = PhysicalConstants::codata());

// Frequency governing the macroscopic wave number k = w_eff / v:
//   Landau -> Omega, vibrational -> omega,
//   rotational -> hbar n / (m R^2), Rydberg -> 2 |E_n| / (n hbar).
double effective_frequency(const InternalSystem& sys, double n,
                           const PhysicalConstants& pc = PhysicalConstants::codata());

// nu = E_perp / (hbar Omega), returned as a real; round if a level index is
// needed.
double landau_quantum_number(double e_perp, double omega,
                             const PhysicalConstants& pc = PhysicalConstants::codata());

ClassicalAction classical_action(const InternalSystem& sys, double n,
                                 const PhysicalConstants& pc = PhysicalConstants::codata());

// Throws DomainError / EvanescentError if the beam cannot propagate at its
// central quantum number.
void validate_beam(const BeamSpec& beam, const InternalSystem& sys,
                   const PhysicalConstants& pc = PhysicalConstants::codata());

}  // namespace mmw
