#pragma once

#include <numbers>

namespace mmw {

// Fundamental constants, SI. CODATA 2018 values, fixed at build time.
//
// Everything internal runs in SI; lab units (gauss, eV, cm^-1, amu, ...)
// are converted at the boundary by the helpers below. The hbar value can be
// rescaled for semiclassical-limit studies: with_hbar_scaled keeps e, m, c
// and moves the Rydberg energy as hbar^-2, so the hydrogenic level formula
// stays consistent.
struct PhysicalConstants {
    double electron_charge;  // C
    double electron_mass;    // kg
    double planck_reduced;   // J s
    double light_speed;      // m/s
    double rydberg_energy;   // J

    static const PhysicalConstants& codata();

    PhysicalConstants with_hbar_scaled(double factor) const;
};

inline constexpr double kElectronChargeC = 1.602176634e-19;
inline constexpr double kElectronMassKg = 9.1093837015e-31;
inline constexpr double kPlanckReducedJs = 1.054571817e-34;
inline constexpr double kLightSpeedMs = 2.99792458e8;
inline constexpr double kRydbergEnergyEv = 13.605693;
inline constexpr double kAtomicMassKg = 1.66053906660e-27;

namespace units {

inline constexpr double pi = std::numbers::pi;

constexpr double ev_to_joule(double ev) { return ev * kElectronChargeC; }
constexpr double joule_to_ev(double j) { return j / kElectronChargeC; }
constexpr double gauss_to_tesla(double g) { return g * 1e-4; }
constexpr double amu_to_kg(double amu) { return amu * kAtomicMassKg; }
constexpr double angstrom_to_m(double a) { return a * 1e-10; }
constexpr double deg_to_rad(double d) { return d * pi / 180.0; }

// Spectroscopic wavenumber (cm^-1) to angular frequency: omega = 2 pi c vtilde.
constexpr double wavenumber_cm_to_omega(double inv_cm) {
    return 2.0 * pi * kLightSpeedMs * (inv_cm * 100.0);
}

}  // namespace units

}  // namespace mmw
