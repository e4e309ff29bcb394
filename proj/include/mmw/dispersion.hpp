#pragma once

#include <cstdint>

#include "mmw/system.hpp"

namespace mmw {

// Exact translational state of the beam at one internal level.
struct DispersionPoint {
    double kappa_exact;   // rad/m
    double velocity;      // m/s
    InternalSystem system;
    std::int64_t quantum_number;
    double total_energy;  // J
};

// Exact level-to-level wave-number change next to its first-order expansion
// l * w_eff / v. relative_error = |exact - approx| / approx measures how far
// the run is from the l << n regime.
struct WaveNumberPair {
    double delta_kappa_exact;   // rad/m
    double delta_kappa_approx;  // rad/m
    int harmonic;
    double relative_error;
};

// Translational speed sqrt(2 (E - E_int(n)) / M).
double beam_velocity(const BeamSpec& beam, const InternalSystem& sys, double n,
                     const PhysicalConstants& pc = PhysicalConstants::codata());

// kappa_n = sqrt(2 M (E - E_int(n))) / hbar. Throws EvanescentError below the
// level energy.
double kappa_exact(const BeamSpec& beam, const InternalSystem& sys, double n,
                   const PhysicalConstants& pc = PhysicalConstants::codata());

DispersionPoint dispersion_point(const BeamSpec& beam, const InternalSystem& sys, double n,
                                 const PhysicalConstants& pc = PhysicalConstants::codata());

// Wave-number change for the internal transition n -> n - l.
//
// The exact value is kappa(n-l) - kappa(n), evaluated through the identity
// (a - b) = (a^2 - b^2)/(a + b) so that the deep l << n regime is not drowned
// by subtractive cancellation; it is algebraically the difference of the two
// kappa_exact values.
WaveNumberPair delta_kappa(const BeamSpec& beam, const InternalSystem& sys, double n, int l,
                           const PhysicalConstants& pc = PhysicalConstants::codata());

// lambda = 2 pi v / (l w_eff): the macroscopic wavelength of the l-th
// harmonic.
double macroscopic_wavelength(double velocity, double omega_eff, int l);

// Rydberg first-order momentum change over hbar: l * omega_n / v with
// omega_n = 2 |E_n| / (n hbar).
double rydberg_delta_p_over_hbar(const BeamSpec& beam, double n, int l,
                                 const PhysicalConstants& pc = PhysicalConstants::codata());

}  // namespace mmw
