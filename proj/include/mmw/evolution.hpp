#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace mmw {

// Amplitude function of one harmonic on a periodic 1-D grid. The gyroaction
// stands where hbar would in an ordinary wave equation; omega may hold one
// value (uniform) or one per cell (spatially varying profile, an extension
// beyond the uniform-field setting).
struct WaveField {
    std::vector<std::complex<double>> samples;  // power-of-two length
    double domain_length;                       // m
    int mode_l;                                 // harmonic, >= 1
    double gyroaction;                          // J s
    std::vector<double> omega;                  // rad/s, size 1 or samples.size()

    double grid_spacing() const { return domain_length / static_cast<double>(samples.size()); }
};

struct EvolutionParams {
    double time_step;        // s
    std::int64_t step_count;
};

// Strang split-step integration of
//   i (mu/l) dPsi/dt = -(mu/l)^2 d2Psi/dx2 + mu Omega Psi
// i.e. half potential phase exp(-i l Omega dt/2), full spectral kinetic phase
// exp(-i (mu/l) k^2 dt), half potential phase, per step. Unitary: the L2 norm
// is preserved to rounding.
WaveField evolve(const WaveField& field, const EvolutionParams& params);

// Evolve several harmonics; the equations are uncoupled, so this is exactly
// per-field evolution.
std::vector<WaveField> evolve_all(const std::vector<WaveField>& fields,
                                  const EvolutionParams& params);

// Plane-wave angular frequency of the equation above: (mu/l) k^2 + l Omega.
double dispersion_check(double gyroaction, double omega, int l, double k);

// L2 norm sqrt(sum |psi|^2 dx).
double field_norm(const WaveField& field);

// Probability centroid with periodic wrap-around ignored (packet assumed well
// inside the domain).
double field_centroid(const WaveField& field);

}  // namespace mmw
