#include "mmw/dispersion.hpp"

#include <cmath>
#include <string>

#include "mmw/errors.hpp"

namespace mmw {

namespace {

double translational_energy(const BeamSpec& beam, const InternalSystem& sys, double n,
                            const PhysicalConstants& pc) {
    const double u = beam.total_energy - internal_energy(sys, n, pc);
    if (!(u > 0.0))
        throw EvanescentError("energy " + std::to_string(beam.total_energy) +
                              " J is below the internal level at n = " + std::to_string(n) +
                              ": propagation is classically forbidden");
    return u;
}

}  // namespace

double beam_velocity(const BeamSpec& beam, const InternalSystem& sys, double n,
                     const PhysicalConstants& pc) {
    return std::sqrt(2.0 * translational_energy(beam, sys, n, pc) / beam.com_mass);
}

double kappa_exact(const BeamSpec& beam, const InternalSystem& sys, double n,
                   const PhysicalConstants& pc) {
    const double u = translational_energy(beam, sys, n, pc);
    return std::sqrt(2.0 * beam.com_mass * u) / pc.planck_reduced;
}

DispersionPoint dispersion_point(const BeamSpec& beam, const InternalSystem& sys, double n,
                                 const PhysicalConstants& pc) {
    return {kappa_exact(beam, sys, n, pc), beam_velocity(beam, sys, n, pc), sys,
            static_cast<std::int64_t>(std::llround(n)), beam.total_energy};
}

WaveNumberPair delta_kappa(const BeamSpec& beam, const InternalSystem& sys, double n, int l,
                           const PhysicalConstants& pc) {
    if (l < 1) throw DomainError("harmonic l must be >= 1");
    if (!(n - l >= 0.0)) throw DomainError("transition needs n - l >= 0");

    const double k_hi = kappa_exact(beam, sys, n - l, pc);  // deeper level, larger kappa
    const double k_lo = kappa_exact(beam, sys, n, pc);
    // k_hi - k_lo = (k_hi^2 - k_lo^2) / (k_hi + k_lo); the squared difference
    // is 2 M dE_int / hbar^2 with dE_int in closed form.
    const double d_e = internal_energy_difference(sys, n, l, pc);
    const double exact =
        (2.0 * beam.com_mass * d_e / (pc.planck_reduced * pc.planck_reduced)) / (k_hi + k_lo);

    const double v = beam_velocity(beam, sys, n, pc);
    const double approx = l * (effective_frequency(sys, n, pc) / v);
    return {exact, approx, l, std::abs(exact - approx) / approx};
}

double macroscopic_wavelength(double velocity, double omega_eff, int l) {
    if (!(velocity > 0.0)) throw DomainError("velocity must be positive");
    if (!(omega_eff > 0.0)) throw DomainError("effective frequency must be positive");
    if (l < 1) throw DomainError("harmonic l must be >= 1");
    return 2.0 * units::pi * velocity / (l * omega_eff);
}

double rydberg_delta_p_over_hbar(const BeamSpec& beam, double n, int l,
                                 const PhysicalConstants& pc) {
    if (l < 1) throw DomainError("harmonic l must be >= 1");
    const RydbergAtom atom{};
    const double omega_n = effective_frequency(atom, n, pc);
    const double v = beam_velocity(beam, atom, n, pc);
    return l * omega_n / v;
}

}  // namespace mmw
