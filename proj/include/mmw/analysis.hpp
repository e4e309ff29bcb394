#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmw/interference.hpp"
#include "mmw/system.hpp"

namespace mmw {

struct SweepLength {
    std::string label;
    double length;  // m
};

// Energy-sweep description: the detector signal is accumulated over the
// configured path lengths and harmonic mixture while the beam energy is swept.
struct SweepConfig {
    double energy_min;  // J
    double energy_max;  // J
    std::int64_t sample_count;
    std::vector<SweepLength> lengths;
    InternalSystem system;
    BeamSpec beam;  // template; total_energy is replaced per sample
    HarmonicMixture mixture;
};

struct Spectrum {
    std::vector<double> abscissa;  // J, strictly increasing
    std::vector<double> signal;    // dimensionless
    SweepConfig config;
};

struct PeakReport {
    std::vector<double> peak_positions;  // strictly increasing
    std::vector<double> peak_heights;
    std::vector<double> spacings;        // successive differences
    double mean_spacing = 0.0;
    std::optional<double> envelope_period;
};

struct LengthSpacing {
    double length;        // m
    double mean_spacing;  // J
};

struct InverseLengthResult {
    std::vector<LengthSpacing> spacings;
    double fitted_exponent;  // least-squares slope of log(spacing) vs log(L)
};

// Transmission signal sum_L sum_l |w_l|^2 [1 + cos(l k(E) L)], with
// k(E) = w_eff / v(E) chirped through the exact dispersion. Deterministic.
Spectrum transmission_sweep(const SweepConfig& config,
                            const PhysicalConstants& pc = PhysicalConstants::codata());

// Strict local maxima filtered by topographic prominence, positions and
// heights refined by a three-point parabola. Fewer than two peaks is a valid
// outcome (empty spacings), not an error.
PeakReport detect_peaks(const std::vector<double>& abscissa, const std::vector<double>& signal,
                        double min_prominence);
PeakReport detect_peaks(const Spectrum& spectrum, double min_prominence);

// Mean fringe spacing for each length, plus the fitted power of spacing ~ L^p.
InverseLengthResult inverse_length_check(const SweepConfig& base,
                                         const std::vector<double>& lengths,
                                         const PhysicalConstants& pc = PhysicalConstants::codata());

// Beat analysis of a two-length sweep: carrier peaks, then the period of the
// slow modulation read off the carrier peak heights. envelope_period is the
// full 2 pi period of the difference-length phase, i.e. twice the spacing of
// successive modulation maxima; absent when no modulation is detectable.
PeakReport beat_envelope(const Spectrum& spectrum);

// envelope_period divided by the mean carrier spacing inside the span of the
// modulation maxima. Restricting the carrier average to that span cancels the
// dispersion chirp, which stretches both periods together across the window.
std::optional<double> beat_period_ratio(const Spectrum& spectrum);

}  // namespace mmw
