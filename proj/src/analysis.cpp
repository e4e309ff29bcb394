#include "mmw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmw/dispersion.hpp"
#include "mmw/errors.hpp"

namespace mmw {

namespace {

void validate_sweep(const SweepConfig& config) {
    if (!(config.energy_min < config.energy_max))
        throw ConfigError("sweep needs energy_min < energy_max");
    if (config.sample_count < 16) throw ConfigError("sweep needs at least 16 samples");
    if (config.lengths.empty()) throw ConfigError("sweep needs at least one path length");
    for (const auto& sl : config.lengths)
        if (!(sl.length > 0.0))
            throw ConfigError("path length '" + sl.label + "' must be positive");
    validate_mixture(config.mixture);
}

double signal_range(const std::vector<double>& signal) {
    const auto [lo, hi] = std::minmax_element(signal.begin(), signal.end());
    return *hi - *lo;
}

// Vertex of the parabola through three points; falls back to the middle
// point for degenerate (non-concave) triples.
void parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2,
                      double& x_out, double& y_out) {
    const double d21 = x2 - x1;
    const double d10 = x1 - x0;
    const double num = (y0 - y1) * d21 * d21 - (y2 - y1) * d10 * d10;
    const double den = (y0 - y1) * d21 + (y2 - y1) * d10;
    if (den <= 0.0) {
        x_out = x1;
        y_out = y1;
        return;
    }
    x_out = x1 + 0.5 * num / den;
    // Value of the fitted quadratic at the vertex, in Newton form.
    const double c1 = (y1 - y0) / d10;
    const double c2 = ((y2 - y1) / d21 - c1) / (d10 + d21);
    const double dx = x_out - x0;
    y_out = y0 + c1 * dx + c2 * dx * (x_out - x1);
}

// Topographic prominence: height above the deepest saddle on the way to the
// nearest higher terrain (or the series edge) on each side.
double prominence_at(const std::vector<double>& s, std::size_t p) {
    double left_min = s[p];
    for (std::size_t i = p; i-- > 0;) {
        if (s[i] > s[p]) break;
        left_min = std::min(left_min, s[i]);
    }
    double right_min = s[p];
    for (std::size_t i = p + 1; i < s.size(); ++i) {
        if (s[i] > s[p]) break;
        right_min = std::min(right_min, s[i]);
    }
    return s[p] - std::max(left_min, right_min);
}

}  // namespace

Spectrum transmission_sweep(const SweepConfig& config, const PhysicalConstants& pc) {
    validate_sweep(config);
    const auto n_samples = static_cast<std::size_t>(config.sample_count);
    Spectrum out;
    out.config = config;
    out.abscissa.resize(n_samples);
    out.signal.resize(n_samples);

    const double qn = static_cast<double>(config.beam.central_quantum_number);
    const double omega_eff = effective_frequency(config.system, qn, pc);
    const double step = (config.energy_max - config.energy_min) / static_cast<double>(n_samples - 1);

    for (std::size_t i = 0; i < n_samples; ++i) {
        const double energy = config.energy_min + step * static_cast<double>(i);
        BeamSpec beam = config.beam;
        beam.total_energy = energy;
        double velocity;
        try {
            velocity = beam_velocity(beam, config.system, qn, pc);
        } catch (const EvanescentError&) {
            throw DomainError("sweep sample " + std::to_string(i) + " at E = " +
                              std::to_string(units::joule_to_ev(energy)) +
                              " eV is below the internal level energy");
        }
        const double k = omega_eff / velocity;
        double signal = 0.0;
        for (const auto& [label, length] : config.lengths) {
            for (const auto& [l, weight] : config.mixture.entries)
                signal += std::norm(weight) * (1.0 + std::cos(l * k * length));
        }
        out.abscissa[i] = energy;
        out.signal[i] = signal;
    }
    return out;
}

PeakReport detect_peaks(const std::vector<double>& abscissa, const std::vector<double>& signal,
                        double min_prominence) {
    if (abscissa.size() != signal.size()) throw ConfigError("abscissa/signal size mismatch");
    if (!(min_prominence > 0.0)) throw ConfigError("min_prominence must be positive");

    PeakReport report;
    // Local maxima including flat tops (a run of equal samples flanked by
    // lower ones counts once, at its midpoint).
    std::vector<std::size_t> candidates;
    std::size_t i = 1;
    while (i + 1 < signal.size()) {
        if (!(signal[i] > signal[i - 1])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < signal.size() && signal[j + 1] == signal[i]) ++j;
        if (j + 1 < signal.size() && signal[j + 1] < signal[i])
            candidates.push_back((i + j) / 2);
        i = j + 1;
    }
    for (std::size_t p : candidates) {
        if (prominence_at(signal, p) < min_prominence) continue;
        double x, y;
        parabolic_vertex(abscissa[p - 1], signal[p - 1], abscissa[p], signal[p], abscissa[p + 1],
                         signal[p + 1], x, y);
        report.peak_positions.push_back(x);
        report.peak_heights.push_back(y);
    }
    for (std::size_t i = 1; i < report.peak_positions.size(); ++i)
        report.spacings.push_back(report.peak_positions[i] - report.peak_positions[i - 1]);
    if (!report.spacings.empty()) {
        double sum = 0.0;
        for (double s : report.spacings) sum += s;
        report.mean_spacing = sum / static_cast<double>(report.spacings.size());
    }
    return report;
}

PeakReport detect_peaks(const Spectrum& spectrum, double min_prominence) {
    return detect_peaks(spectrum.abscissa, spectrum.signal, min_prominence);
}

InverseLengthResult inverse_length_check(const SweepConfig& base,
                                         const std::vector<double>& lengths,
                                         const PhysicalConstants& pc) {
    if (lengths.size() < 2) throw ConfigError("inverse-length check needs at least two lengths");

    InverseLengthResult result;
    for (double length : lengths) {
        SweepConfig config = base;
        config.lengths = {{"L", length}};
        const Spectrum spectrum = transmission_sweep(config, pc);
        const PeakReport peaks = detect_peaks(spectrum, 0.05 * signal_range(spectrum.signal));
        if (peaks.spacings.empty())
            throw DomainError("sweep window holds fewer than two fringes at L = " +
                              std::to_string(length) + " m; widen the energy window");
        result.spacings.push_back({length, peaks.mean_spacing});
    }

    // Least-squares slope of log(spacing) against log(L).
    double mx = 0.0, my = 0.0;
    for (const auto& [length, spacing] : result.spacings) {
        mx += std::log(length);
        my += std::log(spacing);
    }
    mx /= static_cast<double>(result.spacings.size());
    my /= static_cast<double>(result.spacings.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [length, spacing] : result.spacings) {
        const double dx = std::log(length) - mx;
        sxy += dx * (std::log(spacing) - my);
        sxx += dx * dx;
    }
    result.fitted_exponent = sxy / sxx;
    return result;
}

namespace {

struct BeatAnalysis {
    PeakReport carrier;
    PeakReport envelope;  // maxima of the carrier peak heights
    bool has_beat = false;
};

BeatAnalysis analyze_beats(const Spectrum& spectrum) {
    if (spectrum.config.lengths.size() != 2)
        throw ConfigError("beat analysis needs a spectrum generated with exactly two lengths");

    BeatAnalysis out;
    const double range = signal_range(spectrum.signal);
    out.carrier = detect_peaks(spectrum, 1e-3 * std::max(range,
                               std::numeric_limits<double>::min()));
    if (out.carrier.peak_positions.size() < 4) return out;

    // The carrier peak heights trace |cos| of the difference-length phase;
    // successive height maxima are half an envelope period apart.
    const auto [hlo, hhi] = std::minmax_element(out.carrier.peak_heights.begin(),
                                                out.carrier.peak_heights.end());
    const double height_range = *hhi - *hlo;
    if (height_range < 1e-3 * std::abs(*hhi)) return out;  // flat: no beat

    out.envelope =
        detect_peaks(out.carrier.peak_positions, out.carrier.peak_heights, 0.25 * height_range);
    out.has_beat = !out.envelope.spacings.empty();
    return out;
}

}  // namespace

PeakReport beat_envelope(const Spectrum& spectrum) {
    BeatAnalysis analysis = analyze_beats(spectrum);
    PeakReport report = std::move(analysis.carrier);
    report.envelope_period.reset();
    if (analysis.has_beat) report.envelope_period = 2.0 * analysis.envelope.mean_spacing;
    return report;
}

std::optional<double> beat_period_ratio(const Spectrum& spectrum) {
    const BeatAnalysis analysis = analyze_beats(spectrum);
    if (!analysis.has_beat) return std::nullopt;

    const double span_lo = analysis.envelope.peak_positions.front();
    const double span_hi = analysis.envelope.peak_positions.back();
    double first = 0.0, last = 0.0;
    std::size_t count = 0;
    for (double p : analysis.carrier.peak_positions) {
        if (p < span_lo || p > span_hi) continue;
        if (count == 0) first = p;
        last = p;
        ++count;
    }
    if (count < 2) return std::nullopt;
    const double carrier_spacing = (last - first) / static_cast<double>(count - 1);
    return 2.0 * analysis.envelope.mean_spacing / carrier_spacing;
}

}  // namespace mmw
