#include "mmw/interference.hpp"

#include <cmath>
#include <set>

#include "mmw/errors.hpp"

namespace mmw {

ModeAmplitude grid_amplitude(const ScattererGrid& grid, double k, int l, Complex beta, double x) {
    if (!(k > 0.0)) throw DomainError("wave number must be positive");
    if (l < 1) throw DomainError("harmonic l must be >= 1");
    const double phase = l * k * (x - grid.position);
    return {grid.coupling * beta * std::polar(1.0, phase), l * k, l, grid.label};
}

Complex superpose(const std::vector<ModeAmplitude>& amplitudes) {
    if (amplitudes.empty()) throw DomainError("superposition of an empty amplitude list");
    Complex total{0.0, 0.0};
    for (const auto& a : amplitudes) total += a.value;
    return total;
}

namespace {

double intensity_at_wave_number(Complex c1, Complex c2, double lk, double x1, double x2,
                                Complex beta) {
    const double a1 = std::abs(c1);
    const double a2 = std::abs(c2);
    const double phase = lk * (x1 - x2) + std::arg(c2) - std::arg(c1);
    return std::norm(beta) * (a1 * a1 + a2 * a2 + 2.0 * a1 * a2 * std::cos(phase));
}

}  // namespace

double two_grid_intensity(const ScattererGrid& g1, const ScattererGrid& g2, double k, int l,
                          Complex beta) {
    if (!(k > 0.0)) throw DomainError("wave number must be positive");
    if (l < 1) throw DomainError("harmonic l must be >= 1");
    return intensity_at_wave_number(g1.coupling, g2.coupling, l * k, g1.position, g2.position,
                                    beta);
}

double mixture_intensity(const ScattererGrid& g1, const ScattererGrid& g2, double base_k,
                         const HarmonicMixture& mixture, const std::map<int, Complex>& betas) {
    validate_mixture(mixture);
    double total = 0.0;
    for (const auto& [l, weight] : mixture.entries) {
        const auto it = betas.find(l);
        if (it == betas.end())
            throw ConfigError("no matrix element supplied for harmonic l = " + std::to_string(l));
        total += std::norm(weight) * two_grid_intensity(g1, g2, base_k, l, it->second);
    }
    return total;
}

double rovib_intensity(const ScattererGrid& g1, const ScattererGrid& g2, double k_vib,
                       double k_rot, int l_vib, int l_rot, Complex gamma) {
    if (!(k_vib > 0.0) || !(k_rot > 0.0)) throw DomainError("wave numbers must be positive");
    if (l_vib < 0 || l_rot < 0) throw DomainError("harmonics must be nonnegative");
    const double combined = l_vib * k_vib + l_rot * k_rot;
    if (!(combined > 0.0)) throw DomainError("combined wave number vanishes");
    return intensity_at_wave_number(g1.coupling, g2.coupling, combined, g1.position, g2.position,
                                    gamma);
}

void validate_mixture(const HarmonicMixture& mixture) {
    if (mixture.entries.empty()) throw ConfigError("harmonic mixture is empty");
    std::set<int> seen;
    for (const auto& [l, weight] : mixture.entries) {
        if (l < 1) throw ConfigError("harmonic l must be >= 1");
        if (!std::isfinite(weight.real()) || !std::isfinite(weight.imag()))
            throw ConfigError("harmonic weight must be finite");
        if (!seen.insert(l).second)
            throw ConfigError("duplicate harmonic l = " + std::to_string(l) + " in mixture");
    }
}

}  // namespace mmw
