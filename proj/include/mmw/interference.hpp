#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace mmw {

using Complex = std::complex<double>;

// One grid of scatterers: its position and the product of its normalization
// constants (complex in general; the real case is the textbook arrangement).
struct ScattererGrid {
    double position;   // m
    Complex coupling;  // dimensionless A * A'
    std::string label;
};

// Weights of the harmonics l = 1, 2, ... excited at a grid; distinct final
// internal states.
struct HarmonicMixture {
    std::vector<std::pair<int, Complex>> entries;  // (l, weight)
};

// Scattered amplitude of one harmonic from one grid, evaluated at a probe
// point downstream.
struct ModeAmplitude {
    Complex value;
    double wave_number;  // l * k, rad/m
    int harmonic;
    std::string source;
};

// coupling * beta * exp(i l k (X - X_grid)).
ModeAmplitude grid_amplitude(const ScattererGrid& grid, double k, int l, Complex beta, double x);

Complex superpose(const std::vector<ModeAmplitude>& amplitudes);

// |beta|^2 { |c1|^2 + |c2|^2 + 2 |c1||c2| cos(l k (X1 - X2) + arg c2 - arg c1) }.
// Identical to |grid_amplitude(g1) + grid_amplitude(g2)|^2 at any probe point.
double two_grid_intensity(const ScattererGrid& g1, const ScattererGrid& g2, double k, int l,
                          Complex beta);

// Incoherent sum over the mixture's harmonics (orthogonal final states):
// sum_l |w_l|^2 * two_grid_intensity at wave number l * base_k.
double mixture_intensity(const ScattererGrid& g1, const ScattererGrid& g2, double base_k,
                         const HarmonicMixture& mixture, const std::map<int, Complex>& betas);

// Combined vibrational + rotational transition: same two-grid pattern at the
// compound wave number l_vib k_vib + l_rot k_rot.
double rovib_intensity(const ScattererGrid& g1, const ScattererGrid& g2, double k_vib,
                       double k_rot, int l_vib, int l_rot, Complex gamma);

void validate_mixture(const HarmonicMixture& mixture);

}  // namespace mmw
