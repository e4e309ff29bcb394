#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "mmw/constants.hpp"

namespace mmw {

// Perturbations coupling oscillator levels. Strengths are energies per the
// indicated power of displacement.
struct LinearPerturbation {
    double strength;  // J/m
};
struct QuadraticPerturbation {
    double strength;  // J/m^2
};
struct GaussianPerturbation {
    double strength;  // J
    double width;     // m
};

using Perturbation =
    std::variant<LinearPerturbation, QuadraticPerturbation, GaussianPerturbation>;

struct OscillatorBasis {
    double mass;          // kg
    double omega;         // rad/s
    double length_scale;  // m, sqrt(hbar / (m omega))
};

OscillatorBasis make_oscillator_basis(double mass, double omega,
                                      const PhysicalConstants& pc = PhysicalConstants::codata());

// Largest level for which explicit wavefunction evaluation / quadrature is
// offered. Above this, matrix elements enter interference as user-supplied
// constants: the fringe geometry never depends on their magnitude.
inline constexpr std::int64_t kOscillatorLevelCap = 10000;

// Normalized oscillator wavefunction chi_nu(xi), evaluated by the upward
// three-term recurrence on the scaled coordinate with per-step rescaling, so
// large nu and far-tail arguments neither overflow nor underflow prematurely.
double oscillator_wavefunction(const OscillatorBasis& basis, std::int64_t nu, double xi);

// <nu - l | H | nu>. Ladder-operator closed forms for the linear and
// quadratic couplings; adaptive Gauss-Hermite quadrature for the Gaussian.
double beta(const OscillatorBasis& basis, const Perturbation& pert, std::int64_t nu,
            std::int64_t l);

// Same matrix element by quadrature regardless of the perturbation type.
// Independent evaluation route used to cross-check the closed forms.
double beta_quadrature(const OscillatorBasis& basis, const Perturbation& pert, std::int64_t nu,
                       std::int64_t l);

// Gauss-Hermite rule in "total weight" form: integrates f(u) du directly for
// integrands carrying their own exp(-u^2)-like decay.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> total_weights;
};

const GaussHermiteRule& gauss_hermite_rule(int point_count);

// Orthonormal Hermite function h_n(u) = H_n(u) exp(-u^2/2) / sqrt(2^n n! sqrt(pi)).
double hermite_function(std::int64_t n, double u);

}  // namespace mmw
