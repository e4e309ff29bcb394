#include "mmw/matrix_elements.hpp"

#include <lapacke.h>

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <string>

#include "mmw/errors.hpp"

namespace mmw {

namespace {

constexpr double kQuadRelTol = 1e-10;
constexpr int kQuadMaxPoints = 1 << 14;
constexpr int kQuadMinPoints = 64;

// Recurrence coefficients sqrt(2/(k+1)) and sqrt(k/(k+1)), tabulated once:
// the quadrature inner loops are dominated by them otherwise.
constexpr std::int64_t kCoeffTableSize = kQuadMaxPoints + 1;

struct CoeffTables {
    std::vector<double> up;
    std::vector<double> down;
};

const CoeffTables& coeff_tables() {
    static const CoeffTables tables = [] {
        CoeffTables t;
        t.up.resize(kCoeffTableSize);
        t.down.resize(kCoeffTableSize);
        for (std::int64_t k = 0; k < kCoeffTableSize; ++k) {
            t.up[k] = std::sqrt(2.0 / static_cast<double>(k + 1));
            t.down[k] = std::sqrt(static_cast<double>(k) / static_cast<double>(k + 1));
        }
        return t;
    }();
    return tables;
}

inline double coeff_up(const CoeffTables& t, std::int64_t k) {
    return k < kCoeffTableSize ? t.up[k] : std::sqrt(2.0 / static_cast<double>(k + 1));
}

inline double coeff_down(const CoeffTables& t, std::int64_t k) {
    return k < kCoeffTableSize ? t.down[k]
                               : std::sqrt(static_cast<double>(k) / static_cast<double>(k + 1));
}

// State of the scaled Hermite-function recurrence at one argument u:
// h_k = mantissa * 2^exponent. Underflow of h_0 in the far tail is absorbed
// into the exponent; the mantissa pair is rescaled whenever it grows past
// 2^500.
struct ScaledHermiteState {
    double h_n;         // mantissa of h_n
    double h_nm1;       // mantissa of h_{n-1}
    double sum_sq;      // sum_{k<n} h_k^2 in mantissa^2 units
    long exponent;      // common power of two
};

constexpr double kRescaleAt = 0x1p500;
constexpr double kRescaleBy = 0x1p-500;

void scaled_start(double u, double& h, long& exponent) {
    const double log2_h0 = (-0.5 * u * u - 0.25 * std::log(units::pi)) / std::numbers::ln2;
    exponent = static_cast<long>(std::floor(log2_h0));
    h = std::exp2(log2_h0 - static_cast<double>(exponent));  // in [1, 2)
}

ScaledHermiteState hermite_recurrence(std::int64_t n, double u) {
    const CoeffTables& t = coeff_tables();
    double h, h_prev = 0.0, sum_sq = 0.0;
    long exponent;
    scaled_start(u, h, exponent);

    for (std::int64_t k = 0; k < n; ++k) {
        sum_sq += h * h;
        const double next = u * coeff_up(t, k) * h - coeff_down(t, k) * h_prev;
        h_prev = h;
        h = next;
        if (std::abs(h) > kRescaleAt || std::abs(h_prev) > kRescaleAt) {
            h *= kRescaleBy;
            h_prev *= kRescaleBy;
            sum_sq *= kRescaleBy * kRescaleBy;
            exponent += 500;
        }
    }
    return {h, h_prev, sum_sq, exponent};
}

double apply_exponent(double mantissa, long exponent) {
    if (exponent < -2000) return 0.0;
    if (exponent > 2000) return mantissa * HUGE_VAL;
    return std::ldexp(mantissa, static_cast<int>(exponent));
}

// h_{n_low}(u) and h_{n_high}(u) from one pass of the recurrence.
void hermite_pair(std::int64_t n_low, std::int64_t n_high, double u, double& low_out,
                  double& high_out) {
    const CoeffTables& t = coeff_tables();
    double h, h_prev = 0.0;
    long exponent;
    scaled_start(u, h, exponent);
    low_out = 0.0;
    if (n_low == 0) low_out = apply_exponent(h, exponent);

    for (std::int64_t k = 0; k < n_high; ++k) {
        const double next = u * coeff_up(t, k) * h - coeff_down(t, k) * h_prev;
        h_prev = h;
        h = next;
        if (std::abs(h) > kRescaleAt || std::abs(h_prev) > kRescaleAt) {
            h *= kRescaleBy;
            h_prev *= kRescaleBy;
            exponent += 500;
        }
        if (k + 1 == n_low) low_out = apply_exponent(h, exponent);
    }
    high_out = apply_exponent(h, exponent);
}

GaussHermiteRule build_rule(int n) {
    // Nodes are the eigenvalues of the Jacobi matrix of the orthonormal
    // Hermite recurrence (zero diagonal, off-diagonal sqrt(k/2)).
    std::vector<double> diag(n, 0.0);
    std::vector<double> off(n > 1 ? n - 1 : 0);
    for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(0.5 * k);
    const lapack_int info =
        LAPACKE_dsterf(static_cast<lapack_int>(n), diag.data(), off.data());
    if (info != 0)
        throw std::runtime_error("Gauss-Hermite node solve failed, dsterf info = " +
                                 std::to_string(info));

    GaussHermiteRule rule;
    rule.nodes = std::move(diag);
    rule.total_weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Christoffel number times exp(x^2): 1 / sum_{k<n} h_k(x)^2.
        const ScaledHermiteState s = hermite_recurrence(n, rule.nodes[i]);
        const double sum = apply_exponent(s.sum_sq, 2 * s.exponent);
        rule.total_weights[i] = 1.0 / sum;
    }
    return rule;
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

// Integrate f(u) du over the real line, f decaying like a Gaussian. Node
// count doubles until two successive estimates agree to kQuadRelTol relative
// (or to rounding level against the integrand's L1 mass), capped at 2^14.
double adaptive_gauss_hermite(const std::function<double(double)>& f, int start_points) {
    int n = next_pow2(std::max(start_points, kQuadMinPoints));
    double previous = 0.0;
    bool have_previous = false;
    double estimate = 0.0;
    for (; n <= kQuadMaxPoints; n *= 2) {
        const GaussHermiteRule& rule = gauss_hermite_rule(n);
        estimate = 0.0;
        double l1 = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double term = rule.total_weights[i] * f(rule.nodes[i]);
            estimate += term;
            l1 += std::abs(term);
        }
        if (have_previous) {
            // The absolute floor covers integrals that vanish by symmetry:
            // their estimates sit at the rounding level of the L1 mass and a
            // purely relative test would never settle.
            const double agree = std::abs(estimate - previous);
            if (agree <= kQuadRelTol * std::abs(estimate) || agree <= 1e-12 * l1) return estimate;
        }
        previous = estimate;
        have_previous = true;
    }
    return estimate;  // node cap reached: best available estimate
}

void check_levels(std::int64_t nu, std::int64_t l) {
    if (l < 0) throw DomainError("harmonic l must be nonnegative");
    if (nu < l) throw DomainError("transition needs nu >= l");
}

void check_level_cap(std::int64_t nu, const char* what) {
    if (nu > kOscillatorLevelCap)
        throw CapabilityError(std::string(what) + " is limited to nu <= " +
                              std::to_string(kOscillatorLevelCap) +
                              "; treat the matrix element as a supplied constant instead");
}

double perturbation_value(const Perturbation& pert, double x) {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, LinearPerturbation>) {
                return p.strength * x;
            } else if constexpr (std::is_same_v<T, QuadraticPerturbation>) {
                return p.strength * x * x;
            } else {
                return p.strength * std::exp(-x * x / (2.0 * p.width * p.width));
            }
        },
        pert);
}

}  // namespace

const GaussHermiteRule& gauss_hermite_rule(int point_count) {
    if (point_count < 1) throw DomainError("quadrature needs at least one node");
    static std::map<int, GaussHermiteRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(point_count);
    if (it == cache.end()) it = cache.emplace(point_count, build_rule(point_count)).first;
    return it->second;
}

double hermite_function(std::int64_t n, double u) {
    if (n < 0) throw DomainError("Hermite index must be nonnegative");
    const ScaledHermiteState s = hermite_recurrence(n, u);
    return apply_exponent(s.h_n, s.exponent);
}

OscillatorBasis make_oscillator_basis(double mass, double omega, const PhysicalConstants& pc) {
    if (!(mass > 0.0) || !(omega > 0.0))
        throw DomainError("oscillator basis needs positive mass and frequency");
    return {mass, omega, std::sqrt(pc.planck_reduced / (mass * omega))};
}

double oscillator_wavefunction(const OscillatorBasis& basis, std::int64_t nu, double xi) {
    if (nu < 0) throw DomainError("level index must be nonnegative");
    check_level_cap(nu, "explicit wavefunction evaluation");
    const double ls = basis.length_scale;
    return hermite_function(nu, xi / ls) / std::sqrt(ls);
}

double beta_quadrature(const OscillatorBasis& basis, const Perturbation& pert, std::int64_t nu,
                       std::int64_t l) {
    check_levels(nu, l);
    check_level_cap(nu, "quadrature");
    const double ls = basis.length_scale;
    // chi_{nu-l}(x) chi_nu(x) dx = h_{nu-l}(u) h_nu(u) du with u = x / ls.
    const auto integrand = [&](double u) {
        double bra, ket;
        hermite_pair(nu - l, nu, u, bra, ket);
        return bra * ket * perturbation_value(pert, ls * u);
    };
    const int start = static_cast<int>(nu + nu / 2 + 8);
    return adaptive_gauss_hermite(integrand, start);
}

double beta(const OscillatorBasis& basis, const Perturbation& pert, std::int64_t nu,
            std::int64_t l) {
    check_levels(nu, l);
    const double ls = basis.length_scale;
    if (const auto* lin = std::get_if<LinearPerturbation>(&pert)) {
        // x = ls (a + a^dag) / sqrt(2): couples only |dnu| = 1.
        if (l == 1) return lin->strength * ls * std::sqrt(nu / 2.0);
        return 0.0;
    }
    if (const auto* quad = std::get_if<QuadraticPerturbation>(&pert)) {
        if (l == 0) return quad->strength * ls * ls * (nu + 0.5);
        if (l == 2) return quad->strength * (ls * ls / 2.0) *
                           std::sqrt(static_cast<double>(nu) * (nu - 1));
        return 0.0;
    }
    check_level_cap(nu, "the Gaussian coupling");
    return beta_quadrature(basis, pert, nu, l);
}

}  // namespace mmw
