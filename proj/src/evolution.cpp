#include "mmw/evolution.hpp"

#include <fftw3.h>

#include <cmath>

#include "mmw/constants.hpp"
#include "mmw/errors.hpp"

namespace mmw {

namespace {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void validate(const WaveField& field) {
    if (!is_power_of_two(field.samples.size()))
        throw ConfigError("field grid must have a power-of-two sample count");
    if (!(field.domain_length > 0.0)) throw ConfigError("domain length must be positive");
    if (field.mode_l < 1) throw ConfigError("mode l must be >= 1");
    if (field.omega.size() != 1 && field.omega.size() != field.samples.size())
        throw ConfigError("omega profile must hold one value or one per cell");
}

// FFT wavenumber of bin j on a periodic domain of length L.
double bin_wave_number(std::size_t j, std::size_t n, double length) {
    const auto jj = static_cast<std::ptrdiff_t>(j);
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    const std::ptrdiff_t signed_j = jj < half ? jj : jj - static_cast<std::ptrdiff_t>(n);
    return 2.0 * units::pi * static_cast<double>(signed_j) / length;
}

struct FftPlanPair {
    fftw_plan forward;
    fftw_plan backward;

    FftPlanPair(std::vector<std::complex<double>>& buf) {
        auto* data = reinterpret_cast<fftw_complex*>(buf.data());
        const int n = static_cast<int>(buf.size());
        forward = fftw_plan_dft_1d(n, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_1d(n, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~FftPlanPair() {
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
    }
    FftPlanPair(const FftPlanPair&) = delete;
    FftPlanPair& operator=(const FftPlanPair&) = delete;
};

}  // namespace

WaveField evolve(const WaveField& field, const EvolutionParams& params) {
    validate(field);
    if (!(params.time_step > 0.0)) throw ConfigError("time step must be positive");
    if (params.step_count < 0) throw ConfigError("step count must be nonnegative");

    WaveField out = field;
    const std::size_t n = out.samples.size();
    const double dt = params.time_step;
    const double l = static_cast<double>(out.mode_l);
    const double kinetic_coeff = out.gyroaction / l;

    // Per-cell half-step potential phases and spectral kinetic phases.
    std::vector<std::complex<double>> half_potential(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double omega_i = out.omega.size() == 1 ? out.omega[0] : out.omega[i];
        half_potential[i] = std::polar(1.0, -0.5 * l * omega_i * dt);
    }
    std::vector<std::complex<double>> kinetic(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k = bin_wave_number(j, n, out.domain_length);
        kinetic[j] = std::polar(1.0, -kinetic_coeff * k * k * dt);
    }

    const bool skip_kinetic = out.gyroaction == 0.0;
    FftPlanPair plans(out.samples);
    const double inv_n = 1.0 / static_cast<double>(n);

    for (std::int64_t step = 0; step < params.step_count; ++step) {
        for (std::size_t i = 0; i < n; ++i) out.samples[i] *= half_potential[i];
        if (!skip_kinetic) {
            fftw_execute(plans.forward);
            for (std::size_t j = 0; j < n; ++j) out.samples[j] *= kinetic[j] * inv_n;
            fftw_execute(plans.backward);
        }
        for (std::size_t i = 0; i < n; ++i) out.samples[i] *= half_potential[i];
    }
    return out;
}

std::vector<WaveField> evolve_all(const std::vector<WaveField>& fields,
                                  const EvolutionParams& params) {
    std::vector<WaveField> out;
    out.reserve(fields.size());
    for (const auto& f : fields) out.push_back(evolve(f, params));
    return out;
}

double dispersion_check(double gyroaction, double omega, int l, double k) {
    if (l < 1) throw DomainError("mode l must be >= 1");
    return (gyroaction / l) * k * k + l * omega;
}

double field_norm(const WaveField& field) {
    double sum = 0.0;
    for (const auto& z : field.samples) sum += std::norm(z);
    return std::sqrt(sum * field.grid_spacing());
}

double field_centroid(const WaveField& field) {
    double weight = 0.0;
    double moment = 0.0;
    const double dx = field.grid_spacing();
    for (std::size_t i = 0; i < field.samples.size(); ++i) {
        const double p = std::norm(field.samples[i]);
        weight += p;
        moment += p * (static_cast<double>(i) * dx);
    }
    if (weight == 0.0) return 0.0;
    return moment / weight;
}

}  // namespace mmw
