#include "gcos/degrade.hpp"
#include "gcos/error.hpp"
#include "gcos/fft.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

namespace gcos {

NoiseKind parse_noise_kind(std::string_view name) {
    if (name == "pink") return NoiseKind::pink;
    if (name == "white") return NoiseKind::white;
    throw std::invalid_argument("unknown noise kind: " + std::string(name));
}

std::string_view to_string(NoiseKind kind) {
    return kind == NoiseKind::pink ? "pink" : "white";
}

namespace {

void normalize_rms(std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double power = 0.0;
    for (double& v : x) {
        v -= mean;
        power += v * v;
    }
    power /= static_cast<double>(x.size());
    if (power > 0.0) {
        const double scale = 1.0 / std::sqrt(power);
        for (double& v : x) v *= scale;
    }
}

} // namespace

std::vector<double> generate_pink_noise(std::size_t length, double sample_rate, std::uint64_t seed) {
    if (length == 0) {
        throw std::invalid_argument("noise length must be positive");
    }
    if (length < 3) {
        return std::vector<double>(length, 0.0);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double bin_hz = sample_rate / static_cast<double>(length);
    std::vector<std::complex<double>> spectrum(length / 2 + 1);
    for (std::size_t k = 1; k < spectrum.size(); ++k) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        const double gain = 1.0 / std::sqrt(static_cast<double>(k) * bin_hz);
        spectrum[k] = {re * gain, im * gain};
    }
    if (length % 2 == 0) {
        spectrum.back() = {spectrum.back().real(), 0.0};
    }
    auto noise = fft::inverse_real(spectrum, length);
    normalize_rms(noise);
    return noise;
}

std::vector<double> generate_white_noise(std::size_t length, std::uint64_t seed) {
    if (length == 0) {
        throw std::invalid_argument("noise length must be positive");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> noise(length);
    for (double& v : noise) v = gauss(rng);
    if (length > 1) normalize_rms(noise);
    return noise;
}

std::vector<double> generate_noise(NoiseKind kind, std::size_t length, double sample_rate, std::uint64_t seed) {
    return kind == NoiseKind::pink ? generate_pink_noise(length, sample_rate, seed)
                                   : generate_white_noise(length, seed);
}

double mean_power(std::span<const double> x) {
    if (x.empty()) return 0.0;
    double sum = 0.0;
    for (double v : x) sum += v * v;
    return sum / static_cast<double>(x.size());
}

double snr_db(std::span<const double> signal, std::span<const double> noise) {
    return 10.0 * std::log10(mean_power(signal) / mean_power(noise));
}

Degraded degrade(const AudioClip& clip, const DegradeSpec& spec) {
    if (std::isinf(spec.snr_db) && spec.snr_db > 0) {
        return Degraded{clip, {}};
    }
    if (!std::isfinite(spec.snr_db)) {
        throw std::invalid_argument("SNR must be finite or +infinity");
    }
    const double signal_power = mean_power(clip.samples);
    if (!(signal_power > 0.0)) {
        throw DataError("cannot mix noise at a given SNR into a silent clip");
    }
    auto noise = generate_noise(spec.noise_kind, clip.samples.size(), clip.sample_rate, spec.seed);
    const double noise_power = mean_power(noise);
    if (!(noise_power > 0.0)) {
        throw DataError("clip too short to generate noise");
    }
    const double gain = std::sqrt(signal_power / (noise_power * std::pow(10.0, spec.snr_db / 10.0)));
    Degraded out{clip, std::move(noise)};
    for (std::size_t i = 0; i < out.noise.size(); ++i) {
        out.noise[i] *= gain;
        out.clip.samples[i] += out.noise[i];
    }
    return out;
}

AudioClip mix_at_snr(const AudioClip& clip, const DegradeSpec& spec) {
    return degrade(clip, spec).clip;
}

} // namespace gcos
