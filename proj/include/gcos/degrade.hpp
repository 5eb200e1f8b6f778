#pragma once

#include "gcos/audio.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace gcos {

enum class NoiseKind { pink, white };

NoiseKind parse_noise_kind(std::string_view name);
std::string_view to_string(NoiseKind kind);

inline constexpr double kCleanSnr = std::numeric_limits<double>::infinity();

struct DegradeSpec {
    NoiseKind noise_kind = NoiseKind::pink;
    /// +infinity leaves the clip untouched.
    double snr_db = kCleanSnr;
    std::uint64_t seed = 0;
};

/// Unit-RMS noise with a 1/f power spectrum: a white Gaussian spectrum is
/// shaped by 1/sqrt(f) (DC removed) and inverse transformed.
std::vector<double> generate_pink_noise(std::size_t length, double sample_rate, std::uint64_t seed);

/// Unit-RMS zero-mean Gaussian noise.
std::vector<double> generate_white_noise(std::size_t length, std::uint64_t seed);

std::vector<double> generate_noise(NoiseKind kind, std::size_t length, double sample_rate, std::uint64_t seed);

double mean_power(std::span<const double> x);

/// 10 log10(P_signal / P_noise).
double snr_db(std::span<const double> signal, std::span<const double> noise);

struct Degraded {
    AudioClip clip;
    /// Exact addend: clip.samples[i] == input[i] + noise[i]. Empty when clean.
    std::vector<double> noise;
};

/// Adds scaled noise so the full-clip SNR equals spec.snr_db. No clipping is
/// applied. Throws DataError for a silent clip unless snr_db is +inf.
Degraded degrade(const AudioClip& clip, const DegradeSpec& spec);

AudioClip mix_at_snr(const AudioClip& clip, const DegradeSpec& spec);

} // namespace gcos
