#include "gcos/dsp.hpp"
#include "gcos/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gcos {

WindowKind parse_window_kind(std::string_view name) {
    if (name == "blackman") return WindowKind::blackman;
    if (name == "blackman_harris") return WindowKind::blackman_harris;
    throw std::invalid_argument("unknown window kind: " + std::string(name));
}

std::string_view to_string(WindowKind kind) {
    switch (kind) {
    case WindowKind::blackman: return "blackman";
    case WindowKind::blackman_harris: return "blackman_harris";
    }
    throw std::invalid_argument("unknown window kind");
}

std::vector<double> make_window(const WindowSpec& spec) {
    if (spec.length < 2) {
        throw std::invalid_argument("window length must be >= 2");
    }
    std::vector<double> a;
    switch (spec.kind) {
    case WindowKind::blackman: a = {0.42, 0.5, 0.08}; break;
    case WindowKind::blackman_harris: a = {0.35875, 0.48829, 0.14128, 0.01168}; break;
    default: throw std::invalid_argument("unknown window kind");
    }
    const double denom = static_cast<double>(spec.length - 1);
    std::vector<double> w(spec.length);
    for (std::size_t j = 0; j < spec.length; ++j) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(j) / denom;
        double sum = 0.0;
        double sign = 1.0;
        for (std::size_t m = 0; m < a.size(); ++m) {
            sum += sign * a[m] * std::cos(static_cast<double>(m) * phase);
            sign = -sign;
        }
        w[j] = std::max(sum, 0.0);
    }
    // Exact mirror.
    for (std::size_t j = 0; j < spec.length / 2; ++j) {
        w[spec.length - 1 - j] = w[j];
    }
    return w;
}

std::vector<double> dft_magnitude(std::span<const double> frame,
                                  std::span<const double> window,
                                  std::size_t n_fft) {
    if (window.size() != frame.size()) {
        throw std::invalid_argument("dft_magnitude: window and frame lengths differ");
    }
    if (n_fft < frame.size()) {
        throw std::invalid_argument("dft_magnitude: n_fft shorter than frame");
    }
    std::vector<double> padded(n_fft, 0.0);
    for (std::size_t j = 0; j < frame.size(); ++j) {
        padded[j] = frame[j] * window[j];
    }
    const auto half = fft::forward_real(padded);
    std::vector<double> out(n_fft);
    for (std::size_t k = 0; k < half.size(); ++k) {
        out[k] = std::abs(half[k]);
    }
    for (std::size_t k = half.size(); k < n_fft; ++k) {
        out[k] = out[n_fft - k];
    }
    return out;
}

namespace {

void check_even_symmetric(std::span<const double> v, const char* who) {
    const std::size_t n = v.size();
    if (n == 0) {
        throw std::invalid_argument(std::string(who) + ": empty input");
    }
    double peak = 0.0;
    for (double x : v) {
        peak = std::max(peak, std::abs(x));
    }
    const double tol = 1e-9 * peak;
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs(v[k] - v[n - k]) > tol) {
            throw std::invalid_argument(std::string(who) + ": input is not even-symmetric at index " +
                                        std::to_string(k));
        }
    }
}

std::vector<std::complex<double>> real_half(std::span<const double> v) {
    std::vector<std::complex<double>> half(v.size() / 2 + 1);
    for (std::size_t k = 0; k < half.size(); ++k) {
        half[k] = {v[k], 0.0};
    }
    return half;
}

} // namespace

std::vector<double> inverse_dft_real(std::span<const double> v) {
    check_even_symmetric(v, "inverse_dft_real");
    const std::size_t n = v.size();
    auto out = fft::inverse_real(real_half(v), n);
    // Exact mirror.
    for (std::size_t k = n / 2 + 1; k < n; ++k) {
        out[k] = out[n - k];
    }
    return out;
}

std::vector<double> dft_real_symmetric(std::span<const double> v) {
    check_even_symmetric(v, "dft_real_symmetric");
    const std::size_t n = v.size();
    const auto half = fft::forward_real(v);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < half.size(); ++k) {
        out[k] = half[k].real();
    }
    for (std::size_t k = half.size(); k < n; ++k) {
        out[k] = out[n - k];
    }
    return out;
}

ActivationVariant parse_activation_variant(std::string_view name) {
    if (name == "power") return ActivationVariant::power;
    if (name == "box_cox") return ActivationVariant::box_cox;
    throw std::invalid_argument("unknown activation variant: " + std::string(name));
}

std::string_view to_string(ActivationVariant variant) {
    switch (variant) {
    case ActivationVariant::power: return "power";
    case ActivationVariant::box_cox: return "box_cox";
    }
    throw std::invalid_argument("unknown activation variant");
}

void validate(const ActivationSpec& spec) {
    if (!(spec.gamma > 0.0 && spec.gamma <= 2.0)) {
        throw std::invalid_argument("activation exponent must satisfy 0 < gamma <= 2, got " +
                                    std::to_string(spec.gamma));
    }
}

double activate(double x, const ActivationSpec& spec) {
    if (!(x > 0.0)) {
        return 0.0;
    }
    if (spec.variant == ActivationVariant::box_cox) {
        // (x^g - 1)/g via expm1.
        return std::expm1(spec.gamma * std::log(x)) / spec.gamma;
    }
    if (spec.gamma == 1.0) return x;
    if (spec.gamma == 2.0) return x * x;
    if (spec.gamma == 0.5) return std::sqrt(x);
    return std::pow(x, spec.gamma);
}

void activate_inplace(std::span<double> v, const ActivationSpec& spec) {
    validate(spec);
    for (double& x : v) {
        x = activate(x, spec);
    }
}

std::vector<double> activate(std::span<const double> v, const ActivationSpec& spec) {
    std::vector<double> out(v.begin(), v.end());
    activate_inplace(out, spec);
    return out;
}

bool HighPassMask::keeps(std::size_t l) const {
    const std::size_t distance = (mirrored && l > 0) ? std::min(l, length - l) : l;
    return distance > cutoff_index;
}

void apply_mask_inplace(std::span<double> v, const HighPassMask& mask) {
    if (v.size() != mask.length) {
        throw std::invalid_argument("apply_mask: vector length " + std::to_string(v.size()) +
                                    " does not match mask length " + std::to_string(mask.length));
    }
    for (std::size_t l = 0; l < v.size(); ++l) {
        if (!mask.keeps(l)) {
            v[l] = 0.0;
        }
    }
}

std::vector<double> apply_mask(std::span<const double> v, const HighPassMask& mask) {
    std::vector<double> out(v.begin(), v.end());
    apply_mask_inplace(out, mask);
    return out;
}

// floor with 1e-9 slack.
std::size_t cutoff_to_frequency_index(double cutoff_hz, std::size_t n_fft, double sample_rate) {
    if (!(cutoff_hz > 0.0 && cutoff_hz < sample_rate / 2.0)) {
        throw std::invalid_argument("cutoff frequency must lie in (0, f_s/2), got " +
                                    std::to_string(cutoff_hz));
    }
    return static_cast<std::size_t>(std::floor(cutoff_hz * static_cast<double>(n_fft) / sample_rate + 1e-9));
}

std::size_t cutoff_to_quefrency_index(double cutoff_seconds, double sample_rate) {
    if (!(cutoff_seconds > 0.0)) {
        throw std::invalid_argument("cutoff quefrency must be positive");
    }
    return static_cast<std::size_t>(std::floor(cutoff_seconds * sample_rate + 1e-9));
}

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

} // namespace gcos
