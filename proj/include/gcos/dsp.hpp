#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gcos {

enum class WindowKind { blackman, blackman_harris };

WindowKind parse_window_kind(std::string_view name);
std::string_view to_string(WindowKind kind);

struct WindowSpec {
    WindowKind kind = WindowKind::blackman_harris;
    std::size_t length = 0;
};

/// Symmetric window coefficients (w[j] == w[length-1-j]). Blackman has exact
/// zeros at both endpoints; both kinds peak at 1 on the center sample of an
/// odd-length window.
std::vector<double> make_window(const WindowSpec& spec);

/// |DFT(window * frame)| over all n_fft bins, with the windowed frame
/// zero-padded to n_fft. The result is even-symmetric.
std::vector<double> dft_magnitude(std::span<const double> frame,
                                  std::span<const double> window,
                                  std::size_t n_fft);

/// Inverse DFT of an even-symmetric real vector, scaled by 1/n. Throws
/// std::invalid_argument when v[k] and v[n-k] differ by more than 1e-9 of the
/// largest magnitude.
std::vector<double> inverse_dft_real(std::span<const double> v);

/// Forward DFT of an even-symmetric real vector (unnormalized). The imaginary
/// part vanishes for such input and is dropped.
std::vector<double> dft_real_symmetric(std::span<const double> v);

enum class ActivationVariant { power, box_cox };

ActivationVariant parse_activation_variant(std::string_view name);
std::string_view to_string(ActivationVariant variant);

/// Element-wise rectifying power law. For x > 0 the power variant gives x^gamma
/// and the box_cox variant gives (x^gamma - 1) / gamma, which tends to log(x)
/// as gamma -> 0. Everything at or below zero maps to exactly 0.
struct ActivationSpec {
    double gamma = 1.0;
    ActivationVariant variant = ActivationVariant::power;
};

void validate(const ActivationSpec& spec);

double activate(double x, const ActivationSpec& spec);
std::vector<double> activate(std::span<const double> v, const ActivationSpec& spec);
void activate_inplace(std::span<double> v, const ActivationSpec& spec);

enum class MaskDomain { frequency, quefrency };

/// Diagonal 0/1 weighting: keeps index l when l > cutoff_index. With
/// `mirrored` set the test uses min(l, length-l) instead, so the negative
/// frequency (or quefrency) half of a full-length symmetric vector is treated
/// the same way as the positive half.
struct HighPassMask {
    std::size_t cutoff_index = 0;
    std::size_t length = 0;
    MaskDomain domain = MaskDomain::frequency;
    bool mirrored = false;

    bool keeps(std::size_t l) const;
};

std::vector<double> apply_mask(std::span<const double> v, const HighPassMask& mask);
void apply_mask_inplace(std::span<double> v, const HighPassMask& mask);

/// k_c = floor(f_c * n_fft / f_s). Requires 0 < f_c < f_s / 2.
std::size_t cutoff_to_frequency_index(double cutoff_hz, std::size_t n_fft, double sample_rate);

/// n_c = floor(q_c * f_s). Requires q_c > 0.
std::size_t cutoff_to_quefrency_index(double cutoff_seconds, double sample_rate);

/// Smallest power of two >= n.
std::size_t next_power_of_two(std::size_t n);

} // namespace gcos
