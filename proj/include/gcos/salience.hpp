#pragma once

#include "gcos/dsp.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gcos {

/// Exponents and cutoffs of the three-layer feature network
///   z1 = act1(|F x|), z2 = act2(W2 F^-1 z1), z3 = act3(W3 F z2).
/// An empty cutoff means the identity weighting for that layer.
struct LayerConfig {
    double gamma1 = 0.24;
    double gamma2 = 0.6;
    double gamma3 = 1.0;
    std::array<ActivationVariant, 3> variants{ActivationVariant::power, ActivationVariant::power,
                                              ActivationVariant::power};
    std::optional<double> cutoff_hz = 27.5;              // W3, A0
    std::optional<double> cutoff_quefrency_s = 0.24e-3;  // W2, period of C8
    std::optional<double> pre_cutoff_hz;                 // optional W1 on |F x|

    ActivationSpec activation(int layer) const;
};

void validate(const LayerConfig& cfg);

/// Sizes shared by every frame of an analysis run.
struct FrameGeometry {
    int sample_rate = 44100;
    std::size_t frame_length = 7938;
    std::size_t n_fft = 8192;
    WindowKind window = WindowKind::blackman_harris;

    double bin_hz() const { return static_cast<double>(sample_rate) / static_cast<double>(n_fft); }
};

enum class FeatureLayer { z1, z3 };

/// Frequency-indexed feature over all n_fft bins; bin k sits at k * bin_hz.
struct SpectralFeature {
    std::vector<double> values;
    double bin_hz = 0.0;
    FeatureLayer layer = FeatureLayer::z1;
};

/// Lag-indexed feature over all n_fft lags; lag n sits at n * lag_seconds.
struct QuefrencyFeature {
    std::vector<double> values;
    double lag_seconds = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

struct LayeredFeatures {
    SpectralFeature z1;
    QuefrencyFeature z2;
    SpectralFeature z3;
};

/// Computes the layered salience features for frames of a fixed geometry.
/// Const member functions are safe to call concurrently.
class SalienceExtractor {
public:
    SalienceExtractor(const FrameGeometry& geometry, const LayerConfig& cfg);

    /// Magnitude spectrum of the windowed, zero-padded frame after act1.
    SpectralFeature layer1_spectrum(std::span<const double> frame) const;
    /// Generalized cepstrum: lifter and act2 applied to the inverse DFT of z1.
    QuefrencyFeature layer2_generalized_cepstrum(const SpectralFeature& z1) const;
    /// Generalized cepstrum of spectrum: high-pass and act3 on the DFT of z2.
    SpectralFeature layer3_gcos(const QuefrencyFeature& z2) const;

    LayeredFeatures extract_all(std::span<const double> frame) const;

    /// YIN difference function written as a two-layer network: gamma1 = 2,
    /// gamma2 = 1, W2 = -2I, b2 = 2 acf[0]. Equals
    /// sum_q (x[q] - x[(q+n) mod N])^2 over the windowed, padded frame.
    QuefrencyFeature yin_salience(std::span<const double> frame) const;

    const FrameGeometry& geometry() const { return geometry_; }
    const LayerConfig& config() const { return cfg_; }
    const std::vector<double>& window() const { return window_; }
    std::optional<HighPassMask> frequency_mask() const { return w3_; }
    std::optional<HighPassMask> quefrency_mask() const { return w2_; }

private:
    FrameGeometry geometry_;
    LayerConfig cfg_;
    std::vector<double> window_;
    std::optional<HighPassMask> w1_;
    std::optional<HighPassMask> w2_;
    std::optional<HighPassMask> w3_;
};

/// Fused salience z_f[k] * z_q[round(N / k)]. Index 0 and indices whose
/// rounded lag falls outside the lag vector are 0.
SpectralFeature fuse_salience(const SpectralFeature& freq_feat, const QuefrencyFeature& quef_feat);

/// Scales the positive half (indices 0..N/2) to unit l2 norm; for plotting only.
std::vector<double> normalized_positive_half(std::span<const double> values);

} // namespace gcos
