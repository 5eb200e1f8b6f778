#include "gcos/salience.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gcos {

ActivationSpec LayerConfig::activation(int layer) const {
    const double gammas[3] = {gamma1, gamma2, gamma3};
    if (layer < 1 || layer > 3) {
        throw std::invalid_argument("layer index must be 1, 2 or 3");
    }
    return ActivationSpec{gammas[layer - 1], variants[static_cast<std::size_t>(layer - 1)]};
}

void validate(const LayerConfig& cfg) {
    for (int layer = 1; layer <= 3; ++layer) {
        validate(cfg.activation(layer));
    }
    if (cfg.cutoff_hz && !(*cfg.cutoff_hz > 0.0)) {
        throw std::invalid_argument("cutoff frequency must be positive");
    }
    if (cfg.pre_cutoff_hz && !(*cfg.pre_cutoff_hz > 0.0)) {
        throw std::invalid_argument("pre-spectral cutoff frequency must be positive");
    }
    if (cfg.cutoff_quefrency_s && !(*cfg.cutoff_quefrency_s > 0.0)) {
        throw std::invalid_argument("cutoff quefrency must be positive");
    }
}

SalienceExtractor::SalienceExtractor(const FrameGeometry& geometry, const LayerConfig& cfg)
    : geometry_(geometry), cfg_(cfg) {
    validate(cfg_);
    if (geometry_.sample_rate <= 0) {
        throw std::invalid_argument("sample rate must be positive");
    }
    if (geometry_.n_fft < geometry_.frame_length) {
        throw std::invalid_argument("n_fft (" + std::to_string(geometry_.n_fft) +
                                    ") is shorter than the frame (" + std::to_string(geometry_.frame_length) + ")");
    }
    window_ = make_window(WindowSpec{geometry_.window, geometry_.frame_length});
    const double fs = geometry_.sample_rate;
    const std::size_t n = geometry_.n_fft;
    if (cfg_.pre_cutoff_hz) {
        w1_ = HighPassMask{cutoff_to_frequency_index(*cfg_.pre_cutoff_hz, n, fs), n, MaskDomain::frequency, true};
    }
    if (cfg_.cutoff_quefrency_s) {
        w2_ = HighPassMask{cutoff_to_quefrency_index(*cfg_.cutoff_quefrency_s, fs), n, MaskDomain::quefrency, true};
    }
    if (cfg_.cutoff_hz) {
        w3_ = HighPassMask{cutoff_to_frequency_index(*cfg_.cutoff_hz, n, fs), n, MaskDomain::frequency, true};
    }
}

SpectralFeature SalienceExtractor::layer1_spectrum(std::span<const double> frame) const {
    SpectralFeature z1;
    z1.values = dft_magnitude(frame, window_, geometry_.n_fft);
    if (w1_) {
        apply_mask_inplace(z1.values, *w1_);
    }
    activate_inplace(z1.values, cfg_.activation(1));
    z1.bin_hz = geometry_.bin_hz();
    z1.layer = FeatureLayer::z1;
    return z1;
}

QuefrencyFeature SalienceExtractor::layer2_generalized_cepstrum(const SpectralFeature& z1) const {
    if (z1.values.size() != geometry_.n_fft) {
        throw std::invalid_argument("layer 2 expects a full-length layer-1 feature");
    }
    QuefrencyFeature z2;
    z2.values = inverse_dft_real(z1.values);
    if (w2_) {
        apply_mask_inplace(z2.values, *w2_);
    }
    activate_inplace(z2.values, cfg_.activation(2));
    z2.lag_seconds = 1.0 / geometry_.sample_rate;
    z2.gamma1 = cfg_.gamma1;
    z2.gamma2 = cfg_.gamma2;
    return z2;
}

SpectralFeature SalienceExtractor::layer3_gcos(const QuefrencyFeature& z2) const {
    if (z2.values.size() != geometry_.n_fft) {
        throw std::invalid_argument("layer 3 expects a full-length layer-2 feature");
    }
    SpectralFeature z3;
    z3.values = dft_real_symmetric(z2.values);
    if (w3_) {
        apply_mask_inplace(z3.values, *w3_);
    }
    activate_inplace(z3.values, cfg_.activation(3));
    z3.bin_hz = geometry_.bin_hz();
    z3.layer = FeatureLayer::z3;
    return z3;
}

LayeredFeatures SalienceExtractor::extract_all(std::span<const double> frame) const {
    LayeredFeatures out;
    out.z1 = layer1_spectrum(frame);
    out.z2 = layer2_generalized_cepstrum(out.z1);
    out.z3 = layer3_gcos(out.z2);
    return out;
}

QuefrencyFeature SalienceExtractor::yin_salience(std::span<const double> frame) const {
    auto power = dft_magnitude(frame, window_, geometry_.n_fft);
    activate_inplace(power, ActivationSpec{2.0, ActivationVariant::power});
    auto acf = inverse_dft_real(power);
    const double bias = 2.0 * acf[0];
    for (double& v : acf) {
        v = -2.0 * v + bias;
    }
    activate_inplace(acf, ActivationSpec{1.0, ActivationVariant::power});
    acf[0] = 0.0;

    QuefrencyFeature out;
    out.values = std::move(acf);
    out.lag_seconds = 1.0 / geometry_.sample_rate;
    out.gamma1 = 2.0;
    out.gamma2 = 1.0;
    return out;
}

SpectralFeature fuse_salience(const SpectralFeature& freq_feat, const QuefrencyFeature& quef_feat) {
    const std::size_t n = freq_feat.values.size();
    if (n != quef_feat.values.size()) {
        throw std::invalid_argument("fuse_salience: features come from different transform sizes");
    }
    SpectralFeature out;
    out.bin_hz = freq_feat.bin_hz;
    out.layer = freq_feat.layer;
    out.values.assign(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        const auto lag = static_cast<std::size_t>(std::llround(static_cast<double>(n) / static_cast<double>(k)));
        if (lag < quef_feat.values.size()) {
            out.values[k] = freq_feat.values[k] * quef_feat.values[lag];
        }
    }
    return out;
}

std::vector<double> normalized_positive_half(std::span<const double> values) {
    std::vector<double> half(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2 + 1));
    double norm = 0.0;
    for (double v : half) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 0.0) {
        for (double& v : half) v /= norm;
    }
    return half;
}

} // namespace gcos
