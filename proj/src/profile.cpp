#include "gcos/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gcos {

int pitch_number(double hz) {
    if (!(hz > 0.0) || !std::isfinite(hz)) {
        throw std::invalid_argument("pitch_number: frequency must be positive and finite");
    }
    return 69 + static_cast<int>(std::lround(12.0 * std::log2(hz / 440.0)));
}

namespace {

int pitch_or_invalid(double hz) {
    const int p = pitch_number(hz);
    return (p >= 0 && p < kPitchCount) ? p : -1;
}

PitchProfile pool(std::span<const double> feature, const std::vector<int>& map, ProfileSource source) {
    if (feature.size() < map.size()) {
        throw std::invalid_argument("pooling: feature shorter than N/2+1");
    }
    PitchProfile profile;
    profile.source = source;
    for (std::size_t i = 1; i < map.size(); ++i) {
        const int p = map[i];
        if (p >= 0) {
            auto& slot = profile.values[static_cast<std::size_t>(p)];
            slot = std::max(slot, feature[i]);
        }
    }
    return profile;
}

} // namespace

ProfilePooler::ProfilePooler(std::size_t n_fft, double sample_rate)
    : n_fft_(n_fft), bin_pitch_(n_fft / 2 + 1, -1), lag_pitch_(n_fft / 2 + 1, -1) {
    if (n_fft < 2 || !(sample_rate > 0.0)) {
        throw std::invalid_argument("ProfilePooler: bad transform size or sample rate");
    }
    const double bin_hz = sample_rate / static_cast<double>(n_fft);
    for (std::size_t i = 1; i < bin_pitch_.size(); ++i) {
        bin_pitch_[i] = pitch_or_invalid(static_cast<double>(i) * bin_hz);
        lag_pitch_[i] = pitch_or_invalid(sample_rate / static_cast<double>(i));
    }
}

PitchProfile ProfilePooler::pool_frequency(std::span<const double> feature) const {
    return pool(feature, bin_pitch_, ProfileSource::frequency_domain);
}

PitchProfile ProfilePooler::pool_quefrency(std::span<const double> feature) const {
    return pool(feature, lag_pitch_, ProfileSource::quefrency_domain);
}

PitchProfile pool_frequency_profile(const SpectralFeature& z) {
    const double fs = z.bin_hz * static_cast<double>(z.values.size());
    return ProfilePooler(z.values.size(), fs).pool_frequency(z.values);
}

PitchProfile pool_quefrency_profile(const QuefrencyFeature& z) {
    return ProfilePooler(z.values.size(), 1.0 / z.lag_seconds).pool_quefrency(z.values);
}

void validate(const SelectionParams& params) {
    if (params.harmonic_offsets.empty()) {
        throw std::invalid_argument("harmonic offset list is empty");
    }
    if (std::any_of(params.harmonic_offsets.begin(), params.harmonic_offsets.end(), [](int o) { return o < 0; })) {
        throw std::invalid_argument("harmonic offsets must be non-negative");
    }
    if (!(params.delta > 0.0 && params.delta <= 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1]");
    }
    if (params.median_frames < 1 || params.median_frames % 2 == 0) {
        throw std::invalid_argument("median filter length must be a positive odd number, got " +
                                    std::to_string(params.median_frames));
    }
    if (!(params.positivity_epsilon >= 0.0)) {
        throw std::invalid_argument("positivity epsilon must be non-negative");
    }
}

namespace {

PitchMask positive_entries(const PitchProfile& profile, double epsilon) {
    const double peak = *std::max_element(profile.values.begin(), profile.values.end());
    PitchMask mask;
    if (!(peak > 0.0)) {
        return mask;
    }
    const double threshold = epsilon * peak;
    for (int p = 0; p < kPitchCount; ++p) {
        mask[static_cast<std::size_t>(p)] = profile.values[static_cast<std::size_t>(p)] > threshold;
    }
    return mask;
}

bool positive_at(const PitchMask& mask, int p) {
    return p >= 0 && p < kPitchCount && mask[static_cast<std::size_t>(p)];
}

int count_positive(const PitchMask& mask, int first, int last) {
    int count = 0;
    for (int p = std::max(first, 0); p <= std::min(last, kPitchCount - 1); ++p) {
        count += mask[static_cast<std::size_t>(p)] ? 1 : 0;
    }
    return count;
}

} // namespace

PitchMask select_pitches(const PitchProfile& freq_profile, const PitchProfile& quef_profile,
                         const SelectionParams& params, const PitchRange& range) {
    validate(params);
    validate(range);
    const PitchMask freq_pos = positive_entries(freq_profile, params.positivity_epsilon);
    const PitchMask quef_pos = positive_entries(quef_profile, params.positivity_epsilon);
    const int span = *std::max_element(params.harmonic_offsets.begin(), params.harmonic_offsets.end());
    const double l0_limit = static_cast<double>(span + 1) * params.delta;

    PitchMask active;
    for (int p = range.low; p <= range.high; ++p) {
        bool harmonics = true;
        bool subharmonics = true;
        for (int o : params.harmonic_offsets) {
            harmonics = harmonics && positive_at(freq_pos, p + o);
            subharmonics = subharmonics && positive_at(quef_pos, p - o);
        }
        if (!harmonics || !subharmonics) {
            continue;
        }
        const bool sparse = count_positive(freq_pos, p, p + span) < l0_limit ||
                            count_positive(quef_pos, p - span, p) < l0_limit;
        active[static_cast<std::size_t>(p)] = sparse;
    }
    return active;
}

PianoRoll median_smooth(const PianoRoll& roll, int median_frames) {
    if (median_frames < 1 || median_frames % 2 == 0) {
        throw std::invalid_argument("median filter length must be a positive odd number, got " +
                                    std::to_string(median_frames));
    }
    const std::size_t frames = roll.frame_count();
    const auto half = static_cast<std::ptrdiff_t>(median_frames / 2);
    PianoRoll out(roll.frame_times());
    std::vector<int> prefix(frames + 1);
    for (int p = 0; p < kPitchCount; ++p) {
        prefix[0] = 0;
        for (std::size_t i = 0; i < frames; ++i) {
            prefix[i + 1] = prefix[i] + (roll.active(p, i) ? 1 : 0);
        }
        if (prefix[frames] == 0) continue;
        for (std::size_t i = 0; i < frames; ++i) {
            const auto centre = static_cast<std::ptrdiff_t>(i);
            const auto lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(centre - half, 0));
            const auto hi = static_cast<std::size_t>(
                std::min<std::ptrdiff_t>(centre + half, static_cast<std::ptrdiff_t>(frames) - 1));
            const int count = prefix[hi + 1] - prefix[lo];
            out.set(p, i, count > half);
        }
    }
    return out;
}

} // namespace gcos
