#pragma once

#include "gcos/piano_roll.hpp"
#include "gcos/salience.hpp"

#include <array>
#include <bitset>
#include <cstddef>
#include <span>
#include <vector>

namespace gcos {

/// 69 + round(12 log2(f / 440)), halves rounded away from zero.
int pitch_number(double hz);

enum class ProfileSource { frequency_domain, quefrency_domain };

/// Semitone-indexed salience, max-pooled from a frequency or lag axis.
struct PitchProfile {
    std::array<double, kPitchCount> values{};
    ProfileSource source = ProfileSource::frequency_domain;
};

using PitchMask = std::bitset<kPitchCount>;

/// Precomputed bin -> pitch and lag -> pitch maps for one transform size. Only
/// the positive half (indices 1..N/2) is pooled; bins whose pitch falls outside
/// 0..127 are ignored.
class ProfilePooler {
public:
    ProfilePooler(std::size_t n_fft, double sample_rate);

    PitchProfile pool_frequency(std::span<const double> feature) const;
    PitchProfile pool_quefrency(std::span<const double> feature) const;

    /// -1 when the bin or lag does not map into 0..127.
    int frequency_bin_pitch(std::size_t k) const { return bin_pitch_[k]; }
    int lag_pitch(std::size_t n) const { return lag_pitch_[n]; }

    std::size_t n_fft() const { return n_fft_; }

private:
    std::size_t n_fft_;
    std::vector<int> bin_pitch_;
    std::vector<int> lag_pitch_;
};

PitchProfile pool_frequency_profile(const SpectralFeature& z);
PitchProfile pool_quefrency_profile(const QuefrencyFeature& z);

struct SelectionParams {
    /// Harmonic offsets in semitones (fundamental, 2nd, 3rd, 4th harmonic).
    std::vector<int> harmonic_offsets{0, 12, 19, 24};
    /// Sparsity threshold: an l0 window of w bins must count fewer than w * delta.
    double delta = 0.8;
    int median_frames = 25;
    /// A profile entry counts as positive when it exceeds this fraction of the
    /// profile's peak; masked entries are exact zeros.
    double positivity_epsilon = 1e-12;
};

void validate(const SelectionParams& params);

/// Frame-level pitch detection. Pitch p in range is active when
///  (1) the frequency profile is positive at p + o for every harmonic offset o,
///  (2) the quefrency profile is positive at p - o for every offset o, and
///  (3) the frequency profile has fewer than w*delta positives on [p, p+24] or
///      the quefrency profile has fewer than w*delta positives on [p-24, p],
/// with w = 25. Offsets falling outside 0..127 fail their condition; l0 windows
/// are truncated at the pitch-axis boundary.
PitchMask select_pitches(const PitchProfile& freq_profile, const PitchProfile& quef_profile,
                         const SelectionParams& params, const PitchRange& range);

/// Binary median (majority vote) along time per pitch row; cells beyond the
/// roll edges count as inactive. `median_frames` must be odd.
PianoRoll median_smooth(const PianoRoll& roll, int median_frames);

} // namespace gcos
