#pragma once

#include <filesystem>
#include <vector>

namespace gcos {

/// Mono audio with amplitudes nominally in [-1, 1].
struct AudioClip {
    std::vector<double> samples;
    int sample_rate = 0;

    double duration() const {
        return static_cast<double>(samples.size()) / static_cast<double>(sample_rate);
    }
};

/// Builds a clip and checks its invariants (non-empty, finite, positive rate).
AudioClip make_clip(std::vector<double> samples, int sample_rate);

/// Reads a RIFF/WAVE file: 16- or 24-bit integer PCM or 32-bit float, mono or
/// stereo. Stereo is averaged to mono; integers are scaled by 1/2^(bits-1).
/// Throws DataError on unreadable, unsupported or empty files.
AudioClip load_audio(const std::filesystem::path& path);

enum class WavEncoding { pcm16, pcm24, float32 };

/// Writes a mono WAV. Integer encodings clip to the representable range.
void write_wav(const std::filesystem::path& path, const AudioClip& clip,
               WavEncoding encoding = WavEncoding::float32);

/// Same as write_wav but for interleaved multi-channel data; used to produce
/// stereo fixtures.
void write_wav_interleaved(const std::filesystem::path& path, const std::vector<double>& interleaved,
                           int channels, int sample_rate, WavEncoding encoding);

/// Returns the clip unchanged when rates match; otherwise resamples with a
/// Kaiser-windowed sinc kernel whose cutoff sits below the lower Nyquist rate.
AudioClip resample_if_needed(const AudioClip& clip, int target_rate);

} // namespace gcos
