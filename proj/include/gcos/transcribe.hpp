#pragma once

#include "gcos/audio.hpp"
#include "gcos/framing.hpp"
#include "gcos/piano_roll.hpp"
#include "gcos/profile.hpp"
#include "gcos/salience.hpp"

#include <string_view>

namespace gcos {

/// Which frequency-domain feature feeds the harmonic conditions: the GCoS
/// (z3) or the magnitude spectrum (z1). The lag-domain feature is z2 in both.
enum class FeatureMode { gcos, spectrum_baseline };

FeatureMode parse_feature_mode(std::string_view name);
std::string_view to_string(FeatureMode mode);

struct AnalysisParams {
    int sample_rate = 44100;
    WindowKind window = WindowKind::blackman_harris;
    FramingParams framing{};
    /// 0 selects the next power of two above the window length.
    std::size_t n_fft = 0;

    FrameGeometry geometry() const;
};

struct PipelineConfig {
    AnalysisParams analysis{};
    LayerConfig layers{};
    SelectionParams selection{};
    PitchRange range{};
    FeatureMode mode = FeatureMode::gcos;
};

/// Thread count from GCOS_THREADS, else std::thread::hardware_concurrency().
unsigned default_thread_count();

/// Per-frame pitch detection before median smoothing.
PianoRoll detect_frames(const AudioClip& clip, const PipelineConfig& cfg, unsigned threads = 0);

/// Full pipeline: resample to the analysis rate, frame, extract features, pool
/// profiles, select pitches, then median-smooth the roll. The result does not
/// depend on the thread count.
PianoRoll transcribe(const AudioClip& clip, const PipelineConfig& cfg, unsigned threads = 0);

} // namespace gcos
