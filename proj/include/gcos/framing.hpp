#pragma once

#include "gcos/audio.hpp"

#include <cstddef>
#include <vector>

namespace gcos {

struct FramingParams {
    double window_seconds = 0.18;
    double hop_seconds = 0.01;
};

/// One analysis segment centred on index * hop_seconds. Samples outside the
/// clip are zero.
struct Frame {
    std::size_t index = 0;
    double center_time = 0.0;
    std::vector<double> samples;
};

std::size_t window_length(const FramingParams& params, int sample_rate);
std::size_t frame_count(const AudioClip& clip, const FramingParams& params);

/// Frame i covers samples [c - L/2, c - L/2 + L) with c = round(i * hop * f_s).
Frame frame_at(const AudioClip& clip, const FramingParams& params, std::size_t index);

/// All frames, floor(duration / hop) + 1 of them.
std::vector<Frame> frame_stream(const AudioClip& clip, const FramingParams& params);

std::vector<double> frame_times(std::size_t count, double hop_seconds);

} // namespace gcos
