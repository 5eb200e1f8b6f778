#include "gcos/framing.hpp"

#include <cmath>
#include <stdexcept>

namespace gcos {
namespace {

void check(const FramingParams& params) {
    if (!(params.window_seconds > 0.0) || !(params.hop_seconds > 0.0)) {
        throw std::invalid_argument("window and hop durations must be positive");
    }
}

} // namespace

std::size_t window_length(const FramingParams& params, int sample_rate) {
    check(params);
    const auto length = static_cast<std::size_t>(std::llround(params.window_seconds * sample_rate));
    if (length < 2) {
        throw std::invalid_argument("analysis window shorter than two samples");
    }
    return length;
}

std::size_t frame_count(const AudioClip& clip, const FramingParams& params) {
    check(params);
    const double hop_samples = params.hop_seconds * clip.sample_rate;
    // 1e-9 slack: 44100 / 441 gives 100.
    return static_cast<std::size_t>(std::floor(static_cast<double>(clip.samples.size()) / hop_samples + 1e-9)) + 1;
}

Frame frame_at(const AudioClip& clip, const FramingParams& params, std::size_t index) {
    const std::size_t length = window_length(params, clip.sample_rate);
    const double hop_samples = params.hop_seconds * clip.sample_rate;
    const long long center = std::llround(static_cast<double>(index) * hop_samples);
    const long long start = center - static_cast<long long>(length / 2);
    const auto n = static_cast<long long>(clip.samples.size());

    Frame frame;
    frame.index = index;
    frame.center_time = static_cast<double>(index) * params.hop_seconds;
    frame.samples.assign(length, 0.0);
    for (std::size_t j = 0; j < length; ++j) {
        const long long s = start + static_cast<long long>(j);
        if (s >= 0 && s < n) {
            frame.samples[j] = clip.samples[static_cast<std::size_t>(s)];
        }
    }
    return frame;
}

std::vector<Frame> frame_stream(const AudioClip& clip, const FramingParams& params) {
    const std::size_t count = frame_count(clip, params);
    std::vector<Frame> frames;
    frames.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        frames.push_back(frame_at(clip, params, i));
    }
    return frames;
}

std::vector<double> frame_times(std::size_t count, double hop_seconds) {
    std::vector<double> times(count);
    for (std::size_t i = 0; i < count; ++i) {
        times[i] = static_cast<double>(i) * hop_seconds;
    }
    return times;
}

} // namespace gcos
