#include "gcos/transcribe.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace gcos {

FeatureMode parse_feature_mode(std::string_view name) {
    if (name == "gcos") return FeatureMode::gcos;
    if (name == "spectrum_baseline") return FeatureMode::spectrum_baseline;
    throw std::invalid_argument("unknown feature mode: " + std::string(name));
}

std::string_view to_string(FeatureMode mode) {
    switch (mode) {
    case FeatureMode::gcos: return "gcos";
    case FeatureMode::spectrum_baseline: return "spectrum_baseline";
    }
    throw std::invalid_argument("unknown feature mode");
}

FrameGeometry AnalysisParams::geometry() const {
    FrameGeometry g;
    g.sample_rate = sample_rate;
    g.frame_length = window_length(framing, sample_rate);
    g.n_fft = n_fft == 0 ? next_power_of_two(g.frame_length) : n_fft;
    if (g.n_fft < g.frame_length) {
        throw std::invalid_argument("n_fft " + std::to_string(g.n_fft) + " is shorter than the window length " +
                                    std::to_string(g.frame_length));
    }
    g.window = window;
    return g;
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("GCOS_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

PianoRoll detect_frames(const AudioClip& input, const PipelineConfig& cfg, unsigned threads) {
    validate(cfg.selection);
    validate(cfg.range);
    const AudioClip clip = resample_if_needed(input, cfg.analysis.sample_rate);
    const FrameGeometry geometry = cfg.analysis.geometry();
    const SalienceExtractor extractor(geometry, cfg.layers);
    const ProfilePooler pooler(geometry.n_fft, geometry.sample_rate);

    const std::size_t frames = frame_count(clip, cfg.analysis.framing);
    std::vector<PitchMask> detections(frames);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Frame frame = frame_at(clip, cfg.analysis.framing, i);
            const LayeredFeatures f = extractor.extract_all(frame.samples);
            const auto& freq = cfg.mode == FeatureMode::gcos ? f.z3.values : f.z1.values;
            const PitchProfile freq_profile = pooler.pool_frequency(freq);
            const PitchProfile quef_profile = pooler.pool_quefrency(f.z2.values);
            detections[i] = select_pitches(freq_profile, quef_profile, cfg.selection, cfg.range);
        }
    };

    if (threads == 0) threads = default_thread_count();
    const std::size_t workers = std::min<std::size_t>(threads, std::max<std::size_t>(frames, 1));
    if (workers <= 1) {
        work(0, frames);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        const std::size_t chunk = (frames + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(frames, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back([&, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    PianoRoll roll(frame_times(frames, cfg.analysis.framing.hop_seconds));
    for (std::size_t i = 0; i < frames; ++i) {
        for (int p = cfg.range.low; p <= cfg.range.high; ++p) {
            if (detections[i][static_cast<std::size_t>(p)]) roll.set(p, i, true);
        }
    }
    return roll;
}

PianoRoll transcribe(const AudioClip& clip, const PipelineConfig& cfg, unsigned threads) {
    return median_smooth(detect_frames(clip, cfg, threads), cfg.selection.median_frames);
}

} // namespace gcos
