#pragma once

#include "gcos/degrade.hpp"
#include "gcos/transcribe.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gcos {

/// Every tunable of a run. Defaults reproduce the reference parameterization:
/// gamma = (0.24, 0.6, 1), f_c = 27.5 Hz, q_c = 0.24 ms, Blackman-Harris
/// 0.18 s window, 0.01 s hop, delta = 0.8, 25-frame median, pitches A1..C7.
struct RunConfig {
    PipelineConfig pipeline{};
    std::uint64_t seed = 0;
    NoiseKind noise_kind = NoiseKind::pink;
    std::optional<double> snr_db;
    std::vector<double> sweep_levels{30, 25, 20, 15, 10, 5, 0};
    std::vector<FeatureMode> sweep_modes{FeatureMode::gcos, FeatureMode::spectrum_baseline};
    unsigned threads = 0;
    std::string input;
    std::string output;
};

nlohmann::json to_json(const RunConfig& cfg);

/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig run_config_from_json(const nlohmann::json& j);

/// An empty file yields the defaults.
RunConfig load_run_config(const std::filesystem::path& path);
void save_run_config(const std::filesystem::path& path, const RunConfig& cfg);

/// Range and cross-field checks; throws std::invalid_argument.
void validate(const RunConfig& cfg);

} // namespace gcos
