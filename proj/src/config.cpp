#include "gcos/config.hpp"
#include "gcos/error.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gcos {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<double> read_optional(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
    if (!j.is_object()) {
        throw DataError("config section '" + where + "' must be an object");
    }
    std::set<std::string> allowed(known.begin(), known.end());
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw DataError("unknown config key '" + where + (where.empty() ? "" : ".") + it.key() + "'");
        }
    }
}

} // namespace

json to_json(const RunConfig& cfg) {
    const auto& p = cfg.pipeline;
    json layers = {
        {"gamma1", p.layers.gamma1},
        {"gamma2", p.layers.gamma2},
        {"gamma3", p.layers.gamma3},
        {"activations",
         {to_string(p.layers.variants[0]), to_string(p.layers.variants[1]), to_string(p.layers.variants[2])}},
        {"cutoff_hz", optional_number(p.layers.cutoff_hz)},
        {"cutoff_quefrency_s", optional_number(p.layers.cutoff_quefrency_s)},
        {"pre_cutoff_hz", optional_number(p.layers.pre_cutoff_hz)},
    };
    std::vector<std::string> modes;
    for (FeatureMode m : cfg.sweep_modes) modes.emplace_back(to_string(m));
    return {
        {"analysis",
         {{"sample_rate", p.analysis.sample_rate},
          {"window", to_string(p.analysis.window)},
          {"window_seconds", p.analysis.framing.window_seconds},
          {"hop_seconds", p.analysis.framing.hop_seconds},
          {"n_fft", p.analysis.n_fft}}},
        {"layers", layers},
        {"selection",
         {{"harmonic_offsets", p.selection.harmonic_offsets},
          {"delta", p.selection.delta},
          {"median_frames", p.selection.median_frames},
          {"positivity_epsilon", p.selection.positivity_epsilon}}},
        {"pitch_range", {{"low", p.range.low}, {"high", p.range.high}}},
        {"mode", to_string(p.mode)},
        {"seed", cfg.seed},
        {"noise", to_string(cfg.noise_kind)},
        {"snr_db", optional_number(cfg.snr_db)},
        {"sweep_levels", cfg.sweep_levels},
        {"sweep_modes", modes},
        {"threads", cfg.threads},
        {"input", cfg.input},
        {"output", cfg.output},
    };
}

RunConfig run_config_from_json(const json& j) {
    RunConfig cfg;
    auto& p = cfg.pipeline;
    try {
        reject_unknown(j, {"analysis", "layers", "selection", "pitch_range", "mode", "seed", "noise", "snr_db",
                           "sweep_levels", "sweep_modes", "threads", "input", "output"},
                       "");
        if (j.contains("analysis")) {
            const auto& a = j["analysis"];
            reject_unknown(a, {"sample_rate", "window", "window_seconds", "hop_seconds", "n_fft"}, "analysis");
            if (a.contains("sample_rate")) p.analysis.sample_rate = a["sample_rate"].get<int>();
            if (a.contains("window")) p.analysis.window = parse_window_kind(a["window"].get<std::string>());
            if (a.contains("window_seconds")) p.analysis.framing.window_seconds = a["window_seconds"].get<double>();
            if (a.contains("hop_seconds")) p.analysis.framing.hop_seconds = a["hop_seconds"].get<double>();
            if (a.contains("n_fft")) p.analysis.n_fft = a["n_fft"].get<std::size_t>();
        }
        if (j.contains("layers")) {
            const auto& l = j["layers"];
            reject_unknown(l, {"gamma1", "gamma2", "gamma3", "activations", "cutoff_hz", "cutoff_quefrency_s",
                               "pre_cutoff_hz"},
                           "layers");
            if (l.contains("gamma1")) p.layers.gamma1 = l["gamma1"].get<double>();
            if (l.contains("gamma2")) p.layers.gamma2 = l["gamma2"].get<double>();
            if (l.contains("gamma3")) p.layers.gamma3 = l["gamma3"].get<double>();
            if (l.contains("activations")) {
                const auto names = l["activations"].get<std::vector<std::string>>();
                if (names.size() != 3) throw DataError("layers.activations must list three variants");
                for (std::size_t i = 0; i < 3; ++i) p.layers.variants[i] = parse_activation_variant(names[i]);
            }
            if (l.contains("cutoff_hz")) p.layers.cutoff_hz = read_optional(l["cutoff_hz"]);
            if (l.contains("cutoff_quefrency_s")) p.layers.cutoff_quefrency_s = read_optional(l["cutoff_quefrency_s"]);
            if (l.contains("pre_cutoff_hz")) p.layers.pre_cutoff_hz = read_optional(l["pre_cutoff_hz"]);
        }
        if (j.contains("selection")) {
            const auto& s = j["selection"];
            reject_unknown(s, {"harmonic_offsets", "delta", "median_frames", "positivity_epsilon"}, "selection");
            if (s.contains("harmonic_offsets")) p.selection.harmonic_offsets = s["harmonic_offsets"].get<std::vector<int>>();
            if (s.contains("delta")) p.selection.delta = s["delta"].get<double>();
            if (s.contains("median_frames")) p.selection.median_frames = s["median_frames"].get<int>();
            if (s.contains("positivity_epsilon")) p.selection.positivity_epsilon = s["positivity_epsilon"].get<double>();
        }
        if (j.contains("pitch_range")) {
            const auto& r = j["pitch_range"];
            reject_unknown(r, {"low", "high"}, "pitch_range");
            if (r.contains("low")) p.range.low = r["low"].get<int>();
            if (r.contains("high")) p.range.high = r["high"].get<int>();
        }
        if (j.contains("mode")) p.mode = parse_feature_mode(j["mode"].get<std::string>());
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("noise")) cfg.noise_kind = parse_noise_kind(j["noise"].get<std::string>());
        if (j.contains("snr_db")) cfg.snr_db = read_optional(j["snr_db"]);
        if (j.contains("sweep_levels")) cfg.sweep_levels = j["sweep_levels"].get<std::vector<double>>();
        if (j.contains("sweep_modes")) {
            cfg.sweep_modes.clear();
            for (const auto& name : j["sweep_modes"].get<std::vector<std::string>>()) {
                cfg.sweep_modes.push_back(parse_feature_mode(name));
            }
        }
        if (j.contains("threads")) cfg.threads = j["threads"].get<unsigned>();
        if (j.contains("input")) cfg.input = j["input"].get<std::string>();
        if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    } catch (const json::exception& e) {
        throw DataError(std::string("invalid config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("invalid config: ") + e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open config file: " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        return RunConfig{};
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    try {
        RunConfig cfg = run_config_from_json(j);
        validate(cfg);
        return cfg;
    } catch (const std::invalid_argument& e) {
        throw DataError(path.string() + ": " + e.what());
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void save_run_config(const std::filesystem::path& path, const RunConfig& cfg) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write config file: " + path.string());
    }
    out << to_json(cfg).dump(2) << '\n';
}

void validate(const RunConfig& cfg) {
    const auto& p = cfg.pipeline;
    if (p.analysis.sample_rate <= 0) throw std::invalid_argument("sample_rate must be positive");
    const FrameGeometry g = p.analysis.geometry();
    if (g.n_fft < g.frame_length) throw std::invalid_argument("n_fft must be at least the window length");
    validate(p.layers);
    if (p.layers.cutoff_hz && *p.layers.cutoff_hz >= p.analysis.sample_rate / 2.0) {
        throw std::invalid_argument("cutoff_hz must be below the Nyquist frequency");
    }
    validate(p.selection);
    validate(p.range);
    if (cfg.snr_db && !std::isfinite(*cfg.snr_db)) throw std::invalid_argument("snr_db must be finite");
}

} // namespace gcos
