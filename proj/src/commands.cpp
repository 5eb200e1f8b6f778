#include "gcos/commands.hpp"

#include "gcos/annotations.hpp"
#include "gcos/audio.hpp"
#include "gcos/config.hpp"
#include "gcos/degrade.hpp"
#include "gcos/error.hpp"
#include "gcos/eval.hpp"
#include "gcos/framing.hpp"
#include "gcos/salience.hpp"
#include "gcos/transcribe.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace gcos::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Flag values; an empty optional means "not given", so the config file (or
/// the built-in default) applies.
struct Overrides {
    std::string config;
    std::optional<std::string> mode;
    std::optional<double> gamma1, gamma2, gamma3;
    std::optional<double> fc_hz, qc_ms;
    std::optional<std::string> window;
    std::optional<double> window_sec, hop_sec;
    std::optional<double> snr_db;
    std::optional<std::uint64_t> seed;
    std::optional<int> pitch_low, pitch_high;
    std::optional<unsigned> threads;
    std::optional<std::string> out;
};

void add_common_flags(CLI::App& cmd, Overrides& o) {
    const RunConfig d;
    const auto& p = d.pipeline;
    cmd.add_option("--config", o.config, "JSON run configuration (flags override it)");
    cmd.add_option("--mode", o.mode, "Frequency feature: gcos or spectrum_baseline")
        ->default_str(std::string(to_string(p.mode)));
    cmd.add_option("--gamma1", o.gamma1, "Layer-1 activation exponent")->default_str("0.24");
    cmd.add_option("--gamma2", o.gamma2, "Layer-2 activation exponent")->default_str("0.6");
    cmd.add_option("--gamma3", o.gamma3, "Layer-3 activation exponent")->default_str("1.0");
    cmd.add_option("--fc-hz", o.fc_hz, "High-pass cutoff frequency in Hz")->default_str("27.5");
    cmd.add_option("--qc-ms", o.qc_ms, "Lifter cutoff quefrency in ms")->default_str("0.24");
    cmd.add_option("--window", o.window, "Analysis window: blackman or blackman_harris")
        ->default_str(std::string(to_string(p.analysis.window)));
    cmd.add_option("--window-sec", o.window_sec, "Window length in seconds")->default_str("0.18");
    cmd.add_option("--hop-sec", o.hop_sec, "Hop size in seconds")->default_str("0.01");
    cmd.add_option("--snr-db", o.snr_db, "Pink-noise SNR in dB (omit for clean)")->default_str("clean");
    cmd.add_option("--seed", o.seed, "Noise seed")->default_str("0");
    cmd.add_option("--pitch-low", o.pitch_low, "Lowest MIDI pitch considered")->default_str("33 (A1)");
    cmd.add_option("--pitch-high", o.pitch_high, "Highest MIDI pitch considered")->default_str("96 (C7)");
    cmd.add_option("--threads", o.threads, "Worker threads (default: $GCOS_THREADS or all cores)");
    cmd.add_option("--out", o.out, "Output path");
}

RunConfig resolve(const Overrides& o) {
    RunConfig cfg = o.config.empty() ? RunConfig{} : load_run_config(o.config);
    auto& p = cfg.pipeline;
    try {
        if (o.mode) p.mode = parse_feature_mode(*o.mode);
        if (o.gamma1) p.layers.gamma1 = *o.gamma1;
        if (o.gamma2) p.layers.gamma2 = *o.gamma2;
        if (o.gamma3) p.layers.gamma3 = *o.gamma3;
        if (o.fc_hz) p.layers.cutoff_hz = *o.fc_hz;
        if (o.qc_ms) p.layers.cutoff_quefrency_s = *o.qc_ms * 1e-3;
        if (o.window) p.analysis.window = parse_window_kind(*o.window);
        if (o.window_sec) p.analysis.framing.window_seconds = *o.window_sec;
        if (o.hop_sec) p.analysis.framing.hop_seconds = *o.hop_sec;
        if (o.snr_db) cfg.snr_db = *o.snr_db;
        if (o.seed) cfg.seed = *o.seed;
        if (o.pitch_low) p.range.low = *o.pitch_low;
        if (o.pitch_high) p.range.high = *o.pitch_high;
        if (o.threads) cfg.threads = *o.threads;
        if (o.out) cfg.output = *o.out;
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError(e.what());
    }
    return cfg;
}

std::string require_output(const RunConfig& cfg) {
    if (cfg.output.empty()) {
        throw CLI::RequiredError("--out");
    }
    return cfg.output;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write " + path.string());
    f << text;
}

int cmd_transcribe(const std::string& audio_path, const RunConfig& cfg, std::ostream& out) {
    const std::string dest = require_output(cfg);
    const AudioClip clip = load_audio(audio_path);
    const PianoRoll roll = transcribe(clip, cfg.pipeline, cfg.threads);
    save_roll(dest, roll);
    out << "frames: " << roll.frame_count() << "\n";
    out << "active cells: " << roll.active_count() << "\n";
    return kSuccess;
}

int cmd_evaluate(const std::string& pred_path, const std::string& truth_path, const RunConfig& cfg,
                 std::ostream& out) {
    const double hop = cfg.pipeline.analysis.framing.hop_seconds;
    const PianoRoll pred = load_roll(pred_path, hop);
    const fs::path truth_file(truth_path);
    PianoRoll truth;
    if (truth_file.extension() == ".csv" || truth_file.extension() == ".json") {
        truth = load_roll(truth_file, hop);
    } else {
        const auto notes = load_annotations(truth_file);
        truth = annotations_to_roll(notes, pred.frame_times(), PitchRange{0, 127});
    }
    const SplitReports reports = score_splits(pred, truth);
    const std::string table = format_report_table(reports, fs::path(pred_path).stem().string());
    out << table;
    if (!cfg.output.empty()) {
        fs::path json_path(cfg.output);
        write_text(json_path, report_to_json(reports) + "\n");
        write_text(fs::path(json_path).replace_extension(".txt"), table);
    }
    return kSuccess;
}

int cmd_degrade(const std::string& audio_path, const RunConfig& cfg, std::ostream& out) {
    const fs::path dest = require_output(cfg);
    const AudioClip clip = load_audio(audio_path);
    DegradeSpec spec;
    spec.noise_kind = cfg.noise_kind;
    spec.seed = cfg.seed;
    spec.snr_db = cfg.snr_db.value_or(kCleanSnr);
    const Degraded result = degrade(clip, spec);
    write_wav(dest, result.clip, WavEncoding::float32);

    json sidecar;
    sidecar["source"] = audio_path;
    sidecar["noise_kind"] = to_string(spec.noise_kind);
    sidecar["seed"] = spec.seed;
    sidecar["clean"] = !cfg.snr_db.has_value();
    if (cfg.snr_db) {
        sidecar["snr_db"] = *cfg.snr_db;
        sidecar["measured_snr_db"] = snr_db(clip.samples, result.noise);
    } else {
        sidecar["snr_db"] = nullptr;
    }
    const fs::path sidecar_path = fs::path(dest).replace_extension(".json");
    write_text(sidecar_path, sidecar.dump(2) + "\n");
    out << "wrote " << dest.string() << " and " << sidecar_path.string() << "\n";
    return kSuccess;
}

std::string format_ratio(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string snr_label(const std::optional<double>& snr) {
    if (!snr) return "clean";
    std::ostringstream s;
    s << *snr;
    return s.str();
}

void write_sweep_line(std::ostream& csv, const std::string& file, FeatureMode mode,
                      const std::optional<double>& snr, const EvalReport& r) {
    csv << file << ',' << to_string(mode) << ',' << snr_label(snr) << ',' << format_ratio(r.precision) << ','
        << format_ratio(r.recall) << ',' << format_ratio(r.f_score) << ',' << r.counts.tp << ',' << r.counts.fp
        << ',' << r.counts.fn << '\n';
}

int cmd_sweep(const std::string& corpus_dir, const std::vector<double>& levels, const RunConfig& cfg,
              std::ostream& out, std::ostream& err) {
    const std::string dest = require_output(cfg);
    if (!fs::is_directory(corpus_dir)) {
        throw DataError("corpus directory not found: " + corpus_dir);
    }
    std::vector<fs::path> wavs;
    for (const auto& entry : fs::directory_iterator(corpus_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".wav") wavs.push_back(entry.path());
    }
    std::sort(wavs.begin(), wavs.end());

    std::ostringstream csv;
    csv << "file,mode,snr_db,precision,recall,f_score,n_tp,n_fp,n_fn\n";
    // Pooled counts keyed by (mode, level index); index 0 is the clean row.
    std::map<std::pair<int, std::size_t>, SplitReports> pooled;
    std::vector<std::string> failures;
    SweepOptions options{cfg.noise_kind, cfg.seed, cfg.threads};
    for (const auto& wav : wavs) {
        const fs::path notes_path = fs::path(wav).replace_extension(".txt");
        try {
            const AudioClip clip = load_audio(wav);
            const auto notes = load_annotations(notes_path);
            const auto rows = snr_sweep(clip, notes, levels, cfg.sweep_modes, cfg.pipeline, options);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const auto& row = rows[r];
                write_sweep_line(csv, wav.filename().string(), row.mode, row.snr_db, row.reports.all);
                const std::size_t level_index = r % (levels.size() + 1);
                pooled[{static_cast<int>(row.mode), level_index}] += row.reports;
            }
        } catch (const std::exception& e) {
            failures.push_back(wav.filename().string() + ": " + e.what());
            err << "sweep: skipping " << wav.filename().string() << ": " << e.what() << "\n";
        }
    }
    for (const auto& [key, reports] : pooled) {
        const auto mode = static_cast<FeatureMode>(key.first);
        const std::optional<double> snr =
            key.second == 0 ? std::nullopt : std::optional<double>(levels[key.second - 1]);
        write_sweep_line(csv, "POOLED", mode, snr, reports.all);
    }
    write_text(dest, csv.str());
    out << "files: " << wavs.size() << ", failed: " << failures.size() << "\n";
    for (const auto& f : failures) out << "  failed " << f << "\n";
    return failures.empty() ? kSuccess : kDataError;
}

int cmd_features(const std::string& audio_path, double time, const RunConfig& cfg, std::ostream& out) {
    const std::string dest = require_output(cfg);
    const auto& analysis = cfg.pipeline.analysis;
    const AudioClip clip = resample_if_needed(load_audio(audio_path), analysis.sample_rate);
    const std::size_t frames = frame_count(clip, analysis.framing);
    const double max_time = static_cast<double>(frames - 1) * analysis.framing.hop_seconds;
    if (!(time >= 0.0) || time > clip.duration()) {
        throw DataError("time " + std::to_string(time) + " s lies outside the clip (0 .. " +
                        std::to_string(clip.duration()) + " s)");
    }
    const auto index = static_cast<std::size_t>(
        std::llround(std::min(time, max_time) / analysis.framing.hop_seconds));
    const Frame frame = frame_at(clip, analysis.framing, index);

    const FrameGeometry geometry = analysis.geometry();
    const SalienceExtractor extractor(geometry, cfg.pipeline.layers);
    const LayeredFeatures f = extractor.extract_all(frame.samples);
    LayerConfig acf_cfg = cfg.pipeline.layers;
    acf_cfg.gamma1 = 2.0;
    acf_cfg.gamma2 = 1.0;
    acf_cfg.gamma3 = 1.0;
    acf_cfg.variants = {ActivationVariant::power, ActivationVariant::power, ActivationVariant::power};
    const LayeredFeatures acf = SalienceExtractor(geometry, acf_cfg).extract_all(frame.samples);

    const std::size_t half = geometry.n_fft / 2 + 1;
    std::vector<double> freq_axis(half), lag_axis(half);
    for (std::size_t k = 0; k < half; ++k) {
        freq_axis[k] = static_cast<double>(k) * geometry.bin_hz();
        lag_axis[k] = static_cast<double>(k) / geometry.sample_rate;
    }
    const auto z1 = normalized_positive_half(f.z1.values);
    const auto z2 = normalized_positive_half(f.z2.values);
    const auto z3 = normalized_positive_half(f.z3.values);
    const auto acf_spec = normalized_positive_half(acf.z3.values);

    if (fs::path(dest).extension() == ".csv") {
        std::ostringstream csv;
        csv.precision(17);
        csv << "bin,frequency_hz,lag_seconds,z1,z2,z3,acf_of_spectrum\n";
        for (std::size_t k = 0; k < half; ++k) {
            csv << k << ',' << freq_axis[k] << ',' << lag_axis[k] << ',' << z1[k] << ',' << z2[k] << ',' << z3[k]
                << ',' << acf_spec[k] << '\n';
        }
        write_text(dest, csv.str());
    } else {
        json j;
        j["requested_time"] = time;
        j["frame_index"] = index;
        j["frame_time"] = frame.center_time;
        j["sample_rate"] = geometry.sample_rate;
        j["n_fft"] = geometry.n_fft;
        j["gammas"] = {cfg.pipeline.layers.gamma1, cfg.pipeline.layers.gamma2, cfg.pipeline.layers.gamma3};
        j["normalization"] = "unit l2 norm over bins 0..n_fft/2";
        j["frequency_hz"] = freq_axis;
        j["lag_seconds"] = lag_axis;
        j["z1"] = z1;
        j["z2"] = z2;
        j["z3"] = z3;
        j["acf_of_spectrum"] = acf_spec;
        write_text(dest, j.dump() + "\n");
    }
    out << "frame " << index << " at " << frame.center_time << " s written to " << dest << "\n";
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-pitch estimation with layered cepstral salience features"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    Overrides o;
    std::string audio, pred, truth, corpus;
    double time = 0.0;
    std::vector<double> levels;
    bool levels_given = false;

    auto* transcribe_cmd = app.add_subcommand("transcribe", "Transcribe a WAV file into a piano roll (CSV or JSON)");
    transcribe_cmd->add_option("audio", audio, "Input WAV")->required();
    add_common_flags(*transcribe_cmd, o);

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a piano roll against ground truth");
    evaluate_cmd->add_option("pred", pred, "Predicted roll (.csv or .json)")->required();
    evaluate_cmd->add_option("truth", truth, "Annotation text file, or a roll (.csv/.json)")->required();
    add_common_flags(*evaluate_cmd, o);

    auto* degrade_cmd = app.add_subcommand("degrade", "Add pink noise at a given SNR; writes float WAV + JSON sidecar");
    degrade_cmd->add_option("audio", audio, "Input WAV")->required();
    add_common_flags(*degrade_cmd, o);

    auto* sweep_cmd = app.add_subcommand("sweep", "Noise-robustness sweep over a corpus of (wav, txt) pairs");
    sweep_cmd->add_option("corpus", corpus, "Directory of name.wav + name.txt pairs")->required();
    sweep_cmd->add_option("--levels", levels, "SNR levels in dB")
        ->delimiter(',')
        ->default_str("30,25,20,15,10,5,0")
        ->each([&](const std::string&) { levels_given = true; });
    add_common_flags(*sweep_cmd, o);

    auto* features_cmd = app.add_subcommand("features", "Dump z1, z2, z3 and the ACF of spectrum for one frame");
    features_cmd->add_option("audio", audio, "Input WAV")->required();
    features_cmd->add_option("--time", time, "Frame time in seconds")->required();
    add_common_flags(*features_cmd, o);

    auto* config_cmd = app.add_subcommand("config", "Print the effective run configuration as JSON");
    add_common_flags(*config_cmd, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        const RunConfig cfg = resolve(o);
        if (transcribe_cmd->parsed()) return cmd_transcribe(audio, cfg, out);
        if (evaluate_cmd->parsed()) return cmd_evaluate(pred, truth, cfg, out);
        if (degrade_cmd->parsed()) return cmd_degrade(audio, cfg, out);
        if (sweep_cmd->parsed()) {
            return cmd_sweep(corpus, levels_given ? levels : cfg.sweep_levels, cfg, out, err);
        }
        if (features_cmd->parsed()) return cmd_features(audio, time, cfg, out);
        if (config_cmd->parsed()) {
            const std::string text = to_json(cfg).dump(2) + "\n";
            if (o.out) {
                write_text(*o.out, text);
            } else {
                out << text;
            }
            return kSuccess;
        }
        return kUsageError;
    } catch (const CLI::CallForHelp&) {
        auto* target = &app;
        for (auto* sub : app.get_subcommands()) target = sub;
        out << target->help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
}

} // namespace gcos::cli
