#include "doctest.h"

#include "gcos/annotations.hpp"
#include "gcos/audio.hpp"
#include "gcos/commands.hpp"
#include "gcos/framing.hpp"
#include "gcos/piano_roll.hpp"
#include "support/synth.hpp"
#include "support/temp_dir.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

using namespace gcos;
using namespace gcos::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("transcribe a silent file") {
    TempDir dir;
    write_wav(dir / "silent.wav", clip_of(std::vector<double>(44100, 0.0)), WavEncoding::pcm16);
    const auto r = run_cli({"transcribe", (dir / "silent.wav").string(), "--out", (dir / "roll.csv").string(),
                            "--threads", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("frames: 101") != std::string::npos);
    CHECK(r.out.find("active cells: 0") != std::string::npos);
    CHECK(load_roll(dir / "roll.csv", 0.01).active_count() == 0);
}

TEST_CASE("transcribe reports a missing file by name") {
    TempDir dir;
    const auto missing = (dir / "nope.wav").string();
    const auto r = run_cli({"transcribe", missing, "--out", (dir / "x.csv").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find(missing) != std::string::npos);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"transcribe"}).code == 1);
    CHECK(run_cli({"frobnicate"}).code == 1);
    CHECK(run_cli({"config", "--gamma1", "abc"}).code == 1);
}

TEST_CASE("invalid parameter values are rejected") {
    CHECK(run_cli({"config", "--gamma1", "5"}).code == 1);
    CHECK(run_cli({"config", "--mode", "cepstrum"}).code == 1);
    TempDir dir;
    std::ofstream(dir / "bad.json") << R"({"layers": {"gamma1": 5}})";
    const auto r = run_cli({"config", "--config", (dir / "bad.json").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("gamma") != std::string::npos);
}

TEST_CASE("transcribe is deterministic in both modes") {
    TempDir dir;
    write_wav(dir / "chord.wav", clip_of(four_note_chord(0.4)), WavEncoding::float32);
    for (const std::string mode : {"gcos", "spectrum_baseline"}) {
        const auto a = dir / ("a_" + mode + ".json");
        const auto b = dir / ("b_" + mode + ".json");
        CHECK(run_cli({"transcribe", (dir / "chord.wav").string(), "--mode", mode, "--out", a.string()}).code == 0);
        CHECK(run_cli({"transcribe", (dir / "chord.wav").string(), "--mode", mode, "--out", b.string(),
                       "--threads", "2"})
                  .code == 0);
        CHECK(slurp(a) == slurp(b));
    }
}

TEST_CASE("evaluate a roll against its own annotations") {
    TempDir dir;
    const std::vector<NoteAnnotation> notes{{0.0, 0.5, 40}, {0.2, 0.9, 70}};
    save_annotations(dir / "truth.txt", notes);
    const auto roll = annotations_to_roll(notes, frame_times(101, 0.01), PitchRange{0, 127});
    save_roll(dir / "pred.csv", roll);
    const auto r = run_cli({"evaluate", (dir / "pred.csv").string(), (dir / "truth.txt").string(), "--out",
                            (dir / "report.json").string()});
    CHECK(r.code == 0);
    for (const auto& split : {"All", "Bass", "Treble"}) CHECK(r.out.find(split) != std::string::npos);
    std::size_t hundreds = 0;
    for (std::size_t pos = r.out.find("100.00"); pos != std::string::npos; pos = r.out.find("100.00", pos + 1)) {
        ++hundreds;
    }
    CHECK(hundreds == 9);
    const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(j["all"]["f_score"].get<double>() == 1.0);
    CHECK(fs::exists(dir / "report.txt"));
}

TEST_CASE("evaluate empty against empty") {
    TempDir dir;
    save_annotations(dir / "truth.txt", std::vector<NoteAnnotation>{});
    save_roll(dir / "pred.json", PianoRoll(frame_times(20, 0.01)));
    const auto r = run_cli({"evaluate", (dir / "pred.json").string(), (dir / "truth.txt").string(), "--out",
                            (dir / "report.json").string()});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(j["all"]["n_tp"].get<int>() == 0);
    CHECK(j["all"]["n_fp"].get<int>() == 0);
    CHECK(j["all"]["n_fn"].get<int>() == 0);
    CHECK(j["all"]["f_score"].get<double>() == 0.0);
}

TEST_CASE("evaluate reports mismatched frame counts") {
    TempDir dir;
    save_roll(dir / "pred.csv", PianoRoll(frame_times(20, 0.01)));
    save_roll(dir / "truth.csv", PianoRoll(frame_times(23, 0.01)));
    const auto r = run_cli({"evaluate", (dir / "pred.csv").string(), (dir / "truth.csv").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("20") != std::string::npos);
    CHECK(r.err.find("23") != std::string::npos);
}

TEST_CASE("degrade writes a deterministic WAV and sidecar") {
    TempDir dir;
    std::vector<double> sine(22050);
    for (std::size_t i = 0; i < sine.size(); ++i) sine[i] = 0.5 * std::sin(0.05 * static_cast<double>(i));
    write_wav(dir / "sine.wav", clip_of(sine), WavEncoding::float32);
    const auto in = (dir / "sine.wav").string();
    CHECK(run_cli({"degrade", in, "--snr-db", "0", "--seed", "4", "--out", (dir / "a.wav").string()}).code == 0);
    CHECK(run_cli({"degrade", in, "--snr-db", "0", "--seed", "4", "--out", (dir / "b.wav").string()}).code == 0);
    CHECK(slurp(dir / "a.wav") == slurp(dir / "b.wav"));
    const auto side = nlohmann::json::parse(slurp(dir / "a.json"));
    CHECK(side["snr_db"].get<double>() == 0.0);
    CHECK(std::abs(side["measured_snr_db"].get<double>()) < 0.01);
    CHECK(side["clean"].get<bool>() == false);

    // Re-measure from the written file against the clean input.
    const auto noisy = load_audio(dir / "a.wav");
    const auto clean = load_audio(in);
    double ps = 0.0, pn = 0.0;
    for (std::size_t i = 0; i < clean.samples.size(); ++i) {
        ps += clean.samples[i] * clean.samples[i];
        const double d = noisy.samples[i] - clean.samples[i];
        pn += d * d;
    }
    CHECK(std::abs(10.0 * std::log10(ps / pn)) < 0.01);

    CHECK(run_cli({"degrade", in, "--out", (dir / "c.wav").string()}).code == 0);
    const auto clean_side = nlohmann::json::parse(slurp(dir / "c.json"));
    CHECK(clean_side["clean"].get<bool>());
    CHECK(load_audio(dir / "c.wav").samples == clean.samples);
}

TEST_CASE("sweep output cardinality") {
    TempDir dir;
    fs::create_directories(dir / "empty");
    const auto r0 = run_cli({"sweep", (dir / "empty").string(), "--out", (dir / "empty.csv").string()});
    CHECK(r0.code == 0);
    CHECK(lines_of(slurp(dir / "empty.csv")) ==
          std::vector<std::string>{"file,mode,snr_db,precision,recall,f_score,n_tp,n_fp,n_fn"});

    fs::create_directories(dir / "one");
    write_wav(dir / "one" / "tone.wav", clip_of(sum_of_partials(harmonic_series(220.0, 1, 6, 0.7), 0.4, 44100, 1)),
              WavEncoding::float32);
    save_annotations(dir / "one" / "tone.txt", std::vector<NoteAnnotation>{{0.0, 0.4, 57}});
    const auto r1 = run_cli({"sweep", (dir / "one").string(), "--levels", "10", "--threads", "1", "--out",
                             (dir / "one.csv").string()});
    CHECK(r1.code == 0);
    const auto rows = lines_of(slurp(dir / "one.csv"));
    REQUIRE(rows.size() == 1 + 4 + 4);
    std::size_t pooled = 0, clean = 0;
    for (const auto& row : rows) {
        pooled += row.rfind("POOLED,", 0) == 0 ? 1 : 0;
        clean += row.find(",clean,") != std::string::npos ? 1 : 0;
    }
    CHECK(pooled == 4);
    CHECK(clean == 4);
}

TEST_CASE("sweep reports per-file failures and continues") {
    TempDir dir;
    fs::create_directories(dir / "c");
    write_wav(dir / "c" / "good.wav", clip_of(sum_of_partials(harmonic_series(220.0, 1, 4, 0.7), 0.3, 44100, 1)),
              WavEncoding::float32);
    save_annotations(dir / "c" / "good.txt", std::vector<NoteAnnotation>{{0.0, 0.3, 57}});
    write_wav(dir / "c" / "orphan.wav", clip_of(std::vector<double>(1000, 0.1)), WavEncoding::float32);
    const auto r = run_cli({"sweep", (dir / "c").string(), "--levels", "", "--out", (dir / "s.csv").string()});
    CHECK(r.code == 2);
    CHECK(r.out.find("orphan.wav") != std::string::npos);
    CHECK(slurp(dir / "s.csv").find("good.wav") != std::string::npos);
}

TEST_CASE("features dump parses with matching lengths") {
    TempDir dir;
    write_wav(dir / "silent.wav", clip_of(std::vector<double>(22050, 0.0)), WavEncoding::float32);
    CHECK(run_cli({"features", (dir / "silent.wav").string(), "--time", "0.2", "--out", (dir / "f.json").string()})
              .code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "f.json"));
    const std::size_t n = j["frequency_hz"].size();
    CHECK(n == 4097);
    CHECK(j["lag_seconds"].size() == n);
    for (const auto* key : {"z1", "z2", "z3", "acf_of_spectrum"}) {
        CHECK(j[key].size() == n);
        for (const auto& v : j[key]) CHECK(v.get<double>() == 0.0);
    }
    CHECK(run_cli({"features", (dir / "silent.wav").string(), "--time", "5", "--out", (dir / "g.json").string()})
              .code == 2);
    CHECK(run_cli({"features", (dir / "silent.wav").string(), "--time", "0.1", "--out", (dir / "f.csv").string()})
              .code == 0);
    CHECK(lines_of(slurp(dir / "f.csv")).size() == 4098);
}

TEST_CASE("features dump of the chord favours the low notes in z3") {
    TempDir dir;
    write_wav(dir / "chord.wav", clip_of(four_note_chord(0.5)), WavEncoding::float32);
    REQUIRE(run_cli({"features", (dir / "chord.wav").string(), "--time", "0.25", "--out",
                     (dir / "f.json").string()})
                .code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "f.json"));
    const auto freq = j["frequency_hz"].get<std::vector<double>>();
    const auto z1 = j["z1"].get<std::vector<double>>();
    const auto z3 = j["z3"].get<std::vector<double>>();
    auto peak_near = [&](const std::vector<double>& z, double hz) {
        double best = 0.0;
        for (std::size_t k = 1; k + 1 < z.size(); ++k) {
            if (std::abs(12.0 * std::log2(freq[k] / hz)) <= 1.0 && z[k] >= z[k - 1] && z[k] >= z[k + 1]) {
                best = std::max(best, z[k]);
            }
        }
        return best;
    };
    // Weak fundamentals: below their second harmonic in z1, still a peak in z3.
    for (double hz : {77.78, 116.54}) {
        CAPTURE(hz);
        CHECK(peak_near(z3, hz) > 0.0);
        CHECK(peak_near(z1, hz) < peak_near(z1, 2.0 * hz));
    }
}

TEST_CASE("help lists every flag with its default") {
    for (const std::string cmd : {"transcribe", "evaluate", "degrade", "sweep", "features", "config"}) {
        const auto r = run_cli({cmd, "--help"});
        CAPTURE(cmd);
        CHECK(r.code == 0);
        for (const auto* flag : {"--config", "--mode", "--gamma1", "--gamma2", "--gamma3", "--fc-hz", "--qc-ms",
                                 "--window", "--window-sec", "--hop-sec", "--snr-db", "--seed", "--pitch-low",
                                 "--pitch-high", "--threads", "--out"}) {
            CHECK(r.out.find(flag) != std::string::npos);
        }
        for (const auto* def : {"0.24", "0.6", "27.5", "blackman_harris", "0.18", "0.01", "gcos", "33", "96"}) {
            CHECK(r.out.find(def) != std::string::npos);
        }
    }
}

TEST_CASE("config command prints and round-trips the effective configuration") {
    TempDir dir;
    const auto r = run_cli({"config", "--gamma1", "0.5", "--out", (dir / "c.json").string()});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "c.json"));
    CHECK(j["layers"]["gamma1"].get<double>() == 0.5);
    const auto again = run_cli({"config", "--config", (dir / "c.json").string()});
    CHECK(again.code == 0);
    CHECK(nlohmann::json::parse(again.out)["layers"]["gamma1"].get<double>() == 0.5);
    const auto overridden = run_cli({"config", "--config", (dir / "c.json").string(), "--gamma1", "0.3"});
    CHECK(nlohmann::json::parse(overridden.out)["layers"]["gamma1"].get<double>() == 0.3);
}
