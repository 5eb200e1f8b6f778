#include "doctest.h"

#include "gcos/config.hpp"
#include "support/temp_dir.hpp"

#include <fstream>

using namespace gcos;

TEST_CASE("defaults carry the reference parameterization") {
    const RunConfig cfg;
    const auto& p = cfg.pipeline;
    CHECK(p.layers.gamma1 == 0.24);
    CHECK(p.layers.gamma2 == 0.6);
    CHECK(p.layers.gamma3 == 1.0);
    CHECK(*p.layers.cutoff_hz == 27.5);
    CHECK(*p.layers.cutoff_quefrency_s == 0.24e-3);
    CHECK(p.analysis.window == WindowKind::blackman_harris);
    CHECK(p.analysis.framing.window_seconds == 0.18);
    CHECK(p.analysis.framing.hop_seconds == 0.01);
    CHECK(p.selection.delta == 0.8);
    CHECK(p.selection.median_frames == 25);
    CHECK(p.range.low == 33);
    CHECK(p.range.high == 96);
    CHECK(p.mode == FeatureMode::gcos);
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("empty config file yields the defaults") {
    gcos::testing::TempDir dir;
    { std::ofstream(dir / "empty.json"); }
    const auto loaded = load_run_config(dir / "empty.json");
    CHECK(to_json(loaded) == to_json(RunConfig{}));
    { std::ofstream(dir / "braces.json") << "{}"; }
    CHECK(to_json(load_run_config(dir / "braces.json")) == to_json(RunConfig{}));
}

TEST_CASE("serialization round trip is idempotent") {
    RunConfig cfg;
    cfg.pipeline.layers.gamma1 = 0.3;
    cfg.pipeline.layers.cutoff_hz.reset();
    cfg.pipeline.layers.variants[1] = ActivationVariant::box_cox;
    cfg.pipeline.analysis.window = WindowKind::blackman;
    cfg.pipeline.selection.harmonic_offsets = {0, 12};
    cfg.pipeline.range = {40, 90};
    cfg.pipeline.mode = FeatureMode::spectrum_baseline;
    cfg.seed = 99;
    cfg.noise_kind = NoiseKind::white;
    cfg.snr_db = 12.5;
    cfg.sweep_levels = {20, 3};
    cfg.threads = 2;
    cfg.input = "in.wav";
    cfg.output = "out.csv";
    const auto j = to_json(cfg);
    const auto back = run_config_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(to_json(run_config_from_json(to_json(back))) == j);

    gcos::testing::TempDir dir;
    save_run_config(dir / "cfg.json", cfg);
    CHECK(to_json(load_run_config(dir / "cfg.json")) == j);
}

TEST_CASE("unknown keys and invalid values are rejected") {
    CHECK_THROWS(run_config_from_json(nlohmann::json::parse(R"({"bogus": 1})")));
    CHECK_THROWS(run_config_from_json(nlohmann::json::parse(R"({"layers": {"gamma9": 1}})")));
    RunConfig cfg;
    cfg.pipeline.layers.gamma3 = 3.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = RunConfig{};
    cfg.pipeline.range = {90, 40};
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}
