#pragma once

#include "gcos/annotations.hpp"
#include "gcos/degrade.hpp"
#include "gcos/piano_roll.hpp"
#include "gcos/transcribe.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gcos {

enum class PitchSplit { all, bass, treble };

std::string_view to_string(PitchSplit split);

/// A1..C7, bass below C3 (A1..B2), treble from C3 up to C7.
PitchRange split_range(PitchSplit split);

struct EvalCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    EvalCounts& operator+=(const EvalCounts& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }
    friend bool operator==(const EvalCounts&, const EvalCounts&) = default;
};

/// Micro-averaged frame-level metrics. Ratios with a zero denominator are 0.
struct EvalReport {
    EvalCounts counts;
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
    PitchSplit split = PitchSplit::all;

    static EvalReport from_counts(const EvalCounts& counts, PitchSplit split = PitchSplit::all);
};

struct SplitReports {
    EvalReport all;
    EvalReport bass;
    EvalReport treble;

    SplitReports& operator+=(const SplitReports& o);
};

enum class FrameAlignment {
    strict,         // frame counts must match
    nearest_center  // truth columns are looked up at the predicted frame times
};

/// Counts (pitch, frame) cells inside `range`. Throws DataError on a frame
/// count mismatch under strict alignment, naming both counts.
EvalCounts count_cells(const PianoRoll& pred, const PianoRoll& truth, const PitchRange& range,
                       FrameAlignment align = FrameAlignment::strict);

EvalReport score(const PianoRoll& pred, const PianoRoll& truth, const PitchRange& range,
                 FrameAlignment align = FrameAlignment::strict);

SplitReports score_splits(const PianoRoll& pred, const PianoRoll& truth,
                          FrameAlignment align = FrameAlignment::strict);

/// Resamples `roll` onto `times`, taking for each time the column whose frame
/// time is nearest.
PianoRoll align_to_frames(const PianoRoll& roll, std::span<const double> times);

struct SweepRow {
    FeatureMode mode = FeatureMode::gcos;
    /// Empty for the clean (undegraded) row.
    std::optional<double> snr_db;
    SplitReports reports;
};

struct SweepOptions {
    NoiseKind noise_kind = NoiseKind::pink;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

/// For every mode: one clean row, then one row per level (degrade, transcribe,
/// score). Rows are ordered by mode, then clean first, then levels as given.
std::vector<SweepRow> snr_sweep(const AudioClip& clip, std::span<const NoteAnnotation> truth,
                                std::span<const double> levels, std::span<const FeatureMode> modes,
                                const PipelineConfig& cfg, const SweepOptions& options = {});

/// Aligned text table with P/R/F in percent, two decimals, one line per split.
std::string format_report_table(const SplitReports& reports, std::string_view dataset);

std::string report_to_json(const SplitReports& reports);

} // namespace gcos
