#include "gcos/eval.hpp"
#include "gcos/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gcos {

std::string_view to_string(PitchSplit split) {
    switch (split) {
    case PitchSplit::all: return "All";
    case PitchSplit::bass: return "Bass";
    case PitchSplit::treble: return "Treble";
    }
    return "?";
}

PitchRange split_range(PitchSplit split) {
    switch (split) {
    case PitchSplit::all: return {33, 96};
    case PitchSplit::bass: return {33, 47};
    case PitchSplit::treble: return {48, 96};
    }
    throw std::invalid_argument("unknown pitch split");
}

EvalReport EvalReport::from_counts(const EvalCounts& counts, PitchSplit split) {
    EvalReport r;
    r.counts = counts;
    r.split = split;
    const auto tp = static_cast<double>(counts.tp);
    if (counts.tp + counts.fp > 0) r.precision = tp / static_cast<double>(counts.tp + counts.fp);
    if (counts.tp + counts.fn > 0) r.recall = tp / static_cast<double>(counts.tp + counts.fn);
    // 2PR/(P+R) over the counts, one rounding.
    if (counts.tp > 0) {
        r.f_score = 2.0 * tp / static_cast<double>(2 * counts.tp + counts.fp + counts.fn);
    }
    return r;
}

SplitReports& SplitReports::operator+=(const SplitReports& o) {
    all = EvalReport::from_counts(EvalCounts(all.counts) += o.all.counts, PitchSplit::all);
    bass = EvalReport::from_counts(EvalCounts(bass.counts) += o.bass.counts, PitchSplit::bass);
    treble = EvalReport::from_counts(EvalCounts(treble.counts) += o.treble.counts, PitchSplit::treble);
    return *this;
}

PianoRoll align_to_frames(const PianoRoll& roll, std::span<const double> times) {
    PianoRoll out(std::vector<double>(times.begin(), times.end()));
    const auto& src = roll.frame_times();
    if (src.empty()) return out;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto it = std::lower_bound(src.begin(), src.end(), times[i]);
        std::size_t j = static_cast<std::size_t>(it - src.begin());
        if (j == src.size()) {
            j = src.size() - 1;
        } else if (j > 0 && times[i] - src[j - 1] <= src[j] - times[i]) {
            --j;
        }
        for (int p = 0; p < kPitchCount; ++p) {
            if (roll.active(p, j)) out.set(p, i, true);
        }
    }
    return out;
}

EvalCounts count_cells(const PianoRoll& pred, const PianoRoll& truth, const PitchRange& range,
                       FrameAlignment align) {
    validate(range);
    if (pred.frame_count() != truth.frame_count()) {
        if (align == FrameAlignment::strict) {
            throw DataError("frame count mismatch: prediction has " + std::to_string(pred.frame_count()) +
                            " frames, ground truth has " + std::to_string(truth.frame_count()));
        }
        return count_cells(pred, align_to_frames(truth, pred.frame_times()), range, FrameAlignment::strict);
    }
    EvalCounts c;
    for (int p = range.low; p <= range.high; ++p) {
        for (std::size_t i = 0; i < pred.frame_count(); ++i) {
            const bool est = pred.active(p, i);
            const bool ref = truth.active(p, i);
            c.tp += (est && ref) ? 1 : 0;
            c.fp += (est && !ref) ? 1 : 0;
            c.fn += (!est && ref) ? 1 : 0;
        }
    }
    return c;
}

EvalReport score(const PianoRoll& pred, const PianoRoll& truth, const PitchRange& range, FrameAlignment align) {
    return EvalReport::from_counts(count_cells(pred, truth, range, align), PitchSplit::all);
}

SplitReports score_splits(const PianoRoll& pred, const PianoRoll& truth, FrameAlignment align) {
    SplitReports r;
    for (PitchSplit s : {PitchSplit::all, PitchSplit::bass, PitchSplit::treble}) {
        const EvalReport report = EvalReport::from_counts(count_cells(pred, truth, split_range(s), align), s);
        (s == PitchSplit::all ? r.all : s == PitchSplit::bass ? r.bass : r.treble) = report;
    }
    return r;
}

std::vector<SweepRow> snr_sweep(const AudioClip& clip, std::span<const NoteAnnotation> truth,
                                std::span<const double> levels, std::span<const FeatureMode> modes,
                                const PipelineConfig& cfg, const SweepOptions& options) {
    for (double level : levels) {
        if (!std::isfinite(level)) {
            throw std::invalid_argument("SNR levels must be finite");
        }
    }
    const AudioClip analysed = resample_if_needed(clip, cfg.analysis.sample_rate);
    // The same noisy signal is shared by every mode at a given level.
    std::vector<AudioClip> inputs{analysed};
    for (double level : levels) {
        inputs.push_back(mix_at_snr(analysed, DegradeSpec{options.noise_kind, level, options.seed}));
    }
    std::vector<SweepRow> rows;
    for (FeatureMode mode : modes) {
        PipelineConfig run = cfg;
        run.mode = mode;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const PianoRoll pred = transcribe(inputs[i], run, options.threads);
            const PianoRoll ref = annotations_to_roll(truth, pred.frame_times(), PitchRange{0, 127});
            SweepRow row;
            row.mode = mode;
            if (i > 0) row.snr_db = levels[i - 1];
            row.reports = score_splits(pred, ref);
            rows.push_back(row);
        }
    }
    return rows;
}

std::string format_report_table(const SplitReports& reports, std::string_view dataset) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-12s %-7s %7s %7s %7s %9s %9s %9s\n", "Dataset", "Pitch", "P", "R", "F",
                  "N_tp", "N_fp", "N_fn");
    out << line;
    bool first = true;
    for (const EvalReport* r : {&reports.all, &reports.bass, &reports.treble}) {
        const std::string name = first ? std::string(dataset) : std::string();
        std::snprintf(line, sizeof line, "%-12s %-7s %7.2f %7.2f %7.2f %9zu %9zu %9zu\n", name.c_str(),
                      std::string(to_string(r->split)).c_str(), 100.0 * r->precision, 100.0 * r->recall,
                      100.0 * r->f_score, r->counts.tp, r->counts.fp, r->counts.fn);
        out << line;
        first = false;
    }
    out << "Bass = MIDI 33-47 (A1-B2), Treble = MIDI 48-96 (C3-C7); C3 counted as treble.\n";
    return out.str();
}

namespace {

nlohmann::json to_json(const EvalReport& r) {
    const PitchRange range = split_range(r.split);
    return {{"split", to_string(r.split)},
            {"pitch_low", range.low},
            {"pitch_high", range.high},
            {"n_tp", r.counts.tp},
            {"n_fp", r.counts.fp},
            {"n_fn", r.counts.fn},
            {"precision", r.precision},
            {"recall", r.recall},
            {"f_score", r.f_score}};
}

} // namespace

std::string report_to_json(const SplitReports& reports) {
    nlohmann::json j;
    j["all"] = to_json(reports.all);
    j["bass"] = to_json(reports.bass);
    j["treble"] = to_json(reports.treble);
    j["split_boundary"] = "C3 (MIDI 48) is counted as treble";
    return j.dump(2);
}

} // namespace gcos
