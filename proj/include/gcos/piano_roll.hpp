#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace gcos {

inline constexpr int kPitchCount = 128;

/// Inclusive MIDI pitch interval.
struct PitchRange {
    int low = 33;   // A1
    int high = 96;  // C7

    bool contains(int pitch) const { return pitch >= low && pitch <= high; }
};

void validate(const PitchRange& range);

/// Binary pitch x frame activation matrix. Column i corresponds to
/// frame_times()[i].
class PianoRoll {
public:
    PianoRoll() = default;
    explicit PianoRoll(std::vector<double> frame_times);

    std::size_t frame_count() const { return frame_times_.size(); }
    const std::vector<double>& frame_times() const { return frame_times_; }

    bool active(int pitch, std::size_t frame) const {
        return cells_[index(pitch, frame)] != 0;
    }
    void set(int pitch, std::size_t frame, bool on) {
        cells_[index(pitch, frame)] = on ? 1 : 0;
    }

    std::size_t active_count() const;

    friend bool operator==(const PianoRoll&, const PianoRoll&) = default;

private:
    std::size_t index(int pitch, std::size_t frame) const;

    std::vector<double> frame_times_;
    std::vector<std::uint8_t> cells_;  // pitch-major
};

/// 128 lines (pitch 0 first), one comma-separated 0/1 value per frame.
void write_roll_csv(std::ostream& out, const PianoRoll& roll);
/// Frame times are rebuilt as i * hop_seconds since the CSV carries none.
PianoRoll read_roll_csv(std::istream& in, double hop_seconds);

/// {"frame_times": [...], "activations": [[...] x128]}
void write_roll_json(std::ostream& out, const PianoRoll& roll);
PianoRoll read_roll_json(std::istream& in);

/// Picks the format from the extension (.csv or .json).
void save_roll(const std::filesystem::path& path, const PianoRoll& roll);
PianoRoll load_roll(const std::filesystem::path& path, double hop_seconds);

} // namespace gcos
