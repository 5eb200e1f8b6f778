#pragma once

#include "gcos/piano_roll.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace gcos {

struct NoteAnnotation {
    double onset = 0.0;
    double offset = 0.0;
    int pitch = 0;

    friend bool operator==(const NoteAnnotation&, const NoteAnnotation&) = default;
};

/// MAPS-style text: header `OnsetTime OffsetTime MidiPitch`, then one note per
/// line, whitespace separated. Errors name the offending line.
std::vector<NoteAnnotation> parse_annotations(std::istream& in);
std::vector<NoteAnnotation> load_annotations(const std::filesystem::path& path);

void write_annotations(std::ostream& out, std::span<const NoteAnnotation> notes);
void save_annotations(const std::filesystem::path& path, std::span<const NoteAnnotation> notes);

/// Cell (p, i) is active iff some note with pitch p has onset <= t_i < offset.
PianoRoll annotations_to_roll(std::span<const NoteAnnotation> notes,
                              std::span<const double> frame_times,
                              const PitchRange& range);

} // namespace gcos
