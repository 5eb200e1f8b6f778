#include "gcos/annotations.hpp"
#include "gcos/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace gcos {
namespace {

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw DataError("annotation line " + std::to_string(line_no) + ": " + what);
}

double parse_number(const std::string& token, std::size_t line_no) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        fail(line_no, "non-numeric field '" + token + "'");
    }
    return value;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

std::vector<NoteAnnotation> parse_annotations(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (!have_header && std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        std::istringstream fields(line);
        std::string a, b, c, extra;
        fields >> a >> b >> c;
        if (a != "OnsetTime" || b != "OffsetTime" || c != "MidiPitch" || (fields >> extra)) {
            fail(line_no, "expected header 'OnsetTime OffsetTime MidiPitch'");
        }
        have_header = true;
    }
    if (!have_header) {
        throw DataError("annotation file is missing the 'OnsetTime OffsetTime MidiPitch' header");
    }

    std::vector<NoteAnnotation> notes;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        std::istringstream fields(line);
        std::string onset, offset, pitch, extra;
        if (!(fields >> onset >> offset >> pitch) || (fields >> extra)) {
            fail(line_no, "expected three fields");
        }
        NoteAnnotation note;
        note.onset = parse_number(onset, line_no);
        note.offset = parse_number(offset, line_no);
        const double p = parse_number(pitch, line_no);
        if (p != static_cast<double>(static_cast<int>(p))) {
            fail(line_no, "pitch is not an integer");
        }
        note.pitch = static_cast<int>(p);
        if (note.onset < 0.0) fail(line_no, "negative onset");
        if (!(note.offset > note.onset)) fail(line_no, "offset must be greater than onset");
        if (note.pitch < 0 || note.pitch > 127) fail(line_no, "pitch outside 0..127");
        notes.push_back(note);
    }
    return notes;
}

std::vector<NoteAnnotation> load_annotations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open annotation file: " + path.string());
    }
    try {
        return parse_annotations(in);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void write_annotations(std::ostream& out, std::span<const NoteAnnotation> notes) {
    out << "OnsetTime\tOffsetTime\tMidiPitch\n";
    for (const auto& n : notes) {
        out << format_double(n.onset) << '\t' << format_double(n.offset) << '\t' << n.pitch << '\n';
    }
}

void save_annotations(const std::filesystem::path& path, std::span<const NoteAnnotation> notes) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write annotation file: " + path.string());
    }
    write_annotations(out, notes);
}

PianoRoll annotations_to_roll(std::span<const NoteAnnotation> notes,
                              std::span<const double> frame_times,
                              const PitchRange& range) {
    validate(range);
    PianoRoll roll(std::vector<double>(frame_times.begin(), frame_times.end()));
    for (const auto& note : notes) {
        if (!range.contains(note.pitch)) continue;
        for (std::size_t i = 0; i < frame_times.size(); ++i) {
            if (note.onset <= frame_times[i] && frame_times[i] < note.offset) {
                roll.set(note.pitch, i, true);
            }
        }
    }
    return roll;
}

} // namespace gcos
