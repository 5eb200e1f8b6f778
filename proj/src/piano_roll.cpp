#include "gcos/piano_roll.hpp"
#include "gcos/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gcos {

void validate(const PitchRange& range) {
    if (range.low < 0 || range.high > 127 || range.low > range.high) {
        throw std::invalid_argument("pitch range must satisfy 0 <= low <= high <= 127");
    }
}

PianoRoll::PianoRoll(std::vector<double> frame_times)
    : frame_times_(std::move(frame_times)), cells_(frame_times_.size() * kPitchCount, 0) {}

std::size_t PianoRoll::index(int pitch, std::size_t frame) const {
    if (pitch < 0 || pitch >= kPitchCount || frame >= frame_times_.size()) {
        throw std::out_of_range("piano roll cell out of range");
    }
    return static_cast<std::size_t>(pitch) * frame_times_.size() + frame;
}

std::size_t PianoRoll::active_count() const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

void write_roll_csv(std::ostream& out, const PianoRoll& roll) {
    std::string row;
    for (int p = 0; p < kPitchCount; ++p) {
        row.clear();
        for (std::size_t i = 0; i < roll.frame_count(); ++i) {
            if (i > 0) row.push_back(',');
            row.push_back(roll.active(p, i) ? '1' : '0');
        }
        row.push_back('\n');
        out << row;
    }
}

PianoRoll read_roll_csv(std::istream& in, double hop_seconds) {
    std::vector<std::vector<std::uint8_t>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::uint8_t> row;
        if (!line.empty()) {
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) {
                if (cell != "0" && cell != "1") {
                    throw DataError("piano-roll CSV row " + std::to_string(rows.size() + 1) +
                                    ": value '" + cell + "' is not 0 or 1");
                }
                row.push_back(cell == "1" ? 1 : 0);
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() != kPitchCount) {
        throw DataError("piano-roll CSV must have 128 rows, found " + std::to_string(rows.size()));
    }
    const std::size_t frames = rows.front().size();
    for (const auto& r : rows) {
        if (r.size() != frames) {
            throw DataError("piano-roll CSV rows have unequal lengths");
        }
    }
    std::vector<double> times(frames);
    for (std::size_t i = 0; i < frames; ++i) times[i] = static_cast<double>(i) * hop_seconds;
    PianoRoll roll(std::move(times));
    for (int p = 0; p < kPitchCount; ++p) {
        for (std::size_t i = 0; i < frames; ++i) {
            roll.set(p, i, rows[static_cast<std::size_t>(p)][i] != 0);
        }
    }
    return roll;
}

void write_roll_json(std::ostream& out, const PianoRoll& roll) {
    nlohmann::json j;
    j["frame_times"] = roll.frame_times();
    auto& acts = j["activations"] = nlohmann::json::array();
    for (int p = 0; p < kPitchCount; ++p) {
        std::vector<int> row(roll.frame_count());
        for (std::size_t i = 0; i < roll.frame_count(); ++i) row[i] = roll.active(p, i) ? 1 : 0;
        acts.push_back(std::move(row));
    }
    out << j.dump() << '\n';
}

PianoRoll read_roll_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
        auto times = j.at("frame_times").get<std::vector<double>>();
        const auto& acts = j.at("activations");
        if (!acts.is_array() || acts.size() != kPitchCount) {
            throw DataError("piano-roll JSON must have 128 activation rows");
        }
        PianoRoll roll(times);
        for (int p = 0; p < kPitchCount; ++p) {
            const auto row = acts[static_cast<std::size_t>(p)].get<std::vector<int>>();
            if (row.size() != times.size()) {
                throw DataError("piano-roll JSON row " + std::to_string(p) + " length does not match frame_times");
            }
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (row[i] != 0 && row[i] != 1) throw DataError("piano-roll JSON values must be 0 or 1");
                roll.set(p, i, row[i] == 1);
            }
        }
        return roll;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed piano-roll JSON: ") + e.what());
    }
}

void save_roll(const std::filesystem::path& path, const PianoRoll& roll) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write piano roll: " + path.string());
    }
    if (path.extension() == ".json") {
        write_roll_json(out, roll);
    } else {
        write_roll_csv(out, roll);
    }
}

PianoRoll load_roll(const std::filesystem::path& path, double hop_seconds) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open piano roll: " + path.string());
    }
    if (path.extension() == ".json") {
        return read_roll_json(in);
    }
    return read_roll_csv(in, hop_seconds);
}

} // namespace gcos
