#include "gcos/audio.hpp"
#include "gcos/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gcos {

AudioClip make_clip(std::vector<double> samples, int sample_rate) {
    if (sample_rate <= 0) {
        throw std::invalid_argument("sample rate must be positive");
    }
    if (samples.empty()) {
        throw DataError("audio clip is empty");
    }
    for (double s : samples) {
        if (!std::isfinite(s)) {
            throw DataError("audio clip contains non-finite samples");
        }
    }
    return AudioClip{std::move(samples), sample_rate};
}

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

struct WavFormat {
    std::uint16_t tag = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t bits = 0;
};

double decode_sample(const unsigned char* p, const WavFormat& fmt) {
    if (fmt.tag == kFormatFloat) {
        float f;
        std::uint32_t bits = read_u32(p);
        std::memcpy(&f, &bits, sizeof f);
        return static_cast<double>(f);
    }
    if (fmt.bits == 16) {
        return static_cast<double>(static_cast<std::int16_t>(read_u16(p))) / 32768.0;
    }
    // 24-bit: sign-extend from bit 23.
    std::int32_t v = static_cast<std::int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
    if (v & 0x800000) {
        v -= 0x1000000;
    }
    return static_cast<double>(v) / 8388608.0;
}

} // namespace

AudioClip load_audio(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open audio file: " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::string where = " (" + path.string() + ")";
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw DataError("not a RIFF/WAVE file" + where);
    }

    WavFormat fmt;
    bool have_fmt = false;
    const unsigned char* data = nullptr;
    std::size_t data_size = 0;
    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const unsigned char* chunk = bytes.data() + pos;
        const std::size_t size = read_u32(chunk + 4);
        const std::size_t body = pos + 8;
        const std::size_t available = std::min(size, bytes.size() - body);
        if (std::memcmp(chunk, "fmt ", 4) == 0) {
            if (available < 16) {
                throw DataError("truncated fmt chunk" + where);
            }
            fmt.tag = read_u16(chunk + 8);
            fmt.channels = read_u16(chunk + 10);
            fmt.sample_rate = read_u32(chunk + 12);
            fmt.bits = read_u16(chunk + 22);
            if (fmt.tag == kFormatExtensible) {
                if (available < 26) {
                    throw DataError("truncated extensible fmt chunk" + where);
                }
                fmt.tag = read_u16(chunk + 32);
            }
            have_fmt = true;
        } else if (std::memcmp(chunk, "data", 4) == 0) {
            data = chunk + 8;
            data_size = available;
        }
        pos = body + size + (size & 1);
    }
    if (!have_fmt || data == nullptr) {
        throw DataError("missing fmt or data chunk" + where);
    }
    const bool supported = (fmt.tag == kFormatPcm && (fmt.bits == 16 || fmt.bits == 24)) ||
                           (fmt.tag == kFormatFloat && fmt.bits == 32);
    if (!supported) {
        throw DataError("unsupported WAV encoding (format " + std::to_string(fmt.tag) + ", " +
                        std::to_string(fmt.bits) + " bits)" + where);
    }
    if (fmt.channels < 1 || fmt.channels > 2) {
        throw DataError("unsupported channel count " + std::to_string(fmt.channels) + where);
    }
    if (fmt.sample_rate == 0) {
        throw DataError("sample rate is zero" + where);
    }
    const std::size_t bytes_per_sample = fmt.bits / 8;
    const std::size_t frame_bytes = bytes_per_sample * fmt.channels;
    const std::size_t frames = data_size / frame_bytes;
    if (frames == 0) {
        throw DataError("audio file has no samples" + where);
    }
    std::vector<double> samples(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        const unsigned char* p = data + i * frame_bytes;
        double sum = 0.0;
        for (std::size_t c = 0; c < fmt.channels; ++c) {
            sum += decode_sample(p + c * bytes_per_sample, fmt);
        }
        samples[i] = sum / static_cast<double>(fmt.channels);
    }
    return make_clip(std::move(samples), static_cast<int>(fmt.sample_rate));
}

namespace {

void put_u32(std::string& s, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u16(std::string& s, std::uint16_t v) {
    s.push_back(static_cast<char>(v & 0xFF));
    s.push_back(static_cast<char>((v >> 8) & 0xFF));
}

} // namespace

void write_wav_interleaved(const std::filesystem::path& path, const std::vector<double>& interleaved,
                           int channels, int sample_rate, WavEncoding encoding) {
    if (channels < 1 || sample_rate <= 0) {
        throw std::invalid_argument("write_wav: bad channel count or sample rate");
    }
    const std::uint16_t bits = encoding == WavEncoding::pcm16 ? 16 : encoding == WavEncoding::pcm24 ? 24 : 32;
    const std::uint16_t tag = encoding == WavEncoding::float32 ? kFormatFloat : kFormatPcm;
    const std::uint32_t block = static_cast<std::uint32_t>(channels) * bits / 8;
    const std::uint32_t data_bytes = static_cast<std::uint32_t>(interleaved.size()) * (bits / 8);

    std::string out;
    out.reserve(44 + data_bytes);
    out += "RIFF";
    put_u32(out, 36 + data_bytes);
    out += "WAVEfmt ";
    put_u32(out, 16);
    put_u16(out, tag);
    put_u16(out, static_cast<std::uint16_t>(channels));
    put_u32(out, static_cast<std::uint32_t>(sample_rate));
    put_u32(out, static_cast<std::uint32_t>(sample_rate) * block);
    put_u16(out, static_cast<std::uint16_t>(block));
    put_u16(out, bits);
    out += "data";
    put_u32(out, data_bytes);
    for (double s : interleaved) {
        if (encoding == WavEncoding::float32) {
            const float f = static_cast<float>(s);
            std::uint32_t u;
            std::memcpy(&u, &f, sizeof u);
            put_u32(out, u);
        } else if (encoding == WavEncoding::pcm16) {
            const double v = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
            put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
        } else {
            const double v = std::clamp(std::round(s * 8388608.0), -8388608.0, 8388607.0);
            const auto u = static_cast<std::uint32_t>(static_cast<std::int32_t>(v));
            out.push_back(static_cast<char>(u & 0xFF));
            out.push_back(static_cast<char>((u >> 8) & 0xFF));
            out.push_back(static_cast<char>((u >> 16) & 0xFF));
        }
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw DataError("cannot write WAV file: " + path.string());
    }
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
}

void write_wav(const std::filesystem::path& path, const AudioClip& clip, WavEncoding encoding) {
    write_wav_interleaved(path, clip.samples, 1, clip.sample_rate, encoding);
}

AudioClip resample_if_needed(const AudioClip& clip, int target_rate) {
    if (target_rate <= 0) {
        throw std::invalid_argument("target sample rate must be positive");
    }
    if (clip.sample_rate == target_rate) {
        return clip;
    }
    const double ratio = static_cast<double>(target_rate) / clip.sample_rate;
    // Cutoff in input-sample units, a little under the lower of the two Nyquists.
    const double cutoff = 0.95 * std::min(1.0, ratio) * 0.5;
    constexpr double kZeroCrossings = 32.0;
    const double half_width = kZeroCrossings / (2.0 * cutoff);
    constexpr double kBeta = 8.6;
    const double bessel_norm = std::cyl_bessel_i(0.0, kBeta);

    const std::size_t n_in = clip.samples.size();
    const auto n_out = static_cast<std::size_t>(std::llround(static_cast<double>(n_in) * ratio));
    std::vector<double> out(std::max<std::size_t>(n_out, 1));
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double t = static_cast<double>(i) / ratio;
        const auto first = static_cast<long long>(std::ceil(t - half_width));
        const auto last = static_cast<long long>(std::floor(t + half_width));
        double acc = 0.0;
        double weight_sum = 0.0;
        for (long long j = std::max(first, 0LL); j <= std::min(last, static_cast<long long>(n_in) - 1); ++j) {
            const double d = static_cast<double>(j) - t;
            const double r = d / half_width;
            const double taper = std::cyl_bessel_i(0.0, kBeta * std::sqrt(std::max(0.0, 1.0 - r * r))) / bessel_norm;
            const double x = 2.0 * cutoff * d;
            const double sinc = x == 0.0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
            const double w = 2.0 * cutoff * sinc * taper;
            acc += w * clip.samples[static_cast<std::size_t>(j)];
            weight_sum += w;
        }
        // Normalized by the tap sum, including truncated kernels at the edges.
        out[i] = weight_sum != 0.0 ? acc / weight_sum : 0.0;
    }
    return make_clip(std::move(out), target_rate);
}

} // namespace gcos
