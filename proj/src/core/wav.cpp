#include "wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

#include "io.hpp"

namespace rhythmkit {

namespace {

std::uint32_t read_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (p[1] << 8) | (p[2] << 16)
           | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(v & 0xff);
    out.push_back((v >> 8) & 0xff);
    out.push_back((v >> 16) & 0xff);
    out.push_back((v >> 24) & 0xff);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
    out.push_back(v & 0xff);
    out.push_back((v >> 8) & 0xff);
}

}  // namespace

AudioBuffer load_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_wav: cannot open file: " + path);
    std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (data.size() < 44 || std::memcmp(data.data(), "RIFF", 4) != 0 ||
        std::memcmp(data.data() + 8, "WAVE", 4) != 0)
        throw std::invalid_argument("load_wav: not a RIFF/WAVE file: " + path);

    int sample_rate = 0;
    int channels = 0;
    int bits = 0;
    int format = 0;
    const unsigned char* pcm = nullptr;
    std::size_t pcm_bytes = 0;

    std::size_t pos = 12;
    while (pos + 8 <= data.size()) {
        const char* id = reinterpret_cast<const char*>(data.data() + pos);
        const std::uint32_t size = read_u32(data.data() + pos + 4);
        if (pos + 8 + size > data.size()) break;
        if (std::memcmp(id, "fmt ", 4) == 0 && size >= 16) {
            format = read_u16(data.data() + pos + 8);
            channels = read_u16(data.data() + pos + 10);
            sample_rate = static_cast<int>(read_u32(data.data() + pos + 12));
            bits = read_u16(data.data() + pos + 22);
        } else if (std::memcmp(id, "data", 4) == 0) {
            pcm = data.data() + pos + 8;
            pcm_bytes = size;
        }
        pos += 8 + size + (size & 1);
    }

    if (format != 1 || bits != 16)
        throw std::invalid_argument("load_wav: unsupported encoding (PCM16 required): " + path);
    if (channels != 1) throw std::invalid_argument("load_wav: mono required: " + path);
    if (sample_rate <= 0) throw std::invalid_argument("load_wav: bad sample rate: " + path);
    if (!pcm || pcm_bytes < 2) throw std::invalid_argument("load_wav: empty audio: " + path);

    AudioBuffer audio;
    audio.sample_rate = sample_rate;
    audio.samples.reserve(pcm_bytes / 2);
    for (std::size_t i = 0; i + 1 < pcm_bytes; i += 2) {
        const std::int16_t s = static_cast<std::int16_t>(pcm[i] | (pcm[i + 1] << 8));
        audio.samples.push_back(s / 32768.0);
    }
    return audio;
}

void save_wav(const AudioBuffer& audio, const std::string& path) {
    if (audio.sample_rate <= 0) throw std::invalid_argument("save_wav: bad sample rate");
    const std::uint32_t data_bytes = static_cast<std::uint32_t>(audio.samples.size() * 2);
    std::vector<unsigned char> out;
    out.reserve(44 + data_bytes);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put_u32(out, 36 + data_bytes);
    out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
    put_u32(out, 16);
    put_u16(out, 1);  // PCM
    put_u16(out, 1);  // mono
    put_u32(out, static_cast<std::uint32_t>(audio.sample_rate));
    put_u32(out, static_cast<std::uint32_t>(audio.sample_rate) * 2);
    put_u16(out, 2);
    put_u16(out, 16);
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put_u32(out, data_bytes);
    for (double v : audio.samples) {
        // Same 1/32768 scale as the reader, clamped to the int16 range.
        const long q = std::lround(std::clamp(v, -1.0, 1.0) * 32768.0);
        const std::int16_t s = static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L));
        put_u16(out, static_cast<std::uint16_t>(s));
    }
    write_file_atomic(path, std::string(out.begin(), out.end()));
}

}  // namespace rhythmkit
