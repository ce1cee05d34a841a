#pragma once

#include <string>

#include "types.hpp"

namespace rhythmkit {

// RIFF/WAVE, PCM16, mono only. Samples normalized to [-1, 1].
AudioBuffer load_wav(const std::string& path);
void save_wav(const AudioBuffer& audio, const std::string& path);

}  // namespace rhythmkit
