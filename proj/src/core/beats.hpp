#pragma once

#include "types.hpp"

namespace rhythmkit {

struct BeatConfig {
    int bands = 6;
    double lo_hz = 300.0;
    double hi_hz = 2000.0;
    double smooth1_ms = 20.0;
    double smooth2_ms = 40.0;
    double min_rise_fraction = 0.1;
};

// ERB-rate scale (Glasberg & Moore) and its inverse, used to place the
// gammatone center frequencies.
double hz_to_erb_rate(double hz);
double erb_rate_to_hz(double erb);

// 4th-order gammatone response: heterodyne to baseband, four cascaded
// one-pole lowpasses, shift back. Unity gain at the center frequency.
std::vector<double> gammatone_filter(const std::vector<double>& x, double fc,
                                     double bandwidth_hz, int sample_rate);

// Summed, half-wave rectified, twice-smoothed filterbank output: the
// continuous "sonority" contour beats are read from.
Envelope sonority_envelope(const AudioBuffer& audio, const BeatConfig& cfg);

// Local-min -> local-max rises; beat at the temporal midpoint between the end
// of the valley floor (last sample within 10% of the rise above the minimum)
// and the peak, magnitude = rise / largest rise, rises below min_rise_fraction
// of the largest discarded.
BeatList detect_beats(const Envelope& env, double min_rise_fraction);

BeatList extract_beats(const AudioBuffer& audio, const BeatConfig& cfg);

}  // namespace rhythmkit
