#include "beats.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace rhythmkit {

namespace {

// Glasberg & Moore equivalent rectangular bandwidth in Hz.
double erb_hz(double fc) { return 24.7 * (4.37 * fc / 1000.0 + 1.0); }

// First-order lowpass run forward then backward (zero phase).
void smooth_zero_phase(std::vector<double>& x, double tau_ms, int sample_rate) {
    if (tau_ms <= 0.0 || x.empty()) return;
    const double a = std::exp(-1000.0 / (tau_ms * sample_rate));
    const double b = 1.0 - a;
    double y = x.front();
    for (double& v : x) { y = b * v + a * y; v = y; }
    y = x.back();
    for (std::size_t i = x.size(); i-- > 0;) { y = b * x[i] + a * y; x[i] = y; }
}

std::vector<double> band_centers(const BeatConfig& cfg) {
    std::vector<double> centers;
    const double lo = hz_to_erb_rate(cfg.lo_hz);
    const double hi = hz_to_erb_rate(cfg.hi_hz);
    if (cfg.bands == 1) {
        centers.push_back(erb_rate_to_hz((lo + hi) / 2.0));
    } else {
        for (int i = 0; i < cfg.bands; ++i)
            centers.push_back(erb_rate_to_hz(lo + (hi - lo) * i / (cfg.bands - 1)));
    }
    return centers;
}

}  // namespace

double hz_to_erb_rate(double hz) { return 21.4 * std::log10(4.37 * hz / 1000.0 + 1.0); }

double erb_rate_to_hz(double erb) {
    return (std::pow(10.0, erb / 21.4) - 1.0) * 1000.0 / 4.37;
}

std::vector<double> gammatone_filter(const std::vector<double>& x, double fc,
                                     double bandwidth_hz, int sample_rate) {
    const double decay = std::exp(-kTwoPi * bandwidth_hz / sample_rate);
    const double w = kTwoPi * fc / sample_rate;
    const std::complex<double> shift_down(std::cos(w), -std::sin(w));
    const std::complex<double> shift_up = std::conj(shift_down);
    const double b = 1.0 - decay;

    std::vector<double> out(x.size());
    std::complex<double> rot_down(1.0, 0.0), rot_up(1.0, 0.0);
    std::complex<double> s1(0.0), s2(0.0), s3(0.0), s4(0.0);
    for (std::size_t n = 0; n < x.size(); ++n) {
        const std::complex<double> base = x[n] * rot_down;
        s1 = b * base + decay * s1;
        s2 = b * s1 + decay * s2;
        s3 = b * s2 + decay * s3;
        s4 = b * s3 + decay * s4;
        // Factor 2: taking the real part of the analytic output halves the
        // passband gain, so restore unity at fc.
        out[n] = 2.0 * (s4 * rot_up).real();
        rot_down *= shift_down;
        rot_up *= shift_up;
    }
    return out;
}

Envelope sonority_envelope(const AudioBuffer& audio, const BeatConfig& cfg) {
    if (audio.sample_rate <= 0) throw std::invalid_argument("sonority_envelope: bad sample rate");
    if (audio.samples.empty()) throw std::invalid_argument("sonority_envelope: empty audio");
    if (cfg.bands < 1) throw std::invalid_argument("sonority_envelope: bands must be >= 1");
    if (!(cfg.lo_hz > 0.0 && cfg.lo_hz < cfg.hi_hz && cfg.hi_hz < audio.sample_rate / 2.0))
        throw std::invalid_argument("sonority_envelope: band edges out of range");

    std::vector<double> sum(audio.samples.size(), 0.0);
    for (double fc : band_centers(cfg)) {
        const std::vector<double> y = gammatone_filter(audio.samples, fc, 1.019 * erb_hz(fc),
                                                       audio.sample_rate);
        for (std::size_t i = 0; i < y.size(); ++i)
            if (y[i] > 0.0) sum[i] += y[i];  // half-wave rectified channel
    }
    smooth_zero_phase(sum, cfg.smooth1_ms, audio.sample_rate);
    for (double& v : sum)
        if (v < 0.0) v = 0.0;
    smooth_zero_phase(sum, cfg.smooth2_ms, audio.sample_rate);
    for (double& v : sum)
        if (v < 0.0) v = 0.0;
    return {std::move(sum), audio.sample_rate};
}

BeatList detect_beats(const Envelope& env, double min_rise_fraction) {
    if (!(min_rise_fraction > 0.0 && min_rise_fraction < 1.0))
        throw std::invalid_argument("detect_beats: min_rise_fraction must be in (0,1)");
    const std::vector<double>& v = env.values;
    BeatList list;
    list.source_duration = v.empty() ? 0.0
                                     : static_cast<double>(v.size() - 1) / env.sample_rate;
    if (v.size() < 2) return list;

    // Alternating min/max pairs. A valley extends while the envelope stays
    // within a small tolerance of its running minimum (so slow smoothing
    // tails count as valley floor, not as rise); the max index is the first
    // sample of a peak plateau.
    const double vmax = *std::max_element(v.begin(), v.end());
    const double vmin = *std::min_element(v.begin(), v.end());
    const double tol = 0.01 * (vmax - vmin);
    struct RisePair { std::size_t min_idx, max_idx; double min_val, rise; };
    std::vector<RisePair> pairs;
    std::size_t min_idx = 0;
    double min_val = v[0];
    bool rising = false;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (rising) {
            if (v[i] > v[i - 1]) continue;
            pairs.push_back({min_idx, i - 1, min_val, v[i - 1] - min_val});
            rising = false;
            min_idx = i;
            min_val = v[i];
        } else {
            if (v[i] < min_val) min_val = v[i];
            if (v[i] <= min_val + tol) {
                min_idx = i;
            } else {
                rising = true;
            }
        }
    }
    if (rising) pairs.push_back({min_idx, v.size() - 1, min_val, v.back() - min_val});

    double largest = 0.0;
    for (const RisePair& p : pairs) largest = std::max(largest, p.rise);
    if (largest <= 0.0) return list;

    for (const RisePair& p : pairs) {
        if (p.rise < min_rise_fraction * largest) continue;
        // The valley floor ends where the envelope commits to this rise:
        // last sample still within 10% of the rise above the minimum. This
        // keeps the midpoint comparable between deep and shallow valleys.
        const double thr = p.min_val + 0.1 * p.rise;
        std::size_t lo = p.max_idx;
        while (lo > p.min_idx && v[lo] > thr) --lo;
        const double t = 0.5 * static_cast<double>(lo + p.max_idx) / env.sample_rate;
        list.beats.push_back({t, p.rise / largest});
    }
    return list;
}

BeatList extract_beats(const AudioBuffer& audio, const BeatConfig& cfg) {
    return detect_beats(sonority_envelope(audio, cfg), cfg.min_rise_fraction);
}

}  // namespace rhythmkit
