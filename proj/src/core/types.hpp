#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rhythmkit {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// A single rhythmic event: time in seconds, amplitude in (0,1].
struct Pulse {
    double time = 0.0;
    double amplitude = 1.0;
};

// Ordered pulse sequence with strictly increasing times.
struct PulseTrain {
    std::vector<Pulse> pulses;

    void validate() const {
        double prev = -1.0;
        for (const Pulse& p : pulses) {
            if (p.time < 0.0) throw std::invalid_argument("pulse time must be non-negative");
            if (p.amplitude <= 0.0 || p.amplitude > 1.0)
                throw std::invalid_argument("pulse amplitude must be in (0,1]");
            if (p.time <= prev) throw std::invalid_argument("pulse times must be strictly increasing");
            prev = p.time;
        }
    }
    bool empty() const { return pulses.empty(); }
    std::size_t size() const { return pulses.size(); }
    double last_time() const { return pulses.empty() ? 0.0 : pulses.back().time; }
};

enum class CouplingMode { phase_reset, continuous };

// The dynamical unit: phase in [0,1), period adapts toward observed input
// intervals and decays toward the resting period when undriven.
struct AdaptiveOscillator {
    double phase = 0.0;
    double period = 0.5;
    double resting_period = 0.5;
    double adaptation_rate = 0.3;   // alpha
    double decay_rate = 0.05;       // gamma, per free cycle
    double period_min = 0.1;
    double period_max = 2.0;
    CouplingMode mode = CouplingMode::phase_reset;
    double continuous_gain = 0.5;   // eta, continuous mode only
    std::optional<double> last_reset_time;

    void validate() const {
        if (!(phase >= 0.0 && phase < 1.0)) throw std::invalid_argument("phase must be in [0,1)");
        if (!(period_min > 0.0)) throw std::invalid_argument("period_min must be positive");
        if (!(period_min <= period && period <= period_max))
            throw std::invalid_argument("period outside period bounds");
        if (!(period_min <= resting_period && resting_period <= period_max))
            throw std::invalid_argument("resting period outside period bounds");
        if (adaptation_rate < 0.0 || adaptation_rate > 1.0)
            throw std::invalid_argument("adaptation_rate must be in [0,1]");
        if (decay_rate < 0.0 || decay_rate > 1.0)
            throw std::invalid_argument("decay_rate must be in [0,1]");
        if (continuous_gain < 0.0) throw std::invalid_argument("continuous_gain must be >= 0");
    }
};

struct TraceSample {
    double time = 0.0;
    double phase = 0.0;
    double period = 0.0;
    double activation = 0.0;
};

struct ResetEvent {
    double time = 0.0;
    std::optional<double> observed_interval;  // absent on the first reset
    double activation_at_pulse = 0.0;         // activation just before the reset
};

// Simulation record of one oscillator driven by one train.
struct EntrainmentTrace {
    AdaptiveOscillator params;  // initial state, for provenance
    std::vector<TraceSample> samples;
    std::vector<ResetEvent> resets;

    double final_period() const {
        return samples.empty() ? params.period : samples.back().period;
    }
};

// Mono audio, samples nominally in [-1,1].
struct AudioBuffer {
    std::vector<double> samples;
    int sample_rate = 8000;
};

// Non-negative amplitude contour at audio rate.
struct Envelope {
    std::vector<double> values;
    int sample_rate = 8000;
};

struct Beat {
    double time = 0.0;
    double magnitude = 1.0;  // in (0,1], 1 for the largest rise
};

struct BeatList {
    std::vector<Beat> beats;
    double source_duration = 0.0;
};

}  // namespace rhythmkit
