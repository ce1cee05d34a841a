#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oscillator.hpp"
#include "types.hpp"

namespace rhythmkit {

enum class MeterLevel { beat, measure };

struct OscillatorBank {
    std::vector<AdaptiveOscillator> oscillators;
    std::vector<MeterLevel> level_tags;  // parallel to oscillators
};

struct MeterConfig {
    std::pair<double, double> beat_range{0.2, 0.8};
    std::pair<double, double> measure_range{0.6, 2.4};
    int count_per_level = 4;
    AdaptiveOscillator osc_params;           // resting period is overwritten per slot
    double strong_pulse_threshold = 0.8;     // amplitude gate for measure candidates
    std::size_t synchrony_window = 4;
    double ratio_tolerance = 0.1;
    double align_window_factor = 0.15;       // align window = factor * beat period
    double min_level_score = 0.8;
    std::size_t min_resets = 3;
    double dt = 0.01;
};

struct MeterEstimate {
    bool found = false;
    std::string no_meter_reason;
    double beat_period = 0.0;
    double measure_period = 0.0;
    int beats_per_measure = 0;
    double downbeat_time = 0.0;
    double beat_score = 0.0;
    double measure_score = 0.0;
    double harmonicity_error = 0.0;
};

// Resting periods geometrically spaced within each level's range.
OscillatorBank build_bank(std::pair<double, double> beat_range,
                          std::pair<double, double> measure_range,
                          int count_per_level, const AdaptiveOscillator& osc_params);

// Drives every oscillator independently in phase-reset mode. Measure
// candidates see only pulses at or above the strong-pulse threshold.
std::vector<EntrainmentTrace> run_network(const OscillatorBank& bank,
                                          const PulseTrain& train,
                                          const MeterConfig& cfg, double t_end);

// Nearest integer ratio p_hi/p_lo (>= 1, ties round up) and its residual.
std::pair<int, double> harmonicity(double p_hi, double p_lo);

// Per-level winner by synchrony output, then the integer-ratio and downbeat
// alignment constraints. Failure is the distinguished no-meter outcome.
MeterEstimate estimate_meter(const std::vector<EntrainmentTrace>& traces,
                             const OscillatorBank& bank, const PulseTrain& train,
                             const MeterConfig& cfg);

// Convenience: build, run and estimate in one call.
MeterEstimate find_meter(const PulseTrain& train, const MeterConfig& cfg);

}  // namespace rhythmkit
