#pragma once

#include <string>
#include <vector>

#include "oscillator.hpp"
#include "types.hpp"

namespace rhythmkit {

struct PhaseSample {
    double phi = 0.0;  // in [0,1)
    int trial_id = 0;
    std::string group_tag = "with-stimulus";
};

struct PhaseResult {
    std::vector<PhaseSample> samples;
    std::size_t dropped = 0;  // targets outside the anchor span
};

struct Mode {
    double location = 0.0;  // in [0,1)
    double mass = 0.0;      // fraction of samples nearest this mode
};

struct ModeReport {
    std::vector<Mode> modes;
    double bandwidth = 0.02;
    bool diffuse = false;  // density nearly flat, no meaningful modes
};

struct MoraRegression {
    double slope = 0.0;      // seconds per mora, the estimate of D
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t n_points = 0;
};

struct IntervalStats {
    double mean = 0.0;
    double sd = 0.0;  // population sd of consecutive differences
    std::size_t count = 0;
};

enum class TempoVerdict { faster, slower, equal };

struct DiscriminationConfig {
    AdaptiveOscillator osc_params;  // resting period 0.5 s by default
    double dt = 0.01;
    double jnd = 0.02;
    bool reset_per_trial = false;   // fresh oscillator for the second series
};

struct DiscriminationResult {
    TempoVerdict verdict = TempoVerdict::equal;
    double period_a = 0.0;
    double period_b = 0.0;
};

// Relative phase of each target beat within its bracketing anchor interval
// [a_i, a_{i+1}); out-of-span targets are dropped and counted.
PhaseResult measure_phase(const BeatList& target_beats,
                          const std::vector<double>& anchor_times);

// Circular KDE with wrapped gaussian kernels; modes are local density maxima
// above 10% of the global maximum.
ModeReport mode_report(const std::vector<PhaseSample>& phases, double bandwidth);

// Nominal phase of the stressed beat: (position-1)/beats_per_measure.
double nominal_phase(int beats_per_measure, int stress_position);

MoraRegression mora_regression(const std::vector<std::pair<int, double>>& points);

IntervalStats interval_stats(const BeatList& beats);

// Entrain through series A, carry the oscillator (decay active across the
// pause) through series B, and compare adapted periods against the jnd.
// Series B must follow series A in time unless reset_per_trial is set.
DiscriminationResult simulate_tempo_discrimination(const PulseTrain& series_a,
                                                   const PulseTrain& series_b,
                                                   const DiscriminationConfig& cfg);

std::string to_string(TempoVerdict verdict);

}  // namespace rhythmkit
