#pragma once

#include <cstdint>
#include <vector>

#include "types.hpp"

namespace rhythmkit {

// take/cards style trial: anchors every `cycle` seconds, one target per cycle
// at relative phase phi_target.
struct TrialSchedule {
    std::vector<double> anchor_times;
    std::vector<double> target_times;
    double phi_target = 0.5;
    double cycle = 1.5;
};

struct MoraPoint {
    int mora_count = 1;
    double duration = 0.0;
};

PulseTrain gen_periodic(double period, std::size_t count, double amplitude,
                        double start_time);

PulseTrain gen_jittered(double period, std::size_t count, double amplitude,
                        double jitter_sd, std::uint64_t seed);

PulseTrain drop_pulses(const PulseTrain& train, const std::vector<std::size_t>& indices);

PulseTrain gen_hierarchical(double beat_period, int beats_per_measure,
                            double strong_amp, double weak_amp, int n_measures);

TrialSchedule gen_take_cards(double phi_target, double cycle, int n_reps);

// Word durations by mora count. Per-mora durations get gaussian intrinsic
// variation (sd mora_sd); each mora then sheds a `compensation` fraction of
// its predecessor's deviation, so word totals tighten toward n*mean_mora as
// compensation -> 1. Measurement noise (sd noise_sd) is added to each total.
std::vector<MoraPoint> gen_mora_dataset(double mean_mora, int max_moras, int reps,
                                        double compensation, double mora_sd,
                                        double noise_sd, std::uint64_t seed);

// Band-limited (300-2000 Hz) noise bursts with linear rise/sustain/decay at
// each onset. total_s <= 0 sizes the buffer to fit the last burst.
AudioBuffer gen_syllable_wav(const std::vector<double>& onsets, double rise_ms,
                             double dur_ms, int sample_rate, double total_s,
                             std::uint64_t seed);

}  // namespace rhythmkit
