#include "stimuli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "random.hpp"

namespace rhythmkit {

PulseTrain gen_periodic(double period, std::size_t count, double amplitude,
                        double start_time) {
    if (!(period > 0.0)) throw std::invalid_argument("gen_periodic: period must be positive");
    if (count < 1) throw std::invalid_argument("gen_periodic: count must be >= 1");
    if (!(amplitude > 0.0 && amplitude <= 1.0))
        throw std::invalid_argument("gen_periodic: amplitude must be in (0,1]");
    if (start_time < 0.0) throw std::invalid_argument("gen_periodic: start_time must be >= 0");
    PulseTrain train;
    train.pulses.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        train.pulses.push_back({start_time + static_cast<double>(i) * period, amplitude});
    return train;
}

PulseTrain gen_jittered(double period, std::size_t count, double amplitude,
                        double jitter_sd, std::uint64_t seed) {
    if (jitter_sd < 0.0) throw std::invalid_argument("gen_jittered: jitter_sd must be >= 0");
    if (jitter_sd >= period / 3.0)
        throw std::invalid_argument("gen_jittered: jitter_sd must be < period/3");
    PulseTrain train = gen_periodic(period, count, amplitude, period);  // headroom for negative offsets
    Rng rng(seed);
    for (Pulse& p : train.pulses) p.time += rng.gaussian(0.0, jitter_sd);
    std::sort(train.pulses.begin(), train.pulses.end(),
              [](const Pulse& a, const Pulse& b) { return a.time < b.time; });
    train.validate();
    return train;
}

PulseTrain drop_pulses(const PulseTrain& train, const std::vector<std::size_t>& indices) {
    for (std::size_t i : indices)
        if (i >= train.size()) throw std::invalid_argument("drop_pulses: index out of range");
    PulseTrain out;
    for (std::size_t i = 0; i < train.size(); ++i)
        if (std::find(indices.begin(), indices.end(), i) == indices.end())
            out.pulses.push_back(train.pulses[i]);
    return out;
}

PulseTrain gen_hierarchical(double beat_period, int beats_per_measure,
                            double strong_amp, double weak_amp, int n_measures) {
    if (!(beat_period > 0.0)) throw std::invalid_argument("gen_hierarchical: beat_period must be positive");
    if (beats_per_measure < 1) throw std::invalid_argument("gen_hierarchical: beats_per_measure must be >= 1");
    if (!(strong_amp > 0.0 && strong_amp <= 1.0 && weak_amp > 0.0 && weak_amp <= 1.0))
        throw std::invalid_argument("gen_hierarchical: amplitudes must be in (0,1]");
    if (!(strong_amp > weak_amp))
        throw std::invalid_argument("gen_hierarchical: strong_amp must exceed weak_amp");
    if (n_measures < 0) throw std::invalid_argument("gen_hierarchical: n_measures must be >= 0");
    PulseTrain train;
    for (int i = 0; i < n_measures * beats_per_measure; ++i) {
        const double amp = (i % beats_per_measure == 0) ? strong_amp : weak_amp;
        train.pulses.push_back({static_cast<double>(i) * beat_period, amp});
    }
    return train;
}

TrialSchedule gen_take_cards(double phi_target, double cycle, int n_reps) {
    if (!(phi_target > 0.0 && phi_target < 1.0))
        throw std::invalid_argument("gen_take_cards: phi_target must be in (0,1)");
    if (!(cycle > 0.0)) throw std::invalid_argument("gen_take_cards: cycle must be positive");
    if (n_reps < 1) throw std::invalid_argument("gen_take_cards: n_reps must be >= 1");
    TrialSchedule sched;
    sched.phi_target = phi_target;
    sched.cycle = cycle;
    for (int i = 0; i < n_reps; ++i) {
        sched.anchor_times.push_back(i * cycle);
        sched.target_times.push_back((i + phi_target) * cycle);
    }
    return sched;
}

std::vector<MoraPoint> gen_mora_dataset(double mean_mora, int max_moras, int reps,
                                        double compensation, double mora_sd,
                                        double noise_sd, std::uint64_t seed) {
    if (!(mean_mora > 0.0)) throw std::invalid_argument("gen_mora_dataset: mean_mora must be positive");
    if (compensation < 0.0 || compensation > 1.0)
        throw std::invalid_argument("gen_mora_dataset: compensation must be in [0,1]");
    if (max_moras < 1 || reps < 1)
        throw std::invalid_argument("gen_mora_dataset: max_moras and reps must be >= 1");
    if (mora_sd < 0.0 || noise_sd < 0.0)
        throw std::invalid_argument("gen_mora_dataset: sd parameters must be >= 0");
    Rng rng(seed);
    std::vector<MoraPoint> points;
    points.reserve(static_cast<std::size_t>(max_moras) * reps);
    for (int n = 1; n <= max_moras; ++n) {
        for (int r = 0; r < reps; ++r) {
            double total = 0.0;
            double prev_dev = 0.0;
            for (int m = 0; m < n; ++m) {
                const double dev = mora_sd > 0.0 ? rng.gaussian(0.0, mora_sd) : 0.0;
                total += mean_mora + dev - compensation * prev_dev;
                prev_dev = dev;
            }
            if (noise_sd > 0.0) total += rng.gaussian(0.0, noise_sd);
            points.push_back({n, std::max(total, 1e-3 * mean_mora)});
        }
    }
    return points;
}

AudioBuffer gen_syllable_wav(const std::vector<double>& onsets, double rise_ms,
                             double dur_ms, int sample_rate, double total_s,
                             std::uint64_t seed) {
    if (!(rise_ms > 0.0)) throw std::invalid_argument("gen_syllable_wav: rise_ms must be positive");
    if (dur_ms < 0.0) throw std::invalid_argument("gen_syllable_wav: dur_ms must be >= 0");
    if (sample_rate <= 0) throw std::invalid_argument("gen_syllable_wav: sample_rate must be positive");
    constexpr double kDecayMs = 50.0;
    const double burst_s = (rise_ms + dur_ms + kDecayMs) / 1000.0;
    for (std::size_t i = 0; i < onsets.size(); ++i) {
        if (onsets[i] < 0.0) throw std::invalid_argument("gen_syllable_wav: onsets must be >= 0");
        if (i > 0 && onsets[i] <= onsets[i - 1])
            throw std::invalid_argument("gen_syllable_wav: onsets must be increasing");
        if (i > 0 && onsets[i] < onsets[i - 1] + burst_s)
            throw std::invalid_argument("gen_syllable_wav: bursts overlap");
    }

    double length_s = total_s;
    if (length_s <= 0.0)
        length_s = onsets.empty() ? 1.0 : onsets.back() + burst_s + 0.1;
    if (!onsets.empty() && onsets.back() + burst_s > length_s + 1e-9)
        throw std::invalid_argument("gen_syllable_wav: total_s too short for last burst");

    AudioBuffer audio;
    audio.sample_rate = sample_rate;
    audio.samples.assign(static_cast<std::size_t>(std::llround(length_s * sample_rate)), 0.0);
    if (onsets.empty()) return audio;

    // Carrier: fixed comb of sinusoids across 300-2000 Hz with seeded phases,
    // advanced by complex rotators.
    constexpr int kComponents = 64;
    Rng rng(seed);
    std::vector<std::complex<double>> state(kComponents), rot(kComponents);
    for (int j = 0; j < kComponents; ++j) {
        const double f = 300.0 + (j + 0.5) * (2000.0 - 300.0) / kComponents;
        const double w = kTwoPi * f / sample_rate;
        rot[j] = {std::cos(w), std::sin(w)};
        const double phi = kTwoPi * rng.uniform();
        state[j] = {std::cos(phi), std::sin(phi)};
    }
    const double gain = 0.5 / std::sqrt(static_cast<double>(kComponents));

    const std::size_t rise_n = static_cast<std::size_t>(std::llround(rise_ms / 1000.0 * sample_rate));
    const std::size_t dur_n = static_cast<std::size_t>(std::llround(dur_ms / 1000.0 * sample_rate));
    const std::size_t decay_n = static_cast<std::size_t>(std::llround(kDecayMs / 1000.0 * sample_rate));

    std::vector<double> env(audio.samples.size(), 0.0);
    for (double onset : onsets) {
        const std::size_t start = static_cast<std::size_t>(std::llround(onset * sample_rate));
        for (std::size_t i = 0; i < rise_n + dur_n + decay_n && start + i < env.size(); ++i) {
            double e;
            if (i < rise_n) e = static_cast<double>(i + 1) / rise_n;
            else if (i < rise_n + dur_n) e = 1.0;
            else e = 1.0 - static_cast<double>(i - rise_n - dur_n + 1) / decay_n;
            env[start + i] = e;
        }
    }
    for (std::size_t i = 0; i < audio.samples.size(); ++i) {
        double carrier = 0.0;
        for (int j = 0; j < kComponents; ++j) {
            carrier += state[j].imag();
            state[j] *= rot[j];
        }
        audio.samples[i] = gain * env[i] * carrier;
    }
    // Random phases can interfere constructively past full scale; renormalize
    // so the buffer honors the [-1,1] invariant.
    double peak = 0.0;
    for (double s : audio.samples) peak = std::max(peak, std::abs(s));
    if (peak > 1.0)
        for (double& s : audio.samples) s /= peak;
    return audio;
}

}  // namespace rhythmkit
