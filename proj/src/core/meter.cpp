#include "meter.hpp"

#include <algorithm>
#include <cmath>

namespace rhythmkit {

namespace {

std::vector<double> geometric_spacing(std::pair<double, double> range, int count) {
    if (!(range.first > 0.0 && range.second >= range.first))
        throw std::invalid_argument("build_bank: range must be positive and ordered");
    std::vector<double> out;
    if (count == 1) {
        out.push_back(std::sqrt(range.first * range.second));
        return out;
    }
    const double ratio = range.second / range.first;
    for (int i = 0; i < count; ++i)
        out.push_back(range.first * std::pow(ratio, static_cast<double>(i) / (count - 1)));
    return out;
}

struct Winner {
    bool valid = false;
    std::size_t index = 0;
    double score = 0.0;
};

Winner pick_winner(const std::vector<EntrainmentTrace>& traces,
                   const OscillatorBank& bank, MeterLevel level,
                   const MeterConfig& cfg) {
    // Highest synchrony wins; near-ties (within 0.02) go to the oscillator
    // with the most resets, so a candidate locked at a harmonic of the pulse
    // rate cannot shadow the one locked at the rate itself.
    constexpr double kTieEpsilon = 0.02;
    struct Candidate {
        std::size_t index;
        double score;
        std::size_t resets;
    };
    std::vector<Candidate> candidates;
    double top = 0.0;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        if (bank.level_tags[i] != level) continue;
        if (traces[i].resets.size() < cfg.min_resets) continue;
        const double score = synchrony_output(traces[i], cfg.synchrony_window);
        candidates.push_back({i, score, traces[i].resets.size()});
        top = std::max(top, score);
    }
    Winner best;
    for (const Candidate& c : candidates) {
        if (c.score < top - kTieEpsilon) continue;
        if (!best.valid || c.resets > traces[best.index].resets.size() ||
            (c.resets == traces[best.index].resets.size() && c.score > best.score)) {
            best = {true, c.index, c.score};
        }
    }
    return best;
}

}  // namespace

OscillatorBank build_bank(std::pair<double, double> beat_range,
                          std::pair<double, double> measure_range,
                          int count_per_level, const AdaptiveOscillator& osc_params) {
    if (count_per_level < 1) throw std::invalid_argument("build_bank: count_per_level must be >= 1");
    OscillatorBank bank;
    const auto add_level = [&](std::pair<double, double> range, MeterLevel level) {
        for (double rest : geometric_spacing(range, count_per_level)) {
            AdaptiveOscillator osc = osc_params;
            osc.resting_period = rest;
            osc.period = rest;
            osc.phase = 0.0;
            osc.last_reset_time.reset();
            osc.period_min = std::min(osc.period_min, rest / 2.0);
            osc.period_max = std::max(osc.period_max, rest * 2.0);
            osc.validate();
            bank.oscillators.push_back(osc);
            bank.level_tags.push_back(level);
        }
    };
    add_level(beat_range, MeterLevel::beat);
    add_level(measure_range, MeterLevel::measure);
    return bank;
}

std::vector<EntrainmentTrace> run_network(const OscillatorBank& bank,
                                          const PulseTrain& train,
                                          const MeterConfig& cfg, double t_end) {
    PulseTrain strong;
    for (const Pulse& p : train.pulses)
        if (p.amplitude >= cfg.strong_pulse_threshold) strong.pulses.push_back(p);

    std::vector<EntrainmentTrace> traces;
    traces.reserve(bank.oscillators.size());
    for (std::size_t i = 0; i < bank.oscillators.size(); ++i) {
        const PulseTrain& input =
            bank.level_tags[i] == MeterLevel::measure ? strong : train;
        const double end = std::max(t_end, input.empty() ? 0.0 : input.last_time());
        traces.push_back(entrain(bank.oscillators[i], input, cfg.dt, std::max(end, cfg.dt)));
    }
    return traces;
}

std::pair<int, double> harmonicity(double p_hi, double p_lo) {
    if (!(p_lo > 0.0) || !(p_hi >= p_lo))
        throw std::invalid_argument("harmonicity: need p_hi >= p_lo > 0");
    const double r = p_hi / p_lo;
    const int nearest = std::max(1, static_cast<int>(std::floor(r + 0.5)));  // ties round up
    return {nearest, std::abs(r - nearest)};
}

MeterEstimate estimate_meter(const std::vector<EntrainmentTrace>& traces,
                             const OscillatorBank& bank, const PulseTrain& train,
                             const MeterConfig& cfg) {
    MeterEstimate est;
    if (train.empty()) {
        est.no_meter_reason = "empty pulse train";
        return est;
    }
    const Winner beat = pick_winner(traces, bank, MeterLevel::beat, cfg);
    if (!beat.valid || beat.score < cfg.min_level_score) {
        est.no_meter_reason = "no entrained beat-level oscillator";
        return est;
    }
    est.beat_period = traces[beat.index].final_period();
    est.beat_score = beat.score;

    const Winner measure = pick_winner(traces, bank, MeterLevel::measure, cfg);
    if (!measure.valid || measure.score < cfg.min_level_score) {
        est.no_meter_reason = "no entrained measure-level oscillator";
        return est;
    }
    est.measure_period = traces[measure.index].final_period();
    est.measure_score = measure.score;

    if (est.measure_period < est.beat_period) {
        est.no_meter_reason = "measure period below beat period";
        return est;
    }
    const auto [ratio, error] = harmonicity(est.measure_period, est.beat_period);
    est.harmonicity_error = error;
    if (error > cfg.ratio_tolerance) {
        est.no_meter_reason = "level periods not an integral multiple";
        return est;
    }
    if (ratio < 2) {
        est.no_meter_reason = "levels degenerate (1:1 period ratio)";
        return est;
    }

    // Downbeats at the two levels must line up: measure resets coincide with
    // beat resets within the alignment window.
    const double align_window = cfg.align_window_factor * est.beat_period;
    const auto& beat_resets = traces[beat.index].resets;
    const auto& measure_resets = traces[measure.index].resets;
    std::size_t aligned = 0;
    for (const ResetEvent& mr : measure_resets) {
        for (const ResetEvent& br : beat_resets) {
            if (std::abs(br.time - mr.time) <= align_window) {
                ++aligned;
                break;
            }
        }
    }
    if (aligned < static_cast<std::size_t>(
                      std::ceil(0.8 * static_cast<double>(measure_resets.size())))) {
        est.no_meter_reason = "downbeats not aligned across levels";
        return est;
    }

    est.found = true;
    est.beats_per_measure = ratio;
    est.downbeat_time = measure_resets.front().time;
    return est;
}

MeterEstimate find_meter(const PulseTrain& train, const MeterConfig& cfg) {
    const OscillatorBank bank =
        build_bank(cfg.beat_range, cfg.measure_range, cfg.count_per_level, cfg.osc_params);
    const double t_end = train.empty() ? 1.0 : train.last_time();
    const auto traces = run_network(bank, train, cfg, t_end);
    return estimate_meter(traces, bank, train, cfg);
}

}  // namespace rhythmkit
