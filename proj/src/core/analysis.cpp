#include "analysis.hpp"

#include <algorithm>
#include <cmath>

namespace rhythmkit {

PhaseResult measure_phase(const BeatList& target_beats,
                          const std::vector<double>& anchor_times) {
    if (anchor_times.size() < 2)
        throw std::invalid_argument("measure_phase: need at least 2 anchors");
    for (std::size_t i = 1; i < anchor_times.size(); ++i)
        if (anchor_times[i] <= anchor_times[i - 1])
            throw std::invalid_argument("measure_phase: anchors must be strictly increasing");

    PhaseResult result;
    for (const Beat& beat : target_beats.beats) {
        const auto it = std::upper_bound(anchor_times.begin(), anchor_times.end(), beat.time);
        if (it == anchor_times.begin() || it == anchor_times.end()) {
            ++result.dropped;
            continue;
        }
        const double lo = *(it - 1);
        const double hi = *it;
        result.samples.push_back({(beat.time - lo) / (hi - lo), 0, "with-stimulus"});
    }
    return result;
}

ModeReport mode_report(const std::vector<PhaseSample>& phases, double bandwidth) {
    if (phases.empty()) throw std::invalid_argument("mode_report: empty input");
    if (!(bandwidth > 0.0 && bandwidth < 0.25))
        throw std::invalid_argument("mode_report: bandwidth must be in (0, 0.25)");

    constexpr int kGrid = 2048;
    std::vector<double> density(kGrid, 0.0);
    const double norm = 1.0 / (phases.size() * bandwidth * std::sqrt(kTwoPi));
    for (const PhaseSample& s : phases) {
        for (int g = 0; g < kGrid; ++g) {
            const double x = static_cast<double>(g) / kGrid;
            for (int wrap = -3; wrap <= 3; ++wrap) {
                const double d = x - s.phi + wrap;
                density[g] += norm * std::exp(-0.5 * d * d / (bandwidth * bandwidth));
            }
        }
    }

    ModeReport report;
    report.bandwidth = bandwidth;
    const double dmax = *std::max_element(density.begin(), density.end());
    const double dmin = *std::min_element(density.begin(), density.end());
    report.diffuse = dmax < 2.0 * dmin;
    if (report.diffuse) return report;

    std::vector<double> locations;
    for (int g = 0; g < kGrid; ++g) {
        const double prev = density[(g + kGrid - 1) % kGrid];
        const double next = density[(g + 1) % kGrid];
        if (density[g] > prev && density[g] > next && density[g] > 0.1 * dmax)
            locations.push_back(static_cast<double>(g) / kGrid);
    }
    std::sort(locations.begin(), locations.end());

    // Mass: fraction of samples circularly nearest each mode.
    std::vector<std::size_t> counts(locations.size(), 0);
    for (const PhaseSample& s : phases) {
        std::size_t nearest = 0;
        double best = 1.0;
        for (std::size_t m = 0; m < locations.size(); ++m) {
            double d = std::abs(s.phi - locations[m]);
            d = std::min(d, 1.0 - d);
            if (d < best) {
                best = d;
                nearest = m;
            }
        }
        ++counts[nearest];
    }
    for (std::size_t m = 0; m < locations.size(); ++m)
        report.modes.push_back(
            {locations[m], static_cast<double>(counts[m]) / phases.size()});
    return report;
}

double nominal_phase(int beats_per_measure, int stress_position) {
    if (beats_per_measure < 1 || stress_position < 1 || stress_position > beats_per_measure)
        throw std::invalid_argument("nominal_phase: stress position out of range");
    return static_cast<double>(stress_position - 1) / beats_per_measure;
}

MoraRegression mora_regression(const std::vector<std::pair<int, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("mora_regression: need >= 2 points");
    const int first = points.front().first;
    if (std::all_of(points.begin(), points.end(),
                    [&](const auto& p) { return p.first == first; }))
        throw std::invalid_argument("mora_regression: all mora counts identical");

    double sx = 0.0, sy = 0.0;
    for (const auto& [n, d] : points) {
        sx += n;
        sy += d;
    }
    const double mx = sx / points.size();
    const double my = sy / points.size();
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [n, d] : points) {
        sxx += (n - mx) * (n - mx);
        sxy += (n - mx) * (d - my);
        syy += (d - my) * (d - my);
    }
    MoraRegression reg;
    reg.slope = sxy / sxx;
    reg.intercept = my - reg.slope * mx;
    reg.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    reg.n_points = points.size();
    return reg;
}

IntervalStats interval_stats(const BeatList& beats) {
    if (beats.beats.size() < 2)
        throw std::invalid_argument("interval_stats: need >= 2 beats");
    std::vector<double> intervals;
    for (std::size_t i = 1; i < beats.beats.size(); ++i)
        intervals.push_back(beats.beats[i].time - beats.beats[i - 1].time);
    IntervalStats stats;
    stats.count = intervals.size();
    for (double v : intervals) stats.mean += v;
    stats.mean /= intervals.size();
    double var = 0.0;
    for (double v : intervals) var += (v - stats.mean) * (v - stats.mean);
    stats.sd = std::sqrt(var / intervals.size());
    return stats;
}

DiscriminationResult simulate_tempo_discrimination(const PulseTrain& series_a,
                                                   const PulseTrain& series_b,
                                                   const DiscriminationConfig& cfg) {
    if (series_a.size() < 2 || series_b.size() < 2)
        throw std::invalid_argument("tempo discrimination: each series needs >= 2 pulses");
    DiscriminationResult result;
    if (cfg.reset_per_trial) {
        result.period_a =
            entrain(cfg.osc_params, series_a, cfg.dt, series_a.last_time()).final_period();
        result.period_b =
            entrain(cfg.osc_params, series_b, cfg.dt, series_b.last_time()).final_period();
    } else {
        if (series_b.pulses.front().time <= series_a.last_time())
            throw std::invalid_argument("tempo discrimination: series B must follow series A");
        const double t_split = series_a.last_time();
        const EntrainmentTrace trace_a =
            entrain(cfg.osc_params, series_a, cfg.dt, t_split);
        result.period_a = trace_a.final_period();

        // Carry phase and period across the pause (decay stays active); the
        // pause itself is not an observed interval, so the first pulse of
        // series B resets without adapting.
        AdaptiveOscillator carried = cfg.osc_params;
        if (!trace_a.samples.empty()) {
            carried.phase = trace_a.samples.back().phase;
            carried.period = trace_a.samples.back().period;
        }
        PulseTrain shifted = series_b;
        for (Pulse& p : shifted.pulses) p.time -= t_split;
        const EntrainmentTrace trace_b =
            entrain(carried, shifted, cfg.dt, shifted.last_time());
        result.period_b = trace_b.final_period();
    }
    if (result.period_b < result.period_a * (1.0 - cfg.jnd))
        result.verdict = TempoVerdict::faster;
    else if (result.period_b > result.period_a * (1.0 + cfg.jnd))
        result.verdict = TempoVerdict::slower;
    else
        result.verdict = TempoVerdict::equal;
    return result;
}

std::string to_string(TempoVerdict verdict) {
    switch (verdict) {
        case TempoVerdict::faster: return "faster";
        case TempoVerdict::slower: return "slower";
        default: return "equal";
    }
}

}  // namespace rhythmkit
