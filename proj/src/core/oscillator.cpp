#include "oscillator.hpp"

#include <algorithm>
#include <cmath>

namespace rhythmkit {

namespace {

double clamp_period(const AdaptiveOscillator& osc, double p) {
    return std::clamp(p, osc.period_min, osc.period_max);
}

}  // namespace

double activation(double phase) {
    if (!(phase >= 0.0 && phase < 1.0))
        throw std::invalid_argument("activation: phase must be in [0,1)");
    return (1.0 + std::cos(kTwoPi * phase)) / 2.0;
}

void step(AdaptiveOscillator& osc, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    if (dt > osc.period / 10.0 + 1e-12)
        throw std::invalid_argument("step: dt exceeds period/10");
    osc.phase += dt / osc.period;
    if (osc.phase >= 1.0) {
        osc.phase -= 1.0;
        // One full cycle completed without a reset ending it: decay toward rest.
        osc.period = clamp_period(
            osc, osc.period + osc.decay_rate * (osc.resting_period - osc.period));
    }
}

bool apply_pulse(AdaptiveOscillator& osc, const Pulse& pulse, double now,
                 double* activation_at_pulse) {
    if (osc.mode != CouplingMode::phase_reset)
        throw std::invalid_argument("apply_pulse: oscillator not in phase_reset mode");
    const double act = activation(osc.phase);
    if (!(act + pulse.amplitude > 1.0)) return false;
    osc.phase = 0.0;
    if (osc.last_reset_time) {
        const double interval = now - *osc.last_reset_time;
        osc.period = clamp_period(
            osc, osc.period + osc.adaptation_rate * (interval - osc.period));
    }
    osc.last_reset_time = now;
    if (activation_at_pulse) *activation_at_pulse = act;
    return true;
}

void apply_pulse_continuous(AdaptiveOscillator& osc, const Pulse& pulse, double /*now*/) {
    if (osc.mode != CouplingMode::continuous)
        throw std::invalid_argument("apply_pulse_continuous: oscillator not in continuous mode");
    const double phi = osc.phase;
    const double deviation = phi < 0.5 ? phi : phi - 1.0;  // signed, in [-0.5, 0.5)
    double next = phi - osc.continuous_gain * pulse.amplitude * std::sin(kTwoPi * phi) / kTwoPi;
    next -= std::floor(next);
    osc.phase = next;
    osc.period = clamp_period(
        osc, osc.period + osc.adaptation_rate * pulse.amplitude * (-deviation) * osc.period);
}

EntrainmentTrace entrain(AdaptiveOscillator osc, const PulseTrain& train,
                         double dt, double t_end) {
    osc.validate();
    train.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("entrain: dt must be positive");
    if (dt > osc.period_min / 10.0 + 1e-12)
        throw std::invalid_argument("entrain: dt exceeds period_min/10 step contract");
    if (!train.empty() && t_end < train.last_time())
        throw std::invalid_argument("entrain: t_end precedes last pulse");

    EntrainmentTrace trace;
    trace.params = osc;

    const auto record = [&](double t) {
        trace.samples.push_back({t, osc.phase, osc.period, activation(osc.phase)});
    };
    const auto advance = [&](double from, double to) {
        // Sub-steps within one sample interval are all <= dt.
        double t = from;
        while (to - t > 1e-12) {
            const double h = std::min(dt, to - t);
            step(osc, h);
            t += h;
        }
    };
    const auto fire = [&](const Pulse& p) {
        if (osc.mode == CouplingMode::phase_reset) {
            double act = 0.0;
            std::optional<double> prev = osc.last_reset_time;
            if (apply_pulse(osc, p, p.time, &act)) {
                std::optional<double> interval;
                if (prev) interval = p.time - *prev;
                trace.resets.push_back({p.time, interval, act});
            }
        } else {
            apply_pulse_continuous(osc, p, p.time);
        }
    };

    record(0.0);
    double t = 0.0;
    std::size_t next_pulse = 0;
    std::size_t k = 1;
    while (t < t_end - 1e-12) {
        const double t_next = std::min(k * dt, t_end);
        while (next_pulse < train.size() && train.pulses[next_pulse].time <= t_next + 1e-12) {
            const Pulse& p = train.pulses[next_pulse];
            advance(t, p.time);
            t = p.time;
            fire(p);
            ++next_pulse;
        }
        advance(t, t_next);
        t = t_next;
        record(t);
        ++k;
    }
    return trace;
}

double synchrony_output(const EntrainmentTrace& trace, std::size_t window) {
    if (window < 1) throw std::invalid_argument("synchrony_output: window must be >= 1");
    if (trace.resets.empty()) return 0.0;
    const std::size_t n = std::min(window, trace.resets.size());
    double sum = 0.0;
    for (std::size_t i = trace.resets.size() - n; i < trace.resets.size(); ++i)
        sum += trace.resets[i].activation_at_pulse;
    return sum / static_cast<double>(n);
}

}  // namespace rhythmkit
