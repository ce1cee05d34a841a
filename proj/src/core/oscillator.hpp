#pragma once

#include "types.hpp"

namespace rhythmkit {

// Raised cosine: 1 at phase 0, 0 at phase 0.5. Domain error outside [0,1).
double activation(double phase);

// Advance phase by dt/period, wrapping into [0,1). On each wrap the period
// decays toward the resting period by fraction gamma, clamped to bounds.
// Requires 0 < dt <= period/10.
void step(AdaptiveOscillator& osc, double dt);

// Phase-reset coupling: when activation(phase) + amplitude exceeds 1.0 the
// phase snaps to zero and the period moves toward the observed inter-reset
// interval by fraction alpha. Returns whether a reset occurred and, if so,
// the activation at pulse arrival via out parameter.
bool apply_pulse(AdaptiveOscillator& osc, const Pulse& pulse, double now,
                 double* activation_at_pulse = nullptr);

// Continuous coupling: sin-based phase nudge toward zero, period change
// proportional to the signed phase deviation. Never hard-resets.
void apply_pulse_continuous(AdaptiveOscillator& osc, const Pulse& pulse, double now);

// Discrete-time simulation: samples every dt, pulses handled at their exact
// times. dt must satisfy dt <= period_min/10 so the step contract holds for
// any in-bounds period.
EntrainmentTrace entrain(AdaptiveOscillator osc, const PulseTrain& train,
                         double dt, double t_end);

// Mean activation-at-pulse-arrival over the last `window` resets; 0 when the
// trace has no resets.
double synchrony_output(const EntrainmentTrace& trace, std::size_t window);

}  // namespace rhythmkit
