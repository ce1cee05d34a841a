#include <doctest.h>

#include <cmath>

#include "core/oscillator.hpp"
#include "core/stimuli.hpp"

using namespace rhythmkit;

TEST_CASE("activation is a raised cosine of phase") {
    CHECK(activation(0.0) == doctest::Approx(1.0));
    CHECK(activation(0.25) == doctest::Approx(0.5));
    CHECK(activation(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(activation(0.75) == doctest::Approx(0.5));
    CHECK(activation(0.1) == doctest::Approx(0.9045084971874737));
    CHECK_THROWS_AS(activation(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(activation(1.0), std::invalid_argument);
}

TEST_CASE("step advances phase by dt/period and wraps into [0,1)") {
    AdaptiveOscillator osc;
    osc.period = 0.5;
    osc.phase = 0.0;
    step(osc, 0.05);
    CHECK(osc.phase == doctest::Approx(0.1));
    osc.phase = 0.98;
    step(osc, 0.05);  // 0.98 + 0.1 wraps to 0.08
    CHECK(osc.phase == doctest::Approx(0.08));
    CHECK(osc.phase >= 0.0);
    CHECK(osc.phase < 1.0);
}

TEST_CASE("step decays the period toward rest once per wrap") {
    AdaptiveOscillator osc;
    osc.period = 0.7;
    osc.resting_period = 0.5;
    osc.decay_rate = 0.05;
    osc.phase = 0.99;
    step(osc, 0.02);  // wraps once
    CHECK(osc.period == doctest::Approx(0.7 + 0.05 * (0.5 - 0.7)));
    const double p_after_wrap = osc.period;
    step(osc, 0.02);  // no wrap, no decay
    CHECK(osc.period == doctest::Approx(p_after_wrap));
}

TEST_CASE("step rejects too-large dt") {
    AdaptiveOscillator osc;
    osc.period = 0.5;
    CHECK_THROWS_AS(step(osc, 0.06), std::invalid_argument);
    CHECK_THROWS_AS(step(osc, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(step(osc, -0.01), std::invalid_argument);
}

TEST_CASE("apply_pulse resets only when activation + amplitude exceeds 1") {
    AdaptiveOscillator osc;
    osc.period = 0.5;

    SUBCASE("above threshold resets phase to zero") {
        osc.phase = 0.9;  // activation ~0.9045
        double act = 0.0;
        const bool reset = apply_pulse(osc, Pulse{1.0, 0.2}, 1.0, &act);
        CHECK(reset);
        CHECK(osc.phase == doctest::Approx(0.0));
        CHECK(act == doctest::Approx(0.9045084971874737));
        CHECK(osc.period == doctest::Approx(0.5));  // first reset adapts nothing
        REQUIRE(osc.last_reset_time.has_value());
        CHECK(*osc.last_reset_time == doctest::Approx(1.0));
    }

    SUBCASE("early-phase pulses reset only with enough amplitude") {
        osc.phase = 0.1;  // activation ~0.9045
        CHECK(apply_pulse(osc, Pulse{1.0, 0.6}, 1.0));   // 1.5045 > 1
        osc.phase = 0.1;
        osc.last_reset_time.reset();
        CHECK_FALSE(apply_pulse(osc, Pulse{2.0, 0.05}, 2.0));  // 0.9545, no reset
    }

    SUBCASE("at or below threshold leaves the state alone") {
        osc.phase = 0.5;  // activation 0
        CHECK_FALSE(apply_pulse(osc, Pulse{1.0, 1.0}, 1.0));  // exactly 1.0: strict
        CHECK(osc.phase == doctest::Approx(0.5));
        CHECK_FALSE(osc.last_reset_time.has_value());
    }
}

TEST_CASE("second reset adapts the period toward the observed interval") {
    AdaptiveOscillator osc;
    osc.period = 0.5;
    osc.adaptation_rate = 0.3;
    osc.phase = 0.0;
    apply_pulse(osc, Pulse{1.0, 1.0}, 1.0);
    osc.phase = 0.9;
    apply_pulse(osc, Pulse{1.6, 1.0}, 1.6);  // interval 0.6
    CHECK(osc.period == doctest::Approx(0.5 + 0.3 * (0.6 - 0.5)));
}

TEST_CASE("adapted period stays within bounds") {
    AdaptiveOscillator osc;
    osc.period = 1.9;
    osc.period_max = 2.0;
    osc.adaptation_rate = 1.0;
    osc.phase = 0.0;
    apply_pulse(osc, Pulse{0.5, 1.0}, 0.5);
    osc.phase = 0.9;
    apply_pulse(osc, Pulse{5.0, 1.0}, 5.0);  // interval 4.5 would overshoot
    CHECK(osc.period == doctest::Approx(2.0));
}

TEST_CASE("entrain locks onto a periodic train") {
    AdaptiveOscillator osc;  // resting 0.5, alpha 0.3
    osc.decay_rate = 0.0;
    const PulseTrain train = gen_periodic(0.6, 14, 1.0, 0.6);
    const EntrainmentTrace trace = entrain(osc, train, 0.005, train.last_time() + 0.1);
    CHECK(trace.resets.size() >= 10);
    CHECK(std::abs(trace.final_period() - 0.6) < 0.012);
    // late synchrony should be near perfect: pulses arrive at phase ~0
    CHECK(synchrony_output(trace, 4) > 0.95);
}

TEST_CASE("entrain rejects dt above the period_min/10 contract") {
    AdaptiveOscillator osc;
    const PulseTrain train = gen_periodic(0.5, 4, 1.0, 0.5);
    CHECK_THROWS_AS(entrain(osc, train, 0.02, 3.0), std::invalid_argument);
}

TEST_CASE("undriven oscillator decays monotonically toward the resting period") {
    AdaptiveOscillator osc;
    osc.period = 0.8;
    osc.resting_period = 0.5;
    osc.decay_rate = 0.05;
    const EntrainmentTrace trace = entrain(osc, PulseTrain{}, 0.005, 30.0);
    double prev = 0.8;
    for (const TraceSample& s : trace.samples) {
        CHECK(s.period <= prev + 1e-12);
        prev = s.period;
    }
    CHECK(trace.final_period() < 0.8);
    CHECK(trace.final_period() > 0.5);
}

TEST_CASE("continuous coupling nudges phase toward zero without hard resets") {
    AdaptiveOscillator osc;
    osc.mode = CouplingMode::continuous;
    osc.continuous_gain = 0.5;

    SUBCASE("zero phase is a fixed point") {
        osc.phase = 0.0;
        apply_pulse_continuous(osc, Pulse{1.0, 1.0}, 1.0);
        CHECK(osc.phase == doctest::Approx(0.0));
        CHECK(osc.period == doctest::Approx(0.5));
    }
    SUBCASE("early-cycle phase is pulled back toward zero") {
        osc.phase = 0.25;
        osc.adaptation_rate = 0.0;
        apply_pulse_continuous(osc, Pulse{1.0, 1.0}, 1.0);
        CHECK(osc.phase == doctest::Approx(0.25 - 0.5 / kTwoPi));
    }
    SUBCASE("late-cycle phase is pushed forward toward one") {
        osc.phase = 0.75;
        osc.adaptation_rate = 0.0;
        apply_pulse_continuous(osc, Pulse{1.0, 1.0}, 1.0);
        CHECK(osc.phase == doctest::Approx(0.75 + 0.5 / kTwoPi));
    }
    SUBCASE("period change follows the signed phase deviation") {
        osc.phase = 0.9;  // d = -0.1: pulse before zero phase is due -> lengthen
        osc.adaptation_rate = 0.3;
        osc.continuous_gain = 0.0;
        apply_pulse_continuous(osc, Pulse{1.0, 1.0}, 1.0);
        CHECK(osc.period == doctest::Approx(0.5 * (1.0 + 0.3 * 0.1)));
    }
    SUBCASE("an entrained run never hard-resets") {
        osc.decay_rate = 0.0;
        const PulseTrain train = gen_periodic(0.6, 30, 1.0, 0.6);
        const EntrainmentTrace trace = entrain(osc, train, 0.005, train.last_time() + 0.1);
        CHECK(trace.resets.empty());
        CHECK(trace.final_period() >= osc.period_min);
        CHECK(trace.final_period() <= osc.period_max);
    }
}

TEST_CASE("synchrony_output averages activation at the last resets") {
    EntrainmentTrace trace;
    CHECK(synchrony_output(trace, 4) == doctest::Approx(0.0));
    trace.resets.push_back({1.0, std::nullopt, 0.2});
    trace.resets.push_back({2.0, 1.0, 0.6});
    trace.resets.push_back({3.0, 1.0, 1.0});
    CHECK(synchrony_output(trace, 2) == doctest::Approx(0.8));
    CHECK(synchrony_output(trace, 10) == doctest::Approx(0.6));
}

TEST_CASE("trace samples lie on the dt grid and include t=0") {
    AdaptiveOscillator osc;
    const PulseTrain train = gen_periodic(0.3, 3, 1.0, 0.4);
    const EntrainmentTrace trace = entrain(osc, train, 0.01, 1.0);
    REQUIRE(!trace.samples.empty());
    CHECK(trace.samples.front().time == doctest::Approx(0.0));
    CHECK(trace.samples.back().time == doctest::Approx(1.0));
    for (std::size_t i = 0; i < trace.samples.size(); ++i)
        CHECK(trace.samples[i].time == doctest::Approx(0.01 * static_cast<double>(i)));
}

TEST_CASE("oscillator validation rejects out-of-range parameters") {
    AdaptiveOscillator osc;
    osc.phase = 1.0;
    CHECK_THROWS_AS(osc.validate(), std::invalid_argument);
    osc.phase = 0.0;
    osc.period = 3.0;
    CHECK_THROWS_AS(osc.validate(), std::invalid_argument);
    osc.period = 0.5;
    osc.adaptation_rate = 1.5;
    CHECK_THROWS_AS(osc.validate(), std::invalid_argument);
}
