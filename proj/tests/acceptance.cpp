// Acceptance suite: ten end-to-end criteria with pinned tolerances, one
// PASS/FAIL line each. Exits non-zero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/beats.hpp"
#include "core/io.hpp"
#include "core/meter.hpp"
#include "core/oscillator.hpp"
#include "core/random.hpp"
#include "core/stimuli.hpp"

using namespace rhythmkit;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", number,
                name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// 1. Entrainment convergence: T = 0.6, resting 0.5, alpha 0.3 ->
//    |period - T| < 2% of T within 10 resets, in under a second of runtime.
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    AdaptiveOscillator osc;  // resting 0.5, alpha 0.3
    osc.decay_rate = 0.0;
    const PulseTrain train = gen_periodic(0.6, 11, 1.0, 0.6);
    const EntrainmentTrace trace = entrain(osc, train, 0.005, train.last_time());
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    double period_at_10 = 0.0;
    bool reached = false;
    std::size_t resets_seen = 0;
    double t_tenth = 0.0;
    for (const ResetEvent& r : trace.resets) {
        if (++resets_seen == 10) {
            t_tenth = r.time;
            reached = true;
        }
    }
    if (reached) {
        for (const TraceSample& s : trace.samples)
            if (s.time >= t_tenth) {
                period_at_10 = s.period;
                break;
            }
    }
    const double err = std::abs(period_at_10 - 0.6);
    const bool pass = reached && err < 0.02 * 0.6 && elapsed < 1.0;
    report(1, "entrainment convergence",
           pass, "period error " + fmt(err) + " after 10 resets, runtime " + fmt(elapsed) + " s");
}

// 2. Smoothing: jittered train T = 0.5, sd = 0.025, 20 resets ->
//    period within 0.025 of T in >= 90 of 100 seeds.
void criterion_2() {
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const PulseTrain train = gen_jittered(0.5, 25, 1.0, 0.025, seed);
        AdaptiveOscillator osc;
        osc.decay_rate = 0.0;
        const EntrainmentTrace trace = entrain(osc, train, 0.005, train.last_time());
        if (trace.resets.size() >= 20 && std::abs(trace.final_period() - 0.5) < 0.025)
            ++hits;
    }
    report(2, "jitter smoothing", hits >= 90, std::to_string(hits) + "/100 seeds within sd");
}

// 3. Missing-pulse robustness: drop 2 interior pulses of 20 ->
//    final period within 5% of T and every remaining pulse resets.
void criterion_3() {
    const PulseTrain base = gen_periodic(0.5, 20, 1.0, 0.5);
    const PulseTrain train = drop_pulses(base, {5, 10});
    AdaptiveOscillator osc;
    osc.decay_rate = 0.0;
    const EntrainmentTrace trace = entrain(osc, train, 0.005, train.last_time());
    const double err = std::abs(trace.final_period() - 0.5);
    const bool all_reset = trace.resets.size() == train.size();
    report(3, "missing-pulse robustness", err < 0.05 * 0.5 && all_reset,
           "period error " + fmt(err) + ", resets " + std::to_string(trace.resets.size()) +
               "/" + std::to_string(train.size()));
}

// 4. Decay: undriven, gamma = 0.05 -> |period - rest| strictly decreasing per
//    cycle and below 10% of the initial offset within 50 cycles.
void criterion_4() {
    AdaptiveOscillator osc;
    osc.period = 0.8;
    osc.resting_period = 0.5;
    osc.decay_rate = 0.05;
    const double initial_offset = std::abs(osc.period - osc.resting_period);
    bool monotone = true;
    double prev_offset = initial_offset;
    double offset_at_50 = initial_offset;
    for (int cycle = 1; cycle <= 50; ++cycle) {
        const double start_phase = osc.phase;
        // advance exactly one cycle (one wrap)
        double travelled = start_phase;
        while (travelled < 1.0) {
            const double dt = std::min(osc.period / 20.0, (1.0 - travelled) * osc.period);
            const double before = osc.phase;
            step(osc, std::max(dt, 1e-6));
            travelled += (osc.phase >= before) ? (osc.phase - before)
                                               : (1.0 - before + osc.phase);
        }
        const double offset = std::abs(osc.period - osc.resting_period);
        if (offset >= prev_offset) monotone = false;
        prev_offset = offset;
        if (cycle == 50) offset_at_50 = offset;
    }
    report(4, "decay to resting period",
           monotone && offset_at_50 < 0.1 * initial_offset,
           "offset after 50 cycles " + fmt(offset_at_50) + " of initial " +
               fmt(initial_offset) + (monotone ? ", monotone" : ", NOT monotone"));
}

// 5. Beat extraction: 5-burst fixture -> exactly 5 beats, intervals within
//    300 +/- 30 ms; 0.25x amplitude copy has identical times within 1 sample.
void criterion_5() {
    const std::vector<double> onsets{0.2, 0.5, 0.8, 1.1, 1.4};
    const AudioBuffer audio = gen_syllable_wav(onsets, 20.0, 150.0, 8000, 1.8, 17);
    const BeatList beats = extract_beats(audio, BeatConfig{});

    bool intervals_ok = beats.beats.size() == 5;
    double worst = 0.0;
    for (std::size_t i = 1; i < beats.beats.size() && intervals_ok; ++i) {
        const double dev = std::abs(beats.beats[i].time - beats.beats[i - 1].time - 0.3);
        worst = std::max(worst, dev);
        if (dev > 0.03) intervals_ok = false;
    }

    AudioBuffer scaled = audio;
    for (double& s : scaled.samples) s *= 0.25;
    const BeatList beats_scaled = extract_beats(scaled, BeatConfig{});
    bool scale_ok = beats_scaled.beats.size() == beats.beats.size();
    for (std::size_t i = 0; i < beats.beats.size() && scale_ok; ++i)
        if (std::abs(beats.beats[i].time - beats_scaled.beats[i].time) > 1.0 / 8000.0)
            scale_ok = false;

    report(5, "beat extraction fixture", intervals_ok && scale_ok,
           std::to_string(beats.beats.size()) + " beats, worst interval deviation " +
               fmt(worst) + " s, scale-invariant: " + (scale_ok ? "yes" : "no"));
}

// 6. Phase modes: 300 synthetic phases from {1/3, 1/2, 2/3}, sd 0.03 ->
//    exactly 3 modes within 0.02 of truth; paper modes {0.36, 0.49, 0.6} sit
//    near nominal {1/3, 1/2, 2/3} with mean deviation <= 0.04.
void criterion_6() {
    Rng rng(2026);
    std::vector<PhaseSample> phases;
    const double centers[] = {1.0 / 3.0, 0.5, 2.0 / 3.0};
    for (double c : centers)
        for (int i = 0; i < 100; ++i) {
            double phi = c + 0.03 * rng.gaussian();
            phi -= std::floor(phi);
            phases.push_back({phi, i, "synthetic"});
        }
    const ModeReport rep = mode_report(phases, 0.02);
    bool modes_ok = rep.modes.size() == 3 && !rep.diffuse;
    double worst = 0.0;
    for (std::size_t i = 0; i < rep.modes.size() && modes_ok; ++i) {
        double d = std::abs(rep.modes[i].location - centers[i]);
        d = std::min(d, 1.0 - d);
        worst = std::max(worst, d);
        if (d > 0.02) modes_ok = false;
    }

    const double nominal[] = {nominal_phase(3, 2), nominal_phase(2, 2), nominal_phase(3, 3)};
    const double observed[] = {0.36, 0.49, 0.6};
    double mean_dev = 0.0;
    for (int i = 0; i < 3; ++i) mean_dev += std::abs(observed[i] - nominal[i]) / 3.0;
    const bool nominal_ok = mean_dev <= 0.04;

    report(6, "phase-mode regeneration", modes_ok && nominal_ok,
           std::to_string(rep.modes.size()) + " modes, worst location error " + fmt(worst) +
               ", nominal-vs-observed mean deviation " + fmt(mean_dev));
}

// 7. Mora linearity: compensation 1, noise 0 -> exact slope and r^2 = 1;
//    per-mora sd 0.3*mean, compensation 0.8 -> slope within 10% and
//    r^2 > 0.95 in >= 95 of 100 seeds.
void criterion_7() {
    const double mean_mora = 0.15;
    const auto exact = gen_mora_dataset(mean_mora, 7, 4, 1.0, 0.0, 0.0, 1);
    std::vector<std::pair<int, double>> pts;
    for (const MoraPoint& p : exact) pts.push_back({p.mora_count, p.duration});
    const MoraRegression reg = mora_regression(pts);
    const bool exact_ok = std::abs(reg.slope - mean_mora) < 1e-12 &&
                          std::abs(reg.r_squared - 1.0) < 1e-12;

    int hits = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto noisy = gen_mora_dataset(mean_mora, 7, 10, 0.8, 0.3 * mean_mora, 0.0, seed);
        pts.clear();
        for (const MoraPoint& p : noisy) pts.push_back({p.mora_count, p.duration});
        const MoraRegression r = mora_regression(pts);
        if (std::abs(r.slope - mean_mora) < 0.1 * mean_mora && r.r_squared > 0.95) ++hits;
    }
    report(7, "mora linearity", exact_ok && hits >= 95,
           std::string("exact case ") + (exact_ok ? "ok" : "FAILED") + ", noisy " +
               std::to_string(hits) + "/100 seeds");
}

// 8. Meter recovery: 12-case grid + 3 downbeat rotations all correct;
//    uniform-random trains report meter in < 10% of 100 seeds.
void criterion_8() {
    int correct = 0, total = 0;
    std::string first_fail;
    for (int k : {2, 3, 4}) {
        for (double bp : {0.3, 0.4, 0.5}) {
            ++total;
            const PulseTrain train = gen_hierarchical(bp, k, 1.0, 0.5, 12);
            const MeterEstimate est = find_meter(train, MeterConfig{});
            const bool ok = est.found && est.beats_per_measure == k &&
                            std::abs(est.downbeat_time - 0.0) <= 0.15 * bp;
            if (ok) ++correct;
            else if (first_fail.empty())
                first_fail = " first fail k=" + std::to_string(k) + " bp=" + fmt(bp) +
                             (est.found ? " got k=" + std::to_string(est.beats_per_measure)
                                        : " (" + est.no_meter_reason + ")");
        }
    }
    for (int rot : {0, 1, 2}) {
        ++total;
        PulseTrain train = gen_hierarchical(0.4, 3, 1.0, 0.5, 12);
        for (std::size_t i = 0; i < train.size(); ++i)
            train.pulses[i].amplitude = (static_cast<int>(i) % 3 == rot) ? 1.0 : 0.5;
        const MeterEstimate est = find_meter(train, MeterConfig{});
        const bool ok = est.found && est.beats_per_measure == 3 &&
                        std::abs(est.downbeat_time - rot * 0.4) <= 0.15 * 0.4;
        if (ok) ++correct;
        else if (first_fail.empty())
            first_fail = " first fail rotation " + std::to_string(rot);
    }

    int false_meters = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        PulseTrain train;
        double t = 0.0;
        for (int i = 0; i < 24; ++i) {
            t += rng.uniform(0.08, 0.72);  // Poisson-like: iid uniform gaps
            train.pulses.push_back({t, 1.0});
        }
        const MeterEstimate est = find_meter(train, MeterConfig{});
        if (est.found && est.harmonicity_error <= 0.05) ++false_meters;
    }

    report(8, "meter recovery", correct == total && false_meters < 10,
           std::to_string(correct) + "/" + std::to_string(total) + " planted cases, " +
               std::to_string(false_meters) + "/100 false meters" + first_fail);
}

// 9. Tempo discrimination: +/-20% -> correct faster/slower; +/-1% -> equal;
//    swap-symmetric under reset-per-trial.
void criterion_9() {
    DiscriminationConfig cfg;
    const PulseTrain a = gen_periodic(0.5, 5, 1.0, 0.5);
    const double b_start = a.last_time() + 1.0;
    auto verdict_for = [&](double period_b) {
        return simulate_tempo_discrimination(a, gen_periodic(period_b, 5, 1.0, b_start), cfg)
            .verdict;
    };
    const bool carry_ok = verdict_for(0.4) == TempoVerdict::faster &&
                          verdict_for(0.6) == TempoVerdict::slower &&
                          verdict_for(0.505) == TempoVerdict::equal &&
                          verdict_for(0.495) == TempoVerdict::equal;

    DiscriminationConfig rcfg;
    rcfg.reset_per_trial = true;
    const PulseTrain fast = gen_periodic(0.4, 5, 1.0, 0.5);
    const PulseTrain slow = gen_periodic(0.5, 5, 1.0, 0.5);
    const TempoVerdict ab = simulate_tempo_discrimination(slow, fast, rcfg).verdict;
    const TempoVerdict ba = simulate_tempo_discrimination(fast, slow, rcfg).verdict;
    const bool symmetric = ab == TempoVerdict::faster && ba == TempoVerdict::slower;

    report(9, "tempo discrimination", carry_ok && symmetric,
           std::string("carry verdicts ") + (carry_ok ? "ok" : "FAILED") +
               ", swap symmetry " + (symmetric ? "ok" : "FAILED"));
}

// 10. Determinism: seeded CLI commands yield byte-identical output twice.
void criterion_10() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() /
                         ("rhythmkit_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);

    auto run = [&](const std::string& args) {
        const std::string cmd = std::string(RK_CLI_PATH) + " " + args + " >/dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        return rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };

    bool pass = true;
    std::string detail;
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"jittered.csv", "stimgen jittered --period 0.5 --count 20 --jitter-sd 0.02 --seed 11 --out "},
        {"burst.wav", "stimgen wav --onsets 0.2,0.5,0.8 --seed 3 --out "},
        {"mora.csv", "stimgen mora --compensation 0.8 --mora-sd 0.04 --seed 7 --out "},
    };
    for (const auto& [name, cmd] : cases) {
        const fs::path p1 = dir / ("run1_" + name);
        const fs::path p2 = dir / ("run2_" + name);
        if (!run(cmd + p1.string()) || !run(cmd + p2.string()) ||
            slurp(p1) != slurp(p2) || slurp(p1).empty()) {
            pass = false;
            detail = "mismatch on " + name;
            break;
        }
    }
    if (pass) {
        // A derived command consuming a generated file must also reproduce.
        const fs::path train = dir / "train.csv";
        const fs::path t1 = dir / "trace1.json";
        const fs::path t2 = dir / "trace2.json";
        pass = run("stimgen periodic --period 0.6 --count 12 --start 0.6 --out " +
                   train.string()) &&
               run("entrain --train " + train.string() + " --dt 0.005 --out " + t1.string()) &&
               run("entrain --train " + train.string() + " --dt 0.005 --out " + t2.string()) &&
               slurp(t1) == slurp(t2) && !slurp(t1).empty();
        if (!pass) detail = "entrain trace mismatch";
    }
    fs::remove_all(dir);
    report(10, "CLI determinism", pass, pass ? "3 generators + entrain byte-identical" : detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures > 0) {
        std::printf("%d of 10 criteria FAILED\n", g_failures);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}
