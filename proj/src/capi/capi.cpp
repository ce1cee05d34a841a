#include "rhythmkit.h"

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "core/analysis.hpp"
#include "core/beats.hpp"
#include "core/io.hpp"
#include "core/meter.hpp"
#include "core/oscillator.hpp"
#include "core/stimuli.hpp"
#include "core/types.hpp"
#include "core/wav.hpp"

using namespace rhythmkit;

/* Opaque handle bodies wrap the core value types. */
struct rk_train { PulseTrain value; };
struct rk_trace { EntrainmentTrace value; };
struct rk_audio { AudioBuffer value; };
struct rk_beats { BeatList value; };
struct rk_phases { PhaseResult value; };
struct rk_modes { ModeReport value; };
struct rk_meter { MeterEstimate value; };
struct rk_schedule { TrialSchedule value; };
struct rk_mora_data { std::vector<MoraPoint> value; };

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Runs fn, translating C++ errors into status codes.
template <typename Fn>
rk_status guarded(Fn&& fn) {
    try {
        fn();
        return RK_OK;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return RK_ERR_INVALID;
    } catch (const std::runtime_error& e) {
        set_error(e.what());
        return RK_ERR_IO;
    } catch (const std::exception& e) {
        set_error(e.what());
        return RK_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown internal error");
        return RK_ERR_INTERNAL;
    }
}

rk_status require(bool ok, const char* message) {
    if (ok) return RK_OK;
    set_error(message);
    return RK_ERR_INVALID;
}

AdaptiveOscillator to_core(const rk_osc_params& p) {
    AdaptiveOscillator osc;
    osc.phase = p.phase;
    osc.period = p.period_s;
    osc.resting_period = p.resting_period_s;
    osc.adaptation_rate = p.adaptation_rate;
    osc.decay_rate = p.decay_rate;
    osc.period_min = p.period_min_s;
    osc.period_max = p.period_max_s;
    osc.continuous_gain = p.continuous_gain;
    osc.mode = p.continuous_mode ? CouplingMode::continuous : CouplingMode::phase_reset;
    return osc;
}

BeatConfig to_core(const rk_beat_config& c) {
    return {c.bands, c.lo_hz, c.hi_hz, c.smooth1_ms, c.smooth2_ms, c.min_rise_fraction};
}

MeterConfig to_core(const rk_meter_config& c) {
    MeterConfig cfg;
    cfg.beat_range = {c.beat_range_lo_s, c.beat_range_hi_s};
    cfg.measure_range = {c.measure_range_lo_s, c.measure_range_hi_s};
    cfg.count_per_level = c.count_per_level;
    cfg.osc_params = to_core(c.osc_params);
    cfg.strong_pulse_threshold = c.strong_pulse_threshold;
    cfg.synchrony_window = c.synchrony_window;
    cfg.ratio_tolerance = c.ratio_tolerance;
    cfg.align_window_factor = c.align_window_factor;
    cfg.min_level_score = c.min_level_score;
    cfg.min_resets = c.min_resets;
    cfg.dt = c.dt_s;
    return cfg;
}

}  // namespace

extern "C" {

const char* rk_last_error(void) { return g_last_error.c_str(); }

const char* rk_version(void) { return "rhythmkit 1.0.0"; }

void rk_osc_params_init(rk_osc_params* params) {
    if (!params) return;
    const AdaptiveOscillator d;
    *params = {d.phase, d.period, d.resting_period, d.adaptation_rate, d.decay_rate,
               d.period_min, d.period_max, d.continuous_gain, 0};
}

/* ---- pulse trains ---- */

rk_status rk_train_create(const double* times, const double* amplitudes, size_t n,
                          rk_train** out) {
    if (rk_status s = require(out && (n == 0 || (times && amplitudes)),
                              "rk_train_create: null argument"))
        return s;
    return guarded([&] {
        auto handle = std::make_unique<rk_train>();
        for (size_t i = 0; i < n; ++i) handle->value.pulses.push_back({times[i], amplitudes[i]});
        handle->value.validate();
        *out = handle.release();
    });
}

void rk_train_free(rk_train* train) { delete train; }

size_t rk_train_size(const rk_train* train) { return train ? train->value.size() : 0; }

rk_status rk_train_get(const rk_train* train, size_t i, double* time, double* amplitude) {
    if (rk_status s = require(train && i < train->value.size(), "rk_train_get: bad handle or index"))
        return s;
    if (time) *time = train->value.pulses[i].time;
    if (amplitude) *amplitude = train->value.pulses[i].amplitude;
    return RK_OK;
}

rk_status rk_train_load_csv(const char* path, rk_train** out) {
    if (rk_status s = require(path && out, "rk_train_load_csv: null argument")) return s;
    return guarded([&] { *out = new rk_train{load_train_csv(path)}; });
}

rk_status rk_train_save_csv(const rk_train* train, const char* path) {
    if (rk_status s = require(train && path, "rk_train_save_csv: null argument")) return s;
    return guarded([&] { save_train_csv(train->value, path); });
}

/* ---- stimulus generators ---- */

rk_status rk_gen_periodic(double period_s, size_t count, double amplitude,
                          double start_time_s, rk_train** out) {
    if (rk_status s = require(out != nullptr, "rk_gen_periodic: null output")) return s;
    return guarded([&] {
        *out = new rk_train{gen_periodic(period_s, count, amplitude, start_time_s)};
    });
}

rk_status rk_gen_jittered(double period_s, size_t count, double amplitude,
                          double jitter_sd_s, uint64_t seed, rk_train** out) {
    if (rk_status s = require(out != nullptr, "rk_gen_jittered: null output")) return s;
    return guarded([&] {
        *out = new rk_train{gen_jittered(period_s, count, amplitude, jitter_sd_s, seed)};
    });
}

rk_status rk_gen_hierarchical(double beat_period_s, int beats_per_measure,
                              double strong_amp, double weak_amp, int n_measures,
                              rk_train** out) {
    if (rk_status s = require(out != nullptr, "rk_gen_hierarchical: null output")) return s;
    return guarded([&] {
        *out = new rk_train{
            gen_hierarchical(beat_period_s, beats_per_measure, strong_amp, weak_amp, n_measures)};
    });
}

rk_status rk_drop_pulses(const rk_train* train, const size_t* indices, size_t n,
                         rk_train** out) {
    if (rk_status s = require(train && out && (n == 0 || indices),
                              "rk_drop_pulses: null argument"))
        return s;
    return guarded([&] {
        *out = new rk_train{drop_pulses(train->value, {indices, indices + n})};
    });
}

rk_status rk_gen_take_cards(double phi_target, double cycle_s, int n_reps,
                            rk_schedule** out) {
    if (rk_status s = require(out != nullptr, "rk_gen_take_cards: null output")) return s;
    return guarded([&] { *out = new rk_schedule{gen_take_cards(phi_target, cycle_s, n_reps)}; });
}

void rk_schedule_free(rk_schedule* sched) { delete sched; }

size_t rk_schedule_size(const rk_schedule* sched) {
    return sched ? sched->value.anchor_times.size() : 0;
}

rk_status rk_schedule_get(const rk_schedule* sched, size_t i, double* anchor_s,
                          double* target_s) {
    if (rk_status s = require(sched && i < sched->value.anchor_times.size(),
                              "rk_schedule_get: bad handle or index"))
        return s;
    if (anchor_s) *anchor_s = sched->value.anchor_times[i];
    if (target_s) *target_s = sched->value.target_times[i];
    return RK_OK;
}

rk_status rk_schedule_save_json(const rk_schedule* sched, const char* path) {
    if (rk_status s = require(sched && path, "rk_schedule_save_json: null argument")) return s;
    return guarded([&] { write_file_atomic(path, schedule_to_json(sched->value)); });
}

rk_status rk_gen_mora_dataset(double mean_mora_s, int max_moras, int reps,
                              double compensation, double mora_sd_s,
                              double noise_sd_s, uint64_t seed, rk_mora_data** out) {
    if (rk_status s = require(out != nullptr, "rk_gen_mora_dataset: null output")) return s;
    return guarded([&] {
        *out = new rk_mora_data{gen_mora_dataset(mean_mora_s, max_moras, reps, compensation,
                                                 mora_sd_s, noise_sd_s, seed)};
    });
}

rk_status rk_mora_data_load_csv(const char* path, rk_mora_data** out) {
    if (rk_status s = require(path && out, "rk_mora_data_load_csv: null argument")) return s;
    return guarded([&] {
        auto handle = std::make_unique<rk_mora_data>();
        for (const auto& [n, d] : load_mora_csv(path)) handle->value.push_back({n, d});
        *out = handle.release();
    });
}

rk_status rk_mora_data_save_csv(const rk_mora_data* data, const char* path) {
    if (rk_status s = require(data && path, "rk_mora_data_save_csv: null argument")) return s;
    return guarded([&] { save_mora_csv(data->value, path); });
}

void rk_mora_data_free(rk_mora_data* data) { delete data; }

size_t rk_mora_data_size(const rk_mora_data* data) { return data ? data->value.size() : 0; }

rk_status rk_mora_data_get(const rk_mora_data* data, size_t i, int* mora_count,
                           double* duration_s) {
    if (rk_status s = require(data && i < data->value.size(),
                              "rk_mora_data_get: bad handle or index"))
        return s;
    if (mora_count) *mora_count = data->value[i].mora_count;
    if (duration_s) *duration_s = data->value[i].duration;
    return RK_OK;
}

/* ---- entrainment ---- */

rk_status rk_entrain(const rk_osc_params* params, const rk_train* train, double dt_s,
                     double t_end_s, rk_trace** out) {
    if (rk_status s = require(params && train && out, "rk_entrain: null argument")) return s;
    return guarded([&] {
        *out = new rk_trace{entrain(to_core(*params), train->value, dt_s, t_end_s)};
    });
}

void rk_trace_free(rk_trace* trace) { delete trace; }

size_t rk_trace_sample_count(const rk_trace* trace) {
    return trace ? trace->value.samples.size() : 0;
}

rk_status rk_trace_sample(const rk_trace* trace, size_t i, double* t, double* phase,
                          double* period, double* activation) {
    if (rk_status s = require(trace && i < trace->value.samples.size(),
                              "rk_trace_sample: bad handle or index"))
        return s;
    const TraceSample& sample = trace->value.samples[i];
    if (t) *t = sample.time;
    if (phase) *phase = sample.phase;
    if (period) *period = sample.period;
    if (activation) *activation = sample.activation;
    return RK_OK;
}

size_t rk_trace_reset_count(const rk_trace* trace) {
    return trace ? trace->value.resets.size() : 0;
}

rk_status rk_trace_reset(const rk_trace* trace, size_t i, double* t, double* interval) {
    if (rk_status s = require(trace && i < trace->value.resets.size(),
                              "rk_trace_reset: bad handle or index"))
        return s;
    const ResetEvent& reset = trace->value.resets[i];
    if (t) *t = reset.time;
    if (interval) *interval = reset.observed_interval.value_or(-1.0);
    return RK_OK;
}

double rk_trace_final_period(const rk_trace* trace) {
    return trace ? trace->value.final_period() : 0.0;
}

rk_status rk_trace_synchrony(const rk_trace* trace, size_t window, double* out) {
    if (rk_status s = require(trace && out, "rk_trace_synchrony: null argument")) return s;
    return guarded([&] { *out = synchrony_output(trace->value, window); });
}

rk_status rk_trace_save_json(const rk_trace* trace, const char* path) {
    if (rk_status s = require(trace && path, "rk_trace_save_json: null argument")) return s;
    return guarded([&] { write_file_atomic(path, trace_to_json(trace->value)); });
}

/* ---- audio and beat extraction ---- */

rk_status rk_audio_load_wav(const char* path, rk_audio** out) {
    if (rk_status s = require(path && out, "rk_audio_load_wav: null argument")) return s;
    return guarded([&] { *out = new rk_audio{load_wav(path)}; });
}

rk_status rk_audio_save_wav(const rk_audio* audio, const char* path) {
    if (rk_status s = require(audio && path, "rk_audio_save_wav: null argument")) return s;
    return guarded([&] { save_wav(audio->value, path); });
}

rk_status rk_gen_syllable_wav(const double* onsets_s, size_t n, double rise_ms,
                              double dur_ms, int sample_rate, double total_s,
                              uint64_t seed, rk_audio** out) {
    if (rk_status s = require(out && (n == 0 || onsets_s), "rk_gen_syllable_wav: null argument"))
        return s;
    return guarded([&] {
        *out = new rk_audio{gen_syllable_wav({onsets_s, onsets_s + n}, rise_ms, dur_ms,
                                             sample_rate, total_s, seed)};
    });
}

void rk_audio_free(rk_audio* audio) { delete audio; }

size_t rk_audio_length(const rk_audio* audio) { return audio ? audio->value.samples.size() : 0; }

int rk_audio_sample_rate(const rk_audio* audio) {
    return audio ? audio->value.sample_rate : 0;
}

void rk_beat_config_init(rk_beat_config* cfg) {
    if (!cfg) return;
    const BeatConfig d;
    *cfg = {d.bands, d.lo_hz, d.hi_hz, d.smooth1_ms, d.smooth2_ms, d.min_rise_fraction};
}

rk_status rk_extract_beats(const rk_audio* audio, const rk_beat_config* cfg,
                           rk_beats** out) {
    if (rk_status s = require(audio && cfg && out, "rk_extract_beats: null argument")) return s;
    return guarded([&] { *out = new rk_beats{extract_beats(audio->value, to_core(*cfg))}; });
}

rk_status rk_beats_load_csv(const char* path, rk_beats** out) {
    if (rk_status s = require(path && out, "rk_beats_load_csv: null argument")) return s;
    return guarded([&] { *out = new rk_beats{load_beats_csv(path)}; });
}

rk_status rk_beats_save_csv(const rk_beats* beats, const char* path) {
    if (rk_status s = require(beats && path, "rk_beats_save_csv: null argument")) return s;
    return guarded([&] { save_beats_csv(beats->value, path); });
}

void rk_beats_free(rk_beats* beats) { delete beats; }

size_t rk_beats_size(const rk_beats* beats) { return beats ? beats->value.beats.size() : 0; }

rk_status rk_beats_get(const rk_beats* beats, size_t i, double* time, double* magnitude) {
    if (rk_status s = require(beats && i < beats->value.beats.size(),
                              "rk_beats_get: bad handle or index"))
        return s;
    if (time) *time = beats->value.beats[i].time;
    if (magnitude) *magnitude = beats->value.beats[i].magnitude;
    return RK_OK;
}

rk_status rk_interval_stats(const rk_beats* beats, double* mean, double* sd,
                            size_t* count) {
    if (rk_status s = require(beats != nullptr, "rk_interval_stats: null argument")) return s;
    return guarded([&] {
        const IntervalStats stats = interval_stats(beats->value);
        if (mean) *mean = stats.mean;
        if (sd) *sd = stats.sd;
        if (count) *count = stats.count;
    });
}

/* ---- phase / mode analysis ---- */

rk_status rk_measure_phase(const rk_beats* targets, const double* anchors_s,
                           size_t n_anchors, rk_phases** out) {
    if (rk_status s = require(targets && anchors_s && out, "rk_measure_phase: null argument"))
        return s;
    return guarded([&] {
        *out = new rk_phases{measure_phase(targets->value, {anchors_s, anchors_s + n_anchors})};
    });
}

void rk_phases_free(rk_phases* phases) { delete phases; }

size_t rk_phases_size(const rk_phases* phases) {
    return phases ? phases->value.samples.size() : 0;
}

rk_status rk_phases_get(const rk_phases* phases, size_t i, double* phi) {
    if (rk_status s = require(phases && i < phases->value.samples.size(),
                              "rk_phases_get: bad handle or index"))
        return s;
    if (phi) *phi = phases->value.samples[i].phi;
    return RK_OK;
}

size_t rk_phases_dropped(const rk_phases* phases) {
    return phases ? phases->value.dropped : 0;
}

rk_status rk_phases_save_csv(const rk_phases* phases, const char* path) {
    if (rk_status s = require(phases && path, "rk_phases_save_csv: null argument")) return s;
    return guarded([&] { save_phases_csv(phases->value, path); });
}

rk_status rk_phases_load_csv(const char* path, rk_phases** out) {
    if (rk_status s = require(path && out, "rk_phases_load_csv: null argument")) return s;
    return guarded([&] {
        auto handle = std::make_unique<rk_phases>();
        handle->value.samples = load_phases_csv(path);
        *out = handle.release();
    });
}

rk_status rk_mode_report(const rk_phases* phases, double bandwidth, rk_modes** out) {
    if (rk_status s = require(phases && out, "rk_mode_report: null argument")) return s;
    return guarded([&] {
        *out = new rk_modes{mode_report(phases->value.samples, bandwidth)};
    });
}

void rk_modes_free(rk_modes* modes) { delete modes; }

size_t rk_modes_size(const rk_modes* modes) { return modes ? modes->value.modes.size() : 0; }

int rk_modes_diffuse(const rk_modes* modes) {
    return modes && modes->value.diffuse ? 1 : 0;
}

rk_status rk_modes_get(const rk_modes* modes, size_t i, double* location, double* mass) {
    if (rk_status s = require(modes && i < modes->value.modes.size(),
                              "rk_modes_get: bad handle or index"))
        return s;
    if (location) *location = modes->value.modes[i].location;
    if (mass) *mass = modes->value.modes[i].mass;
    return RK_OK;
}

rk_status rk_modes_save_json(const rk_modes* modes, size_t dropped, const char* path) {
    if (rk_status s = require(modes && path, "rk_modes_save_json: null argument")) return s;
    return guarded([&] { write_file_atomic(path, mode_report_to_json(modes->value, dropped)); });
}

rk_status rk_nominal_phase(int beats_per_measure, int stress_position, double* out) {
    if (rk_status s = require(out != nullptr, "rk_nominal_phase: null output")) return s;
    return guarded([&] { *out = nominal_phase(beats_per_measure, stress_position); });
}

rk_status rk_mora_regression(const rk_mora_data* data, double* slope_s,
                             double* intercept_s, double* r_squared) {
    if (rk_status s = require(data != nullptr, "rk_mora_regression: null argument")) return s;
    return guarded([&] {
        std::vector<std::pair<int, double>> points;
        for (const MoraPoint& p : data->value) points.emplace_back(p.mora_count, p.duration);
        const MoraRegression reg = mora_regression(points);
        if (slope_s) *slope_s = reg.slope;
        if (intercept_s) *intercept_s = reg.intercept;
        if (r_squared) *r_squared = reg.r_squared;
    });
}

rk_status rk_mora_regression_save_json(const rk_mora_data* data, const char* path) {
    if (rk_status s = require(data && path, "rk_mora_regression_save_json: null argument"))
        return s;
    return guarded([&] {
        std::vector<std::pair<int, double>> points;
        for (const MoraPoint& p : data->value) points.emplace_back(p.mora_count, p.duration);
        write_file_atomic(path, mora_regression_to_json(mora_regression(points)));
    });
}

/* ---- meter ---- */

void rk_meter_config_init(rk_meter_config* cfg) {
    if (!cfg) return;
    const MeterConfig d;
    cfg->beat_range_lo_s = d.beat_range.first;
    cfg->beat_range_hi_s = d.beat_range.second;
    cfg->measure_range_lo_s = d.measure_range.first;
    cfg->measure_range_hi_s = d.measure_range.second;
    cfg->count_per_level = d.count_per_level;
    rk_osc_params_init(&cfg->osc_params);
    cfg->strong_pulse_threshold = d.strong_pulse_threshold;
    cfg->synchrony_window = d.synchrony_window;
    cfg->ratio_tolerance = d.ratio_tolerance;
    cfg->align_window_factor = d.align_window_factor;
    cfg->min_level_score = d.min_level_score;
    cfg->min_resets = d.min_resets;
    cfg->dt_s = d.dt;
}

rk_status rk_find_meter(const rk_train* train, const rk_meter_config* cfg,
                        rk_meter** out) {
    if (rk_status s = require(train && cfg && out, "rk_find_meter: null argument")) return s;
    return guarded([&] { *out = new rk_meter{find_meter(train->value, to_core(*cfg))}; });
}

void rk_meter_free(rk_meter* meter) { delete meter; }

int rk_meter_found(const rk_meter* meter) { return meter && meter->value.found ? 1 : 0; }

const char* rk_meter_reason(const rk_meter* meter) {
    return meter ? meter->value.no_meter_reason.c_str() : "";
}

rk_status rk_meter_result(const rk_meter* meter, double* beat_period_s,
                          double* measure_period_s, int* beats_per_measure,
                          double* downbeat_time_s, double* beat_score,
                          double* measure_score, double* harmonicity_error) {
    if (rk_status s = require(meter && meter->value.found,
                              "rk_meter_result: no meter estimate available"))
        return s;
    const MeterEstimate& est = meter->value;
    if (beat_period_s) *beat_period_s = est.beat_period;
    if (measure_period_s) *measure_period_s = est.measure_period;
    if (beats_per_measure) *beats_per_measure = est.beats_per_measure;
    if (downbeat_time_s) *downbeat_time_s = est.downbeat_time;
    if (beat_score) *beat_score = est.beat_score;
    if (measure_score) *measure_score = est.measure_score;
    if (harmonicity_error) *harmonicity_error = est.harmonicity_error;
    return RK_OK;
}

rk_status rk_meter_save_json(const rk_meter* meter, const char* path) {
    if (rk_status s = require(meter && path, "rk_meter_save_json: null argument")) return s;
    return guarded([&] { write_file_atomic(path, meter_to_json(meter->value)); });
}

/* ---- tempo discrimination ---- */

rk_status rk_discriminate(const rk_train* series_a, const rk_train* series_b,
                          const rk_osc_params* params, double dt_s, double jnd,
                          int reset_per_trial, int* verdict, double* period_a,
                          double* period_b) {
    if (rk_status s = require(series_a && series_b && params && verdict,
                              "rk_discriminate: null argument"))
        return s;
    return guarded([&] {
        DiscriminationConfig cfg;
        cfg.osc_params = to_core(*params);
        cfg.dt = dt_s;
        cfg.jnd = jnd;
        cfg.reset_per_trial = reset_per_trial != 0;
        const DiscriminationResult r =
            simulate_tempo_discrimination(series_a->value, series_b->value, cfg);
        *verdict = r.verdict == TempoVerdict::faster ? -1
                 : r.verdict == TempoVerdict::slower ? 1
                                                     : 0;
        if (period_a) *period_a = r.period_a;
        if (period_b) *period_b = r.period_b;
    });
}

}  // extern "C"
