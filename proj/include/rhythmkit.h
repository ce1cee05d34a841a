/*
 * rhythmkit C API: adaptive-oscillator entrainment, speech beat extraction,
 * meter estimation and rhythm analysis behind opaque handles.
 *
 * All functions returning rk_status set a thread-local message retrievable
 * via rk_last_error() on failure. Handles are freed with their rk_*_free
 * function; passing NULL to a free function is a no-op.
 */
#ifndef RHYTHMKIT_H
#define RHYTHMKIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rk_status {
    RK_OK = 0,
    RK_ERR_INTERNAL = 1,
    RK_ERR_INVALID = 2,
    RK_ERR_IO = 3
} rk_status;

const char* rk_last_error(void);
const char* rk_version(void);

/* ---- opaque handles ---- */
typedef struct rk_train rk_train;        /* pulse train */
typedef struct rk_trace rk_trace;        /* entrainment trace */
typedef struct rk_audio rk_audio;        /* mono audio buffer */
typedef struct rk_beats rk_beats;        /* extracted beat list */
typedef struct rk_phases rk_phases;      /* relative-phase samples */
typedef struct rk_modes rk_modes;        /* circular KDE mode report */
typedef struct rk_meter rk_meter;        /* meter estimate */
typedef struct rk_schedule rk_schedule;  /* take/cards trial schedule */
typedef struct rk_mora_data rk_mora_data;

/* ---- adaptive oscillator parameters ---- */
typedef struct rk_osc_params {
    double phase;            /* [0,1) */
    double period_s;
    double resting_period_s;
    double adaptation_rate;  /* alpha, [0,1] */
    double decay_rate;       /* gamma per free cycle, [0,1] */
    double period_min_s;
    double period_max_s;
    double continuous_gain;  /* eta, continuous mode only */
    int continuous_mode;     /* 0 = phase reset, 1 = continuous */
} rk_osc_params;

void rk_osc_params_init(rk_osc_params* params);

/* ---- pulse trains ---- */
rk_status rk_train_create(const double* times, const double* amplitudes, size_t n,
                          rk_train** out);
void rk_train_free(rk_train* train);
size_t rk_train_size(const rk_train* train);
rk_status rk_train_get(const rk_train* train, size_t i, double* time, double* amplitude);
rk_status rk_train_load_csv(const char* path, rk_train** out);
rk_status rk_train_save_csv(const rk_train* train, const char* path);

/* ---- stimulus generators ---- */
rk_status rk_gen_periodic(double period_s, size_t count, double amplitude,
                          double start_time_s, rk_train** out);
rk_status rk_gen_jittered(double period_s, size_t count, double amplitude,
                          double jitter_sd_s, uint64_t seed, rk_train** out);
rk_status rk_gen_hierarchical(double beat_period_s, int beats_per_measure,
                              double strong_amp, double weak_amp, int n_measures,
                              rk_train** out);
rk_status rk_drop_pulses(const rk_train* train, const size_t* indices, size_t n,
                         rk_train** out);

rk_status rk_gen_take_cards(double phi_target, double cycle_s, int n_reps,
                            rk_schedule** out);
void rk_schedule_free(rk_schedule* sched);
size_t rk_schedule_size(const rk_schedule* sched);
rk_status rk_schedule_get(const rk_schedule* sched, size_t i, double* anchor_s,
                          double* target_s);
rk_status rk_schedule_save_json(const rk_schedule* sched, const char* path);

rk_status rk_gen_mora_dataset(double mean_mora_s, int max_moras, int reps,
                              double compensation, double mora_sd_s,
                              double noise_sd_s, uint64_t seed, rk_mora_data** out);
rk_status rk_mora_data_load_csv(const char* path, rk_mora_data** out);
rk_status rk_mora_data_save_csv(const rk_mora_data* data, const char* path);
void rk_mora_data_free(rk_mora_data* data);
size_t rk_mora_data_size(const rk_mora_data* data);
rk_status rk_mora_data_get(const rk_mora_data* data, size_t i, int* mora_count,
                           double* duration_s);

/* ---- entrainment ---- */
rk_status rk_entrain(const rk_osc_params* params, const rk_train* train, double dt_s,
                     double t_end_s, rk_trace** out);
void rk_trace_free(rk_trace* trace);
size_t rk_trace_sample_count(const rk_trace* trace);
rk_status rk_trace_sample(const rk_trace* trace, size_t i, double* t, double* phase,
                          double* period, double* activation);
size_t rk_trace_reset_count(const rk_trace* trace);
/* interval is set to -1 when no prior reset existed */
rk_status rk_trace_reset(const rk_trace* trace, size_t i, double* t, double* interval);
double rk_trace_final_period(const rk_trace* trace);
rk_status rk_trace_synchrony(const rk_trace* trace, size_t window, double* out);
rk_status rk_trace_save_json(const rk_trace* trace, const char* path);

/* ---- audio and beat extraction ---- */
rk_status rk_audio_load_wav(const char* path, rk_audio** out);
rk_status rk_audio_save_wav(const rk_audio* audio, const char* path);
rk_status rk_gen_syllable_wav(const double* onsets_s, size_t n, double rise_ms,
                              double dur_ms, int sample_rate, double total_s,
                              uint64_t seed, rk_audio** out);
void rk_audio_free(rk_audio* audio);
size_t rk_audio_length(const rk_audio* audio);
int rk_audio_sample_rate(const rk_audio* audio);

typedef struct rk_beat_config {
    int bands;
    double lo_hz;
    double hi_hz;
    double smooth1_ms;
    double smooth2_ms;
    double min_rise_fraction;
} rk_beat_config;

void rk_beat_config_init(rk_beat_config* cfg);

rk_status rk_extract_beats(const rk_audio* audio, const rk_beat_config* cfg,
                           rk_beats** out);
rk_status rk_beats_load_csv(const char* path, rk_beats** out);
rk_status rk_beats_save_csv(const rk_beats* beats, const char* path);
void rk_beats_free(rk_beats* beats);
size_t rk_beats_size(const rk_beats* beats);
rk_status rk_beats_get(const rk_beats* beats, size_t i, double* time, double* magnitude);
rk_status rk_interval_stats(const rk_beats* beats, double* mean, double* sd,
                            size_t* count);

/* ---- phase / mode analysis ---- */
rk_status rk_measure_phase(const rk_beats* targets, const double* anchors_s,
                           size_t n_anchors, rk_phases** out);
void rk_phases_free(rk_phases* phases);
size_t rk_phases_size(const rk_phases* phases);
rk_status rk_phases_get(const rk_phases* phases, size_t i, double* phi);
size_t rk_phases_dropped(const rk_phases* phases);
rk_status rk_phases_save_csv(const rk_phases* phases, const char* path);
rk_status rk_phases_load_csv(const char* path, rk_phases** out);

rk_status rk_mode_report(const rk_phases* phases, double bandwidth, rk_modes** out);
void rk_modes_free(rk_modes* modes);
size_t rk_modes_size(const rk_modes* modes);
int rk_modes_diffuse(const rk_modes* modes);
rk_status rk_modes_get(const rk_modes* modes, size_t i, double* location, double* mass);
rk_status rk_modes_save_json(const rk_modes* modes, size_t dropped, const char* path);

rk_status rk_nominal_phase(int beats_per_measure, int stress_position, double* out);

rk_status rk_mora_regression(const rk_mora_data* data, double* slope_s,
                             double* intercept_s, double* r_squared);
rk_status rk_mora_regression_save_json(const rk_mora_data* data, const char* path);

/* ---- meter ---- */
typedef struct rk_meter_config {
    double beat_range_lo_s, beat_range_hi_s;
    double measure_range_lo_s, measure_range_hi_s;
    int count_per_level;
    rk_osc_params osc_params;
    double strong_pulse_threshold;
    size_t synchrony_window;
    double ratio_tolerance;
    double align_window_factor;
    double min_level_score;
    size_t min_resets;
    double dt_s;
} rk_meter_config;

void rk_meter_config_init(rk_meter_config* cfg);

rk_status rk_find_meter(const rk_train* train, const rk_meter_config* cfg,
                        rk_meter** out);
void rk_meter_free(rk_meter* meter);
int rk_meter_found(const rk_meter* meter);
const char* rk_meter_reason(const rk_meter* meter);
rk_status rk_meter_result(const rk_meter* meter, double* beat_period_s,
                          double* measure_period_s, int* beats_per_measure,
                          double* downbeat_time_s, double* beat_score,
                          double* measure_score, double* harmonicity_error);
rk_status rk_meter_save_json(const rk_meter* meter, const char* path);

/* ---- tempo discrimination ---- */
/* verdict: -1 faster, 0 equal, 1 slower */
rk_status rk_discriminate(const rk_train* series_a, const rk_train* series_b,
                          const rk_osc_params* params, double dt_s, double jnd,
                          int reset_per_trial, int* verdict, double* period_a,
                          double* period_b);

#ifdef __cplusplus
}
#endif

#endif /* RHYTHMKIT_H */
