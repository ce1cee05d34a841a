// Command-line surface over the rhythmkit C API: entrainment simulation,
// beat extraction, phase/mode analysis, meter estimation, mora regression,
// tempo discrimination and stimulus generation. Exit codes: 0 success,
// 2 usage/input error, 1 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rhythmkit.h"

using nlohmann::json;

namespace {

struct Handles {
    // RAII for every opaque handle type used here.
    template <typename T, void (*Free)(T*)>
    struct Holder {
        T* ptr = nullptr;
        ~Holder() { Free(ptr); }
        T** slot() { return &ptr; }
        T* get() const { return ptr; }
    };
};

using TrainPtr = Handles::Holder<rk_train, rk_train_free>;
using TracePtr = Handles::Holder<rk_trace, rk_trace_free>;
using AudioPtr = Handles::Holder<rk_audio, rk_audio_free>;
using BeatsPtr = Handles::Holder<rk_beats, rk_beats_free>;
using PhasesPtr = Handles::Holder<rk_phases, rk_phases_free>;
using ModesPtr = Handles::Holder<rk_modes, rk_modes_free>;
using MeterPtr = Handles::Holder<rk_meter, rk_meter_free>;
using SchedulePtr = Handles::Holder<rk_schedule, rk_schedule_free>;
using MoraPtr = Handles::Holder<rk_mora_data, rk_mora_data_free>;

// Thrown to unwind to main with a specific exit code.
struct CliError {
    int exit_code;
    std::string message;
};

void check(rk_status status) {
    if (status == RK_OK) return;
    const int code = status == RK_ERR_INTERNAL ? 1 : 2;
    throw CliError{code, rk_last_error()};
}

void write_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CliError{2, "cannot write file: " + tmp};
        out << contents;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw CliError{1, "rename failed: " + path};
}

// Full parameter echo next to each output file, enough to re-run the command.
void write_meta(const std::string& out_path, const std::string& command, const json& params) {
    json doc{{"tool", rk_version()}, {"command", command}, {"params", params}};
    write_atomic(out_path + ".meta.json", doc.dump(2) + "\n");
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string field;
    while (std::getline(ss, field, ',')) {
        if (field.empty()) continue;
        try {
            values.push_back(std::stod(field));
        } catch (const std::exception&) {
            throw CliError{2, "bad numeric list entry: " + field};
        }
    }
    return values;
}

struct OscFlags {
    rk_osc_params params;
    void add_to(CLI::App* cmd) {
        rk_osc_params_init(&params);
        cmd->add_option("--phase", params.phase, "Initial phase in [0,1)");
        cmd->add_option("--period", params.period_s, "Initial period (s)");
        cmd->add_option("--resting-period", params.resting_period_s, "Resting period (s)");
        cmd->add_option("--alpha", params.adaptation_rate, "Period adaptation rate");
        cmd->add_option("--gamma", params.decay_rate, "Per-cycle decay toward rest");
        cmd->add_option("--period-min", params.period_min_s, "Lower period bound (s)");
        cmd->add_option("--period-max", params.period_max_s, "Upper period bound (s)");
        cmd->add_option("--eta", params.continuous_gain, "Continuous-coupling gain");
        cmd->add_flag("--continuous", params.continuous_mode, "Continuous coupling mode");
    }
    json to_json() const {
        return json{{"phase", params.phase},
                    {"period_s", params.period_s},
                    {"resting_period_s", params.resting_period_s},
                    {"alpha", params.adaptation_rate},
                    {"gamma", params.decay_rate},
                    {"period_min_s", params.period_min_s},
                    {"period_max_s", params.period_max_s},
                    {"eta", params.continuous_gain},
                    {"continuous", params.continuous_mode != 0}};
    }
};

std::string defaults_banner() {
    rk_osc_params osc;
    rk_osc_params_init(&osc);
    rk_beat_config beat;
    rk_beat_config_init(&beat);
    rk_meter_config meter;
    rk_meter_config_init(&meter);
    std::ostringstream out;
    out << rk_version() << "\n"
        << "oscillator defaults: period " << osc.period_s << " s, resting "
        << osc.resting_period_s << " s, alpha " << osc.adaptation_rate << ", gamma "
        << osc.decay_rate << ", bounds [" << osc.period_min_s << ", " << osc.period_max_s
        << "] s, eta " << osc.continuous_gain << "\n"
        << "beat defaults: " << beat.bands << " bands, " << beat.lo_hz << "-" << beat.hi_hz
        << " Hz, smoothing " << beat.smooth1_ms << "/" << beat.smooth2_ms
        << " ms, min rise fraction " << beat.min_rise_fraction << "\n"
        << "meter defaults: beat range [" << meter.beat_range_lo_s << ", "
        << meter.beat_range_hi_s << "] s, measure range [" << meter.measure_range_lo_s
        << ", " << meter.measure_range_hi_s << "] s, " << meter.count_per_level
        << " per level, strong-pulse threshold " << meter.strong_pulse_threshold
        << ", window " << meter.synchrony_window << ", ratio tolerance "
        << meter.ratio_tolerance;
    return out.str();
}

// ---- subcommand runners ----

int run_entrain(const std::string& train_path, const OscFlags& osc, double dt,
                double t_end, const std::string& out_path) {
    TrainPtr train;
    check(rk_train_load_csv(train_path.c_str(), train.slot()));
    double end = t_end;
    if (end <= 0.0) {
        const size_t n = rk_train_size(train.get());
        double last = 0.0;
        if (n > 0) check(rk_train_get(train.get(), n - 1, &last, nullptr));
        end = last > 0.0 ? last : 1.0;
    }
    TracePtr trace;
    check(rk_entrain(&osc.params, train.get(), dt, end, trace.slot()));
    check(rk_trace_save_json(trace.get(), out_path.c_str()));
    write_meta(out_path, "entrain",
               json{{"train", train_path}, {"dt_s", dt}, {"t_end_s", end},
                    {"oscillator", osc.to_json()}});
    return 0;
}

void apply_beat_config_file(const std::string& path, rk_beat_config& cfg) {
    std::ifstream in(path);
    if (!in) throw CliError{2, "cannot open config file: " + path};
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        try {
            if (key == "bands") cfg.bands = std::stoi(value);
            else if (key == "lo_hz") cfg.lo_hz = std::stod(value);
            else if (key == "hi_hz") cfg.hi_hz = std::stod(value);
            else if (key == "smooth1_ms") cfg.smooth1_ms = std::stod(value);
            else if (key == "smooth2_ms") cfg.smooth2_ms = std::stod(value);
            else if (key == "min_rise_fraction") cfg.min_rise_fraction = std::stod(value);
            else throw CliError{2, "unknown config key: " + key};
        } catch (const CliError&) {
            throw;
        } catch (const std::exception&) {
            throw CliError{2, "bad config value for " + key + ": " + value};
        }
    }
}

json beat_config_json(const rk_beat_config& cfg) {
    return json{{"bands", cfg.bands},
                {"lo_hz", cfg.lo_hz},
                {"hi_hz", cfg.hi_hz},
                {"smooth1_ms", cfg.smooth1_ms},
                {"smooth2_ms", cfg.smooth2_ms},
                {"min_rise_fraction", cfg.min_rise_fraction}};
}

int run_beats(const std::string& wav_path, const rk_beat_config& cfg,
              const std::string& out_path) {
    AudioPtr audio;
    check(rk_audio_load_wav(wav_path.c_str(), audio.slot()));
    BeatsPtr beats;
    check(rk_extract_beats(audio.get(), &cfg, beats.slot()));
    check(rk_beats_save_csv(beats.get(), out_path.c_str()));
    write_meta(out_path, "beats",
               json{{"wav", wav_path},
                    {"sample_rate", rk_audio_sample_rate(audio.get())},
                    {"beats_found", rk_beats_size(beats.get())},
                    {"config", beat_config_json(cfg)}});
    return 0;
}

int run_phases(const std::string& beats_path, const std::string& anchors_path,
               double bandwidth, const std::string& out_path,
               const std::string& modes_path) {
    BeatsPtr beats;
    check(rk_beats_load_csv(beats_path.c_str(), beats.slot()));

    std::ifstream in(anchors_path);
    if (!in) throw CliError{2, "cannot open file: " + anchors_path};
    std::string header;
    std::getline(in, header);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != "time_s") throw CliError{2, "bad anchors CSV header (expected 'time_s')"};
    std::vector<double> anchors;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            anchors.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw CliError{2, "bad anchor value: " + line};
        }
    }

    PhasesPtr phases;
    check(rk_measure_phase(beats.get(), anchors.data(), anchors.size(), phases.slot()));
    check(rk_phases_save_csv(phases.get(), out_path.c_str()));
    ModesPtr modes;
    check(rk_mode_report(phases.get(), bandwidth, modes.slot()));
    check(rk_modes_save_json(modes.get(), rk_phases_dropped(phases.get()),
                             modes_path.c_str()));
    write_meta(out_path, "phases",
               json{{"beats", beats_path},
                    {"anchors", anchors_path},
                    {"bandwidth", bandwidth},
                    {"dropped", rk_phases_dropped(phases.get())},
                    {"modes_out", modes_path}});
    return 0;
}

int run_meter(const std::string& train_path, const rk_meter_config& cfg,
              const OscFlags& osc_flags, const std::string& out_path) {
    TrainPtr train;
    check(rk_train_load_csv(train_path.c_str(), train.slot()));
    MeterPtr meter;
    check(rk_find_meter(train.get(), &cfg, meter.slot()));
    check(rk_meter_save_json(meter.get(), out_path.c_str()));
    write_meta(out_path, "meter",
               json{{"train", train_path},
                    {"beat_range_s", {cfg.beat_range_lo_s, cfg.beat_range_hi_s}},
                    {"measure_range_s", {cfg.measure_range_lo_s, cfg.measure_range_hi_s}},
                    {"count_per_level", cfg.count_per_level},
                    {"strong_pulse_threshold", cfg.strong_pulse_threshold},
                    {"synchrony_window", cfg.synchrony_window},
                    {"ratio_tolerance", cfg.ratio_tolerance},
                    {"align_window_factor", cfg.align_window_factor},
                    {"min_level_score", cfg.min_level_score},
                    {"dt_s", cfg.dt_s},
                    {"oscillator", osc_flags.to_json()}});
    return 0;
}

int run_mora(const std::string& data_path, const std::string& out_path) {
    MoraPtr data;
    check(rk_mora_data_load_csv(data_path.c_str(), data.slot()));
    check(rk_mora_regression_save_json(data.get(), out_path.c_str()));
    write_meta(out_path, "mora", json{{"data", data_path}});
    return 0;
}

int run_discriminate(const std::string& a_path, const std::string& b_path,
                     const OscFlags& osc, double dt, double jnd, bool reset_per_trial,
                     const std::string& out_path) {
    TrainPtr a, b;
    check(rk_train_load_csv(a_path.c_str(), a.slot()));
    check(rk_train_load_csv(b_path.c_str(), b.slot()));
    int verdict = 0;
    double period_a = 0.0, period_b = 0.0;
    check(rk_discriminate(a.get(), b.get(), &osc.params, dt, jnd,
                          reset_per_trial ? 1 : 0, &verdict, &period_a, &period_b));
    const char* word = verdict < 0 ? "faster" : verdict > 0 ? "slower" : "equal";
    json doc{{"verdict", word},
             {"final_period_a_s", period_a},
             {"final_period_b_s", period_b},
             {"jnd", jnd}};
    write_atomic(out_path, doc.dump(2) + "\n");
    write_meta(out_path, "discriminate",
               json{{"series_a", a_path}, {"series_b", b_path}, {"dt_s", dt},
                    {"jnd", jnd}, {"reset_per_trial", reset_per_trial},
                    {"oscillator", osc.to_json()}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rhythmkit: adaptive-oscillator rhythm analysis toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", defaults_banner);

    // entrain
    auto* entrain_cmd = app.add_subcommand("entrain", "Simulate oscillator entrainment to a pulse train");
    std::string entrain_train, entrain_out;
    double entrain_dt = 0.01, entrain_t_end = 0.0;
    OscFlags entrain_osc;
    entrain_cmd->add_option("--train", entrain_train, "PulseTrain CSV")->required();
    entrain_cmd->add_option("--out", entrain_out, "Output trace JSON")->required();
    entrain_cmd->add_option("--dt", entrain_dt, "Integration step (s), <= period_min/10");
    entrain_cmd->add_option("--t-end", entrain_t_end, "Simulation end (s); 0 = last pulse");
    entrain_osc.add_to(entrain_cmd);

    // beats
    auto* beats_cmd = app.add_subcommand("beats", "Extract acoustic beats from a mono PCM16 WAV");
    std::string beats_wav, beats_out, beats_config;
    rk_beat_config beat_cfg;
    rk_beat_config_init(&beat_cfg);
    beats_cmd->add_option("--wav", beats_wav, "Input WAV (PCM16 mono)")->required();
    beats_cmd->add_option("--out", beats_out, "Output BeatList CSV")->required();
    beats_cmd->add_option("--config", beats_config, "key=value config file");
    beats_cmd->add_option("--bands", beat_cfg.bands, "Gammatone band count");
    beats_cmd->add_option("--lo-hz", beat_cfg.lo_hz, "Lowest center frequency (Hz)");
    beats_cmd->add_option("--hi-hz", beat_cfg.hi_hz, "Highest center frequency (Hz)");
    beats_cmd->add_option("--smooth1-ms", beat_cfg.smooth1_ms, "First smoothing constant (ms)");
    beats_cmd->add_option("--smooth2-ms", beat_cfg.smooth2_ms, "Second smoothing constant (ms)");
    beats_cmd->add_option("--min-rise-fraction", beat_cfg.min_rise_fraction,
                          "Discard rises below this fraction of the largest");

    // phases
    auto* phases_cmd = app.add_subcommand("phases", "Relative phase of beats against anchors, with mode report");
    std::string phases_beats, phases_anchors, phases_out, phases_modes;
    double phases_bandwidth = 0.02;
    phases_cmd->add_option("--beats", phases_beats, "Target BeatList CSV")->required();
    phases_cmd->add_option("--anchors", phases_anchors, "Anchor times CSV (header time_s)")->required();
    phases_cmd->add_option("--out", phases_out, "Output phases CSV")->required();
    phases_cmd->add_option("--modes", phases_modes, "Output mode-report JSON (default <out>.modes.json)");
    phases_cmd->add_option("--bandwidth", phases_bandwidth, "Circular KDE bandwidth");

    // meter
    auto* meter_cmd = app.add_subcommand("meter", "Estimate two-level meter from a pulse train");
    std::string meter_train, meter_out;
    rk_meter_config meter_cfg;
    rk_meter_config_init(&meter_cfg);
    OscFlags meter_osc;
    meter_cmd->add_option("--train", meter_train, "PulseTrain CSV")->required();
    meter_cmd->add_option("--out", meter_out, "Output meter JSON")->required();
    meter_cmd->add_option("--beat-lo", meter_cfg.beat_range_lo_s, "Beat resting-period range low (s)");
    meter_cmd->add_option("--beat-hi", meter_cfg.beat_range_hi_s, "Beat resting-period range high (s)");
    meter_cmd->add_option("--measure-lo", meter_cfg.measure_range_lo_s, "Measure range low (s)");
    meter_cmd->add_option("--measure-hi", meter_cfg.measure_range_hi_s, "Measure range high (s)");
    meter_cmd->add_option("--count-per-level", meter_cfg.count_per_level, "Oscillators per level");
    meter_cmd->add_option("--strong-threshold", meter_cfg.strong_pulse_threshold,
                          "Amplitude gate for measure candidates");
    meter_cmd->add_option("--window", meter_cfg.synchrony_window, "Synchrony window (resets)");
    meter_cmd->add_option("--ratio-tolerance", meter_cfg.ratio_tolerance, "Integer-ratio tolerance");
    meter_cmd->add_option("--align-factor", meter_cfg.align_window_factor,
                          "Downbeat alignment window as fraction of beat period");
    meter_cmd->add_option("--min-score", meter_cfg.min_level_score, "Minimum level synchrony score");
    meter_cmd->add_option("--dt", meter_cfg.dt_s, "Integration step (s)");
    meter_osc.add_to(meter_cmd);

    // mora
    auto* mora_cmd = app.add_subcommand("mora", "OLS regression of word duration on mora count");
    std::string mora_data, mora_out;
    mora_cmd->add_option("--data", mora_data, "CSV with header mora_count,duration_s")->required();
    mora_cmd->add_option("--out", mora_out, "Output regression JSON")->required();

    // discriminate
    auto* disc_cmd = app.add_subcommand("discriminate", "Tempo discrimination between two beep series");
    std::string disc_a, disc_b, disc_out;
    double disc_dt = 0.01, disc_jnd = 0.02;
    bool disc_reset = false;
    OscFlags disc_osc;
    disc_cmd->add_option("--a", disc_a, "First series CSV")->required();
    disc_cmd->add_option("--b", disc_b, "Second series CSV")->required();
    disc_cmd->add_option("--out", disc_out, "Output verdict JSON")->required();
    disc_cmd->add_option("--dt", disc_dt, "Integration step (s)");
    disc_cmd->add_option("--jnd", disc_jnd, "Relative just-noticeable difference");
    disc_cmd->add_flag("--reset-per-trial", disc_reset, "Fresh oscillator for the second series");
    disc_osc.add_to(disc_cmd);

    // stimgen
    auto* stim_cmd = app.add_subcommand("stimgen", "Deterministic stimulus generators");
    stim_cmd->require_subcommand(1);

    auto* sg_periodic = stim_cmd->add_subcommand("periodic", "Periodic pulse train");
    double sgp_period = 0.5, sgp_amp = 1.0, sgp_start = 0.0;
    std::size_t sgp_count = 10;
    std::string sgp_out;
    sg_periodic->add_option("--period", sgp_period, "Pulse period (s)");
    sg_periodic->add_option("--count", sgp_count, "Pulse count");
    sg_periodic->add_option("--amplitude", sgp_amp, "Pulse amplitude (0,1]");
    sg_periodic->add_option("--start", sgp_start, "First pulse time (s)");
    sg_periodic->add_option("--out", sgp_out, "Output CSV")->required();

    auto* sg_jittered = stim_cmd->add_subcommand("jittered", "Jittered periodic train");
    double sgj_period = 0.5, sgj_amp = 1.0, sgj_sd = 0.02;
    std::size_t sgj_count = 10;
    std::uint64_t sgj_seed = 0;
    std::string sgj_out;
    sg_jittered->add_option("--period", sgj_period, "Nominal period (s)");
    sg_jittered->add_option("--count", sgj_count, "Pulse count");
    sg_jittered->add_option("--amplitude", sgj_amp, "Pulse amplitude (0,1]");
    sg_jittered->add_option("--jitter-sd", sgj_sd, "Gaussian jitter sd (s)");
    sg_jittered->add_option("--seed", sgj_seed, "RNG seed");
    sg_jittered->add_option("--out", sgj_out, "Output CSV")->required();

    auto* sg_hier = stim_cmd->add_subcommand("hierarchical", "Strong/weak hierarchical train");
    double sgh_period = 0.4, sgh_strong = 1.0, sgh_weak = 0.5;
    int sgh_bpm = 3, sgh_measures = 8;
    std::string sgh_out;
    sg_hier->add_option("--beat-period", sgh_period, "Beat period (s)");
    sg_hier->add_option("--beats-per-measure", sgh_bpm, "Beats per measure");
    sg_hier->add_option("--strong-amp", sgh_strong, "Downbeat amplitude");
    sg_hier->add_option("--weak-amp", sgh_weak, "Other-beat amplitude");
    sg_hier->add_option("--measures", sgh_measures, "Measure count");
    sg_hier->add_option("--out", sgh_out, "Output CSV")->required();

    auto* sg_drop = stim_cmd->add_subcommand("drop", "Delete pulses from a train by index");
    std::string sgd_train, sgd_indices, sgd_out;
    sg_drop->add_option("--train", sgd_train, "Input train CSV")->required();
    sg_drop->add_option("--indices", sgd_indices, "Comma-separated indices")->required();
    sg_drop->add_option("--out", sgd_out, "Output CSV")->required();

    auto* sg_cards = stim_cmd->add_subcommand("takecards", "take/cards trial schedule");
    double sgc_phi = 0.3, sgc_cycle = 1.5;
    int sgc_reps = 8;
    std::string sgc_out;
    sg_cards->add_option("--phi", sgc_phi, "Target phase in (0,1)");
    sg_cards->add_option("--cycle", sgc_cycle, "Cycle length (s)");
    sg_cards->add_option("--reps", sgc_reps, "Repetitions");
    sg_cards->add_option("--out", sgc_out, "Output schedule JSON")->required();

    auto* sg_mora = stim_cmd->add_subcommand("mora", "Compensated mora-duration dataset");
    double sgm_mean = 0.15, sgm_comp = 1.0, sgm_mora_sd = 0.0, sgm_noise = 0.0;
    int sgm_max = 7, sgm_reps = 4;
    std::uint64_t sgm_seed = 0;
    std::string sgm_out;
    sg_mora->add_option("--mean-mora", sgm_mean, "Mean mora duration (s)");
    sg_mora->add_option("--max-moras", sgm_max, "Longest word (moras)");
    sg_mora->add_option("--reps", sgm_reps, "Words per length");
    sg_mora->add_option("--compensation", sgm_comp, "Neighbor compensation strength [0,1]");
    sg_mora->add_option("--mora-sd", sgm_mora_sd, "Per-mora intrinsic sd (s)");
    sg_mora->add_option("--noise-sd", sgm_noise, "Measurement noise sd (s)");
    sg_mora->add_option("--seed", sgm_seed, "RNG seed");
    sg_mora->add_option("--out", sgm_out, "Output CSV")->required();

    auto* sg_wav = stim_cmd->add_subcommand("wav", "Synthetic syllable-train WAV");
    std::string sgw_onsets, sgw_out;
    double sgw_rise = 20.0, sgw_dur = 120.0, sgw_total = 0.0;
    int sgw_rate = 8000;
    std::uint64_t sgw_seed = 0;
    sg_wav->add_option("--onsets", sgw_onsets, "Comma-separated onset times (s)")->required();
    sg_wav->add_option("--rise-ms", sgw_rise, "Burst rise time (ms)");
    sg_wav->add_option("--dur-ms", sgw_dur, "Burst sustain (ms)");
    sg_wav->add_option("--rate", sgw_rate, "Sample rate (Hz)");
    sg_wav->add_option("--total-s", sgw_total, "Total length (s); 0 = auto");
    sg_wav->add_option("--seed", sgw_seed, "RNG seed");
    sg_wav->add_option("--out", sgw_out, "Output WAV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (entrain_cmd->parsed())
            return run_entrain(entrain_train, entrain_osc, entrain_dt, entrain_t_end, entrain_out);
        if (beats_cmd->parsed()) {
            if (!beats_config.empty()) {
                // Config file fills in values first; explicit flags win.
                rk_beat_config from_file = beat_cfg;
                rk_beat_config_init(&from_file);
                apply_beat_config_file(beats_config, from_file);
                if (!beats_cmd->count("--bands")) beat_cfg.bands = from_file.bands;
                if (!beats_cmd->count("--lo-hz")) beat_cfg.lo_hz = from_file.lo_hz;
                if (!beats_cmd->count("--hi-hz")) beat_cfg.hi_hz = from_file.hi_hz;
                if (!beats_cmd->count("--smooth1-ms")) beat_cfg.smooth1_ms = from_file.smooth1_ms;
                if (!beats_cmd->count("--smooth2-ms")) beat_cfg.smooth2_ms = from_file.smooth2_ms;
                if (!beats_cmd->count("--min-rise-fraction"))
                    beat_cfg.min_rise_fraction = from_file.min_rise_fraction;
            }
            return run_beats(beats_wav, beat_cfg, beats_out);
        }
        if (phases_cmd->parsed()) {
            if (phases_modes.empty()) phases_modes = phases_out + ".modes.json";
            return run_phases(phases_beats, phases_anchors, phases_bandwidth, phases_out,
                              phases_modes);
        }
        if (meter_cmd->parsed()) {
            meter_cfg.osc_params = meter_osc.params;
            return run_meter(meter_train, meter_cfg, meter_osc, meter_out);
        }
        if (mora_cmd->parsed()) return run_mora(mora_data, mora_out);
        if (disc_cmd->parsed())
            return run_discriminate(disc_a, disc_b, disc_osc, disc_dt, disc_jnd, disc_reset,
                                    disc_out);
        if (stim_cmd->parsed()) {
            if (sg_periodic->parsed()) {
                TrainPtr train;
                check(rk_gen_periodic(sgp_period, sgp_count, sgp_amp, sgp_start, train.slot()));
                check(rk_train_save_csv(train.get(), sgp_out.c_str()));
                write_meta(sgp_out, "stimgen periodic",
                           json{{"period_s", sgp_period}, {"count", sgp_count},
                                {"amplitude", sgp_amp}, {"start_s", sgp_start}});
                return 0;
            }
            if (sg_jittered->parsed()) {
                TrainPtr train;
                check(rk_gen_jittered(sgj_period, sgj_count, sgj_amp, sgj_sd, sgj_seed,
                                      train.slot()));
                check(rk_train_save_csv(train.get(), sgj_out.c_str()));
                write_meta(sgj_out, "stimgen jittered",
                           json{{"period_s", sgj_period}, {"count", sgj_count},
                                {"amplitude", sgj_amp}, {"jitter_sd_s", sgj_sd},
                                {"seed", sgj_seed}});
                return 0;
            }
            if (sg_hier->parsed()) {
                TrainPtr train;
                check(rk_gen_hierarchical(sgh_period, sgh_bpm, sgh_strong, sgh_weak,
                                          sgh_measures, train.slot()));
                check(rk_train_save_csv(train.get(), sgh_out.c_str()));
                write_meta(sgh_out, "stimgen hierarchical",
                           json{{"beat_period_s", sgh_period}, {"beats_per_measure", sgh_bpm},
                                {"strong_amp", sgh_strong}, {"weak_amp", sgh_weak},
                                {"measures", sgh_measures}});
                return 0;
            }
            if (sg_drop->parsed()) {
                TrainPtr train, dropped;
                check(rk_train_load_csv(sgd_train.c_str(), train.slot()));
                std::vector<size_t> indices;
                for (double v : parse_double_list(sgd_indices))
                    indices.push_back(static_cast<size_t>(v));
                check(rk_drop_pulses(train.get(), indices.data(), indices.size(),
                                     dropped.slot()));
                check(rk_train_save_csv(dropped.get(), sgd_out.c_str()));
                write_meta(sgd_out, "stimgen drop",
                           json{{"train", sgd_train}, {"indices", indices}});
                return 0;
            }
            if (sg_cards->parsed()) {
                SchedulePtr sched;
                check(rk_gen_take_cards(sgc_phi, sgc_cycle, sgc_reps, sched.slot()));
                check(rk_schedule_save_json(sched.get(), sgc_out.c_str()));
                write_meta(sgc_out, "stimgen takecards",
                           json{{"phi", sgc_phi}, {"cycle_s", sgc_cycle}, {"reps", sgc_reps}});
                return 0;
            }
            if (sg_mora->parsed()) {
                MoraPtr data;
                check(rk_gen_mora_dataset(sgm_mean, sgm_max, sgm_reps, sgm_comp, sgm_mora_sd,
                                          sgm_noise, sgm_seed, data.slot()));
                check(rk_mora_data_save_csv(data.get(), sgm_out.c_str()));
                write_meta(sgm_out, "stimgen mora",
                           json{{"mean_mora_s", sgm_mean}, {"max_moras", sgm_max},
                                {"reps", sgm_reps}, {"compensation", sgm_comp},
                                {"mora_sd_s", sgm_mora_sd}, {"noise_sd_s", sgm_noise},
                                {"seed", sgm_seed}});
                return 0;
            }
            if (sg_wav->parsed()) {
                const std::vector<double> onsets = parse_double_list(sgw_onsets);
                AudioPtr audio;
                check(rk_gen_syllable_wav(onsets.data(), onsets.size(), sgw_rise, sgw_dur,
                                          sgw_rate, sgw_total, sgw_seed, audio.slot()));
                check(rk_audio_save_wav(audio.get(), sgw_out.c_str()));
                write_meta(sgw_out, "stimgen wav",
                           json{{"onsets_s", onsets}, {"rise_ms", sgw_rise},
                                {"dur_ms", sgw_dur}, {"rate", sgw_rate},
                                {"total_s", sgw_total}, {"seed", sgw_seed}});
                return 0;
            }
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
