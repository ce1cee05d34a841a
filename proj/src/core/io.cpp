#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rhythmkit {

namespace {

using nlohmann::json;

std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_header)
        throw std::invalid_argument("bad CSV header in " + path + " (expected '" +
                                    expected_header + "')");
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

double parse_double(const std::string& s, const std::string& path) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric field '" + s + "' in " + path);
    }
}

json osc_params_json(const AdaptiveOscillator& osc) {
    return json{{"phase", osc.phase},
                {"period_s", osc.period},
                {"resting_period_s", osc.resting_period},
                {"adaptation_rate", osc.adaptation_rate},
                {"decay_rate", osc.decay_rate},
                {"period_min_s", osc.period_min},
                {"period_max_s", osc.period_max},
                {"coupling_mode", osc.mode == CouplingMode::phase_reset ? "phase_reset"
                                                                        : "continuous"},
                {"continuous_gain", osc.continuous_gain}};
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + tmp);
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

PulseTrain load_train_csv(const std::string& path) {
    PulseTrain train;
    for (const auto& row : read_csv(path, "time_s,amplitude")) {
        if (row.size() != 2) throw std::invalid_argument("bad row in " + path);
        train.pulses.push_back({parse_double(row[0], path), parse_double(row[1], path)});
    }
    train.validate();
    return train;
}

void save_train_csv(const PulseTrain& train, const std::string& path) {
    std::ostringstream out;
    out << "time_s,amplitude\n";
    out.precision(17);
    for (const Pulse& p : train.pulses) out << p.time << ',' << p.amplitude << '\n';
    write_file_atomic(path, out.str());
}

BeatList load_beats_csv(const std::string& path) {
    BeatList beats;
    for (const auto& row : read_csv(path, "time_s,magnitude")) {
        if (row.size() != 2) throw std::invalid_argument("bad row in " + path);
        beats.beats.push_back({parse_double(row[0], path), parse_double(row[1], path)});
    }
    if (!beats.beats.empty()) beats.source_duration = beats.beats.back().time;
    return beats;
}

void save_beats_csv(const BeatList& beats, const std::string& path) {
    std::ostringstream out;
    out << "time_s,magnitude\n";
    out.precision(17);
    for (const Beat& b : beats.beats) out << b.time << ',' << b.magnitude << '\n';
    write_file_atomic(path, out.str());
}

std::vector<double> load_times_csv(const std::string& path) {
    std::vector<double> times;
    for (const auto& row : read_csv(path, "time_s")) {
        if (row.size() != 1) throw std::invalid_argument("bad row in " + path);
        times.push_back(parse_double(row[0], path));
    }
    return times;
}

void save_times_csv(const std::vector<double>& times, const std::string& path) {
    std::ostringstream out;
    out << "time_s\n";
    out.precision(17);
    for (double t : times) out << t << '\n';
    write_file_atomic(path, out.str());
}

void save_phases_csv(const PhaseResult& phases, const std::string& path) {
    std::ostringstream out;
    out << "trial,group,phi\n";
    out.precision(17);
    for (const PhaseSample& s : phases.samples)
        out << s.trial_id << ',' << s.group_tag << ',' << s.phi << '\n';
    write_file_atomic(path, out.str());
}

std::vector<PhaseSample> load_phases_csv(const std::string& path) {
    std::vector<PhaseSample> samples;
    for (const auto& row : read_csv(path, "trial,group,phi")) {
        if (row.size() != 3) throw std::invalid_argument("bad row in " + path);
        PhaseSample s;
        s.trial_id = static_cast<int>(parse_double(row[0], path));
        s.group_tag = row[1];
        s.phi = parse_double(row[2], path);
        samples.push_back(std::move(s));
    }
    return samples;
}

void save_mora_csv(const std::vector<MoraPoint>& points, const std::string& path) {
    std::ostringstream out;
    out << "mora_count,duration_s\n";
    out.precision(17);
    for (const MoraPoint& p : points) out << p.mora_count << ',' << p.duration << '\n';
    write_file_atomic(path, out.str());
}

std::vector<std::pair<int, double>> load_mora_csv(const std::string& path) {
    std::vector<std::pair<int, double>> points;
    for (const auto& row : read_csv(path, "mora_count,duration_s")) {
        if (row.size() != 2) throw std::invalid_argument("bad row in " + path);
        points.emplace_back(static_cast<int>(parse_double(row[0], path)),
                            parse_double(row[1], path));
    }
    return points;
}

std::string trace_to_json(const EntrainmentTrace& trace) {
    json doc;
    doc["params"] = osc_params_json(trace.params);
    json samples = json::array();
    for (const TraceSample& s : trace.samples)
        samples.push_back({{"t", s.time},
                           {"phase", s.phase},
                           {"period", s.period},
                           {"activation", s.activation}});
    doc["samples"] = std::move(samples);
    json resets = json::array();
    for (const ResetEvent& r : trace.resets) {
        json entry{{"t", r.time}};
        if (r.observed_interval) entry["interval"] = *r.observed_interval;
        else entry["interval"] = nullptr;
        resets.push_back(std::move(entry));
    }
    doc["resets"] = std::move(resets);
    return doc.dump(2) + "\n";
}

std::string mode_report_to_json(const ModeReport& report, std::size_t dropped) {
    json doc;
    doc["bandwidth"] = report.bandwidth;
    doc["diffuse"] = report.diffuse;
    doc["dropped"] = dropped;
    json modes = json::array();
    for (const Mode& m : report.modes)
        modes.push_back({{"location", m.location}, {"mass", m.mass}});
    doc["modes"] = std::move(modes);
    return doc.dump(2) + "\n";
}

std::string mora_regression_to_json(const MoraRegression& reg) {
    json doc{{"slope_s_per_mora", reg.slope},
             {"intercept_s", reg.intercept},
             {"r_squared", reg.r_squared},
             {"n_points", reg.n_points}};
    return doc.dump(2) + "\n";
}

std::string meter_to_json(const MeterEstimate& est) {
    json doc;
    if (!est.found) {
        doc["no_meter"] = est.no_meter_reason;
    } else {
        doc["beat_period_s"] = est.beat_period;
        doc["measure_period_s"] = est.measure_period;
        doc["beats_per_measure"] = est.beats_per_measure;
        doc["downbeat_time_s"] = est.downbeat_time;
        doc["scores"] = {{"beat", est.beat_score}, {"measure", est.measure_score}};
        doc["harmonicity_error"] = est.harmonicity_error;
    }
    return doc.dump(2) + "\n";
}

std::string schedule_to_json(const TrialSchedule& sched) {
    json doc{{"phi_target", sched.phi_target},
             {"cycle_s", sched.cycle},
             {"anchor_times_s", sched.anchor_times},
             {"target_times_s", sched.target_times}};
    return doc.dump(2) + "\n";
}

}  // namespace rhythmkit
