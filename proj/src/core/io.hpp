#pragma once

#include <string>
#include <vector>

#include "analysis.hpp"
#include "meter.hpp"
#include "stimuli.hpp"
#include "types.hpp"

namespace rhythmkit {

// Writes via a temp file + rename so readers never see partial output.
void write_file_atomic(const std::string& path, const std::string& contents);

// PulseTrain CSV: header "time_s,amplitude", ascending times.
PulseTrain load_train_csv(const std::string& path);
void save_train_csv(const PulseTrain& train, const std::string& path);

// BeatList CSV: header "time_s,magnitude".
BeatList load_beats_csv(const std::string& path);
void save_beats_csv(const BeatList& beats, const std::string& path);

// Single-column CSV of times, header "time_s".
std::vector<double> load_times_csv(const std::string& path);
void save_times_csv(const std::vector<double>& times, const std::string& path);

// PhaseSample CSV: header "trial,group,phi".
void save_phases_csv(const PhaseResult& phases, const std::string& path);
std::vector<PhaseSample> load_phases_csv(const std::string& path);

// Mora data CSV: header "mora_count,duration_s".
void save_mora_csv(const std::vector<MoraPoint>& points, const std::string& path);
std::vector<std::pair<int, double>> load_mora_csv(const std::string& path);

// JSON documents.
std::string trace_to_json(const EntrainmentTrace& trace);
std::string mode_report_to_json(const ModeReport& report, std::size_t dropped);
std::string mora_regression_to_json(const MoraRegression& reg);
std::string meter_to_json(const MeterEstimate& est);
std::string schedule_to_json(const TrialSchedule& sched);

}  // namespace rhythmkit
