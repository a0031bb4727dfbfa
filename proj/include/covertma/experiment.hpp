// SPDX-License-Identifier: Apache-2.0
//
// covert-ma: joint transmit beamforming and movable-antenna position
// optimization for multiuser covert communication.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef COVERTMA_EXPERIMENT_HPP
#define COVERTMA_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "covertma/solver.hpp"
#include "covertma/types.hpp"

namespace covertma {

enum class Scheme { ma_pda, es_pda, ma_zf, fpa_pda, fpa_zf };

std::string scheme_name(Scheme scheme);
std::optional<Scheme> scheme_from_name(const std::string& name);

enum class SweepKind { power, antennas, aod_error, region };

std::string sweep_name(SweepKind kind);
std::optional<SweepKind> sweep_from_name(const std::string& name);

/// Batch experiment description. Sweep values are dBm for the power sweep,
/// antenna counts, max AoD error in radians, or region sizes in wavelengths.
struct ExperimentConfig {
    SystemConfig base;
    SolverConfig solver;
    SweepKind sweep = SweepKind::power;
    std::vector<double> sweep_values;
    std::vector<Scheme> schemes;
    int trials = 50;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    int threads = 0;               // 0 = hardware concurrency
    double es_grid_step_lambda = 0.05;
    bool record_wall_time = true;  // false writes 0 so repeated runs are byte-identical

    void validate() const;  // throws std::invalid_argument
};

/// Flat key = value config file with '#' comments. Powers accept _dbm or _w
/// suffixed keys; lengths accept _m or _lambda.
ExperimentConfig parse_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(std::istream& in);

struct TrialRecord {
    std::string scheme;
    double sweep_value = 0.0;
    int trial_index = 0;
    std::uint64_t seed = 0;
    double sum_rate = 0.0;        // bits/s/Hz, evaluated on the true channel
    double warden_power = 0.0;    // W, evaluated on the true channel
    double detection_error = 0.0; // analytic minimum total detection error
    int iterations = 0;
    double wall_time = 0.0;       // seconds
    bool flagged = false;

    bool operator==(const TrialRecord&) const = default;
};

/// Final (W, T) of one trial, persisted so feasibility can be re-checked
/// from disk.
struct TrialSolution {
    std::string scheme;
    double sweep_value = 0.0;
    int trial_index = 0;
    std::vector<Position> positions;
    Beamformer W;
};

struct RunOutput {
    std::vector<TrialRecord> records;
    std::vector<TrialSolution> solutions;  // same canonical order as records
};

/// Runs every (scheme, sweep value, trial) combination on a bounded worker
/// pool. All schemes of a given (sweep value, trial) consume the identical
/// scenario; output order is canonical (scheme, sweep_value, trial)
/// regardless of completion order. Solver failures become flagged rows.
RunOutput run_sweep(const ExperimentConfig& config);

/// Copy of a path set with every AoD perturbed by i.i.d. uniform noise in
/// [-max_error, max_error], clamped to [0, pi]; directions recomputed.
PathSet apply_aod_error(const PathSet& paths, double max_error, std::uint64_t seed);

/// System config at one sweep point.
SystemConfig config_for_sweep_value(const ExperimentConfig& config, double sweep_value);

struct SummaryRow {
    std::string scheme;
    double sweep_value = 0.0;
    int count = 0;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation (n - 1); 0 when n < 2
    double min = 0.0;
    double max = 0.0;
};

struct PairedDiffRow {
    std::string scheme_a;
    std::string scheme_b;
    double sweep_value = 0.0;
    int count = 0;
    double mean_diff = 0.0;  // mean of per-trial (a - b)
};

struct Aggregate {
    std::vector<SummaryRow> stats;
    std::vector<PairedDiffRow> paired_diffs;
};

Aggregate aggregate(const std::vector<TrialRecord>& records);

// --- on-disk formats -------------------------------------------------------

void write_records_csv(const std::string& path, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_records_csv(const std::string& path);
void write_summary_csv(const std::string& path, const Aggregate& agg);
void write_curve_files(const std::string& dir, const Aggregate& agg, SweepKind sweep);
void write_solutions(const std::string& path, const std::vector<TrialSolution>& solutions);
std::vector<TrialSolution> read_solutions(const std::string& path);
void write_resolved_config(const std::string& path, const ExperimentConfig& config);

/// Writes records.csv, summary.csv, curve_<scheme>.dat, solutions.dat and
/// run_config.txt under config.output_dir.
void write_run_output(const ExperimentConfig& config, const RunOutput& out);

/// Re-checks every record of a finished run from disk: reloads (W, T),
/// regenerates the scenario from the recorded seed, and verifies constraint
/// feasibility plus the recorded rate and detection error. Returns the
/// number of failing records; details go to the log stream.
int verify_run(const std::string& records_csv_path, std::ostream& log);

}  // namespace covertma

#endif  // COVERTMA_EXPERIMENT_HPP
