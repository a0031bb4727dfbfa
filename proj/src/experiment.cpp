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

#include "covertma/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "covertma/channel.hpp"
#include "covertma/covertness.hpp"
#include "covertma/rng.hpp"

namespace covertma {

namespace fs = std::filesystem;

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::ma_pda: return "MA-PDA";
        case Scheme::es_pda: return "ES-PDA";
        case Scheme::ma_zf: return "MA-ZF";
        case Scheme::fpa_pda: return "FPA-PDA";
        case Scheme::fpa_zf: return "FPA-ZF";
    }
    return "?";
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
    if (name == "MA-PDA") return Scheme::ma_pda;
    if (name == "ES-PDA") return Scheme::es_pda;
    if (name == "MA-ZF") return Scheme::ma_zf;
    if (name == "FPA-PDA") return Scheme::fpa_pda;
    if (name == "FPA-ZF") return Scheme::fpa_zf;
    return std::nullopt;
}

std::string sweep_name(SweepKind kind) {
    switch (kind) {
        case SweepKind::power: return "power";
        case SweepKind::antennas: return "antennas";
        case SweepKind::aod_error: return "aod_error";
        case SweepKind::region: return "region";
    }
    return "?";
}

std::optional<SweepKind> sweep_from_name(const std::string& name) {
    if (name == "power") return SweepKind::power;
    if (name == "antennas") return SweepKind::antennas;
    if (name == "aod_error") return SweepKind::aod_error;
    if (name == "region") return SweepKind::region;
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("config: trials must be at least 1");
    if (sweep_values.empty()) throw std::invalid_argument("config: sweep_values is empty");
    if (std::adjacent_find(sweep_values.begin(), sweep_values.end(),
                           [](double a, double b) { return a >= b; }) != sweep_values.end())
        throw std::invalid_argument("config: sweep_values must be strictly ascending");
    if (schemes.empty()) throw std::invalid_argument("config: schemes is empty");
    if (sweep == SweepKind::antennas) {
        for (double v : sweep_values) {
            if (v < 1.0 || std::abs(v - std::round(v)) > 1e-9)
                throw std::invalid_argument("config: antenna sweep values must be integers >= 1");
        }
    }
    if (sweep == SweepKind::aod_error) {
        for (double v : sweep_values)
            if (v < 0.0) throw std::invalid_argument("config: AoD errors must be nonnegative");
    }
    if (sweep == SweepKind::region) {
        for (double v : sweep_values)
            if (v <= 0.0) throw std::invalid_argument("config: region sizes must be positive");
    }
    if (es_grid_step_lambda <= 0.0)
        throw std::invalid_argument("config: es_grid_step_lambda must be positive");
    // every sweep point must itself be a valid system config
    for (double v : sweep_values) config_for_sweep_value(*this, v).validate();
}

SystemConfig config_for_sweep_value(const ExperimentConfig& config, double sweep_value) {
    SystemConfig cfg = config.base;
    switch (config.sweep) {
        case SweepKind::power:
            cfg.max_power = dbm_to_watt(sweep_value);
            break;
        case SweepKind::antennas:
            cfg.antenna_count = static_cast<int>(std::lround(sweep_value));
            break;
        case SweepKind::region:
            cfg.region_size = sweep_value * cfg.wavelength;
            break;
        case SweepKind::aod_error:
            break;  // base config; the error perturbs the scenario instead
    }
    return cfg;
}

PathSet apply_aod_error(const PathSet& paths, double max_error, std::uint64_t seed) {
    PathSet out = paths;
    if (max_error <= 0.0) return out;
    Rng rng(mix_seed(seed, 0x0a0dULL));
    for (std::size_t l = 0; l < out.size(); ++l) {
        out.elevation[l] = std::clamp(out.elevation[l] + rng.uniform(-max_error, max_error), 0.0,
                                      M_PI);
        out.azimuth[l] = std::clamp(out.azimuth[l] + rng.uniform(-max_error, max_error), 0.0,
                                    M_PI);
        out.directions[l] = normalized_direction(out.elevation[l], out.azimuth[l]);
    }
    return out;
}

// --- config file -----------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string token;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!token.empty()) out.push_back(token);
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    if (!token.empty()) out.push_back(token);
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad number for " + key + ": '" + value + "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad integer for " + key + ": '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes") return true;
    if (value == "0" || value == "false" || value == "no") return false;
    throw std::invalid_argument("config: bad boolean for " + key + ": '" + value + "'");
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig config;
    config.schemes = {Scheme::ma_pda, Scheme::fpa_pda, Scheme::fpa_zf};
    config.sweep_values.clear();

    std::optional<int> paths_single;
    std::vector<int> paths_list;
    std::optional<double> region_lambda, spacing_lambda;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                        " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config: empty key or value at line " +
                                        std::to_string(line_no));

        auto& base = config.base;
        if (key == "wavelength_m") base.wavelength = parse_double(key, value);
        else if (key == "user_count") base.user_count = static_cast<int>(parse_long(key, value));
        else if (key == "antenna_count")
            base.antenna_count = static_cast<int>(parse_long(key, value));
        else if (key == "paths_per_user") {
            const auto parts = split_list(value);
            if (parts.size() == 1) {
                paths_single = static_cast<int>(parse_long(key, parts[0]));
            } else {
                paths_list.clear();
                for (const auto& p : parts)
                    paths_list.push_back(static_cast<int>(parse_long(key, p)));
            }
        } else if (key == "region_size_m") base.region_size = parse_double(key, value);
        else if (key == "region_size_lambda") region_lambda = parse_double(key, value);
        else if (key == "min_spacing_m") base.min_spacing = parse_double(key, value);
        else if (key == "min_spacing_lambda") spacing_lambda = parse_double(key, value);
        else if (key == "user_noise_w") base.user_noise_power = parse_double(key, value);
        else if (key == "user_noise_dbm") base.user_noise_power = dbm_to_watt(parse_double(key, value));
        else if (key == "warden_noise_w") base.warden_noise_nominal = parse_double(key, value);
        else if (key == "warden_noise_dbm")
            base.warden_noise_nominal = dbm_to_watt(parse_double(key, value));
        else if (key == "noise_uncertainty") base.noise_uncertainty = parse_double(key, value);
        else if (key == "covertness_epsilon") base.covertness_epsilon = parse_double(key, value);
        else if (key == "max_power_w") base.max_power = parse_double(key, value);
        else if (key == "max_power_dbm") base.max_power = dbm_to_watt(parse_double(key, value));
        else if (key == "avg_path_gain") base.avg_path_gain = parse_double(key, value);
        else if (key == "max_outer_iters")
            config.solver.max_outer_iters = static_cast<int>(parse_long(key, value));
        else if (key == "rate_tol") config.solver.rate_tol = parse_double(key, value);
        else if (key == "pda_penalty_init")
            config.solver.pda.penalty_init = parse_double(key, value);
        else if (key == "pda_penalty_growth")
            config.solver.pda.penalty_growth = parse_double(key, value);
        else if (key == "pda_max_iters")
            config.solver.pda.max_iters = static_cast<int>(parse_long(key, value));
        else if (key == "pda_objective_tol")
            config.solver.pda.objective_tol = parse_double(key, value);
        else if (key == "fpa_linear") config.solver.fpa_linear = parse_bool(key, value);
        else if (key == "es_grid_step_lambda")
            config.es_grid_step_lambda = parse_double(key, value);
        else if (key == "sweep") {
            const auto kind = sweep_from_name(value);
            if (!kind) throw std::invalid_argument("config: unknown sweep '" + value + "'");
            config.sweep = *kind;
        } else if (key == "sweep_values") {
            config.sweep_values.clear();
            for (const auto& p : split_list(value))
                config.sweep_values.push_back(parse_double(key, p));
        } else if (key == "schemes") {
            config.schemes.clear();
            for (const auto& p : split_list(value)) {
                const auto scheme = scheme_from_name(p);
                if (!scheme) throw std::invalid_argument("config: unknown scheme '" + p + "'");
                config.schemes.push_back(*scheme);
            }
        } else if (key == "trials") config.trials = static_cast<int>(parse_long(key, value));
        else if (key == "seed")
            config.seed = static_cast<std::uint64_t>(parse_long(key, value));
        else if (key == "output_dir") config.output_dir = value;
        else if (key == "threads") config.threads = static_cast<int>(parse_long(key, value));
        else if (key == "record_wall_time") config.record_wall_time = parse_bool(key, value);
        else
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }

    if (region_lambda) config.base.region_size = *region_lambda * config.base.wavelength;
    if (spacing_lambda) config.base.min_spacing = *spacing_lambda * config.base.wavelength;
    if (!paths_list.empty()) {
        config.base.paths_per_receiver = paths_list;
    } else {
        const int per = paths_single.value_or(4);
        config.base.paths_per_receiver.assign(
            static_cast<std::size_t>(config.base.user_count) + 1, per);
    }
    if (config.sweep_values.empty()) {
        switch (config.sweep) {
            case SweepKind::power: config.sweep_values = {-20, -15, -10, -5, 0, 5, 10, 15, 20}; break;
            case SweepKind::antennas: config.sweep_values = {2, 4, 6, 8}; break;
            case SweepKind::aod_error: config.sweep_values = {0.0, 0.05, 0.1, 0.2, 0.4}; break;
            case SweepKind::region: config.sweep_values = {1, 2, 3, 4, 5, 6}; break;
        }
    }
    config.validate();
    return config;
}

ExperimentConfig parse_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    return parse_experiment_config(in);
}

// --- trial execution -------------------------------------------------------

namespace {

struct WorkItem {
    Scheme scheme;
    double sweep_value;
    int trial;
};

struct TrialOutcome {
    TrialRecord record;
    TrialSolution solution;
};

TrialOutcome run_one_trial(const ExperimentConfig& config, const WorkItem& item) {
    const SystemConfig cfg = config_for_sweep_value(config, item.sweep_value);
    const std::uint64_t scenario_seed =
        mix_seed(config.seed, static_cast<std::uint64_t>(item.trial));
    const auto true_scenario = sample_scenario(cfg, scenario_seed);

    auto opt_scenario = true_scenario;
    if (config.sweep == SweepKind::aod_error && item.sweep_value > 0.0) {
        for (auto& ps : opt_scenario)
            ps = apply_aod_error(ps, item.sweep_value,
                                 mix_seed(scenario_seed,
                                          static_cast<std::uint64_t>(ps.receiver_id)));
    }

    const std::uint64_t solver_seed = mix_seed(scenario_seed, 0x7e57ULL);
    const auto start = std::chrono::steady_clock::now();
    SolverState st;
    bool failed = false;
    try {
        switch (item.scheme) {
            case Scheme::ma_pda:
                st = run_bsum(opt_scenario, cfg, config.solver, solver_seed);
                break;
            case Scheme::es_pda:
                st = run_exhaustive_positions(opt_scenario, cfg, config.solver, solver_seed,
                                              config.es_grid_step_lambda * cfg.wavelength);
                break;
            case Scheme::ma_zf:
                st = run_ma_zf(opt_scenario, cfg, config.solver, solver_seed);
                break;
            case Scheme::fpa_pda:
                st = run_fpa(opt_scenario, cfg, config.solver);
                break;
            case Scheme::fpa_zf:
                st = run_fpa_zf(opt_scenario, cfg, config.solver);
                break;
        }
    } catch (const std::exception&) {
        failed = true;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    TrialOutcome out;
    out.record.scheme = scheme_name(item.scheme);
    out.record.sweep_value = item.sweep_value;
    out.record.trial_index = item.trial;
    out.record.seed = scenario_seed;
    out.record.wall_time = config.record_wall_time ? elapsed : 0.0;
    out.solution.scheme = out.record.scheme;
    out.solution.sweep_value = item.sweep_value;
    out.solution.trial_index = item.trial;
    if (failed) {
        out.record.flagged = true;
        return out;
    }

    // final metrics on the true channel
    const arma::cx_mat H = user_channel_matrix(st.T.positions, true_scenario, cfg.wavelength);
    const arma::cx_vec h0 = channel_vector(st.T.positions, true_scenario[0], cfg.wavelength);
    out.record.sum_rate = sum_rate(st.W, H, cfg.user_noise_power);
    out.record.warden_power = warden_received_power(h0, st.W);
    out.record.detection_error = min_detection_error(
        out.record.warden_power, cfg.warden_noise_nominal, cfg.noise_uncertainty);
    out.record.iterations = st.iterations;
    out.record.flagged = st.flagged;
    out.solution.positions = st.T.positions;
    out.solution.W = st.W;
    return out;
}

int resolve_thread_count(const ExperimentConfig& config) {
    if (const char* env = std::getenv("COVERT_MA_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(v);
    }
    if (config.threads > 0) return config.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

RunOutput run_sweep(const ExperimentConfig& config) {
    config.validate();

    std::vector<Scheme> schemes = config.schemes;
    std::sort(schemes.begin(), schemes.end(), [](Scheme a, Scheme b) {
        return scheme_name(a) < scheme_name(b);
    });
    schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());

    std::vector<WorkItem> items;
    for (const Scheme scheme : schemes)
        for (const double value : config.sweep_values)
            for (int trial = 0; trial < config.trials; ++trial)
                items.push_back({scheme, value, trial});

    RunOutput out;
    out.records.resize(items.size());
    out.solutions.resize(items.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= items.size()) return;
            TrialOutcome outcome = run_one_trial(config, items[i]);
            out.records[i] = std::move(outcome.record);
            out.solutions[i] = std::move(outcome.solution);
        }
    };

    const int thread_count =
        std::min<int>(resolve_thread_count(config), static_cast<int>(items.size()));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(thread_count));
        for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

// --- aggregation -----------------------------------------------------------

Aggregate aggregate(const std::vector<TrialRecord>& records) {
    Aggregate agg;
    std::map<std::pair<std::string, double>, std::vector<const TrialRecord*>> groups;
    for (const auto& r : records) groups[{r.scheme, r.sweep_value}].push_back(&r);

    for (const auto& [key, rows] : groups) {
        SummaryRow row;
        row.scheme = key.first;
        row.sweep_value = key.second;
        row.count = static_cast<int>(rows.size());
        double sum = 0.0;
        row.min = rows.front()->sum_rate;
        row.max = rows.front()->sum_rate;
        for (const auto* r : rows) {
            sum += r->sum_rate;
            row.min = std::min(row.min, r->sum_rate);
            row.max = std::max(row.max, r->sum_rate);
        }
        row.mean = sum / row.count;
        if (row.count > 1) {
            double ss = 0.0;
            for (const auto* r : rows) ss += (r->sum_rate - row.mean) * (r->sum_rate - row.mean);
            row.stddev = std::sqrt(ss / (row.count - 1));  // sample convention
        }
        agg.stats.push_back(row);
    }

    // paired differences between schemes sharing (sweep_value, trial)
    std::map<std::pair<double, int>, std::map<std::string, double>> by_trial;
    std::vector<std::string> scheme_names;
    for (const auto& r : records) {
        by_trial[{r.sweep_value, r.trial_index}][r.scheme] = r.sum_rate;
        if (std::find(scheme_names.begin(), scheme_names.end(), r.scheme) == scheme_names.end())
            scheme_names.push_back(r.scheme);
    }
    std::sort(scheme_names.begin(), scheme_names.end());
    std::vector<double> values;
    for (const auto& r : records)
        if (std::find(values.begin(), values.end(), r.sweep_value) == values.end())
            values.push_back(r.sweep_value);
    std::sort(values.begin(), values.end());

    for (std::size_t a = 0; a < scheme_names.size(); ++a) {
        for (std::size_t b = a + 1; b < scheme_names.size(); ++b) {
            for (const double v : values) {
                PairedDiffRow row;
                row.scheme_a = scheme_names[a];
                row.scheme_b = scheme_names[b];
                row.sweep_value = v;
                double sum = 0.0;
                int count = 0;
                for (const auto& [key, rates] : by_trial) {
                    if (key.first != v) continue;
                    const auto ita = rates.find(row.scheme_a);
                    const auto itb = rates.find(row.scheme_b);
                    if (ita == rates.end() || itb == rates.end()) continue;
                    sum += ita->second - itb->second;
                    ++count;
                }
                if (count == 0) continue;
                row.count = count;
                row.mean_diff = sum / count;
                agg.paired_diffs.push_back(row);
            }
        }
    }
    return agg;
}

// --- on-disk formats -------------------------------------------------------

namespace {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

double field_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("csv: bad float '" + s + "'");
    return v;
}

long long field_int(const std::string& s) {
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("csv: bad integer '" + s + "'");
    return v;
}

std::uint64_t field_u64(const std::string& s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("csv: bad unsigned '" + s + "'");
    return v;
}

}  // namespace

void write_records_csv(const std::string& path, const std::vector<TrialRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "scheme,sweep_value,trial_index,seed,sum_rate,warden_power,detection_error,"
           "iterations,wall_time_s,flagged\n";
    for (const auto& r : records) {
        out << csv_quote(r.scheme) << ',' << format_double(r.sweep_value) << ',' << r.trial_index
            << ',' << r.seed << ',' << format_double(r.sum_rate) << ','
            << format_double(r.warden_power) << ',' << format_double(r.detection_error) << ','
            << r.iterations << ',' << format_double(r.wall_time) << ',' << (r.flagged ? 1 : 0)
            << '\n';
    }
}

std::vector<TrialRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty file " + path);
    std::vector<TrialRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto f = csv_split(line);
        if (f.size() != 10) throw std::invalid_argument("csv: expected 10 fields");
        TrialRecord r;
        r.scheme = f[0];
        r.sweep_value = field_double(f[1]);
        r.trial_index = static_cast<int>(field_int(f[2]));
        r.seed = field_u64(f[3]);
        r.sum_rate = field_double(f[4]);
        r.warden_power = field_double(f[5]);
        r.detection_error = field_double(f[6]);
        r.iterations = static_cast<int>(field_int(f[7]));
        r.wall_time = field_double(f[8]);
        r.flagged = field_int(f[9]) != 0;
        records.push_back(std::move(r));
    }
    return records;
}

void write_summary_csv(const std::string& path, const Aggregate& agg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "kind,scheme,scheme_b,sweep_value,count,mean,stddev,min,max\n";
    for (const auto& s : agg.stats) {
        out << "stats," << csv_quote(s.scheme) << ",," << format_double(s.sweep_value) << ','
            << s.count << ',' << format_double(s.mean) << ',' << format_double(s.stddev) << ','
            << format_double(s.min) << ',' << format_double(s.max) << '\n';
    }
    for (const auto& d : agg.paired_diffs) {
        out << "paired_diff," << csv_quote(d.scheme_a) << ',' << csv_quote(d.scheme_b) << ','
            << format_double(d.sweep_value) << ',' << d.count << ','
            << format_double(d.mean_diff) << ",,,\n";
    }
}

void write_curve_files(const std::string& dir, const Aggregate& agg, SweepKind) {
    std::map<std::string, std::vector<const SummaryRow*>> by_scheme;
    for (const auto& s : agg.stats) by_scheme[s.scheme].push_back(&s);
    for (const auto& [scheme, rows] : by_scheme) {
        const std::string path = (fs::path(dir) / ("curve_" + scheme + ".dat")).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path);
        for (const auto* row : rows)
            out << format_double(row->sweep_value) << ' ' << format_double(row->mean) << '\n';
    }
}

void write_solutions(const std::string& path, const std::vector<TrialSolution>& solutions) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "scheme,sweep_value,trial_index,antennas,users,positions...,beamformer_re_im...\n";
    for (const auto& s : solutions) {
        out << csv_quote(s.scheme) << ',' << format_double(s.sweep_value) << ',' << s.trial_index
            << ',' << s.positions.size() << ',' << s.W.n_cols;
        for (const auto& p : s.positions)
            out << ',' << format_double(p.x) << ',' << format_double(p.y);
        for (arma::uword k = 0; k < s.W.n_cols; ++k)
            for (arma::uword n = 0; n < s.W.n_rows; ++n)
                out << ',' << format_double(std::real(s.W(n, k))) << ','
                    << format_double(std::imag(s.W(n, k)));
        out << '\n';
    }
}

std::vector<TrialSolution> read_solutions(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("solutions: empty file");
    std::vector<TrialSolution> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.back() == '\r') line.pop_back();
        const auto f = csv_split(line);
        if (f.size() < 5) throw std::invalid_argument("solutions: short row");
        TrialSolution s;
        s.scheme = f[0];
        s.sweep_value = field_double(f[1]);
        s.trial_index = static_cast<int>(field_int(f[2]));
        const auto antennas = static_cast<std::size_t>(field_int(f[3]));
        const auto users = static_cast<arma::uword>(field_int(f[4]));
        const std::size_t expected = 5 + 2 * antennas + 2 * antennas * users;
        if (f.size() != expected) throw std::invalid_argument("solutions: wrong field count");
        std::size_t idx = 5;
        s.positions.resize(antennas);
        for (auto& p : s.positions) {
            p.x = field_double(f[idx++]);
            p.y = field_double(f[idx++]);
        }
        s.W.set_size(antennas, users);
        for (arma::uword k = 0; k < users; ++k)
            for (arma::uword n = 0; n < antennas; ++n) {
                const double re = field_double(f[idx++]);
                const double im = field_double(f[idx++]);
                s.W(n, k) = cxd{re, im};
            }
        out.push_back(std::move(s));
    }
    return out;
}

void write_resolved_config(const std::string& path, const ExperimentConfig& config) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    const auto& b = config.base;
    out << "antenna_count = " << b.antenna_count << '\n';
    out << "avg_path_gain = " << format_double(b.avg_path_gain) << '\n';
    out << "covertness_epsilon = " << format_double(b.covertness_epsilon) << '\n';
    out << "es_grid_step_lambda = " << format_double(config.es_grid_step_lambda) << '\n';
    out << "fpa_linear = " << (config.solver.fpa_linear ? 1 : 0) << '\n';
    out << "max_outer_iters = " << config.solver.max_outer_iters << '\n';
    out << "max_power_w = " << format_double(b.max_power) << '\n';
    out << "min_spacing_m = " << format_double(b.min_spacing) << '\n';
    out << "noise_uncertainty = " << format_double(b.noise_uncertainty) << '\n';
    out << "output_dir = " << config.output_dir << '\n';
    out << "paths_per_user =";
    for (int l : b.paths_per_receiver) out << ' ' << l;
    out << '\n';
    out << "pda_max_iters = " << config.solver.pda.max_iters << '\n';
    out << "pda_objective_tol = " << format_double(config.solver.pda.objective_tol) << '\n';
    out << "pda_penalty_growth = " << format_double(config.solver.pda.penalty_growth) << '\n';
    out << "pda_penalty_init = " << format_double(config.solver.pda.penalty_init) << '\n';
    out << "rate_tol = " << format_double(config.solver.rate_tol) << '\n';
    out << "record_wall_time = " << (config.record_wall_time ? 1 : 0) << '\n';
    out << "region_size_m = " << format_double(b.region_size) << '\n';
    out << "schemes =";
    for (std::size_t i = 0; i < config.schemes.size(); ++i)
        out << (i ? ", " : " ") << scheme_name(config.schemes[i]);
    out << '\n';
    out << "seed = " << config.seed << '\n';
    out << "sweep = " << sweep_name(config.sweep) << '\n';
    out << "sweep_values =";
    for (double v : config.sweep_values) out << ' ' << format_double(v);
    out << '\n';
    out << "threads = " << config.threads << '\n';
    out << "trials = " << config.trials << '\n';
    out << "user_count = " << b.user_count << '\n';
    out << "user_noise_w = " << format_double(b.user_noise_power) << '\n';
    out << "warden_noise_w = " << format_double(b.warden_noise_nominal) << '\n';
    out << "wavelength_m = " << format_double(b.wavelength) << '\n';
}

void write_run_output(const ExperimentConfig& config, const RunOutput& out) {
    fs::create_directories(config.output_dir);
    const fs::path dir(config.output_dir);
    write_records_csv((dir / "records.csv").string(), out.records);
    write_summary_csv((dir / "summary.csv").string(), aggregate(out.records));
    write_curve_files(dir.string(), aggregate(out.records), config.sweep);
    write_solutions((dir / "solutions.dat").string(), out.solutions);
    write_resolved_config((dir / "run_config.txt").string(), config);
}

// --- verification ----------------------------------------------------------

int verify_run(const std::string& records_csv_path, std::ostream& log) {
    const fs::path csv_path(records_csv_path);
    const fs::path dir = csv_path.parent_path().empty() ? "." : csv_path.parent_path();
    const ExperimentConfig config = parse_experiment_config((dir / "run_config.txt").string());
    const auto records = read_records_csv(records_csv_path);
    const auto solutions = read_solutions((dir / "solutions.dat").string());

    std::map<std::tuple<std::string, double, int>, const TrialSolution*> by_key;
    for (const auto& s : solutions) by_key[{s.scheme, s.sweep_value, s.trial_index}] = &s;

    int failures = 0;
    auto fail = [&](const TrialRecord& r, const std::string& msg) {
        ++failures;
        log << "FAIL " << r.scheme << " sweep=" << r.sweep_value << " trial=" << r.trial_index
            << ": " << msg << '\n';
    };

    for (const auto& r : records) {
        if (r.flagged) {
            log << "SKIP " << r.scheme << " sweep=" << r.sweep_value << " trial="
                << r.trial_index << ": flagged row\n";
            continue;
        }
        const auto it = by_key.find({r.scheme, r.sweep_value, r.trial_index});
        if (it == by_key.end()) {
            fail(r, "no stored solution");
            continue;
        }
        const TrialSolution& sol = *it->second;
        const SystemConfig cfg = config_for_sweep_value(config, r.sweep_value);
        const auto true_scenario = sample_scenario(cfg, r.seed);
        auto opt_scenario = true_scenario;
        if (config.sweep == SweepKind::aod_error && r.sweep_value > 0.0) {
            for (auto& ps : opt_scenario)
                ps = apply_aod_error(ps, r.sweep_value,
                                     mix_seed(r.seed, static_cast<std::uint64_t>(ps.receiver_id)));
        }

        std::string why;
        if (!solution_feasible(sol.W, sol.positions, opt_scenario, cfg, &why)) {
            fail(r, "infeasible: " + why);
            continue;
        }
        const arma::cx_mat H = user_channel_matrix(sol.positions, true_scenario, cfg.wavelength);
        const arma::cx_vec h0 = channel_vector(sol.positions, true_scenario[0], cfg.wavelength);
        const double rate = sum_rate(sol.W, H, cfg.user_noise_power);
        if (std::abs(rate - r.sum_rate) > 1e-9 * (1.0 + std::abs(r.sum_rate))) {
            fail(r, "sum rate mismatch");
            continue;
        }
        const double warden = warden_received_power(h0, sol.W);
        if (std::abs(warden - r.warden_power) > 1e-9 * (1.0 + std::abs(r.warden_power))) {
            fail(r, "warden power mismatch");
            continue;
        }
        if (config.sweep != SweepKind::aod_error &&
            r.detection_error < 1.0 - cfg.covertness_epsilon - 1e-6) {
            fail(r, "detection error below covertness target");
            continue;
        }
    }
    log << "verified " << records.size() << " records, " << failures << " failures\n";
    return failures;
}

}  // namespace covertma
