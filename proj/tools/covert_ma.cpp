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

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iostream>

#include "covertma/channel.hpp"
#include "covertma/covertness.hpp"
#include "covertma/experiment.hpp"
#include "covertma/solver.hpp"

namespace {

int cmd_run(const std::string& config_path, int trials, long seed, const std::string& out_dir,
            int threads) {
    covertma::ExperimentConfig config;
    try {
        config = covertma::parse_experiment_config(config_path);
        if (trials > 0) config.trials = trials;
        if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (threads > 0) config.threads = threads;
        config.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    const auto output = covertma::run_sweep(config);
    covertma::write_run_output(config, output);

    int flagged = 0;
    for (const auto& r : output.records) flagged += r.flagged ? 1 : 0;
    std::cout << "wrote " << output.records.size() << " records to " << config.output_dir
              << " (" << flagged << " flagged)\n";
    return flagged > 0 ? 2 : 0;
}

int cmd_verify(const std::string& record_path) {
    try {
        const int failures = covertma::verify_run(record_path, std::cout);
        return failures > 0 ? 2 : 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_demo() {
    using namespace covertma;
    SystemConfig cfg;  // defaults match the reference scenario
    SolverConfig solver_cfg;
    const std::uint64_t seed = 1;

    const auto scenario = sample_scenario(cfg, seed);
    const auto state = run_bsum(scenario, cfg, solver_cfg, seed);

    std::printf("movable-antenna covert solve: K=%d users, N=%d antennas, p_max=%.1f dBm\n",
                cfg.user_count, cfg.antenna_count, watt_to_dbm(cfg.max_power));
    std::printf("%-6s %s\n", "iter", "sum rate (bits/s/Hz)");
    for (std::size_t i = 0; i < state.sum_rate_trace.size(); ++i)
        std::printf("%-6zu %.6f\n", i, state.sum_rate_trace[i]);

    const auto budget =
        covert_power_budget(cfg.warden_noise_nominal, cfg.noise_uncertainty,
                            cfg.covertness_epsilon);
    const arma::cx_vec h0 = channel_vector(state.T.positions, scenario[0], cfg.wavelength);
    const double warden = warden_received_power(h0, state.W);
    std::printf("warden received power: %.3e W (cap %.3e W)\n", warden, budget.power_cap);
    std::printf("minimum detection error: %.6f (target >= %.2f)\n",
                min_detection_error(warden, cfg.warden_noise_nominal, cfg.noise_uncertainty),
                1.0 - cfg.covertness_epsilon);
    std::printf("final antenna positions (units of wavelength):\n");
    for (const auto& p : state.T.positions)
        std::printf("  (%.4f, %.4f)\n", p.x / cfg.wavelength, p.y / cfg.wavelength);
    return state.flagged ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"movable-antenna covert communication experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string record_path;
    int trials = 0;
    long seed = -1;
    int threads = 0;

    auto* run = app.add_subcommand("run", "run a configured experiment sweep");
    run->add_option("--config", config_path, "experiment config file")->required();
    run->add_option("--trials", trials, "override trial count");
    run->add_option("--seed", seed, "override base seed");
    run->add_option("--out", out_dir, "override output directory");
    run->add_option("--threads", threads, "override worker count");

    auto* verify = app.add_subcommand("verify", "re-check feasibility of a finished run");
    verify->add_option("--record", record_path, "records.csv of the run")->required();

    app.add_subcommand("demo", "single reference-scenario solve with rate trace");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // any usage problem is a config error
    }

    try {
        if (app.got_subcommand("run")) return cmd_run(config_path, trials, seed, out_dir, threads);
        if (app.got_subcommand("verify")) return cmd_verify(record_path);
        return cmd_demo();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
