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

#ifndef COVERTMA_SOLVER_HPP
#define COVERTMA_SOLVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "covertma/pda.hpp"
#include "covertma/position_sca.hpp"
#include "covertma/types.hpp"
#include "covertma/wmmse.hpp"

namespace covertma {

struct SolverConfig {
    int max_outer_iters = 100;
    double rate_tol = 1e-3;  // stop when sum-rate increase per outer iteration drops below
    PdaConfig pda;
    bool fpa_linear = false;  // fixed layout: uniform planar (default) or linear
};

/// Outcome of one solver run. The rate trace holds the sum rate after the
/// initialization and after every outer iteration; it is non-decreasing and
/// (W, T) is feasible at every recorded point.
struct SolverState {
    Beamformer W;
    AntennaArray T;
    AuxiliaryState aux;
    std::vector<double> sum_rate_trace;
    int iterations = 0;
    bool flagged = false;
    std::vector<std::string> diagnostics;
};

/// Uniformly random positions with whole-configuration rejection until all
/// pairwise spacings clear min_spacing. Deterministic per seed; throws after
/// 1e5 rejected attempts.
AntennaArray init_positions(const SystemConfig& cfg, std::uint64_t seed);

/// Fixed-position baseline layout: half-wavelength uniform planar array
/// centered in the region (linear alternative via flag).
AntennaArray fpa_layout(const SystemConfig& cfg, bool linear = false);

/// Zero-forcing beamformer with equal per-user power filling max_power and a
/// uniform power backoff enforcing the covertness cap. Falls back to a
/// regularized Gram inverse for rank-deficient channels (sets *fallback).
Beamformer init_zf(const arma::cx_mat& channels, double max_power,
                   const arma::cx_vec& warden_channel, double power_cap,
                   bool* fallback = nullptr);

/// Block-coordinate solver: per outer iteration the receive coefficients and
/// MSE weights update in closed form, the beamformer block runs the PDA, and
/// each antenna position updates through its SCA subproblem, until the
/// sum-rate increase falls below rate_tol.
SolverState run_bsum(const std::vector<PathSet>& scenario, const SystemConfig& cfg,
                     const SolverConfig& solver_cfg, std::uint64_t seed);

/// Same pipeline with the antenna positions pinned to the fixed layout.
SolverState run_fpa(const std::vector<PathSet>& scenario, const SystemConfig& cfg,
                    const SolverConfig& solver_cfg);

/// Position block replaced by per-antenna exhaustive grid search under the
/// true constraints. grid_step in meters; pass <= 0 for the default 0.05
/// wavelengths.
SolverState run_exhaustive_positions(const std::vector<PathSet>& scenario,
                                     const SystemConfig& cfg, const SolverConfig& solver_cfg,
                                     std::uint64_t seed, double grid_step = 0.0);

/// Beamforming block replaced by the zero-forcing initializer recomputed
/// every outer iteration; positions still use the SCA block.
SolverState run_ma_zf(const std::vector<PathSet>& scenario, const SystemConfig& cfg,
                      const SolverConfig& solver_cfg, std::uint64_t seed);

/// Zero-forcing beamformer on the fixed layout; converges in one iteration.
SolverState run_fpa_zf(const std::vector<PathSet>& scenario, const SystemConfig& cfg,
                       const SolverConfig& solver_cfg);

/// Exhaustive per-antenna candidate search used by the ES baseline: returns
/// the best grid point under the true spacing/covertness/region constraints.
/// The current position is always a candidate.
Position es_update_antenna(std::size_t n, const Beamformer& W, const AuxiliaryState& aux,
                           const std::vector<PathSet>& paths,
                           const std::vector<Position>& positions, const SystemConfig& cfg,
                           double grid_step);

/// Feasibility of a full solution against power, spacing, region, and
/// covertness tolerances.
bool solution_feasible(const Beamformer& W, const std::vector<Position>& positions,
                       const std::vector<PathSet>& scenario, const SystemConfig& cfg,
                       std::string* why = nullptr);

}  // namespace covertma

#endif  // COVERTMA_SOLVER_HPP
