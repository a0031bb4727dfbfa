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

#ifndef COVERTMA_PDA_HPP
#define COVERTMA_PDA_HPP

#include "covertma/types.hpp"
#include "covertma/wmmse.hpp"

namespace covertma {

/// Proximal distance algorithm settings for the beamforming block.
struct PdaConfig {
    double penalty_init = 0.05;   // initial penalty factor
    double penalty_growth = 1.1;  // multiplicative growth per iteration, > 1
    int max_iters = 200;
    double objective_tol = 1e-3;  // stop when the objective decrease falls below
};

/// Quadratic data of the beamforming block: a single Hermitian PSD matrix
/// shared by all users, one linear term per user, and the warden channel
/// (whose outer product is the rank-one covertness matrix).
struct QuadraticBlockData {
    arma::cx_mat quad;            // N x N Hermitian PSD
    arma::cx_mat linear;          // N x K, column k multiplies w_k
    arma::cx_vec warden_channel;  // h0
};

QuadraticBlockData build_block_data(const AuxiliaryState& aux, const arma::cx_mat& channels,
                                    const arma::cx_vec& warden_channel);

/// sum_k w_k^H quad w_k - 2 Re{linear_k^H w_k}.
double quadratic_objective(const QuadraticBlockData& data, const Beamformer& W);

/// Euclidean projection onto the total-power ball: identity when feasible,
/// otherwise a uniform Frobenius rescale so the total power equals max_power.
Beamformer project_power(const Beamformer& W, double max_power);

/// Euclidean projection onto the warden-power set. When active, the result
/// meets the cap with relative error <= 1e-12; each bisection step costs
/// O(N*K) via the rank-one matrix-inverse identity. Throws when the bracket
/// search fails (pathological near-zero warden channel).
Beamformer project_covert(const Beamformer& W, const arma::cx_vec& warden_channel,
                          double power_cap);

/// Distance from W to the power ball (closed form).
double distance_to_power_ball(const Beamformer& W, double max_power);

/// Distance from W to the warden-power set (via projection).
double distance_to_covert_set(const Beamformer& W, const arma::cx_vec& warden_channel,
                              double power_cap);

/// Penalized objective: quadratic part plus penalty * (squared distances to
/// the power ball and the covertness set).
double penalized_objective(const QuadraticBlockData& data, const Beamformer& W, double penalty,
                           double max_power, double power_cap);

/// Closed-form minimizer of the proximal surrogate: each column solves
/// (quad + 2*penalty*I) w_k = linear_k + penalty*(power_proj_k + covert_proj_k).
Beamformer pda_step(const QuadraticBlockData& data, const Beamformer& power_proj,
                    const Beamformer& covert_proj, double penalty);

/// Full PDA loop: alternating projections folded into the closed-form step
/// with an increasing penalty, then a terminal projection pass (covertness
/// set first, power ball last) so the output is feasible for both sets.
Beamformer run_pda(const QuadraticBlockData& data, const Beamformer& W_init, double max_power,
                   double power_cap, const PdaConfig& cfg);

}  // namespace covertma

#endif  // COVERTMA_PDA_HPP
