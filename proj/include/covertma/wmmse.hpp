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

#ifndef COVERTMA_WMMSE_HPP
#define COVERTMA_WMMSE_HPP

#include "covertma/types.hpp"

namespace covertma {

/// WMMSE auxiliary variables: per-user scalar receive coefficients and
/// positive MSE weights. The consistent degenerate state for an all-zero
/// beamformer is rx_coeff = 0, mse_weight = 1.
struct AuxiliaryState {
    arma::cx_vec rx_coeff;  // phi
    arma::vec mse_weight;   // beta, strictly positive

    static AuxiliaryState zero_state(arma::uword user_count) {
        AuxiliaryState s;
        s.rx_coeff = arma::cx_vec(user_count, arma::fill::zeros);
        s.mse_weight = arma::vec(user_count, arma::fill::ones);
        return s;
    }
};

/// SINR of user k (0-based). channels holds user channels as columns.
double sinr(arma::uword k, const Beamformer& W, const arma::cx_mat& channels,
            double noise_power);

/// Sum of log2(1 + sinr_k) over users, bits/s/Hz.
double sum_rate(const Beamformer& W, const arma::cx_mat& channels, double noise_power);

/// Closed-form receive-coefficient update; minimizes the WMMSE surrogate over
/// the coefficients with the other blocks fixed.
arma::cx_vec update_rx_coeffs(const Beamformer& W, const arma::cx_mat& channels,
                              double noise_power);

/// Closed-form MSE-weight update; after update_rx_coeffs this equals
/// 1 + sinr_k per user. Throws when a denominator is non-positive (the
/// coefficients are not MMSE-consistent).
arma::vec update_mse_weights(const arma::cx_vec& rx_coeff, const Beamformer& W,
                             const arma::cx_mat& channels);

/// The WMMSE surrogate objective (natural logarithm). Minimizing it over all
/// blocks maximizes the sum rate.
double surrogate_objective(const AuxiliaryState& aux, const Beamformer& W,
                           const arma::cx_mat& channels, double noise_power);

}  // namespace covertma

#endif  // COVERTMA_WMMSE_HPP
