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

#include "covertma/wmmse.hpp"

#include <stdexcept>

namespace covertma {

namespace {

// total received power at user k: sum_i |h_k^H w_i|^2 + noise
double interference_plus_noise(arma::uword k, const Beamformer& W, const arma::cx_mat& channels,
                               double noise_power) {
    double total = noise_power;
    for (arma::uword i = 0; i < W.n_cols; ++i)
        total += std::norm(arma::cdot(channels.col(k), W.col(i)));
    return total;
}

}  // namespace

double sinr(arma::uword k, const Beamformer& W, const arma::cx_mat& channels,
            double noise_power) {
    const double signal = std::norm(arma::cdot(channels.col(k), W.col(k)));
    const double denom = interference_plus_noise(k, W, channels, noise_power) - signal;
    return signal / denom;
}

double sum_rate(const Beamformer& W, const arma::cx_mat& channels, double noise_power) {
    double rate = 0.0;
    for (arma::uword k = 0; k < W.n_cols; ++k)
        rate += std::log2(1.0 + sinr(k, W, channels, noise_power));
    return rate;
}

arma::cx_vec update_rx_coeffs(const Beamformer& W, const arma::cx_mat& channels,
                              double noise_power) {
    arma::cx_vec coeffs(W.n_cols);
    for (arma::uword k = 0; k < W.n_cols; ++k) {
        const cxd desired = arma::cdot(channels.col(k), W.col(k));
        coeffs(k) = desired / interference_plus_noise(k, W, channels, noise_power);
    }
    return coeffs;
}

arma::vec update_mse_weights(const arma::cx_vec& rx_coeff, const Beamformer& W,
                             const arma::cx_mat& channels) {
    arma::vec weights(W.n_cols);
    for (arma::uword k = 0; k < W.n_cols; ++k) {
        const cxd desired = arma::cdot(channels.col(k), W.col(k));
        const double denom = 1.0 - std::real(std::conj(rx_coeff(k)) * desired);
        if (!(denom > 0.0))
            throw std::runtime_error(
                "update_mse_weights: non-positive MSE denominator (coefficients inconsistent)");
        weights(k) = 1.0 / denom;
    }
    return weights;
}

double surrogate_objective(const AuxiliaryState& aux, const Beamformer& W,
                           const arma::cx_mat& channels, double noise_power) {
    double f = 0.0;
    for (arma::uword k = 0; k < W.n_cols; ++k) {
        const cxd desired = arma::cdot(channels.col(k), W.col(k));
        const double total = interference_plus_noise(k, W, channels, noise_power);
        const double mse = std::norm(aux.rx_coeff(k)) * total -
                           2.0 * std::real(std::conj(aux.rx_coeff(k)) * desired) + 1.0;
        f += aux.mse_weight(k) * mse - std::log(aux.mse_weight(k));
    }
    return f;
}

}  // namespace covertma
