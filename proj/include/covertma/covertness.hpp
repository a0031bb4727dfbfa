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

#ifndef COVERTMA_COVERTNESS_HPP
#define COVERTMA_COVERTNESS_HPP

#include <cstdint>

#include "covertma/types.hpp"

namespace covertma {

/// Received-power cap at the warden that keeps the minimum total detection
/// error probability at or above 1 - epsilon.
struct CovertnessBudget {
    double power_cap = 0.0;        // p_th, W
    double noise_uncertainty = 1;  // tau
    double epsilon = 0.0;
    double noise_nominal = 0.0;    // W
};

/// power_cap = noise_nominal * (tau^(2*eps) - 1) / tau.
CovertnessBudget covert_power_budget(double noise_nominal, double noise_uncertainty,
                                     double epsilon);

/// Average signal power the warden receives under transmission.
double warden_received_power(const arma::cx_vec& warden_channel, const Beamformer& W);

/// Minimum total detection error probability of a radiometer with log-uniform
/// noise uncertainty, clamped to [0, 1]. Throws for noise_uncertainty <= 1
/// (zero uncertainty makes any positive received power detectable).
double min_detection_error(double received_power, double noise_nominal,
                           double noise_uncertainty);

/// Detection threshold minimizing the total error probability.
double optimal_threshold(double received_power, double noise_nominal, double noise_uncertainty);

/// One draw of the warden noise power: log-uniform on
/// [noise_nominal / tau, noise_nominal * tau].
double sample_warden_noise(double noise_nominal, double noise_uncertainty, class Rng& rng);

/// Empirical false-alarm + missed-detection probability at the optimal
/// threshold, validating the analytic formula. Reentrant; seeded.
double monte_carlo_detection_error(double received_power, double noise_nominal,
                                   double noise_uncertainty, std::size_t samples,
                                   std::uint64_t seed);

}  // namespace covertma

#endif  // COVERTMA_COVERTNESS_HPP
