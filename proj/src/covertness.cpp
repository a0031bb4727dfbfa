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

#include "covertma/covertness.hpp"

#include <algorithm>
#include <stdexcept>

#include "covertma/rng.hpp"

namespace covertma {

CovertnessBudget covert_power_budget(double noise_nominal, double noise_uncertainty,
                                     double epsilon) {
    CovertnessBudget budget;
    budget.noise_nominal = noise_nominal;
    budget.noise_uncertainty = noise_uncertainty;
    budget.epsilon = epsilon;
    budget.power_cap = noise_nominal *
                       (std::pow(noise_uncertainty, 2.0 * epsilon) - 1.0) / noise_uncertainty;
    return budget;
}

double warden_received_power(const arma::cx_vec& warden_channel, const Beamformer& W) {
    double power = 0.0;
    for (arma::uword k = 0; k < W.n_cols; ++k) {
        const cxd inner = arma::cdot(warden_channel, W.col(k));
        power += std::norm(inner);
    }
    return power;
}

double min_detection_error(double received_power, double noise_nominal,
                           double noise_uncertainty) {
    if (!(noise_uncertainty > 1.0))
        throw std::invalid_argument(
            "min_detection_error: noise_uncertainty must exceed 1 (degenerate radiometer)");
    const double ratio = received_power * noise_uncertainty / noise_nominal;
    const double error =
        1.0 - std::log1p(ratio) / (2.0 * std::log(noise_uncertainty));
    return std::clamp(error, 0.0, 1.0);
}

double optimal_threshold(double received_power, double noise_nominal, double noise_uncertainty) {
    return received_power + noise_nominal / noise_uncertainty;
}

double sample_warden_noise(double noise_nominal, double noise_uncertainty, Rng& rng) {
    const double log_tau = std::log(noise_uncertainty);
    return noise_nominal * std::exp(rng.uniform(-log_tau, log_tau));
}

double monte_carlo_detection_error(double received_power, double noise_nominal,
                                   double noise_uncertainty, std::size_t samples,
                                   std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0xdec0deULL));
    const double threshold = optimal_threshold(received_power, noise_nominal, noise_uncertainty);
    std::size_t false_alarms = 0;   // silent AP, noise alone crosses the threshold
    std::size_t missed = 0;         // transmitting AP, total power stays below
    for (std::size_t i = 0; i < samples; ++i) {
        const double noise = sample_warden_noise(noise_nominal, noise_uncertainty, rng);
        if (noise > threshold) ++false_alarms;
        if (received_power + noise <= threshold) ++missed;
    }
    return (static_cast<double>(false_alarms) + static_cast<double>(missed)) /
           static_cast<double>(samples);
}

}  // namespace covertma
