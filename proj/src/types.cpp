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

#include "covertma/types.hpp"

#include <stdexcept>
#include <string>

#include "covertma/rng.hpp"

namespace covertma {

bool array_feasible(const std::vector<Position>& positions, double region_size,
                    double min_spacing, double tol) {
    for (const auto& p : positions) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
        if (p.x < -tol || p.x > region_size + tol) return false;
        if (p.y < -tol || p.y > region_size + tol) return false;
    }
    for (std::size_t i = 0; i < positions.size(); ++i) {
        for (std::size_t j = i + 1; j < positions.size(); ++j) {
            if ((positions[i] - positions[j]).norm() < min_spacing - tol) return false;
        }
    }
    return true;
}

namespace {

// Greedy packing probe: can N points at the required spacing be placed in the
// region at all? Bounded retries, fixed internal seed so validation is
// deterministic and independent of caller seeds.
bool region_admits_packing(int n_points, double region_size, double min_spacing) {
    if (n_points <= 1) return true;
    Rng rng(0xC0FFEEULL);
    constexpr int kRestarts = 64;
    constexpr int kPerPointTries = 256;
    for (int restart = 0; restart < kRestarts; ++restart) {
        std::vector<Position> placed;
        placed.reserve(static_cast<std::size_t>(n_points));
        bool ok = true;
        for (int i = 0; i < n_points && ok; ++i) {
            bool found = false;
            for (int attempt = 0; attempt < kPerPointTries; ++attempt) {
                Position cand{rng.uniform(0.0, region_size), rng.uniform(0.0, region_size)};
                bool clear = true;
                for (const auto& p : placed) {
                    if ((cand - p).norm() < min_spacing) {
                        clear = false;
                        break;
                    }
                }
                if (clear) {
                    placed.push_back(cand);
                    found = true;
                    break;
                }
            }
            ok = found;
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

void SystemConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };

    if (!(wavelength > 0.0)) fail("wavelength must be positive");
    if (user_count < 1) fail("user_count must be at least 1");
    if (antenna_count < 1) fail("antenna_count must be at least 1");
    if (paths_per_receiver.size() != static_cast<std::size_t>(user_count) + 1)
        fail("paths_per_receiver must list warden plus every user");
    for (int l : paths_per_receiver)
        if (l < 1) fail("every path count must be positive");
    if (!(region_size > 0.0)) fail("region_size must be positive");
    if (!(min_spacing > 0.0)) fail("min_spacing must be positive");
    if (!(user_noise_power > 0.0)) fail("user_noise_power must be positive");
    if (!(warden_noise_nominal > 0.0)) fail("warden_noise_nominal must be positive");
    if (!(max_power > 0.0)) fail("max_power must be positive");
    if (!(avg_path_gain > 0.0)) fail("avg_path_gain must be positive");
    if (!(noise_uncertainty > 1.0))
        fail("noise_uncertainty must exceed 1 (no uncertainty makes detection certain)");
    if (!(covertness_epsilon > 0.0) || covertness_epsilon > 0.5)
        fail("covertness_epsilon must lie in (0, 0.5]");
    if (!region_admits_packing(antenna_count, region_size, min_spacing))
        fail("region does not admit antenna_count points at min_spacing");
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

}  // namespace covertma
