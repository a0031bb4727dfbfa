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

#ifndef COVERTMA_CHANNEL_HPP
#define COVERTMA_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "covertma/types.hpp"

namespace covertma {

/// Normalized propagation direction [sin(el)*cos(az), cos(el)] of one path.
Vec2 normalized_direction(double elevation, double azimuth);

/// Per-path phase factors exp(j*(2*pi/wavelength)*t.rho_l) for an antenna
/// at position t. Every entry has unit modulus.
arma::cx_vec field_response(const Vec2& t, const PathSet& paths, double wavelength);

/// Channel coefficient of a single antenna at t: the field-response row
/// applied conjugated to the path gains.
cxd channel_entry(const Vec2& t, const PathSet& paths, double wavelength);

/// Channel vector of an N-antenna array toward one receiver.
arma::cx_vec channel_vector(const std::vector<Position>& positions, const PathSet& paths,
                            double wavelength);

arma::cx_vec channel_vector(const AntennaArray& array, const PathSet& paths, double wavelength);

/// N x K matrix whose k-th column is the channel toward user k.
/// paths[0] is the warden and is skipped.
arma::cx_mat user_channel_matrix(const std::vector<Position>& positions,
                                 const std::vector<PathSet>& paths, double wavelength);

/// Draws the multipath geometry for the warden (receiver 0) and K users.
/// Angles are i.i.d. uniform on [0, pi]^2; path gains are i.i.d. CN(0,
/// avg_path_gain / L_k). Deterministic given (cfg, seed).
std::vector<PathSet> sample_scenario(const SystemConfig& cfg, std::uint64_t seed);

/// FNV-1a hash over the raw bytes of a scenario, for paired-trial checks.
std::uint64_t scenario_hash(const std::vector<PathSet>& paths);

}  // namespace covertma

#endif  // COVERTMA_CHANNEL_HPP
