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

#ifndef COVERTMA_TYPES_HPP
#define COVERTMA_TYPES_HPP

#include <armadillo>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace covertma {

using cxd = std::complex<double>;

/// 2-D point / direction in the antenna moving plane. All lengths in meters.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    double norm_sq() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

using Position = Vec2;

/// Ordered set of movable-antenna coordinates.
struct AntennaArray {
    std::vector<Position> positions;

    std::size_t size() const { return positions.size(); }
};

/// Returns true when every position lies in [0, region_size]^2 and all
/// pairwise distances are at least min_spacing - tol.
bool array_feasible(const std::vector<Position>& positions, double region_size,
                    double min_spacing, double tol = 1e-9);

/// Multipath geometry seen by one receiver (0 = warden, 1..K = users).
/// directions[l] is recomputable from (elevation[l], azimuth[l]).
struct PathSet {
    int receiver_id = 0;
    std::vector<double> elevation;   // AoD theta, radians in [0, pi]
    std::vector<double> azimuth;     // AoD phi, radians in [0, pi]
    std::vector<Vec2> directions;    // normalized path directions
    arma::cx_vec responses;          // complex path gains

    std::size_t size() const { return elevation.size(); }
};

/// N x K complex precoding matrix, one column per user.
using Beamformer = arma::cx_mat;

/// Scenario parameters. Powers are linear watts throughout the library;
/// dBm only appears at the CLI boundary.
struct SystemConfig {
    double wavelength = 0.1;                       // carrier wavelength, m
    int user_count = 2;                            // K
    int antenna_count = 4;                         // N
    std::vector<int> paths_per_receiver = {4, 4, 4};  // L_0 (warden), L_1..L_K
    double region_size = 0.3;                      // square moving region side A, m
    double min_spacing = 0.05;                     // minimum inter-antenna distance, m
    double user_noise_power = 1e-12;               // W
    double warden_noise_nominal = 1e-12;           // W
    double noise_uncertainty = 1.5;                // tau >= 1
    double covertness_epsilon = 0.05;              // in (0, 0.5]
    double max_power = 0.01;                       // transmit power budget, W
    double avg_path_gain = 1e-8;                   // large-scale gain rho0, linear

    /// Throws std::invalid_argument when any invariant fails, including a
    /// greedy packing check that the region admits antenna_count points at
    /// min_spacing.
    void validate() const;
};

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

}  // namespace covertma

#endif  // COVERTMA_TYPES_HPP
