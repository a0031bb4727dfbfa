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

#include "covertma/channel.hpp"


#include "covertma/rng.hpp"

namespace covertma {

Vec2 normalized_direction(double elevation, double azimuth) {
    return {std::sin(elevation) * std::cos(azimuth), std::cos(elevation)};
}

arma::cx_vec field_response(const Vec2& t, const PathSet& paths, double wavelength) {
    const double wavenumber = 2.0 * M_PI / wavelength;
    arma::cx_vec out(paths.size());
    for (std::size_t l = 0; l < paths.size(); ++l) {
        const double phase = wavenumber * t.dot(paths.directions[l]);
        out(l) = cxd{std::cos(phase), std::sin(phase)};
    }
    return out;
}

cxd channel_entry(const Vec2& t, const PathSet& paths, double wavelength) {
    const double wavenumber = 2.0 * M_PI / wavelength;
    cxd acc{0.0, 0.0};
    for (std::size_t l = 0; l < paths.size(); ++l) {
        const double phase = wavenumber * t.dot(paths.directions[l]);
        // conj(e^{j phase}) * g_l
        acc += cxd{std::cos(phase), -std::sin(phase)} * paths.responses(l);
    }
    return acc;
}

arma::cx_vec channel_vector(const std::vector<Position>& positions, const PathSet& paths,
                            double wavelength) {
    arma::cx_vec h(positions.size());
    for (std::size_t n = 0; n < positions.size(); ++n)
        h(n) = channel_entry(positions[n], paths, wavelength);
    return h;
}

arma::cx_vec channel_vector(const AntennaArray& array, const PathSet& paths, double wavelength) {
    return channel_vector(array.positions, paths, wavelength);
}

arma::cx_mat user_channel_matrix(const std::vector<Position>& positions,
                                 const std::vector<PathSet>& paths, double wavelength) {
    const std::size_t user_count = paths.size() - 1;
    arma::cx_mat H(positions.size(), user_count);
    for (std::size_t k = 0; k < user_count; ++k)
        H.col(k) = channel_vector(positions, paths[k + 1], wavelength);
    return H;
}

std::vector<PathSet> sample_scenario(const SystemConfig& cfg, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0x5ca1ab1eULL));
    std::vector<PathSet> out;
    out.reserve(cfg.paths_per_receiver.size());
    for (std::size_t rx = 0; rx < cfg.paths_per_receiver.size(); ++rx) {
        const int path_count = cfg.paths_per_receiver[rx];
        PathSet ps;
        ps.receiver_id = static_cast<int>(rx);
        ps.elevation.resize(static_cast<std::size_t>(path_count));
        ps.azimuth.resize(static_cast<std::size_t>(path_count));
        ps.directions.resize(static_cast<std::size_t>(path_count));
        ps.responses.set_size(static_cast<arma::uword>(path_count));
        const double per_path_variance = cfg.avg_path_gain / path_count;
        for (int l = 0; l < path_count; ++l) {
            ps.elevation[static_cast<std::size_t>(l)] = rng.uniform(0.0, M_PI);
            ps.azimuth[static_cast<std::size_t>(l)] = rng.uniform(0.0, M_PI);
            ps.directions[static_cast<std::size_t>(l)] = normalized_direction(
                ps.elevation[static_cast<std::size_t>(l)], ps.azimuth[static_cast<std::size_t>(l)]);
            ps.responses(static_cast<arma::uword>(l)) = rng.complex_gaussian(per_path_variance);
        }
        out.push_back(std::move(ps));
    }
    return out;
}

namespace {

void hash_bytes(std::uint64_t& h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
}

}  // namespace

std::uint64_t scenario_hash(const std::vector<PathSet>& paths) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& ps : paths) {
        hash_bytes(h, &ps.receiver_id, sizeof(ps.receiver_id));
        hash_bytes(h, ps.elevation.data(), ps.elevation.size() * sizeof(double));
        hash_bytes(h, ps.azimuth.data(), ps.azimuth.size() * sizeof(double));
        hash_bytes(h, ps.directions.data(), ps.directions.size() * sizeof(Vec2));
        hash_bytes(h, ps.responses.memptr(), ps.responses.n_elem * sizeof(cxd));
    }
    return h;
}

}  // namespace covertma
