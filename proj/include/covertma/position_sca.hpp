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

#ifndef COVERTMA_POSITION_SCA_HPP
#define COVERTMA_POSITION_SCA_HPP

#include <cstddef>
#include <vector>

#include "covertma/types.hpp"
#include "covertma/wmmse.hpp"

namespace covertma {

/// One cosine term m * cos((2*pi/wavelength) * direction.t + phase).
/// Magnitudes are nonnegative; the phase absorbs any sign.
struct CosTerm {
    double magnitude;
    Vec2 direction;
    double phase;
};

/// constant + sum of cosine terms, as a function of a single antenna position.
struct CosineTermSet {
    std::vector<CosTerm> terms;
    double constant = 0.0;

    double evaluate(const Vec2& t, double wavelength) const;
};

/// t^T P t + q^T t + r with symmetric 2x2 P.
struct QuadraticSurrogate {
    double pxx = 0.0, pxy = 0.0, pyy = 0.0;
    double qx = 0.0, qy = 0.0;
    double r = 0.0;

    double value(const Vec2& t) const {
        return t.x * (pxx * t.x + pxy * t.y) + t.y * (pxy * t.x + pyy * t.y) + qx * t.x +
               qy * t.y + r;
    }
    Vec2 gradient(const Vec2& t) const {
        return {2.0 * (pxx * t.x + pxy * t.y) + qx, 2.0 * (pxy * t.x + pyy * t.y) + qy};
    }
    double eig_min() const;
    double eig_max() const;

    QuadraticSurrogate& add_scaled(const QuadraticSurrogate& o, double scale);
};

/// Second-order Taylor upper bound of cos((2pi/lambda) dir.t + phase) around
/// the anchor; dominates the cosine everywhere.
double taylor_upper_cos(const Vec2& t, const Vec2& anchor, const Vec2& direction, double phase,
                        double wavelength);

/// Lower-bound counterpart (quadratic term negated).
double taylor_lower_cos(const Vec2& t, const Vec2& anchor, const Vec2& direction, double phase,
                        double wavelength);

/// Exact cosine expansion of |w^H h_k(t_n)|^2 as a function of antenna n's
/// position, all other antennas fixed. Same-antenna path pairs contribute
/// direction differences (equal paths fold into the constant); cross-antenna
/// pairs carry the other antenna's phase in the offset.
CosineTermSet expand_received_power(std::size_t n, const arma::cx_vec& w_col,
                                    const PathSet& paths, const std::vector<Position>& positions,
                                    double wavelength);

/// Exact cosine expansion of Re{rx_coeff * w^H h_k(t_n)}.
CosineTermSet expand_matched_term(std::size_t n, cxd rx_coeff, const arma::cx_vec& w_col,
                                  const PathSet& paths, const std::vector<Position>& positions,
                                  double wavelength);

/// Folds Taylor upper bounds of every term into closed quadratic form.
QuadraticSurrogate fold_upper(const CosineTermSet& set, const Vec2& anchor, double wavelength);
QuadraticSurrogate fold_lower(const CosineTermSet& set, const Vec2& anchor, double wavelength);

/// Convex quadratic majorant of |w_i^H h_k(t_n)|^2, tight at the anchor.
QuadraticSurrogate received_power_upper_bound(std::size_t n, const arma::cx_vec& w_col,
                                              const PathSet& paths,
                                              const std::vector<Position>& positions,
                                              const Vec2& anchor, double wavelength);

/// Concave quadratic minorant of Re{rx_coeff * w_k^H h_k(t_n)}, tight at the
/// anchor.
QuadraticSurrogate matched_term_lower_bound(std::size_t n, cxd rx_coeff,
                                            const arma::cx_vec& w_col, const PathSet& paths,
                                            const std::vector<Position>& positions,
                                            const Vec2& anchor, double wavelength);

/// Per-user convex majorants of the warden power terms |w_k^H h0(t_n)|^2.
std::vector<QuadraticSurrogate> warden_power_upper_bounds(std::size_t n, const Beamformer& W,
                                                          const PathSet& warden_paths,
                                                          const std::vector<Position>& positions,
                                                          const Vec2& anchor, double wavelength);

/// Half-plane {t : normal.(t - point) >= offset} with unit normal.
struct HalfPlane {
    Vec2 normal;
    Vec2 point;
    double offset = 0.0;

    double slack(const Vec2& t) const { return normal.dot(t - point) - offset; }
};

/// Linearized minimum-distance constraint: the half-plane on the anchor's
/// side of the other antenna whose boundary is the min-distance line; its
/// value at the anchor equals the true distance. Throws when the anchor and
/// the other position coincide.
HalfPlane min_distance_halfplane(const Vec2& anchor, const Vec2& other, double min_distance);

/// Signed linearized distance (t_anchor - other).(t - other)/|t_anchor - other|.
double linearized_distance(const Vec2& anchor, const Vec2& other, const Vec2& t);

/// Relaxed convex subproblem in one antenna position.
struct PositionSubproblem {
    QuadraticSurrogate objective;       // convex
    QuadraticSurrogate covert_quad;     // convex; constraint covert_quad(t) <= covert_cap
    double covert_cap = 0.0;
    bool has_covert = true;
    std::vector<HalfPlane> halfplanes;  // linearized spacing constraints
    double region_size = 0.0;           // box [0, region_size]^2
};

struct SubproblemResult {
    Vec2 position;
    bool improved = false;        // objective strictly decreased vs the anchor
    bool infeasible_flag = false; // anchor itself violated a constraint
    int iterations = 0;
};

/// Projected-gradient solve of the 2-D convex subproblem; the feasible-set
/// projection runs Dykstra's alternating scheme over the box, the
/// half-planes, and the quadratic covertness sublevel set. Never returns a
/// point worse than the anchor; returns the anchor with a flag when the
/// subproblem is infeasible.
SubproblemResult solve_position_subproblem(const PositionSubproblem& sp, const Vec2& anchor);

/// Incremental evaluator of the position block with antenna n free and all
/// other antennas fixed; caches the fixed antennas' channel contributions.
class PositionBlockEval {
  public:
    PositionBlockEval(std::size_t n, const Beamformer& W, const AuxiliaryState& aux,
                      const std::vector<PathSet>& paths,
                      const std::vector<Position>& positions, double wavelength);

    /// True (non-surrogate) block objective restricted to t_n.
    double objective(const Vec2& t) const;

    /// True warden received power with antenna n at t.
    double warden_power(const Vec2& t) const;

  private:
    const Beamformer& W_;
    const AuxiliaryState& aux_;
    const std::vector<PathSet>& paths_;
    double wavelength_;
    std::size_t n_;
    arma::cx_mat fixed_users_;   // K x K, (i,k): sum_{n'!=n} conj(w_{i,n'}) h_{k,n'}
    arma::cx_vec fixed_warden_;  // per user k: sum_{n'!=n} conj(w_{k,n'}) h0_{n'}
};

/// Assembles the SCA subproblem for antenna n at the current iterate.
PositionSubproblem build_position_subproblem(std::size_t n, const Beamformer& W,
                                             const AuxiliaryState& aux,
                                             const std::vector<PathSet>& paths,
                                             const std::vector<Position>& positions,
                                             const SystemConfig& cfg);

/// One SCA antenna update: assemble, solve, and accept only if the true
/// block objective does not increase. Returns the new position; sets
/// *flagged when the subproblem reported infeasibility.
Position sca_update_antenna(std::size_t n, const Beamformer& W, const AuxiliaryState& aux,
                            const std::vector<PathSet>& paths,
                            const std::vector<Position>& positions, const SystemConfig& cfg,
                            bool* flagged = nullptr);

}  // namespace covertma

#endif  // COVERTMA_POSITION_SCA_HPP
