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

#include "covertma/position_sca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "covertma/channel.hpp"
#include "covertma/covertness.hpp"

namespace covertma {

namespace {

constexpr double kMagnitudeFloor = 1e-18;  // terms below this are dropped

}  // namespace

double CosineTermSet::evaluate(const Vec2& t, double wavelength) const {
    const double wavenumber = 2.0 * M_PI / wavelength;
    double value = constant;
    for (const auto& term : terms)
        value += term.magnitude * std::cos(wavenumber * term.direction.dot(t) + term.phase);
    return value;
}

double QuadraticSurrogate::eig_min() const {
    const double mean = 0.5 * (pxx + pyy);
    const double radius = std::hypot(0.5 * (pxx - pyy), pxy);
    return mean - radius;
}

double QuadraticSurrogate::eig_max() const {
    const double mean = 0.5 * (pxx + pyy);
    const double radius = std::hypot(0.5 * (pxx - pyy), pxy);
    return mean + radius;
}

QuadraticSurrogate& QuadraticSurrogate::add_scaled(const QuadraticSurrogate& o, double scale) {
    pxx += scale * o.pxx;
    pxy += scale * o.pxy;
    pyy += scale * o.pyy;
    qx += scale * o.qx;
    qy += scale * o.qy;
    r += scale * o.r;
    return *this;
}

namespace {

double taylor_cos(const Vec2& t, const Vec2& anchor, const Vec2& direction, double phase,
                  double wavelength, double curvature_sign) {
    const double wavenumber = 2.0 * M_PI / wavelength;
    const double at_anchor = wavenumber * direction.dot(anchor) + phase;
    const double delta = wavenumber * direction.dot(t - anchor);
    return std::cos(at_anchor) - std::sin(at_anchor) * delta +
           curvature_sign * 0.5 * delta * delta;
}

// Folds one bound term m * [cos(a) - sin(a) u + sign * u^2 / 2] with
// u = wavenumber * dir.(t - anchor) into quadratic coefficients.
void accumulate_taylor(QuadraticSurrogate& quad, double magnitude, const Vec2& dir, double phase,
                       const Vec2& anchor, double wavelength, double curvature_sign) {
    const double wavenumber = 2.0 * M_PI / wavelength;
    const double at_anchor = wavenumber * dir.dot(anchor) + phase;
    const double cos_a = std::cos(at_anchor);
    const double sin_a = std::sin(at_anchor);
    const double proj_anchor = dir.dot(anchor);

    const double curv = curvature_sign * 0.5 * magnitude * wavenumber * wavenumber;
    quad.pxx += curv * dir.x * dir.x;
    quad.pxy += curv * dir.x * dir.y;
    quad.pyy += curv * dir.y * dir.y;

    const double lin = -magnitude * wavenumber * sin_a - 2.0 * curv * proj_anchor;
    quad.qx += lin * dir.x;
    quad.qy += lin * dir.y;

    quad.r += magnitude * (cos_a + wavenumber * sin_a * proj_anchor) +
              curv * proj_anchor * proj_anchor;
}

}  // namespace

double taylor_upper_cos(const Vec2& t, const Vec2& anchor, const Vec2& direction, double phase,
                        double wavelength) {
    return taylor_cos(t, anchor, direction, phase, wavelength, +1.0);
}

double taylor_lower_cos(const Vec2& t, const Vec2& anchor, const Vec2& direction, double phase,
                        double wavelength) {
    return taylor_cos(t, anchor, direction, phase, wavelength, -1.0);
}

CosineTermSet expand_received_power(std::size_t n, const arma::cx_vec& w_col,
                                    const PathSet& paths, const std::vector<Position>& positions,
                                    double wavelength) {
    const double wavenumber = 2.0 * M_PI / wavelength;
    const std::size_t path_count = paths.size();
    CosineTermSet set;

    const cxd w_n = w_col(static_cast<arma::uword>(n));

    // same-antenna pairs: direction rho_l - rho_l'; equal paths fold into the
    // constant
    for (std::size_t l = 0; l < path_count; ++l) {
        for (std::size_t lp = 0; lp < path_count; ++lp) {
            const cxd alpha = std::norm(w_n) * std::conj(paths.responses(l)) *
                              paths.responses(lp);
            const double mag = std::abs(alpha);
            if (mag < kMagnitudeFloor) continue;
            if (l == lp) {
                set.constant += std::real(alpha);
                continue;
            }
            set.terms.push_back(
                {mag, paths.directions[l] - paths.directions[lp], std::arg(alpha)});
        }
    }

    // cross-antenna pairs: direction rho_l, the fixed antenna's phase moves
    // into the offset
    for (std::size_t np = 0; np < positions.size(); ++np) {
        if (np == n) continue;
        const cxd w_np = w_col(static_cast<arma::uword>(np));
        for (std::size_t l = 0; l < path_count; ++l) {
            for (std::size_t lp = 0; lp < path_count; ++lp) {
                const cxd alpha = w_n * std::conj(w_np) * std::conj(paths.responses(l)) *
                                  paths.responses(lp);
                const double mag = 2.0 * std::abs(alpha);
                if (mag < kMagnitudeFloor) continue;
                const double phase =
                    std::arg(alpha) - wavenumber * positions[np].dot(paths.directions[lp]);
                set.terms.push_back({mag, paths.directions[l], phase});
            }
        }
    }

    // constant part from the fixed antennas alone
    cxd fixed{0.0, 0.0};
    for (std::size_t np = 0; np < positions.size(); ++np) {
        if (np == n) continue;
        fixed += std::conj(w_col(static_cast<arma::uword>(np))) *
                 channel_entry(positions[np], paths, wavelength);
    }
    set.constant += std::norm(fixed);
    return set;
}

CosineTermSet expand_matched_term(std::size_t n, cxd rx_coeff, const arma::cx_vec& w_col,
                                  const PathSet& paths, const std::vector<Position>& positions,
                                  double wavelength) {
    CosineTermSet set;
    const cxd w_n = w_col(static_cast<arma::uword>(n));
    for (std::size_t l = 0; l < paths.size(); ++l) {
        const cxd coeff = w_n * std::conj(rx_coeff) * std::conj(paths.responses(l));
        const double mag = std::abs(coeff);
        if (mag < kMagnitudeFloor) continue;
        set.terms.push_back({mag, paths.directions[l], std::arg(coeff)});
    }
    cxd fixed{0.0, 0.0};
    for (std::size_t np = 0; np < positions.size(); ++np) {
        if (np == n) continue;
        fixed += std::conj(w_col(static_cast<arma::uword>(np))) *
                 channel_entry(positions[np], paths, wavelength);
    }
    set.constant += std::real(rx_coeff * fixed);
    return set;
}

QuadraticSurrogate fold_upper(const CosineTermSet& set, const Vec2& anchor, double wavelength) {
    QuadraticSurrogate quad;
    quad.r = set.constant;
    for (const auto& term : set.terms)
        accumulate_taylor(quad, term.magnitude, term.direction, term.phase, anchor, wavelength,
                          +1.0);
    return quad;
}

QuadraticSurrogate fold_lower(const CosineTermSet& set, const Vec2& anchor, double wavelength) {
    QuadraticSurrogate quad;
    quad.r = set.constant;
    for (const auto& term : set.terms)
        accumulate_taylor(quad, term.magnitude, term.direction, term.phase, anchor, wavelength,
                          -1.0);
    return quad;
}

QuadraticSurrogate received_power_upper_bound(std::size_t n, const arma::cx_vec& w_col,
                                              const PathSet& paths,
                                              const std::vector<Position>& positions,
                                              const Vec2& anchor, double wavelength) {
    return fold_upper(expand_received_power(n, w_col, paths, positions, wavelength), anchor,
                      wavelength);
}

QuadraticSurrogate matched_term_lower_bound(std::size_t n, cxd rx_coeff,
                                            const arma::cx_vec& w_col, const PathSet& paths,
                                            const std::vector<Position>& positions,
                                            const Vec2& anchor, double wavelength) {
    return fold_lower(expand_matched_term(n, rx_coeff, w_col, paths, positions, wavelength),
                      anchor, wavelength);
}

std::vector<QuadraticSurrogate> warden_power_upper_bounds(std::size_t n, const Beamformer& W,
                                                          const PathSet& warden_paths,
                                                          const std::vector<Position>& positions,
                                                          const Vec2& anchor, double wavelength) {
    std::vector<QuadraticSurrogate> bounds;
    bounds.reserve(W.n_cols);
    for (arma::uword k = 0; k < W.n_cols; ++k)
        bounds.push_back(
            received_power_upper_bound(n, W.col(k), warden_paths, positions, anchor, wavelength));
    return bounds;
}

HalfPlane min_distance_halfplane(const Vec2& anchor, const Vec2& other, double min_distance) {
    const Vec2 diff = anchor - other;
    const double dist = diff.norm();
    if (!(dist > 0.0))
        throw std::runtime_error(
            "min_distance_halfplane: anchor coincides with the other antenna");
    return {diff * (1.0 / dist), other, min_distance};
}

double linearized_distance(const Vec2& anchor, const Vec2& other, const Vec2& t) {
    const Vec2 diff = anchor - other;
    const double dist = diff.norm();
    if (!(dist > 0.0))
        throw std::runtime_error("linearized_distance: anchor coincides with the other antenna");
    return diff.dot(t - other) / dist;
}

// ---------------------------------------------------------------------------
// 2-D convex subproblem solver.
//
// The feasible set is an intersection of the region box, half-planes, and one
// convex quadratic sublevel set. A minimizer of a convex quadratic over such
// a set is either the unconstrained vertex, the restricted minimum along one
// active boundary, or an intersection point of two boundaries; all of these
// are closed-form (the quadratic boundary needs a 1-D multiplier search), so
// the solver enumerates candidates and keeps the best feasible one.
// ---------------------------------------------------------------------------

namespace {

struct Line {
    Vec2 point;
    Vec2 tangent;  // unit
};

// Worst constraint violation: positions in meters, covertness relative to
// the cap. Only used to gate an infeasible anchor, so mixed units are fine
// at the loose threshold applied.
double feasibility_violation(const PositionSubproblem& sp, const Vec2& t) {
    double v = 0.0;
    v = std::max(v, -t.x);
    v = std::max(v, -t.y);
    v = std::max(v, t.x - sp.region_size);
    v = std::max(v, t.y - sp.region_size);
    for (const auto& hp : sp.halfplanes) v = std::max(v, -hp.slack(t));
    if (sp.has_covert) {
        const double cap_scale = std::abs(sp.covert_cap) + 1e-300;
        v = std::max(v, (sp.covert_quad.value(t) - sp.covert_cap) / cap_scale);
    }
    return v;
}

bool candidate_feasible(const PositionSubproblem& sp, const Vec2& t, double tol_abs) {
    if (t.x < -tol_abs || t.y < -tol_abs) return false;
    if (t.x > sp.region_size + tol_abs || t.y > sp.region_size + tol_abs) return false;
    for (const auto& hp : sp.halfplanes)
        if (hp.slack(t) < -tol_abs) return false;
    if (sp.has_covert) {
        const double cap_tol = 1e-12 * (std::abs(sp.covert_cap) + 1e-300);
        if (sp.covert_quad.value(t) > sp.covert_cap + cap_tol) return false;
    }
    return true;
}

// Solves (P + nu * Pc) t = -(q + nu * qc)/2 for the 2x2 symmetric blocks.
bool stationary_point(const QuadraticSurrogate& obj, const QuadraticSurrogate& con, double nu,
                      Vec2& out) {
    const double a = obj.pxx + nu * con.pxx;
    const double b = obj.pxy + nu * con.pxy;
    const double d = obj.pyy + nu * con.pyy;
    const double rx = -0.5 * (obj.qx + nu * con.qx);
    const double ry = -0.5 * (obj.qy + nu * con.qy);
    const double det = a * d - b * b;
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(d)});
    if (!(std::abs(det) > 1e-14 * scale * scale) || scale == 0.0) return false;
    out = {(d * rx - b * ry) / det, (-b * rx + a * ry) / det};
    return true;
}

void add_candidate(std::vector<Vec2>& cands, const Vec2& t) {
    if (std::isfinite(t.x) && std::isfinite(t.y)) cands.push_back(t);
}

// Minimum of the objective along a line, when the restriction is strictly
// convex.
void line_minimum(const QuadraticSurrogate& obj, const Line& line, std::vector<Vec2>& cands) {
    const Vec2& u = line.tangent;
    const double a = u.x * (obj.pxx * u.x + obj.pxy * u.y) + u.y * (obj.pxy * u.x + obj.pyy * u.y);
    const Vec2 g = obj.gradient(line.point);
    const double b = g.dot(u);
    const double curvature_scale = std::abs(obj.pxx) + std::abs(obj.pyy) + 1e-300;
    if (a > 1e-14 * curvature_scale) add_candidate(cands, line.point + u * (-b / (2.0 * a)));
}

// Points of the line where the covertness boundary is met (quadratic in the
// line parameter).
void line_quad_crossings(const QuadraticSurrogate& con, double cap, const Line& line,
                         std::vector<Vec2>& cands) {
    const Vec2& p = line.point;
    const Vec2& u = line.tangent;
    const double a = u.x * (con.pxx * u.x + con.pxy * u.y) + u.y * (con.pxy * u.x + con.pyy * u.y);
    const double b = con.gradient(p).dot(u);
    const double c = con.value(p) - cap;
    if (std::abs(a) < 1e-300) {
        if (std::abs(b) > 1e-300) add_candidate(cands, p + u * (-c / b));
        return;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return;
    const double root = std::sqrt(disc);
    add_candidate(cands, p + u * ((-b + root) / (2.0 * a)));
    add_candidate(cands, p + u * ((-b - root) / (2.0 * a)));
}

void line_line_crossing(const Line& l1, const Line& l2, std::vector<Vec2>& cands) {
    // solve p1 + s*u1 = p2 + r*u2
    const double det = l1.tangent.x * (-l2.tangent.y) - (-l2.tangent.x) * l1.tangent.y;
    if (std::abs(det) < 1e-14) return;
    const Vec2 rhs = l2.point - l1.point;
    const double s = (rhs.x * (-l2.tangent.y) - (-l2.tangent.x) * rhs.y) / det;
    add_candidate(cands, l1.point + l1.tangent * s);
}

// Multiplier search for the covertness-active stationary point. The combined
// matrix can be singular at multiplier zero (rank-deficient objective), so
// the lower bracket probes upward until the KKT system is solvable.
void covert_active_minimum(const QuadraticSurrogate& obj, const QuadraticSurrogate& con,
                           double cap, std::vector<Vec2>& cands) {
    auto boundary_gap = [&](double nu, Vec2& t) -> double {
        if (!stationary_point(obj, con, nu, t)) return std::numeric_limits<double>::quiet_NaN();
        return con.value(t) - cap;
    };
    const double obj_scale = std::abs(obj.eig_max()) + 1e-300;
    const double con_scale = std::abs(con.eig_max()) + 1e-300;

    Vec2 t;
    double lo = 0.0;
    double gap_lo = boundary_gap(lo, t);
    if (std::isnan(gap_lo)) {
        double probe = 1e-14 * obj_scale / con_scale;
        for (int i = 0; i < 40 && std::isnan(gap_lo); ++i) {
            gap_lo = boundary_gap(probe, t);
            lo = probe;
            probe *= 10.0;
        }
        if (std::isnan(gap_lo)) return;
        if (gap_lo <= 0.0) {
            add_candidate(cands, t);  // boundary met at the smallest workable multiplier
            return;
        }
    } else if (gap_lo <= 0.0) {
        return;  // the unconstrained vertex handles the inactive case
    }

    double hi = std::max({1.0, 2.0 * lo, obj_scale / con_scale});
    int guard = 0;
    double gap_hi = boundary_gap(hi, t);
    while (!(gap_hi <= 0.0)) {
        if (std::isnan(gap_hi) || ++guard > 300) return;
        hi *= 2.0;
        gap_hi = boundary_gap(hi, t);
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gap = boundary_gap(mid, t);
        if (std::isnan(gap)) return;
        if (gap > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    boundary_gap(hi, t);  // feasible side
    add_candidate(cands, t);
}

}  // namespace

SubproblemResult solve_position_subproblem(const PositionSubproblem& sp, const Vec2& anchor) {
    SubproblemResult result;
    result.position = anchor;

    const double pos_tol = 1e-12 * (sp.region_size + 1.0);
    if (feasibility_violation(sp, anchor) > 1e-7 * (sp.region_size + 1.0)) {
        result.infeasible_flag = true;
        return result;
    }

    std::vector<Line> lines;
    lines.push_back({{0.0, 0.0}, {1.0, 0.0}});                  // bottom edge
    lines.push_back({{0.0, sp.region_size}, {1.0, 0.0}});       // top edge
    lines.push_back({{0.0, 0.0}, {0.0, 1.0}});                  // left edge
    lines.push_back({{sp.region_size, 0.0}, {0.0, 1.0}});       // right edge
    for (const auto& hp : sp.halfplanes) {
        const Vec2 boundary_point = hp.point + hp.normal * hp.offset;
        lines.push_back({boundary_point, {-hp.normal.y, hp.normal.x}});
    }

    std::vector<Vec2> cands;
    cands.reserve(16 + lines.size() * (lines.size() + 4));
    cands.push_back(anchor);

    Vec2 vertex;
    if (stationary_point(sp.objective, sp.objective, 0.0, vertex)) add_candidate(cands, vertex);

    for (std::size_t i = 0; i < lines.size(); ++i) {
        line_minimum(sp.objective, lines[i], cands);
        if (sp.has_covert) line_quad_crossings(sp.covert_quad, sp.covert_cap, lines[i], cands);
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            line_line_crossing(lines[i], lines[j], cands);
    }
    if (sp.has_covert) covert_active_minimum(sp.objective, sp.covert_quad, sp.covert_cap, cands);

    const double anchor_value = sp.objective.value(anchor);
    double best_value = anchor_value;
    Vec2 best = anchor;
    for (const auto& cand : cands) {
        Vec2 t = cand;
        // snap roundoff-level box violations before the exact checks
        t.x = std::clamp(t.x, 0.0, sp.region_size);
        t.y = std::clamp(t.y, 0.0, sp.region_size);
        if (!candidate_feasible(sp, t, pos_tol)) continue;
        const double value = sp.objective.value(t);
        if (value < best_value) {
            best_value = value;
            best = t;
        }
    }

    result.position = best;
    result.improved = best_value < anchor_value;
    result.iterations = static_cast<int>(cands.size());
    return result;
}

// ---------------------------------------------------------------------------

PositionBlockEval::PositionBlockEval(std::size_t n, const Beamformer& W,
                                     const AuxiliaryState& aux,
                                     const std::vector<PathSet>& paths,
                                     const std::vector<Position>& positions, double wavelength)
    : W_(W), aux_(aux), paths_(paths), wavelength_(wavelength), n_(n) {
    const arma::uword users = W.n_cols;
    fixed_users_.zeros(users, users);
    fixed_warden_.zeros(users);
    for (std::size_t np = 0; np < positions.size(); ++np) {
        if (np == n) continue;
        const arma::uword row = static_cast<arma::uword>(np);
        const cxd h0_entry = channel_entry(positions[np], paths[0], wavelength);
        for (arma::uword k = 0; k < users; ++k) {
            const cxd hk_entry = channel_entry(positions[np], paths[k + 1], wavelength);
            for (arma::uword i = 0; i < users; ++i)
                fixed_users_(i, k) += std::conj(W(row, i)) * hk_entry;
            fixed_warden_(k) += std::conj(W(row, k)) * h0_entry;
        }
    }
}

double PositionBlockEval::objective(const Vec2& t) const {
    const arma::uword users = W_.n_cols;
    const arma::uword row = static_cast<arma::uword>(n_);
    double total = 0.0;
    for (arma::uword k = 0; k < users; ++k) {
        const cxd hk_entry = channel_entry(t, paths_[k + 1], wavelength_);
        double received = 0.0;
        cxd desired{0.0, 0.0};
        for (arma::uword i = 0; i < users; ++i) {
            const cxd inner = fixed_users_(i, k) + std::conj(W_(row, i)) * hk_entry;
            received += std::norm(inner);
            if (i == k) desired = inner;
        }
        total += aux_.mse_weight(k) * (std::norm(aux_.rx_coeff(k)) * received -
                                       2.0 * std::real(aux_.rx_coeff(k) * desired));
    }
    return total;
}

double PositionBlockEval::warden_power(const Vec2& t) const {
    const arma::uword row = static_cast<arma::uword>(n_);
    const cxd h0_entry = channel_entry(t, paths_[0], wavelength_);
    double power = 0.0;
    for (arma::uword k = 0; k < W_.n_cols; ++k)
        power += std::norm(fixed_warden_(k) + std::conj(W_(row, k)) * h0_entry);
    return power;
}

PositionSubproblem build_position_subproblem(std::size_t n, const Beamformer& W,
                                             const AuxiliaryState& aux,
                                             const std::vector<PathSet>& paths,
                                             const std::vector<Position>& positions,
                                             const SystemConfig& cfg) {
    const Vec2 anchor = positions[n];
    PositionSubproblem sp;
    sp.region_size = cfg.region_size;

    const arma::uword users = W.n_cols;
    for (arma::uword k = 0; k < users; ++k) {
        const double coeff_sq = std::norm(aux.rx_coeff(k));
        const double weight = aux.mse_weight(k);
        if (coeff_sq * weight > 0.0) {
            for (arma::uword i = 0; i < users; ++i) {
                sp.objective.add_scaled(received_power_upper_bound(n, W.col(i), paths[k + 1],
                                                                   positions, anchor,
                                                                   cfg.wavelength),
                                        weight * coeff_sq);
            }
        }
        sp.objective.add_scaled(matched_term_lower_bound(n, aux.rx_coeff(k), W.col(k),
                                                         paths[k + 1], positions, anchor,
                                                         cfg.wavelength),
                                -2.0 * weight);
    }

    const auto warden_bounds =
        warden_power_upper_bounds(n, W, paths[0], positions, anchor, cfg.wavelength);
    for (const auto& bound : warden_bounds) sp.covert_quad.add_scaled(bound, 1.0);
    const auto budget = covert_power_budget(cfg.warden_noise_nominal, cfg.noise_uncertainty,
                                            cfg.covertness_epsilon);
    sp.covert_cap = budget.power_cap;
    sp.has_covert = true;

    for (std::size_t np = 0; np < positions.size(); ++np) {
        if (np == n) continue;
        sp.halfplanes.push_back(min_distance_halfplane(anchor, positions[np], cfg.min_spacing));
    }
    return sp;
}

Position sca_update_antenna(std::size_t n, const Beamformer& W, const AuxiliaryState& aux,
                            const std::vector<PathSet>& paths,
                            const std::vector<Position>& positions, const SystemConfig& cfg,
                            bool* flagged) {
    const PositionSubproblem sp = build_position_subproblem(n, W, aux, paths, positions, cfg);
    const Vec2 anchor = positions[n];
    const SubproblemResult res = solve_position_subproblem(sp, anchor);
    if (res.infeasible_flag) {
        if (flagged) *flagged = true;
        return anchor;
    }
    if (!res.improved) return anchor;

    // accept only when the true block objective did not regress (the
    // surrogate dominance argument guarantees it; this guards roundoff)
    PositionBlockEval eval(n, W, aux, paths, positions, cfg.wavelength);
    const double before = eval.objective(anchor);
    const double after = eval.objective(res.position);
    if (after > before + 1e-12 * (1.0 + std::abs(before))) return anchor;
    return res.position;
}

}  // namespace covertma
