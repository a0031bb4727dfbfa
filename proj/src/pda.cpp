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

#include "covertma/pda.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace covertma {

namespace {

// In-place lower-triangular Cholesky of a Hermitian positive-definite matrix.
// Hand-rolled to keep the per-iteration cost free of library dispatch
// overhead at the small sizes this solver runs at.
void cholesky_inplace(arma::cx_mat& M) {
    const arma::uword n = M.n_rows;
    cxd* a = M.memptr();
    for (arma::uword j = 0; j < n; ++j) {
        double diag = std::real(a[j + j * n]);
        for (arma::uword p = 0; p < j; ++p) diag -= std::norm(a[j + p * n]);
        if (!(diag > 0.0)) throw std::runtime_error("cholesky: matrix not positive definite");
        const double ljj = std::sqrt(diag);
        a[j + j * n] = ljj;
        for (arma::uword i = j + 1; i < n; ++i) {
            cxd s = a[i + j * n];
            for (arma::uword p = 0; p < j; ++p)
                s -= a[i + p * n] * std::conj(a[j + p * n]);
            a[i + j * n] = s / ljj;
        }
    }
}

// Solves L L^H X = B in place given the lower factor.
void cholesky_solve_inplace(const arma::cx_mat& L, arma::cx_mat& B) {
    const arma::uword n = L.n_rows;
    const cxd* a = L.memptr();
    for (arma::uword col = 0; col < B.n_cols; ++col) {
        cxd* b = B.colptr(col);
        for (arma::uword i = 0; i < n; ++i) {  // forward: L y = b
            cxd s = b[i];
            for (arma::uword p = 0; p < i; ++p) s -= a[i + p * n] * b[p];
            b[i] = s / std::real(a[i + i * n]);
        }
        for (arma::uword ii = n; ii-- > 0;) {  // backward: L^H x = y
            cxd s = b[ii];
            for (arma::uword p = ii + 1; p < n; ++p) s -= std::conj(a[p + ii * n]) * b[p];
            b[ii] = s / std::real(a[ii + ii * n]);
        }
    }
}

}  // namespace

QuadraticBlockData build_block_data(const AuxiliaryState& aux, const arma::cx_mat& channels,
                                    const arma::cx_vec& warden_channel) {
    const arma::uword antennas = channels.n_rows;
    const arma::uword users = channels.n_cols;
    QuadraticBlockData data;
    data.quad.zeros(antennas, antennas);
    data.linear.set_size(antennas, users);
    for (arma::uword k = 0; k < users; ++k) {
        const double weight = aux.mse_weight(k) * std::norm(aux.rx_coeff(k));
        data.quad += weight * channels.col(k) * channels.col(k).t();
        data.linear.col(k) = aux.mse_weight(k) * aux.rx_coeff(k) * channels.col(k);
    }
    // enforce exact Hermitian symmetry against accumulation roundoff
    data.quad = 0.5 * (data.quad + data.quad.t());
    data.warden_channel = warden_channel;
    return data;
}

double quadratic_objective(const QuadraticBlockData& data, const Beamformer& W) {
    double value = 0.0;
    for (arma::uword k = 0; k < W.n_cols; ++k) {
        value += std::real(arma::cdot(W.col(k), data.quad * W.col(k)));
        value -= 2.0 * std::real(arma::cdot(data.linear.col(k), W.col(k)));
    }
    return value;
}

Beamformer project_power(const Beamformer& W, double max_power) {
    const double total = std::pow(arma::norm(W, "fro"), 2);
    if (total <= max_power) return W;
    return W * std::sqrt(max_power / total);
}

namespace {

// Shared implementation: returns the multiplier-scaled rank-one correction.
// With c_k = h0^H w_k, the projected columns satisfy
// h0^H w~_k = c_k / (1 + s*|h0|^2), so the constraint value is a scalar
// function of the multiplier s.
Beamformer covert_projection(const Beamformer& W, const arma::cx_vec& h0, double power_cap,
                             bool* was_active) {
    arma::cx_rowvec inner(W.n_cols);
    double power = 0.0;
    for (arma::uword k = 0; k < W.n_cols; ++k) {
        inner(k) = arma::cdot(h0, W.col(k));
        power += std::norm(inner(k));
    }
    if (was_active) *was_active = power > power_cap;
    if (power <= power_cap) return W;

    const double h0_sq = std::pow(arma::norm(h0), 2);
    // evaluates the cap exactly the way the reconstruction below does, so the
    // bisection tolerance survives the final rank-one update
    auto constraint_power = [&](double s) {
        const double factor = 1.0 - (s / (1.0 + s * h0_sq)) * h0_sq;
        return power * factor * factor;
    };

    // bracket the multiplier, doubling from 1
    double hi = 1.0;
    int guard = 0;
    while (constraint_power(hi) > power_cap) {
        hi *= 2.0;
        if (++guard > 200)
            throw std::runtime_error("project_covert: bracket search failed (warden channel ~ 0)");
    }
    double lo = 0.0;
    double s = hi;
    for (int it = 0; it < 300; ++it) {
        s = 0.5 * (lo + hi);
        const double p = constraint_power(s);
        if (std::abs(p - power_cap) <= 1e-14 * power_cap) break;
        (p > power_cap ? lo : hi) = s;
    }
    // final value from the upper end of the bracket keeps the result feasible
    if (constraint_power(s) > power_cap) s = hi;

    const double coeff = s / (1.0 + s * h0_sq);
    Beamformer out = W;
    for (arma::uword k = 0; k < W.n_cols; ++k) out.col(k) -= coeff * inner(k) * h0;
    return out;
}

}  // namespace

Beamformer project_covert(const Beamformer& W, const arma::cx_vec& warden_channel,
                          double power_cap) {
    return covert_projection(W, warden_channel, power_cap, nullptr);
}

double distance_to_power_ball(const Beamformer& W, double max_power) {
    const double fro = arma::norm(W, "fro");
    return std::max(0.0, fro - std::sqrt(max_power));
}

double distance_to_covert_set(const Beamformer& W, const arma::cx_vec& warden_channel,
                              double power_cap) {
    const Beamformer proj = covert_projection(W, warden_channel, power_cap, nullptr);
    return arma::norm(W - proj, "fro");
}

double penalized_objective(const QuadraticBlockData& data, const Beamformer& W, double penalty,
                           double max_power, double power_cap) {
    const double d1 = distance_to_power_ball(W, max_power);
    const double d2 = distance_to_covert_set(W, data.warden_channel, power_cap);
    return quadratic_objective(data, W) + penalty * (d1 * d1 + d2 * d2);
}

Beamformer pda_step(const QuadraticBlockData& data, const Beamformer& power_proj,
                    const Beamformer& covert_proj, double penalty) {
    arma::cx_mat M = data.quad;
    M.diag() += 2.0 * penalty;
    arma::cx_mat rhs = data.linear + penalty * power_proj + penalty * covert_proj;
    cholesky_inplace(M);
    cholesky_solve_inplace(M, rhs);
    return rhs;
}

Beamformer run_pda(const QuadraticBlockData& data, const Beamformer& W_init, double max_power,
                   double power_cap, const PdaConfig& cfg) {
    const arma::uword antennas = data.quad.n_rows;
    const arma::uword users = data.linear.n_cols;
    const arma::cx_vec& h0 = data.warden_channel;
    const double h0_sq = std::pow(arma::norm(h0), 2);

    // the loop below is allocation-free: every buffer is sized once and the
    // covert projection uses the closed-form multiplier of the same scalar
    // equation the public bisection solves (the terminal pass re-projects
    // with the exact bisection)
    Beamformer W = W_init;
    arma::cx_mat power_proj(antennas, users);
    arma::cx_mat covert_proj(antennas, users);
    arma::cx_mat M(antennas, antennas);
    arma::cx_mat rhs(antennas, users);
    arma::cx_rowvec inner(users);
    arma::cx_vec work(antennas);

    double penalty = cfg.penalty_init;
    double prev_objective = std::numeric_limits<double>::infinity();
    for (int s = 0; s < cfg.max_iters; ++s) {
        // projection onto the power ball
        double total = 0.0;
        for (const auto& w : W) total += std::norm(w);
        if (total <= max_power) {
            power_proj = W;
        } else {
            const double scale = std::sqrt(max_power / total);
            for (arma::uword i = 0; i < W.n_elem; ++i) power_proj(i) = scale * W(i);
        }

        // projection onto the covertness set
        double warden = 0.0;
        for (arma::uword k = 0; k < users; ++k) {
            cxd acc{0.0, 0.0};
            for (arma::uword n = 0; n < antennas; ++n)
                acc += std::conj(h0(n)) * W(n, k);
            inner(k) = acc;
            warden += std::norm(acc);
        }
        if (warden <= power_cap || h0_sq == 0.0) {
            covert_proj = W;
        } else {
            const double mult = (std::sqrt(warden / power_cap) - 1.0) / h0_sq;
            const double coeff = mult / (1.0 + mult * h0_sq);
            for (arma::uword k = 0; k < users; ++k)
                for (arma::uword n = 0; n < antennas; ++n)
                    covert_proj(n, k) = W(n, k) - coeff * inner(k) * h0(n);
        }

        M = data.quad;
        M.diag() += 2.0 * penalty;
        for (arma::uword i = 0; i < rhs.n_elem; ++i)
            rhs(i) = data.linear(i) + penalty * (power_proj(i) + covert_proj(i));
        cholesky_inplace(M);
        cholesky_solve_inplace(M, rhs);
        W.swap(rhs);

        // objective of the proximal surrogate at the new point
        double objective = 0.0;
        for (arma::uword k = 0; k < users; ++k) {
            for (arma::uword n = 0; n < antennas; ++n) {
                cxd acc{0.0, 0.0};
                for (arma::uword j = 0; j < antennas; ++j) acc += data.quad(n, j) * W(j, k);
                work(n) = acc;
            }
            for (arma::uword n = 0; n < antennas; ++n) {
                objective += std::real(std::conj(W(n, k)) * work(n));
                objective -= 2.0 * std::real(std::conj(data.linear(n, k)) * W(n, k));
            }
        }
        double dist_sq = 0.0;
        for (arma::uword i = 0; i < W.n_elem; ++i)
            dist_sq += std::norm(W(i) - power_proj(i)) + std::norm(W(i) - covert_proj(i));
        objective += penalty * dist_sq;

        if (s > 0 && prev_objective - objective <= cfg.objective_tol) break;
        prev_objective = objective;
        penalty *= cfg.penalty_growth;
    }

    // terminal feasibility pass; the uniform power rescale cannot break the
    // covertness cap, so the power ball is projected last
    W = covert_projection(W, data.warden_channel, power_cap, nullptr);
    W = project_power(W, max_power);
    return W;
}

}  // namespace covertma
