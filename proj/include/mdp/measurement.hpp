// Copyright 2026 The mdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mdp/density.hpp"
#include "mdp/error.hpp"
#include "mdp/slots.hpp"

namespace mdp {

/**
 * @brief Weight functions of a two-photon detection in one path.
 *
 * f and g weight the two detected photons over the (A-label, B-label)
 * grid. A single-column kernel (dim_b == 1) addresses the A DOF only and
 * is treated as insensitive to whatever second DOF the state may carry.
 */
struct MeasurementKernel {
    Eigen::MatrixXcd f;
    Eigen::MatrixXcd g;

    MeasurementKernel(Eigen::MatrixXcd f_in, Eigen::MatrixXcd g_in)
        : f(std::move(f_in)), g(std::move(g_in)) {
        detail::require(f.rows() == g.rows() && f.cols() == g.cols(),
                        errc::dimension_mismatch,
                        "f and g must have identical shape");
        detail::require(f.rows() > 0 && f.cols() > 0, errc::zero_kernel,
                        "empty kernel");
        detail::require(f.allFinite() && g.allFinite(), errc::invalid_spec,
                        "kernel entries must be finite");
        detail::require(f.cwiseAbs().maxCoeff() > 0.0 &&
                            g.cwiseAbs().maxCoeff() > 0.0,
                        errc::zero_kernel, "kernel must not be all-zero");
    }

    int dim_a() const { return static_cast<int>(f.rows()); }
    int dim_b() const { return static_cast<int>(f.cols()); }
};

/// A Hermitian operator on the two-photon slot space of one path.
struct PairOperator {
    int slot_dim = 0;          // single-photon label count
    Eigen::MatrixXcd matrix;   // slot_dim^2 x slot_dim^2

    int dimension() const { return static_cast<int>(matrix.rows()); }
};

inline Eigen::MatrixXcd kronecker(const Eigen::MatrixXcd& a,
                                  const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

/// Projector onto the exchange-symmetric subspace of the two-slot space.
inline Eigen::MatrixXcd pair_symmetric_projector(int slot_dim) {
    const int dim = slot_dim * slot_dim;
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    for (int a = 0; a < slot_dim; ++a)
        for (int b = 0; b < slot_dim; ++b) {
            p(a * slot_dim + b, a * slot_dim + b) += 0.5;
            p(a * slot_dim + b, b * slot_dim + a) += 0.5;
        }
    return p;
}

/// Projector onto the exchange-antisymmetric subspace.
inline Eigen::MatrixXcd pair_antisymmetric_projector(int slot_dim) {
    return Eigen::MatrixXcd::Identity(slot_dim * slot_dim,
                                      slot_dim * slot_dim) -
           pair_symmetric_projector(slot_dim);
}

namespace detail {
inline void add_pair_vector(Eigen::VectorXcd& target, int dim, int x, int y,
                            Amplitude weight) {
    target[x * dim + y] += weight;
}
} // namespace detail

/**
 * Two-photon measurement operator of one path,
 *
 *   M = sum_{ijmn} f(a_i, alpha_j) g(a_m, alpha_n)
 *       a^dag(a_i, alpha_j) a^dag(a_m, alpha_n)
 *       a(a_m, alpha_n) a(a_i, alpha_j),
 *
 * materialized on the two-slot sector through its block form: each term
 * is (1/8) |v><v| with
 * v = (|im> + |mi>)_A (|jn> + |nj>)_B + (|im> - |mi>)_A (|jn> - |nj>)_B.
 *
 * For a single-column kernel the operator is built on the A slots alone,
 * keeping BOTH the symmetric and the antisymmetric block,
 *
 *   M = (1/2) sum_{im} f_i g_m [ s_im s_im^dag + a_im a_im^dag ],
 *
 * which is the exact effective operator of a B-insensitive detector when
 * a second DOF has been traced out (and harmlessly equal to the plain
 * operator on states that never had one). The antisymmetric block is what
 * sees the "background" component of the four-photon mixture.
 *
 * Hermitian and positive semidefinite for kernels with nonnegative
 * symmetrized weights (in particular all real nonnegative f, g). The
 * @p path argument only labels the operator; both paths measure alike.
 */
inline PairOperator two_photon_projector(const MeasurementKernel& kernel,
                                         std::string_view path = "u") {
    (void)path;
    const int da = kernel.dim_a();
    const int db = kernel.dim_b();
    if (db == 1) {
        const int dim = da * da;
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
        for (int i = 0; i < da; ++i) {
            for (int mm = 0; mm < da; ++mm) {
                const Amplitude w = kernel.f(i, 0) * kernel.g(mm, 0);
                if (w == Amplitude{0.0, 0.0}) continue;
                Eigen::VectorXcd sym = Eigen::VectorXcd::Zero(dim);
                Eigen::VectorXcd anti = Eigen::VectorXcd::Zero(dim);
                detail::add_pair_vector(sym, da, i, mm, 1.0);
                detail::add_pair_vector(sym, da, mm, i, 1.0);
                detail::add_pair_vector(anti, da, i, mm, 1.0);
                detail::add_pair_vector(anti, da, mm, i, -1.0);
                m += 0.5 * w *
                     (sym * sym.adjoint() + anti * anti.adjoint());
            }
        }
        return PairOperator{da, std::move(m)};
    }

    const int slot = da * db;
    const int dim = slot * slot;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    auto label = [&](int a, int b) { return a * db + b; };
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j)
            for (int mm = 0; mm < da; ++mm)
                for (int n = 0; n < db; ++n) {
                    const Amplitude w = kernel.f(i, j) * kernel.g(mm, n);
                    if (w == Amplitude{0.0, 0.0}) continue;
                    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
                    // sym_A (x) sym_B + anti_A (x) anti_B, expanded over
                    // the four slot-label combinations.
                    detail::add_pair_vector(v, slot, label(i, j),
                                            label(mm, n), 2.0);
                    detail::add_pair_vector(v, slot, label(mm, n),
                                            label(i, j), 2.0);
                    m += (w / 8.0) * (v * v.adjoint());
                }
    return PairOperator{slot, std::move(m)};
}

/**
 * P = tr(rho M_u (x) M_d) for a density matrix over the
 * 2-photons-per-path sector (four slots, u pair then d pair).
 */
inline double coincidence_rate(const DensityMatrix& rho,
                               const MeasurementKernel& kernel_u,
                               const MeasurementKernel& kernel_d) {
    const PairOperator mu = two_photon_projector(kernel_u, "u");
    const PairOperator md = two_photon_projector(kernel_d, "d");
    detail::require(rho.dimension() == mu.dimension() * md.dimension(),
                    errc::basis_mismatch,
                    "density matrix does not match the kernels' sector");
    const Eigen::MatrixXcd joint = kronecker(mu.matrix, md.matrix);
    return (rho.matrix() * joint).trace().real();
}

/**
 * Coincidence curve of the standard four-photon analyzer sweep on a
 * polarization-sector density matrix (16-dimensional slot basis).
 *
 * Each path carries a crossed polarizer pair at angles (theta,
 * theta + pi/2), one rank-1 polarizer per photon; the sweep rotates all
 * four analyzers collectively, which is modeled by counter-rotating the
 * state and detecting the (H, V) photon pair in each path. A same-angle
 * analyzer pair would be blind to the antisymmetric component, so the
 * crossed configuration is the one that exposes its flat background.
 */
inline std::vector<std::pair<double, double>>
analyzer_sweep(const DensityMatrix& rho, int points = 64) {
    detail::require(points >= 3, errc::degenerate_curve,
                    "need at least three sweep points");
    detail::require(rho.dimension() == 16, errc::basis_mismatch,
                    "analyzer sweep expects the 16-dimensional "
                    "two-level slot basis");
    const MeasurementKernel crossed(Eigen::MatrixXcd{{1.0}, {0.0}},
                                    Eigen::MatrixXcd{{0.0}, {1.0}});
    const PairOperator m0 = two_photon_projector(crossed);
    const Eigen::MatrixXcd joint = kronecker(m0.matrix, m0.matrix);

    std::vector<std::pair<double, double>> curve;
    curve.reserve(points);
    for (int k = 0; k < points; ++k) {
        const double theta = M_PI * k / points;
        Eigen::MatrixXcd u(2, 2);
        u << std::cos(theta), -std::sin(theta), std::sin(theta),
            std::cos(theta);
        const Eigen::MatrixXcd u4 =
            kronecker(kronecker(u, u), kronecker(u, u));
        const Eigen::MatrixXcd rotated = u4 * joint * u4.adjoint();
        const double rate = (rho.matrix() * rotated).trace().real();
        curve.emplace_back(theta, rate);
    }
    return curve;
}

/// Fringe visibility (max - min) / (max + min) of a rate curve sampled
/// over a period. An all-zero curve has no fringe to speak of.
inline double
visibility(const std::vector<std::pair<double, double>>& curve) {
    detail::require(curve.size() >= 3, errc::degenerate_curve,
                    "need at least three points spanning a period");
    double lo = curve.front().second, hi = curve.front().second;
    for (const auto& [theta, rate] : curve) {
        lo = std::min(lo, rate);
        hi = std::max(hi, rate);
    }
    detail::require(hi > 0.0, errc::degenerate_curve,
                    "curve is identically zero");
    return (hi - lo) / (hi + lo);
}

} // namespace mdp
