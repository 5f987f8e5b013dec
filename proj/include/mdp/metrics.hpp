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

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "mdp/density.hpp"
#include "mdp/error.hpp"
#include "mdp/schmidt.hpp"
#include "mdp/slots.hpp"

namespace mdp {

/// K = sum_i phi_i^4 of a normalized Schmidt spectrum. K = 1 for a
/// product state, 1/d for d uniform terms; smaller K means more
/// entanglement in the pair.
inline double k_coefficient(const SchmidtSpec& spec) {
    spec.validate();
    double k = 0.0;
    for (double c : spec.coefficients) k += c * c * c * c;
    return k;
}

/**
 * The rate-based K estimator, K = P2 / P1^2 - 1, with P1 the
 * single-photon rate and P2 the two-photon rate in one path mode.
 * P2 = 0 yields the sub-Poissonian sentinel -1, returned as-is.
 */
inline double k_from_rates(double p1, double p2) {
    detail::require(p1 > 0.0, errc::nonpositive_p1, "P1 must be positive");
    detail::require(p2 >= 0.0, errc::out_of_range, "P2 must be nonnegative");
    return p2 / (p1 * p1) - 1.0;
}

/**
 * Per-pulse counting rates in one path of a (possibly truncated) photon
 * state: P1 = <N> is the mean photon number in the path and
 * P2 = <N(N-1)> the normally-ordered pair rate. The quotient P2 / P1^2
 * estimates 1 + K in the weak-pump limit.
 */
struct PathRates {
    double p1 = 0.0;
    double p2 = 0.0;
};

inline PathRates path_photon_rates(const FockState& state,
                                   std::string_view path_label = "u") {
    const auto& registry = *state.registry();
    const int dpath = registry.dof_index("path");
    const int target = registry.label_index(dpath, path_label);
    PathRates rates;
    for (const auto& [occ, amp] : state.amplitudes()) {
        int photons = 0;
        for (std::size_t m = 0; m < occ.size(); ++m)
            if (registry.mode_component(static_cast<int>(m), dpath) == target)
                photons += occ[m];
        const double p = std::norm(amp);
        rates.p1 += p * photons;
        rates.p2 += p * photons * (photons - 1);
    }
    return rates;
}

/// Schmidt decomposition of a bipartite amplitude matrix.
struct SchmidtResult {
    SchmidtSpec spec;
    Eigen::MatrixXcd left;   // columns: u-side Schmidt vectors
    Eigen::MatrixXcd right;  // columns: d-side Schmidt vectors
    double input_norm = 0.0; // Frobenius norm of the input matrix

    /// Rebuilds the (normalized) input matrix from the decomposition.
    Eigen::MatrixXcd reconstruct() const {
        Eigen::MatrixXcd m =
            Eigen::MatrixXcd::Zero(left.rows(), right.rows());
        for (int i = 0; i < spec.terms(); ++i)
            m += spec.coefficients[i] * left.col(i) *
                 right.col(i).transpose();
        return m;
    }
};

/**
 * Singular value decomposition of the amplitude matrix, with singular
 * values normalized so their squares sum to one. Values below
 * 1e-12 * max are treated as rank deficiency and dropped, so a rank-1
 * matrix yields a single-term spec (K = 1) exactly.
 */
inline SchmidtResult schmidt_decompose(const Eigen::MatrixXcd& amplitude) {
    const double frob = amplitude.norm();
    detail::require(frob > 0.0, errc::zero_matrix, "zero amplitude matrix");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        amplitude, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > sv[0] * 1e-12) ++rank;
    std::vector<double> coeffs(rank);
    std::vector<std::string> la(rank), lb(rank);
    for (int i = 0; i < rank; ++i) {
        coeffs[i] = sv[i] / frob;
        la[i] = "u" + std::to_string(i);
        lb[i] = "d" + std::to_string(i);
    }
    // Guard against rounding in the normalization.
    double sum_sq = 0.0;
    for (double c : coeffs) sum_sq += c * c;
    const double fix = 1.0 / std::sqrt(sum_sq);
    for (double& c : coeffs) c *= fix;
    return SchmidtResult{
        SchmidtSpec(std::move(coeffs), std::move(la), std::move(lb)),
        svd.matrixU().leftCols(rank), svd.matrixV().conjugate().leftCols(rank),
        frob};
}

namespace detail {
/// Amplitude groups of a path block, keyed by the traced-out DOF's slot
/// 4-tuple; each group contributes one outer product to the reduction.
inline std::map<std::array<int, 4>,
                std::vector<std::pair<std::array<int, 4>, Amplitude>>>
trace_groups(const PathBlock& block, bool keep_first) {
    std::map<std::array<int, 4>,
             std::vector<std::pair<std::array<int, 4>, Amplitude>>>
        groups;
    for (const auto& [key, amp] : block.amps) {
        std::array<int, 4> kept{}, traced{};
        for (int s = 0; s < 4; ++s) {
            kept[s] = block.label_of(key[s], keep_first);
            traced[s] = block.label_of(key[s], !keep_first);
        }
        groups[traced].emplace_back(kept, amp);
    }
    return groups;
}
} // namespace detail

/// Reduction of a path block onto one of its DOF as a dense matrix over
/// the full 4-slot label basis of that DOF.
inline DensityMatrix reduce_block(const PathBlock& block, bool keep_first) {
    const auto& labels = keep_first ? block.labels_a : block.labels_b;
    const int dim = static_cast<int>(labels.size());
    const long full = static_cast<long>(dim) * dim * dim * dim;
    detail::require(full <= 65536, errc::out_of_range,
                    "label space too large for a dense reduced density "
                    "matrix; use reduced_purity");
    auto tuple_index = [dim](const std::array<int, 4>& t) {
        return ((t[0] * dim + t[1]) * dim + t[2]) * dim + t[3];
    };

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(full, full);
    for (const auto& [traced, entries] :
         detail::trace_groups(block, keep_first))
        for (const auto& [kept_i, amp_i] : entries)
            for (const auto& [kept_j, amp_j] : entries)
                rho(tuple_index(kept_i), tuple_index(kept_j)) +=
                    amp_i * std::conj(amp_j);

    std::vector<std::string> basis;
    basis.reserve(full);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c)
                for (int d = 0; d < dim; ++d)
                    basis.push_back(slot_tuple_name(labels, {a, b, c, d}));
    return DensityMatrix(std::move(basis), std::move(rho));
}

/**
 * Reduced density matrix of a four-photon state (two photons per path)
 * over the kept DOF, tracing out the other non-path DOF.
 *
 * Works in the slot representation with slots fixed to (u,u,d,d); the
 * result lives on the full 4-slot label basis of the kept DOF, labeled
 * "x,y|z,w" (u pair | d pair).
 */
inline DensityMatrix reduced_density(const FockState& state,
                                     std::string_view keep,
                                     std::string_view dof_a = "A",
                                     std::string_view dof_b = "B") {
    detail::require(keep == dof_a || keep == dof_b, errc::unknown_dof,
                    "keep must name one of the two non-path DOF");
    return reduce_block(extract_uudd_block(state, dof_a, dof_b),
                        keep == dof_a);
}

/**
 * tr(rho^2) of a block reduction without materializing the matrix on the
 * full label basis: the reduction is accumulated on its support tuples
 * only. Handles the large label spaces that small K values require.
 */
inline double reduced_purity(const PathBlock& block, bool keep_first) {
    const auto groups = detail::trace_groups(block, keep_first);
    std::map<std::array<int, 4>, int> support;
    for (const auto& [traced, entries] : groups)
        for (const auto& [kept, amp] : entries) support.emplace(kept, 0);
    int next = 0;
    for (auto& [tuple, index] : support) index = next++;

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(next, next);
    for (const auto& [traced, entries] : groups)
        for (const auto& [kept_i, amp_i] : entries)
            for (const auto& [kept_j, amp_j] : entries)
                rho(support.at(kept_i), support.at(kept_j)) +=
                    amp_i * std::conj(amp_j);
    return rho.squaredNorm(); // tr(rho^2) for Hermitian rho
}

/**
 * Closed form of tr(rho_A^2) = tr(rho_B^2) for the four-photon state
 * built from Schmidt spectra with coefficients K_A, K_B:
 *
 *   (1 + 4 K_A K_B + K_A^2 + K_B^2 + K_A^2 K_B^2) / (2 (1 + K_A K_B)^2)
 *
 * Symmetric in its arguments, equal to 1 whenever either argument is 1,
 * and approaching 1/2 as both go to 0.
 */
inline double purity_closed_form(double k_a, double k_b) {
    detail::require(k_a > 0.0 && k_a <= 1.0 && k_b > 0.0 && k_b <= 1.0,
                    errc::out_of_range, "K values must lie in (0, 1]");
    const double cross = k_a * k_b;
    return (1.0 + 4.0 * cross + k_a * k_a + k_b * k_b + cross * cross) /
           (2.0 * (1.0 + cross) * (1.0 + cross));
}

} // namespace mdp
