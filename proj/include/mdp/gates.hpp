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
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "mdp/error.hpp"
#include "mdp/fock.hpp"

namespace mdp {

namespace detail {
inline double unitarity_defect(const Eigen::MatrixXcd& u) {
    const Eigen::MatrixXcd gram = u.adjoint() * u;
    return (gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
        .cwiseAbs()
        .maxCoeff();
}
} // namespace detail

/**
 * @brief Passive linear-optical unitary on the composite-mode space.
 *
 * Most gates act on a single DOF (identity on all others); compose() can
 * also produce a general composite-mode unitary. Application to states
 * substitutes creation operators, a^dag_k -> sum_j U_jk a^dag_j, which is
 * exact for passive linear optics.
 */
class ModeUnitary {
  public:
    ModeUnitary(RegistryPtr registry, std::optional<std::string> target_dof,
                Eigen::MatrixXcd composite_matrix)
        : registry_(std::move(registry)),
          target_dof_(std::move(target_dof)),
          matrix_(std::move(composite_matrix)) {
        detail::require(registry_ != nullptr, errc::invalid_spec,
                        "null registry");
        const int modes = registry_->mode_count();
        detail::require(matrix_.rows() == modes && matrix_.cols() == modes,
                        errc::dimension_mismatch,
                        "composite matrix does not match mode count");
        detail::require(detail::unitarity_defect(matrix_) <= 1e-12,
                        errc::not_unitary, "composite matrix is not unitary");
    }

    const RegistryPtr& registry() const { return registry_; }

    /// Name of the single DOF the gate acts on, or empty for a general
    /// composite-mode unitary.
    const std::optional<std::string>& target_dof() const { return target_dof_; }

    /// Matrix on the full composite-mode space, column k = image of mode k.
    const Eigen::MatrixXcd& matrix() const { return matrix_; }

    ModeUnitary adjoint() const {
        return ModeUnitary(registry_, target_dof_, matrix_.adjoint());
    }

  private:
    RegistryPtr registry_;
    std::optional<std::string> target_dof_;
    Eigen::MatrixXcd matrix_;
};

namespace detail {
inline Eigen::MatrixXcd induced_composite_matrix(const DofRegistry& registry,
                                                 int dof,
                                                 const Eigen::MatrixXcd& u) {
    const int modes = registry.mode_count();
    Eigen::MatrixXcd composite = Eigen::MatrixXcd::Zero(modes, modes);
    for (int col = 0; col < modes; ++col) {
        auto assignment = registry.mode_assignment(col);
        const int from = assignment[dof];
        for (int to = 0; to < u.rows(); ++to) {
            if (u(to, from) == Amplitude{0.0, 0.0}) continue;
            assignment[dof] = to;
            composite(registry.mode_index(assignment), col) = u(to, from);
        }
        assignment[dof] = from;
    }
    return composite;
}
} // namespace detail

/**
 * Unitary acting on one DOF collectively, identity on all others.
 * The matrix must be unitary within 1e-10 and match the DOF dimension.
 */
inline ModeUnitary dof_unitary(RegistryPtr registry, std::string_view dof_name,
                               const Eigen::MatrixXcd& u) {
    detail::require(registry != nullptr, errc::invalid_spec, "null registry");
    const int dof = registry->dof_index(dof_name); // throws UnknownDof
    const int dim = registry->dof_dimension(dof);
    detail::require(u.rows() == dim && u.cols() == dim,
                    errc::dimension_mismatch,
                    "matrix dimension does not match DOF '" +
                        std::string(dof_name) + "'");
    detail::require(detail::unitarity_defect(u) <= 1e-10, errc::not_unitary,
                    "matrix is not unitary within 1e-10");
    Eigen::MatrixXcd composite =
        detail::induced_composite_matrix(*registry, dof, u);
    return ModeUnitary(std::move(registry), std::string(dof_name),
                       std::move(composite));
}

/**
 * Lossless beamsplitter on the 2-dimensional "path" DOF, with
 * reflectivity R and transmissivity T = 1 - R:
 *
 *   |u> -> sqrt(R) |u> - sqrt(T) |d>
 *   |d> -> sqrt(T) |u> + sqrt(R) |d>
 *
 * in the path DOF's own basis order (first label plays the role of u).
 * R = 1 is the identity; R = 0 swaps the paths with a sign.
 */
inline ModeUnitary beamsplitter(RegistryPtr registry, double reflectivity) {
    detail::require(registry != nullptr, errc::invalid_spec, "null registry");
    detail::require(reflectivity >= 0.0 && reflectivity <= 1.0,
                    errc::r_out_of_range, "reflectivity must be in [0, 1]");
    detail::require(registry->has_dof("path"), errc::no_path_dof,
                    "registry has no DOF named 'path'");
    const int dof = registry->dof_index("path");
    detail::require(registry->dof_dimension(dof) == 2, errc::no_path_dof,
                    "path DOF must be 2-dimensional");
    const double r = std::sqrt(reflectivity);
    const double t = std::sqrt(1.0 - reflectivity);
    Eigen::MatrixXcd u(2, 2);
    u << Amplitude{r, 0.0}, Amplitude{t, 0.0},
        Amplitude{-t, 0.0}, Amplitude{r, 0.0};
    Eigen::MatrixXcd composite =
        detail::induced_composite_matrix(*registry, dof, u);
    return ModeUnitary(std::move(registry), std::string("path"),
                       std::move(composite));
}

/**
 * Applies the gate by creation-operator substitution: each occupation is
 * expanded as a monomial in creation operators, each operator is replaced
 * by its image column, and the expansion is collected back onto
 * occupation keys. Exact for passive linear optics; norm is preserved.
 */
inline FockState apply(const ModeUnitary& gate, const FockState& state) {
    detail::check_same_registry(gate.registry(), state.registry());
    const Eigen::MatrixXcd& u = gate.matrix();
    const int modes = state.registry()->mode_count();
    FockState::AmplitudeMap result;
    for (const auto& [occ, amp] : state.amplitudes()) {
        // Monomial coefficient against prod_k (a^dag_k)^{n_k}.
        double occ_factorials = 1.0;
        for (int n : occ) occ_factorials *= detail::factorial(n);
        std::map<OccupationVector, Amplitude> terms;
        terms.emplace(OccupationVector(occ.size(), 0),
                      amp / std::sqrt(occ_factorials));
        for (int mode = 0; mode < modes; ++mode) {
            for (int photon = 0; photon < occ[mode]; ++photon) {
                std::map<OccupationVector, Amplitude> next;
                for (const auto& [partial, coeff] : terms) {
                    for (int j = 0; j < modes; ++j) {
                        const Amplitude element = u(j, mode);
                        if (element == Amplitude{0.0, 0.0}) continue;
                        OccupationVector raised = partial;
                        ++raised[j];
                        next[raised] += coeff * element;
                    }
                }
                terms = std::move(next);
            }
        }
        for (const auto& [out_occ, coeff] : terms) {
            double out_factorials = 1.0;
            for (int n : out_occ) out_factorials *= detail::factorial(n);
            result[out_occ] += coeff * std::sqrt(out_factorials);
        }
    }
    return FockState(state.registry(), std::move(result));
}

/// Gate composition: apply(compose(g1, g2), psi) = apply(g1, apply(g2, psi)).
/// Gates on the same DOF compose on that DOF; anything else yields a
/// general composite-mode unitary.
inline ModeUnitary compose(const ModeUnitary& g1, const ModeUnitary& g2) {
    detail::check_same_registry(g1.registry(), g2.registry());
    std::optional<std::string> target;
    if (g1.target_dof() && g2.target_dof() &&
        *g1.target_dof() == *g2.target_dof())
        target = g1.target_dof();
    return ModeUnitary(g1.registry(), std::move(target),
                       g1.matrix() * g2.matrix());
}

} // namespace mdp
