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

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "mdp/error.hpp"
#include "mdp/fock.hpp"

namespace mdp {

/**
 * @brief Hermitian, positive-semidefinite, unit-trace operator over an
 * explicit finite basis of labeled states.
 *
 * Construction checks Hermiticity (1e-10) and unit trace (1e-10).
 * Eigenvalues down to -1e-10 are accepted as positive-semidefinite;
 * tiny negatives are rounding artifacts of partial traces.
 */
class DensityMatrix {
  public:
    DensityMatrix(std::vector<std::string> basis, Eigen::MatrixXcd matrix)
        : basis_(std::move(basis)), matrix_(std::move(matrix)) {
        const auto n = static_cast<Eigen::Index>(basis_.size());
        detail::require(n > 0, errc::invalid_spec, "empty basis");
        detail::require(matrix_.rows() == n && matrix_.cols() == n,
                        errc::dimension_mismatch,
                        "matrix does not match basis size");
        detail::require(
            (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= 1e-10,
            errc::invalid_spec, "matrix is not Hermitian within 1e-10");
        detail::require(std::abs(matrix_.trace() - Amplitude{1.0, 0.0}) <=
                            1e-10,
                        errc::invalid_spec, "trace is not 1 within 1e-10");
    }

    const std::vector<std::string>& basis() const { return basis_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    int dimension() const { return static_cast<int>(basis_.size()); }

    /// Entry by basis labels; absent labels read as zero.
    Amplitude entry(const std::string& row, const std::string& col) const {
        const int r = find_label(row);
        const int c = find_label(col);
        if (r < 0 || c < 0) return {0.0, 0.0};
        return matrix_(r, c);
    }

    /// Real eigenvalues in ascending order.
    Eigen::VectorXd eigenvalues() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
            matrix_, Eigen::EigenvaluesOnly);
        return solver.eigenvalues();
    }

    bool is_positive_semidefinite(double tol = 1e-10) const {
        return eigenvalues().minCoeff() >= -tol;
    }

  private:
    int find_label(const std::string& label) const {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] == label) return static_cast<int>(i);
        return -1;
    }

    std::vector<std::string> basis_;
    Eigen::MatrixXcd matrix_;
};

/// tr(rho^2); 1 for pure states, 1/dim for maximally mixed. Equals the
/// squared Frobenius norm since rho is Hermitian.
inline double purity(const DensityMatrix& rho) {
    return rho.matrix().squaredNorm();
}

} // namespace mdp
