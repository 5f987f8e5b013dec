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
#include <random>
#include <string>

#include <Eigen/Dense>

#include "mdp/schmidt.hpp"

namespace mdp {

/// Haar-distributed random unitary: QR of a complex Gaussian matrix with
/// the R diagonal phases absorbed into Q.
template <typename Rng>
Eigen::MatrixXcd random_unitary(Rng& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd z(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            z(r, c) = Amplitude{gauss(rng), gauss(rng)};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < dim; ++c) {
        const Amplitude d = r(c, c);
        if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
    }
    return q;
}

/// Random normalized Schmidt spectrum with the given number of terms,
/// coefficients bounded away from zero, labels paired diagonally.
template <typename Rng>
SchmidtSpec random_schmidt_spec(Rng& rng, int terms,
                                const std::string& prefix = "s") {
    std::uniform_real_distribution<double> uniform(0.15, 1.0);
    std::vector<double> coeffs(terms);
    double sum_sq = 0.0;
    for (double& c : coeffs) {
        c = uniform(rng);
        sum_sq += c * c;
    }
    for (double& c : coeffs) c /= std::sqrt(sum_sq);
    std::vector<std::string> labels;
    for (int i = 0; i < terms; ++i)
        labels.push_back(prefix + std::to_string(i));
    auto copy = labels;
    return SchmidtSpec(std::move(coeffs), std::move(labels),
                       std::move(copy));
}

} // namespace mdp
