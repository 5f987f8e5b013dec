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
#include <vector>

#include "mdp/error.hpp"

namespace mdp {

/**
 * @brief Normalized Schmidt spectrum of a down-conversion pair in one DOF.
 *
 * Term i pairs label a_i on the photon in path u with label b_i on the
 * photon in path d, with positive real coefficient phi_i. The squared
 * coefficients sum to one; labels are distinct within each side.
 */
struct SchmidtSpec {
    std::vector<double> coefficients;
    std::vector<std::string> labels_a;
    std::vector<std::string> labels_b;

    SchmidtSpec(std::vector<double> coeffs, std::vector<std::string> la,
                std::vector<std::string> lb)
        : coefficients(std::move(coeffs)), labels_a(std::move(la)),
          labels_b(std::move(lb)) {
        validate();
    }

    int terms() const { return static_cast<int>(coefficients.size()); }

    void validate() const {
        detail::require(!coefficients.empty(), errc::invalid_spec,
                        "spec needs at least one term");
        detail::require(coefficients.size() == labels_a.size() &&
                            coefficients.size() == labels_b.size(),
                        errc::invalid_spec,
                        "coefficient and label counts differ");
        double sum_sq = 0.0;
        for (double c : coefficients) {
            detail::require(c > 0.0, errc::invalid_spec,
                            "coefficients must be positive");
            sum_sq += c * c;
        }
        detail::require(std::abs(sum_sq - 1.0) <= 1e-10, errc::invalid_spec,
                        "squared coefficients must sum to 1");
        for (std::size_t i = 0; i < coefficients.size(); ++i)
            for (std::size_t j = i + 1; j < coefficients.size(); ++j) {
                detail::require(labels_a[i] != labels_a[j], errc::invalid_spec,
                                "duplicate u-side label '" + labels_a[i] + "'");
                detail::require(labels_b[i] != labels_b[j], errc::invalid_spec,
                                "duplicate d-side label '" + labels_b[i] + "'");
            }
    }

    /// Single-term (product, unentangled) spec. Both photons carry the
    /// same label unless told otherwise.
    static SchmidtSpec trivial(std::string label_a = "s0",
                               std::string label_b = "") {
        if (label_b.empty()) label_b = label_a;
        return SchmidtSpec({1.0}, {std::move(label_a)}, {std::move(label_b)});
    }

    /// d equal terms with generated labels, paired diagonally; K = 1/d.
    static SchmidtSpec uniform(int terms, const std::string& prefix = "s") {
        detail::require(terms >= 1, errc::invalid_spec,
                        "need at least one term");
        std::vector<double> coeffs(terms, 1.0 / std::sqrt(terms));
        std::vector<std::string> labels;
        for (int i = 0; i < terms; ++i)
            labels.push_back(prefix + std::to_string(i));
        auto copy = labels;
        return SchmidtSpec(std::move(coeffs), std::move(labels),
                           std::move(copy));
    }
};

} // namespace mdp
