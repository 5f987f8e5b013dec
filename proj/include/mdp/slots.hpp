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

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mdp/error.hpp"
#include "mdp/sym.hpp"

namespace mdp {

/**
 * @brief Four-photon amplitudes with the photon slots fixed to path order
 * (u, u, d, d).
 *
 * Photons in different paths never meet, so the permutation symmetry
 * between paths can be dropped and one slot ordering kept. Each slot
 * carries a combined label l = iA * dim_b + iB over the two non-path DOF.
 * Amplitudes are normalized to unit norm; exchange symmetry within the
 * u pair and within the d pair is inherited from the source state.
 */
struct PathBlock {
    int dim_a = 0;
    int dim_b = 0;
    std::vector<std::string> labels_a;
    std::vector<std::string> labels_b;
    std::map<std::array<int, 4>, Amplitude> amps;

    int label_of(int slot_label, bool first_dof) const {
        return first_dof ? slot_label / dim_b : slot_label % dim_b;
    }
};

/**
 * Extracts the (u,u,d,d) slot block of a four-photon state with exactly
 * two photons per path. Throws BadSector for any other photon-number
 * distribution.
 */
inline PathBlock extract_uudd_block(const FockState& state,
                                    std::string_view dof_a = "A",
                                    std::string_view dof_b = "B") {
    const auto& registry = *state.registry();
    const int da = registry.dof_index(dof_a);
    const int db = registry.dof_index(dof_b);
    const int dpath = registry.dof_index("path");
    detail::require(registry.dof_dimension(dpath) == 2, errc::no_path_dof,
                    "path DOF must be 2-dimensional");
    detail::require(!state.is_zero(), errc::zero_state, "zero state");

    for (const auto& [occ, amp] : state.amplitudes()) {
        int in_u = 0, in_d = 0;
        for (std::size_t m = 0; m < occ.size(); ++m) {
            const int p = registry.mode_component(static_cast<int>(m), dpath);
            (p == 0 ? in_u : in_d) += occ[m];
        }
        detail::require(in_u == 2 && in_d == 2, errc::bad_sector,
                        "state is not in the 2-photons-per-path sector");
    }

    PathBlock block;
    block.dim_a = registry.dof_dimension(da);
    block.dim_b = registry.dof_dimension(db);
    block.labels_a = registry.dof(da).basis;
    block.labels_b = registry.dof(db).basis;

    const SymTensor tensor = fock_to_sym(state);
    double norm_sq = 0.0;
    for (const auto& [slots, amp] : tensor.amplitudes()) {
        const bool path_sorted =
            registry.mode_component(slots[0], dpath) == 0 &&
            registry.mode_component(slots[1], dpath) == 0 &&
            registry.mode_component(slots[2], dpath) == 1 &&
            registry.mode_component(slots[3], dpath) == 1;
        if (!path_sorted) continue;
        std::array<int, 4> key{};
        for (int s = 0; s < 4; ++s)
            key[s] = registry.mode_component(slots[s], da) * block.dim_b +
                     registry.mode_component(slots[s], db);
        block.amps[key] = amp;
        norm_sq += std::norm(amp);
    }
    detail::require(norm_sq > 0.0, errc::bad_sector, "empty path block");
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& [key, amp] : block.amps) amp *= scale;
    return block;
}

/**
 * @brief Four-slot amplitude vector over the labels of a single DOF —
 * one factor of a block when the two non-path DOF decouple.
 */
struct DofFactor {
    int dim = 0;
    Eigen::VectorXcd amps; // size dim^4

    static int index(int dim, int l1, int l2, int l3, int l4) {
        return ((l1 * dim + l2) * dim + l3) * dim + l4;
    }

    double norm() const { return amps.norm(); }

    DofFactor normalized() const {
        DofFactor out{dim, amps / amps.norm()};
        return out;
    }
};

inline Amplitude inner_product(const DofFactor& a, const DofFactor& b) {
    detail::require(a.dim == b.dim, errc::dimension_mismatch,
                    "factor dimensions differ");
    return a.amps.dot(b.amps); // Eigen dot conjugates the left operand
}

/// <factor_a (x) factor_b | block>
inline Amplitude project_onto_product(const PathBlock& block,
                                      const DofFactor& factor_a,
                                      const DofFactor& factor_b) {
    detail::require(factor_a.dim == block.dim_a &&
                        factor_b.dim == block.dim_b,
                    errc::dimension_mismatch,
                    "factor dimensions do not match block");
    Amplitude total{0.0, 0.0};
    for (const auto& [key, amp] : block.amps) {
        const int ia = DofFactor::index(
            block.dim_a, block.label_of(key[0], true),
            block.label_of(key[1], true), block.label_of(key[2], true),
            block.label_of(key[3], true));
        const int ib = DofFactor::index(
            block.dim_b, block.label_of(key[0], false),
            block.label_of(key[1], false), block.label_of(key[2], false),
            block.label_of(key[3], false));
        total += std::conj(factor_a.amps[ia] * factor_b.amps[ib]) * amp;
    }
    return total;
}

/// Readable name of a slot 4-tuple over one DOF, e.g. "H,V|H,V"
/// (u-pair | d-pair).
inline std::string slot_tuple_name(const std::vector<std::string>& labels,
                                   const std::array<int, 4>& tuple) {
    return labels[tuple[0]] + "," + labels[tuple[1]] + "|" + labels[tuple[2]] +
           "," + labels[tuple[3]];
}

} // namespace mdp
