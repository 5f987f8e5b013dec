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
#include <complex>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "mdp/error.hpp"
#include "mdp/fock.hpp"

namespace mdp {

/// An ordered N-tuple of composite modes: one slot per photon.
using SlotTuple = std::vector<int>;

/**
 * @brief First-quantized N-photon amplitude tensor over single-photon
 * labels.
 *
 * Stores every ordering of every occupied tuple explicitly; a bosonic
 * tensor is invariant under any permutation of the slots. This N!
 * redundancy keeps the representation directly auditable and is cheap at
 * the photon numbers handled here. The correspondence with the Fock
 * representation (fock_to_sym / sym_to_fock) is unitary.
 */
class SymTensor {
  public:
    using AmplitudeMap = std::map<SlotTuple, Amplitude>;

    SymTensor(RegistryPtr registry, int photons, AmplitudeMap amplitudes)
        : registry_(std::move(registry)), photons_(photons) {
        detail::require(registry_ != nullptr, errc::invalid_spec,
                        "null registry");
        detail::require(photons_ >= 1, errc::bad_photon_number,
                        "slot representation needs at least one photon");
        const int modes = registry_->mode_count();
        for (auto& [slots, amp] : amplitudes) {
            detail::require(static_cast<int>(slots.size()) == photons_,
                            errc::bad_photon_number,
                            "tuple length does not match photon count");
            for (int m : slots)
                detail::require(m >= 0 && m < modes, errc::invalid_mode,
                                "slot mode not in registry");
            if (std::abs(amp) >= prune_tolerance())
                amplitudes_.emplace(slots, amp);
        }
    }

    const RegistryPtr& registry() const { return registry_; }
    int photons() const { return photons_; }
    const AmplitudeMap& amplitudes() const { return amplitudes_; }

    Amplitude amplitude(const SlotTuple& slots) const {
        const auto it = amplitudes_.find(slots);
        return it == amplitudes_.end() ? Amplitude{0.0, 0.0} : it->second;
    }

    double norm_squared() const {
        double total = 0.0;
        for (const auto& [slots, amp] : amplitudes_) total += std::norm(amp);
        return total;
    }

    /// Largest deviation from permutation symmetry over the support.
    double max_asymmetry() const {
        double worst = 0.0;
        for (const auto& [slots, amp] : amplitudes_) {
            SlotTuple sorted = slots;
            std::sort(sorted.begin(), sorted.end());
            worst = std::max(worst, std::abs(amp - amplitude(sorted)));
        }
        return worst;
    }

    bool is_symmetric(double tol) const { return max_asymmetry() <= tol; }

  private:
    RegistryPtr registry_;
    int photons_ = 0;
    AmplitudeMap amplitudes_;
};

inline Amplitude inner_product(const SymTensor& a, const SymTensor& b) {
    detail::check_same_registry(a.registry(), b.registry());
    detail::require(a.photons() == b.photons(), errc::bad_photon_number,
                    "photon numbers differ");
    Amplitude total{0.0, 0.0};
    for (const auto& [slots, amp] : a.amplitudes()) {
        const auto it = b.amplitudes().find(slots);
        if (it != b.amplitudes().end())
            total += std::conj(amp) * it->second;
    }
    return total;
}

/**
 * Symmetrized product of N single-photon kets:
 * (1/sqrt(N!)) * sum over all orderings of ket_1 ... ket_N.
 * Each ket is a complex vector over the registry's composite modes.
 * N identical kets reproduce the sqrt(N!) bunching weight.
 */
inline SymTensor symmetrize_product(RegistryPtr registry,
                                    const std::vector<Eigen::VectorXcd>& kets) {
    detail::require(registry != nullptr, errc::invalid_spec, "null registry");
    const int photons = static_cast<int>(kets.size());
    detail::require(photons >= 1, errc::bad_photon_number,
                    "need at least one ket");
    const int modes = registry->mode_count();
    std::vector<std::vector<int>> supports(photons);
    for (int p = 0; p < photons; ++p) {
        detail::require(kets[p].size() == modes, errc::dimension_mismatch,
                        "ket length does not match registry mode count");
        for (int m = 0; m < modes; ++m)
            if (std::abs(kets[p][m]) > 0.0) supports[p].push_back(m);
        detail::require(!supports[p].empty(), errc::zero_ket,
                        "zero single-photon ket");
    }

    const double weight = 1.0 / std::sqrt(detail::factorial(photons));
    std::vector<int> order(photons);
    std::iota(order.begin(), order.end(), 0);
    SymTensor::AmplitudeMap amps;
    do {
        // Cartesian walk over the supports of the kets in this ordering.
        SlotTuple slots(photons);
        std::vector<std::size_t> cursor(photons, 0);
        while (true) {
            Amplitude term{weight, 0.0};
            for (int p = 0; p < photons; ++p) {
                slots[p] = supports[order[p]][cursor[p]];
                term *= kets[order[p]][slots[p]];
            }
            amps[slots] += term;
            int p = photons - 1;
            while (p >= 0 && ++cursor[p] == supports[order[p]].size())
                cursor[p--] = 0;
            if (p < 0) break;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return SymTensor(std::move(registry), photons, std::move(amps));
}

/**
 * Fock to slot representation. The tuple amplitude for occupation n is
 * c_n * sqrt(prod n_k!) / sqrt(N!), replicated over all distinct
 * orderings. Requires a definite total photon number; inner products are
 * preserved.
 */
inline SymTensor fock_to_sym(const FockState& state) {
    const int photons = state.photon_number();
    detail::require(photons >= 1, errc::bad_photon_number,
                    "slot representation needs at least one photon");
    SymTensor::AmplitudeMap amps;
    const double root_total = std::sqrt(detail::factorial(photons));
    for (const auto& [occ, amp] : state.amplitudes()) {
        SlotTuple sorted;
        double occ_factorials = 1.0;
        for (std::size_t m = 0; m < occ.size(); ++m) {
            occ_factorials *= detail::factorial(occ[m]);
            for (int k = 0; k < occ[m]; ++k)
                sorted.push_back(static_cast<int>(m));
        }
        const Amplitude slot_amp =
            amp * std::sqrt(occ_factorials) / root_total;
        SlotTuple slots = sorted;
        do {
            amps[slots] = slot_amp;
        } while (std::next_permutation(slots.begin(), slots.end()));
    }
    return SymTensor(state.registry(), photons, std::move(amps));
}

/**
 * Slot to Fock representation, the exact inverse of fock_to_sym.
 * The input must be permutation symmetric within @p symmetry_tol;
 * antisymmetric content is outside the bosonic Fock space and is
 * rejected.
 */
inline FockState sym_to_fock(const SymTensor& tensor,
                             double symmetry_tol = 1e-9) {
    detail::require(tensor.is_symmetric(symmetry_tol), errc::not_symmetric,
                    "tensor is not permutation symmetric");
    const int photons = tensor.photons();
    const double root_total = std::sqrt(detail::factorial(photons));
    FockState::AmplitudeMap amps;
    for (const auto& [slots, amp] : tensor.amplitudes()) {
        SlotTuple sorted = slots;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != slots) continue; // one representative per multiset
        OccupationVector occ(tensor.registry()->mode_count(), 0);
        for (int m : sorted) ++occ[m];
        double occ_factorials = 1.0;
        for (int n : occ) occ_factorials *= detail::factorial(n);
        amps[occ] = amp * root_total / std::sqrt(occ_factorials);
    }
    return FockState(tensor.registry(), std::move(amps));
}

/// Symmetric/antisymmetric split of a two-photon amplitude matrix:
/// (phi + phi^T)/2 and (phi - phi^T)/2. The parts sum back to phi.
inline std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>
symmetry_split(const Eigen::MatrixXcd& phi) {
    detail::require(phi.rows() == phi.cols(), errc::non_square,
                    "amplitude matrix must be square");
    const Eigen::MatrixXcd sym = (phi + phi.transpose()) / 2.0;
    const Eigen::MatrixXcd antisym = (phi - phi.transpose()) / 2.0;
    return {sym, antisym};
}

} // namespace mdp
