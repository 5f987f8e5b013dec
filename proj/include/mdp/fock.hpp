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
#include <complex>
#include <map>
#include <vector>

#include "mdp/error.hpp"
#include "mdp/registry.hpp"

namespace mdp {

using Amplitude = std::complex<double>;

namespace detail {
inline double factorial(int n) {
    double result = 1.0;
    for (int k = 2; k <= n; ++k) result *= k;
    return result;
}
} // namespace detail

/// Photon count per composite mode, dense over the registry's mode set.
using OccupationVector = std::vector<int>;

/// Amplitudes below this magnitude are dropped when states are assembled.
/// Well above double-precision accumulation noise at the photon numbers
/// handled here, well below any physical amplitude.
inline double& prune_tolerance() {
    static double tol = 1e-12;
    return tol;
}

inline void set_prune_tolerance(double tol) { prune_tolerance() = tol; }

/**
 * @brief Second-quantized few-photon state: a sparse complex amplitude map
 * over occupation vectors of composite modes.
 *
 * Amplitudes are stored against the normalized number basis
 * |n> = (a^dag)^n / sqrt(n!) |vac>. Values are immutable after
 * construction; every operation below is a pure function, so states are
 * safe to share across threads.
 */
class FockState {
  public:
    using AmplitudeMap = std::map<OccupationVector, Amplitude>;

    explicit FockState(RegistryPtr registry)
        : registry_(std::move(registry)) {
        detail::require(registry_ != nullptr, errc::invalid_spec,
                        "null registry");
    }

    FockState(RegistryPtr registry, AmplitudeMap amplitudes)
        : registry_(std::move(registry)) {
        detail::require(registry_ != nullptr, errc::invalid_spec,
                        "null registry");
        const std::size_t modes =
            static_cast<std::size_t>(registry_->mode_count());
        for (auto& [occ, amp] : amplitudes) {
            detail::require(occ.size() == modes, errc::invalid_mode,
                            "occupation vector length does not match registry");
            for (int n : occ)
                detail::require(n >= 0, errc::invalid_mode,
                                "negative occupation");
            detail::require(std::isfinite(amp.real()) &&
                                std::isfinite(amp.imag()),
                            errc::invalid_spec, "non-finite amplitude");
            if (std::abs(amp) >= prune_tolerance())
                amplitudes_.emplace(occ, amp);
        }
    }

    const RegistryPtr& registry() const { return registry_; }
    const AmplitudeMap& amplitudes() const { return amplitudes_; }
    bool is_zero() const { return amplitudes_.empty(); }

    Amplitude amplitude(const OccupationVector& occ) const {
        const auto it = amplitudes_.find(occ);
        return it == amplitudes_.end() ? Amplitude{0.0, 0.0} : it->second;
    }

    double norm_squared() const {
        double total = 0.0;
        for (const auto& [occ, amp] : amplitudes_) total += std::norm(amp);
        return total;
    }

    double norm() const { return std::sqrt(norm_squared()); }

    /// Total photon number if every stored occupation agrees on it.
    /// Throws MixedPhotonNumber otherwise, ZeroState when empty.
    int photon_number() const {
        detail::require(!amplitudes_.empty(), errc::zero_state,
                        "zero state has no photon number");
        int photons = -1;
        for (const auto& [occ, amp] : amplitudes_) {
            int total = 0;
            for (int n : occ) total += n;
            if (photons < 0) photons = total;
            detail::require(total == photons, errc::mixed_photon_number,
                            "state superposes different photon numbers");
        }
        return photons;
    }

  private:
    RegistryPtr registry_;
    AmplitudeMap amplitudes_;
};

/// |vac>: amplitude 1 on the all-zero occupation.
inline FockState vacuum(RegistryPtr registry) {
    detail::require(registry != nullptr, errc::invalid_spec, "null registry");
    FockState::AmplitudeMap amps;
    amps.emplace(OccupationVector(registry->mode_count(), 0),
                 Amplitude{1.0, 0.0});
    return FockState(std::move(registry), std::move(amps));
}

namespace detail {
inline void check_mode(const FockState& state, Mode mode) {
    require(mode.index >= 0 &&
                mode.index < state.registry()->mode_count(),
            errc::invalid_mode, "mode not in registry");
}
} // namespace detail

/// a^dag_mode: |n> -> sqrt(n_mode + 1) |n + 1_mode>, linearly over entries.
inline FockState apply_creation(const FockState& state, Mode mode) {
    detail::check_mode(state, mode);
    FockState::AmplitudeMap out;
    for (const auto& [occ, amp] : state.amplitudes()) {
        OccupationVector raised = occ;
        const int n = raised[mode.index]++;
        out[raised] += amp * std::sqrt(static_cast<double>(n + 1));
    }
    return FockState(state.registry(), std::move(out));
}

/// a_mode: |n> -> sqrt(n_mode) |n - 1_mode>; entries with n_mode = 0 vanish.
inline FockState apply_annihilation(const FockState& state, Mode mode) {
    detail::check_mode(state, mode);
    FockState::AmplitudeMap out;
    for (const auto& [occ, amp] : state.amplitudes()) {
        const int n = occ[mode.index];
        if (n == 0) continue;
        OccupationVector lowered = occ;
        --lowered[mode.index];
        out[lowered] += amp * std::sqrt(static_cast<double>(n));
    }
    return FockState(state.registry(), std::move(out));
}

/// <a|b>, conjugate-linear in the first argument.
inline Amplitude inner_product(const FockState& a, const FockState& b) {
    detail::check_same_registry(a.registry(), b.registry());
    Amplitude total{0.0, 0.0};
    const auto& small =
        a.amplitudes().size() <= b.amplitudes().size() ? a : b;
    const auto& large =
        a.amplitudes().size() <= b.amplitudes().size() ? b : a;
    for (const auto& [occ, amp] : small.amplitudes()) {
        const auto it = large.amplitudes().find(occ);
        if (it == large.amplitudes().end()) continue;
        if (&small == &a)
            total += std::conj(amp) * it->second;
        else
            total += std::conj(it->second) * amp;
    }
    return total;
}

inline FockState scale(const FockState& state, Amplitude factor) {
    FockState::AmplitudeMap out;
    for (const auto& [occ, amp] : state.amplitudes())
        out.emplace(occ, amp * factor);
    return FockState(state.registry(), std::move(out));
}

inline FockState add(const FockState& a, const FockState& b) {
    detail::check_same_registry(a.registry(), b.registry());
    FockState::AmplitudeMap out = a.amplitudes();
    for (const auto& [occ, amp] : b.amplitudes()) out[occ] += amp;
    return FockState(a.registry(), std::move(out));
}

inline FockState normalize(const FockState& state) {
    const double n = state.norm();
    detail::require(n > 0.0, errc::zero_state, "cannot normalize zero state");
    return scale(state, Amplitude{1.0 / n, 0.0});
}

} // namespace mdp
