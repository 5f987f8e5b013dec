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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mdp/error.hpp"
#include "mdp/fock.hpp"
#include "mdp/gates.hpp"
#include "mdp/sym.hpp"

namespace mdp {

/**
 * @brief Two-photon input amplitudes phi[a1][a2]: the amplitude of
 * creating a photon with label a1 in path u and one with label a2 in
 * path d. The induced state is normalized on construction.
 */
struct TwoPhotonKernel {
    std::vector<std::string> labels;
    Eigen::MatrixXcd phi;
    std::string dof_name = "pol";

    TwoPhotonKernel(std::vector<std::string> labels_in, Eigen::MatrixXcd phi_in,
                    std::string dof = "pol")
        : labels(std::move(labels_in)), phi(std::move(phi_in)),
          dof_name(std::move(dof)) {
        detail::require(phi.rows() == phi.cols(), errc::non_square,
                        "kernel matrix must be square");
        detail::require(static_cast<Eigen::Index>(labels.size()) == phi.rows(),
                        errc::dimension_mismatch,
                        "label count must match kernel dimension");
        detail::require(phi.allFinite(), errc::invalid_spec,
                        "kernel entries must be finite");
        detail::require(phi.norm() > 0.0, errc::zero_kernel,
                        "kernel must not be all-zero");
    }

    int dimension() const { return static_cast<int>(phi.rows()); }
};

/// The four polarization Bell states as HOM kernels over labels {H, V}.
enum class BellState { phi_plus, phi_minus, psi_plus, psi_minus };

inline TwoPhotonKernel bell_kernel(BellState which) {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(2, 2);
    switch (which) {
    case BellState::phi_plus: phi(0, 0) = r; phi(1, 1) = r; break;
    case BellState::phi_minus: phi(0, 0) = r; phi(1, 1) = -r; break;
    case BellState::psi_plus: phi(0, 1) = r; phi(1, 0) = r; break;
    case BellState::psi_minus: phi(0, 1) = r; phi(1, 0) = -r; break;
    }
    return TwoPhotonKernel({"H", "V"}, std::move(phi));
}

inline RegistryPtr hom_registry(const TwoPhotonKernel& kernel) {
    return make_registry(
        {{kernel.dof_name, kernel.labels}, {"path", {"u", "d"}}});
}

/// Normalized two-photon state
/// sum phi(a1, a2) a^dag(a1, u) a^dag(a2, d) |vac>.
inline FockState build_input(const TwoPhotonKernel& kernel) {
    auto registry = hom_registry(kernel);
    const int d = kernel.dimension();
    FockState::AmplitudeMap amps;
    for (int a1 = 0; a1 < d; ++a1) {
        for (int a2 = 0; a2 < d; ++a2) {
            const Amplitude c = kernel.phi(a1, a2);
            if (c == Amplitude{0.0, 0.0}) continue;
            OccupationVector occ(registry->mode_count(), 0);
            ++occ[a1 * 2 + 0]; // (a1, u)
            ++occ[a2 * 2 + 1]; // (a2, d)
            amps[occ] += c;
        }
    }
    return normalize(FockState(std::move(registry), std::move(amps)));
}

/// Output statistics of a two-photon state by path occupancy:
/// both photons in u, both in d, or one in each (the coincidence event,
/// with unit-efficiency number-resolving detection).
struct OutcomeDistribution {
    double p_uu = 0.0;
    double p_dd = 0.0;
    double p_ud = 0.0;

    double total() const { return p_uu + p_dd + p_ud; }
};

inline OutcomeDistribution classify_paths(const FockState& state) {
    const auto& registry = *state.registry();
    const int dpath = registry.dof_index("path");
    detail::require(state.photon_number() == 2, errc::bad_photon_number,
                    "path statistics need a two-photon state");
    OutcomeDistribution dist;
    for (const auto& [occ, amp] : state.amplitudes()) {
        int in_u = 0;
        for (std::size_t m = 0; m < occ.size(); ++m)
            if (registry.mode_component(static_cast<int>(m), dpath) == 0)
                in_u += occ[m];
        const double p = std::norm(amp);
        if (in_u == 2)
            dist.p_uu += p;
        else if (in_u == 0)
            dist.p_dd += p;
        else
            dist.p_ud += p;
    }
    detail::require(std::abs(dist.total() - 1.0) <= 1e-12,
                    errc::invalid_spec,
                    "outcome probabilities do not sum to 1");
    return dist;
}

/// Sends the kernel's state through a beamsplitter of reflectivity R and
/// tabulates the output path statistics.
inline OutcomeDistribution run_hom(const TwoPhotonKernel& kernel,
                                   double reflectivity) {
    const FockState input = build_input(kernel);
    const ModeUnitary bs = beamsplitter(input.registry(), reflectivity);
    return classify_paths(apply(bs, normalize(input)));
}

struct ScanPoint {
    double lambda = 0.0;
    OutcomeDistribution outcome;
};

/**
 * Sweeps the symmetric/antisymmetric mixture of the kernel:
 * kernel(lambda) = normalize(lambda * sym + (1 - lambda) * antisym),
 * where sym and antisym are the exchange-symmetric and -antisymmetric
 * parts of phi. lambda = 1 is the fully bunching input, lambda = 0 the
 * fully anti-bunching one. A kernel with a vanishing part yields a
 * constant family (there is nothing to interpolate toward).
 */
inline std::vector<ScanPoint> hom_scan(const TwoPhotonKernel& kernel,
                                       std::span<const double> lambdas,
                                       double reflectivity) {
    detail::require(!lambdas.empty(), errc::invalid_spec,
                    "lambda grid must not be empty");
    const auto [sym, antisym] = symmetry_split(kernel.phi);
    const double sym_norm = sym.norm();
    const double anti_norm = antisym.norm();
    std::vector<ScanPoint> points;
    points.reserve(lambdas.size());
    for (double lambda : lambdas) {
        Eigen::MatrixXcd blend = lambda * sym + (1.0 - lambda) * antisym;
        if (blend.norm() <= 1e-15 * kernel.phi.norm())
            blend = sym_norm > anti_norm ? sym : antisym;
        const TwoPhotonKernel blended(kernel.labels, blend, kernel.dof_name);
        points.push_back({lambda, run_hom(blended, reflectivity)});
    }
    return points;
}

/// Signature probabilities of the partial Bell discrimination: after a
/// symmetric beamsplitter only the singlet produces a coincidence; the
/// three triplets bunch.
struct BellSignature {
    double singlet = 0.0; // coincidence probability
    double triplet = 0.0; // bunching probability
};

inline BellSignature bell_discriminate(const FockState& state) {
    const auto& registry = *state.registry();
    const int dpath = registry.dof_index("path");
    detail::require(state.photon_number() == 2, errc::bad_photon_number,
                    "discrimination needs a two-photon state");
    for (const auto& [occ, amp] : state.amplitudes()) {
        int in_u = 0;
        for (std::size_t m = 0; m < occ.size(); ++m)
            if (registry.mode_component(static_cast<int>(m), dpath) == 0)
                in_u += occ[m];
        detail::require(in_u == 1, errc::bad_photon_number,
                        "input must carry one photon per path");
    }
    const ModeUnitary bs = beamsplitter(state.registry(), 0.5);
    const OutcomeDistribution dist = classify_paths(apply(bs, state));
    return BellSignature{dist.p_ud, dist.p_uu + dist.p_dd};
}

/**
 * |<Psi-| U-on-polarization |Psi->|^2. The singlet is the only state of
 * the antisymmetric subspace, so this equals 1 for every unitary U.
 */
inline double singlet_invariance(const Eigen::Matrix2cd& u) {
    const TwoPhotonKernel singlet = bell_kernel(BellState::psi_minus);
    const FockState psi = build_input(singlet);
    const ModeUnitary gate =
        dof_unitary(psi.registry(), singlet.dof_name, u); // checks unitarity
    const Amplitude overlap = inner_product(psi, apply(gate, psi));
    return std::norm(overlap);
}

} // namespace mdp
