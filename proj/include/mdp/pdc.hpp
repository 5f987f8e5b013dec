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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mdp/density.hpp"
#include "mdp/error.hpp"
#include "mdp/fock.hpp"
#include "mdp/metrics.hpp"
#include "mdp/schmidt.hpp"
#include "mdp/slots.hpp"

namespace mdp {

/// Down-conversion source parameters: pump amplitude, one Schmidt
/// spectrum per DOF, and the truncation order of the emitted series
/// (0 = vacuum, 1 = two-photon, 2 = four-photon).
struct PdcConfig {
    Amplitude eta;
    SchmidtSpec spec_a;
    SchmidtSpec spec_b;
    int max_order = 2;

    /// Pump amplitudes with |eta|^2 above 0.3 are outside the weak-pump
    /// regime the truncated series is meant for.
    bool eta_is_large() const { return std::norm(eta) > 0.3; }
};

namespace detail {
inline std::vector<std::string>
merge_labels(const std::vector<std::string>& a,
             const std::vector<std::string>& b) {
    std::vector<std::string> merged = a;
    for (const auto& label : b)
        if (std::find(merged.begin(), merged.end(), label) == merged.end())
            merged.push_back(label);
    return merged;
}
} // namespace detail

/// Registry for a two-DOF non-collinear source: DOF "A" and "B" carry the
/// union of each spec's u-side and d-side labels; DOF "path" is {u, d}.
inline RegistryPtr pdc_registry(const SchmidtSpec& spec_a,
                                const SchmidtSpec& spec_b) {
    return make_registry(
        {{"A", detail::merge_labels(spec_a.labels_a, spec_a.labels_b)},
         {"B", detail::merge_labels(spec_b.labels_a, spec_b.labels_b)},
         {"path", {"u", "d"}}});
}

namespace detail {
struct PairTerm {
    int mode_u = 0;
    int mode_d = 0;
    double coefficient = 0.0;
};

/// Terms of the pair-creation polynomial sum_ij phi_i phi_j
/// a^dag_u(a_i, alpha_j) a^dag_d(b_i, beta_j).
inline std::vector<PairTerm> pair_terms(const DofRegistry& registry,
                                        const SchmidtSpec& spec_a,
                                        const SchmidtSpec& spec_b) {
    const int dof_a = registry.dof_index("A");
    const int dof_b = registry.dof_index("B");
    std::vector<PairTerm> terms;
    terms.reserve(static_cast<std::size_t>(spec_a.terms()) * spec_b.terms());
    for (int i = 0; i < spec_a.terms(); ++i) {
        for (int j = 0; j < spec_b.terms(); ++j) {
            PairTerm term;
            term.coefficient =
                spec_a.coefficients[i] * spec_b.coefficients[j];
            term.mode_u = registry.mode_index(std::vector<int>{
                registry.label_index(dof_a, spec_a.labels_a[i]),
                registry.label_index(dof_b, spec_b.labels_a[j]), 0});
            term.mode_d = registry.mode_index(std::vector<int>{
                registry.label_index(dof_a, spec_a.labels_b[i]),
                registry.label_index(dof_b, spec_b.labels_b[j]), 1});
            terms.push_back(term);
        }
    }
    return terms;
}
} // namespace detail

/**
 * Two-photon state of the source, one photon per path:
 * sum_ij phi(a_i, b_i) phi(alpha_j, beta_j)
 *        a^dag_u(a_i, alpha_j) a^dag_d(b_i, beta_j) |vac>.
 * Unit norm by the spec normalizations; there is no entanglement between
 * the two DOF at this order.
 */
inline FockState two_photon(const SchmidtSpec& spec_a,
                            const SchmidtSpec& spec_b) {
    auto registry = pdc_registry(spec_a, spec_b);
    const auto terms = detail::pair_terms(*registry, spec_a, spec_b);
    FockState::AmplitudeMap amps;
    const auto modes = static_cast<std::size_t>(registry->mode_count());
    for (const auto& term : terms) {
        OccupationVector occ(modes, 0);
        ++occ[term.mode_u];
        ++occ[term.mode_d];
        amps[occ] += Amplitude{term.coefficient, 0.0};
    }
    return normalize(FockState(std::move(registry), std::move(amps)));
}

/**
 * Second-order term of the source series, (1/2) (pair polynomial)^2 |vac>,
 * kept with its natural norm sqrt((1 + K_A K_B) / 2). This is the weight
 * the four-photon component carries relative to the squared two-photon
 * amplitude, which is what photon-counting rates see.
 */
inline FockState four_photon_term(const SchmidtSpec& spec_a,
                                  const SchmidtSpec& spec_b) {
    auto registry = pdc_registry(spec_a, spec_b);
    const auto terms = detail::pair_terms(*registry, spec_a, spec_b);
    FockState::AmplitudeMap amps;
    const auto modes = static_cast<std::size_t>(registry->mode_count());
    for (const auto& t1 : terms) {
        for (const auto& t2 : terms) {
            OccupationVector occ(modes, 0);
            ++occ[t1.mode_u];
            ++occ[t1.mode_d];
            ++occ[t2.mode_u];
            ++occ[t2.mode_d];
            // Amplitude of a creation monomial against the normalized
            // number basis is sqrt(prod n_m!).
            double weight = 1.0;
            for (int n : occ)
                if (n > 1) weight *= detail::factorial(n);
            amps[occ] += Amplitude{
                0.5 * t1.coefficient * t2.coefficient * std::sqrt(weight),
                0.0};
        }
    }
    return FockState(std::move(registry), std::move(amps));
}

/// Normalized four-photon state (two photons per path).
inline FockState four_photon(const SchmidtSpec& spec_a,
                             const SchmidtSpec& spec_b) {
    return normalize(four_photon_term(spec_a, spec_b));
}

/**
 * The (u,u,d,d) slot block of the normalized four-photon state, built
 * directly in the slot representation: each ordered pair of pair-terms
 * spreads over the two exchange orders within each path. Equal to
 * extract_uudd_block(four_photon(spec_a, spec_b)) but stays tractable
 * for the large Schmidt spectra that small K values require.
 */
inline PathBlock four_photon_block(const SchmidtSpec& spec_a,
                                   const SchmidtSpec& spec_b) {
    PathBlock block;
    block.labels_a = detail::merge_labels(spec_a.labels_a, spec_a.labels_b);
    block.labels_b = detail::merge_labels(spec_b.labels_a, spec_b.labels_b);
    block.dim_a = static_cast<int>(block.labels_a.size());
    block.dim_b = static_cast<int>(block.labels_b.size());
    auto index_in = [](const std::vector<std::string>& space,
                       const std::string& label) {
        for (std::size_t i = 0; i < space.size(); ++i)
            if (space[i] == label) return static_cast<int>(i);
        detail::fail(errc::invalid_spec, "label missing from label space");
    };

    struct SlotPair {
        int u = 0, d = 0;
        double coefficient = 0.0;
    };
    std::vector<SlotPair> terms;
    terms.reserve(static_cast<std::size_t>(spec_a.terms()) * spec_b.terms());
    for (int i = 0; i < spec_a.terms(); ++i)
        for (int j = 0; j < spec_b.terms(); ++j)
            terms.push_back(
                {index_in(block.labels_a, spec_a.labels_a[i]) * block.dim_b +
                     index_in(block.labels_b, spec_b.labels_a[j]),
                 index_in(block.labels_a, spec_a.labels_b[i]) * block.dim_b +
                     index_in(block.labels_b, spec_b.labels_b[j]),
                 spec_a.coefficients[i] * spec_b.coefficients[j]});

    for (const auto& t1 : terms) {
        for (const auto& t2 : terms) {
            const double w = t1.coefficient * t2.coefficient / 4.0;
            for (const auto& [u1, u2] :
                 {std::pair{t1.u, t2.u}, std::pair{t2.u, t1.u}})
                for (const auto& [d1, d2] :
                     {std::pair{t1.d, t2.d}, std::pair{t2.d, t1.d}})
                    block.amps[{u1, u2, d1, d2}] += w;
        }
    }
    double norm_sq = 0.0;
    for (const auto& [key, amp] : block.amps) norm_sq += std::norm(amp);
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& [key, amp] : block.amps) amp *= scale;
    return block;
}

/**
 * Truncated source series
 *   (1 - eta^2/2) |vac> + eta |Phi_2> + eta^2 |Phi_4> + ...
 * cut at config.max_order. The truncation of a normalized series is NOT
 * renormalized; |Phi_4> carries its natural norm (see four_photon_term).
 */
inline FockState pdc_series(const PdcConfig& config) {
    detail::require(config.max_order >= 0 && config.max_order <= 2,
                    errc::invalid_spec, "max_order must be 0, 1 or 2");
    auto registry = pdc_registry(config.spec_a, config.spec_b);
    const Amplitude eta = config.eta;
    const Amplitude eta_sq = eta * eta;
    FockState series =
        scale(vacuum(registry), Amplitude{1.0, 0.0} - eta_sq / 2.0);
    if (config.max_order >= 1 && eta != Amplitude{0.0, 0.0})
        series = add(series,
                     scale(two_photon(config.spec_a, config.spec_b), eta));
    if (config.max_order >= 2 && eta != Amplitude{0.0, 0.0})
        series = add(series, scale(four_photon_term(config.spec_a,
                                                    config.spec_b),
                                   eta_sq));
    return series;
}

/**
 * @brief The orthonormal per-DOF component states of the four-photon
 * decomposition, as four-slot factors with slots ordered (u,u,d,d).
 *
 * a1/b1 collect the doubly-converted Schmidt terms, a2/b2 the symmetric
 * and a3/b3 the antisymmetric cross terms; the latter exist only for
 * specs with at least two terms. a12/b12 are the normalized symmetric
 * combinations sqrt(K)|1> + sqrt((1-K)/2)|2>, all over sqrt((1+K)/2);
 * they reduce to a1/b1 for single-term specs.
 */
struct PdcBasisStates {
    DofFactor a1, b1;
    std::optional<DofFactor> a2, b2, a3, b3;
    DofFactor a12, b12;
};

namespace detail {
struct SideBasis {
    DofFactor one, twelve;
    std::optional<DofFactor> two, three;
};

inline SideBasis side_basis(const SchmidtSpec& spec,
                            const std::vector<std::string>& label_space) {
    const int dim = static_cast<int>(label_space.size());
    auto index_of = [&](const std::string& label) {
        for (int i = 0; i < dim; ++i)
            if (label_space[i] == label) return i;
        fail(errc::invalid_spec, "label missing from label space");
    };
    std::vector<int> iu(spec.terms()), id(spec.terms());
    for (int i = 0; i < spec.terms(); ++i) {
        iu[i] = index_of(spec.labels_a[i]);
        id[i] = index_of(spec.labels_b[i]);
    }
    const double k = k_coefficient(spec);

    SideBasis out;
    out.one.dim = dim;
    out.one.amps = Eigen::VectorXcd::Zero(dim * dim * dim * dim);
    for (int i = 0; i < spec.terms(); ++i) {
        const double phi_sq =
            spec.coefficients[i] * spec.coefficients[i];
        out.one.amps[DofFactor::index(dim, iu[i], iu[i], id[i], id[i])] +=
            phi_sq / std::sqrt(k);
    }

    if (spec.terms() >= 2) {
        DofFactor two{dim, Eigen::VectorXcd::Zero(dim * dim * dim * dim)};
        DofFactor three{dim, Eigen::VectorXcd::Zero(dim * dim * dim * dim)};
        const double norm = std::sqrt((1.0 - k) / 2.0);
        for (int i = 0; i < spec.terms(); ++i) {
            for (int m = i + 1; m < spec.terms(); ++m) {
                const double w = spec.coefficients[i] *
                                 spec.coefficients[m] / norm / 2.0;
                // (|i,m> + |m,i>)_u (|i,m> + |m,i>)_d / 2 and the
                // antisymmetric counterpart with relative minus signs.
                const int combos[4][4] = {
                    {iu[i], iu[m], id[i], id[m]},
                    {iu[i], iu[m], id[m], id[i]},
                    {iu[m], iu[i], id[i], id[m]},
                    {iu[m], iu[i], id[m], id[i]}};
                const double sign[4] = {1.0, -1.0, -1.0, 1.0};
                for (int c = 0; c < 4; ++c) {
                    const int idx =
                        DofFactor::index(dim, combos[c][0], combos[c][1],
                                         combos[c][2], combos[c][3]);
                    two.amps[idx] += w;
                    three.amps[idx] += sign[c] * w;
                }
            }
        }
        out.two = std::move(two);
        out.three = std::move(three);
    }

    out.twelve.dim = dim;
    if (out.two) {
        out.twelve.amps =
            (std::sqrt(k) * out.one.amps +
             std::sqrt((1.0 - k) / 2.0) * out.two->amps) /
            std::sqrt((1.0 + k) / 2.0);
    } else {
        out.twelve.amps = out.one.amps;
    }
    return out;
}
} // namespace detail

inline PdcBasisStates basis_states(const SchmidtSpec& spec_a,
                                   const SchmidtSpec& spec_b) {
    const auto label_space_a =
        detail::merge_labels(spec_a.labels_a, spec_a.labels_b);
    const auto label_space_b =
        detail::merge_labels(spec_b.labels_a, spec_b.labels_b);
    auto side_a = detail::side_basis(spec_a, label_space_a);
    auto side_b = detail::side_basis(spec_b, label_space_b);
    PdcBasisStates out{std::move(side_a.one),   std::move(side_b.one),
                       std::move(side_a.two),   std::move(side_b.two),
                       std::move(side_a.three), std::move(side_b.three),
                       std::move(side_a.twelve), std::move(side_b.twelve)};
    return out;
}

/**
 * @brief Coefficients of the four-photon state on the five product terms
 * |A1>|B1>, |A1>|B2>, |A2>|B1>, |A2>|B2>, |A3>|B3>.
 *
 * In closed form they are sqrt(K_A K_B), sqrt(K_A (1-K_B)/2),
 * sqrt((1-K_A) K_B / 2), sqrt((1-K_A)(1-K_B))/2 and
 * sqrt((1-K_A)(1-K_B)/4), all divided by sqrt((1 + K_A K_B)/2).
 */
struct FourPhotonDecomposition {
    double k_a = 1.0;
    double k_b = 1.0;
    double c_a1b1 = 1.0;
    double c_a1b2 = 0.0;
    double c_a2b1 = 0.0;
    double c_a2b2 = 0.0;
    double c_a3b3 = 0.0;
};

inline FourPhotonDecomposition closed_form_decomposition(double k_a,
                                                         double k_b) {
    detail::require(k_a > 0.0 && k_a <= 1.0 && k_b > 0.0 && k_b <= 1.0,
                    errc::out_of_range, "K values must lie in (0, 1]");
    const double den = std::sqrt((1.0 + k_a * k_b) / 2.0);
    FourPhotonDecomposition d;
    d.k_a = k_a;
    d.k_b = k_b;
    d.c_a1b1 = std::sqrt(k_a * k_b) / den;
    d.c_a1b2 = std::sqrt(k_a * (1.0 - k_b) / 2.0) / den;
    d.c_a2b1 = std::sqrt((1.0 - k_a) * k_b / 2.0) / den;
    d.c_a2b2 = std::sqrt((1.0 - k_a) * (1.0 - k_b)) / 2.0 / den;
    d.c_a3b3 = std::sqrt((1.0 - k_a) * (1.0 - k_b) / 4.0) / den;
    return d;
}

/// Numeric decomposition: projections of the built four-photon state onto
/// the basis states. Independent of the closed forms above, which makes
/// the two routes cross-checkable.
inline FourPhotonDecomposition
projected_decomposition(const SchmidtSpec& spec_a, const SchmidtSpec& spec_b) {
    const PathBlock block = extract_uudd_block(four_photon(spec_a, spec_b));
    const PdcBasisStates basis = basis_states(spec_a, spec_b);
    FourPhotonDecomposition d;
    d.k_a = k_coefficient(spec_a);
    d.k_b = k_coefficient(spec_b);
    auto coeff = [&](const DofFactor& fa, const DofFactor& fb) {
        return project_onto_product(block, fa, fb).real();
    };
    d.c_a1b1 = coeff(basis.a1, basis.b1);
    d.c_a1b2 = basis.b2 ? coeff(basis.a1, *basis.b2) : 0.0;
    d.c_a2b1 = basis.a2 ? coeff(*basis.a2, basis.b1) : 0.0;
    d.c_a2b2 = basis.a2 && basis.b2 ? coeff(*basis.a2, *basis.b2) : 0.0;
    d.c_a3b3 = basis.a3 && basis.b3 ? coeff(*basis.a3, *basis.b3) : 0.0;
    return d;
}

/// alpha = 3 K_B / (2 + K_B), the mixing parameter that identifies the
/// two-component four-photon polarization mixture with the literature
/// parameterization.
inline double alpha_from_kb(double k_b) {
    detail::require(k_b >= 0.0 && k_b <= 1.0, errc::out_of_range,
                    "K_B must lie in [0, 1]");
    return 3.0 * k_b / (2.0 + k_b);
}

/**
 * Four-photon polarization state after tracing the second DOF, for a
 * polarization-singlet pair source (K_A = 1/2):
 *
 *   rho_4 = [3 (1+K_B) |Psi_4><Psi_4| + (1-K_B) |Phi_4><Phi_4|] / (4+2K_B)
 *
 * over the 16 polarization slot 4-tuples (u pair | d pair). |Psi_4> is
 * the symmetric four-photon state of the pair source and |Phi_4> the
 * antisymmetric singlet-pair product that appears once the second DOF is
 * entangled (K_B < 1).
 */
inline DensityMatrix polarization_mixture(double k_b) {
    detail::require(k_b >= 0.0 && k_b <= 1.0, errc::out_of_range,
                    "K_B must lie in [0, 1]");
    const std::vector<std::string> labels{"H", "V"};
    const int dim = 2;
    auto idx = [&](int a, int b, int c, int d) {
        return DofFactor::index(dim, a, b, c, d);
    };
    const int h = 0, v = 1;

    Eigen::VectorXcd psi4 = Eigen::VectorXcd::Zero(16);
    psi4[idx(h, h, v, v)] = 1.0 / std::sqrt(3.0);
    psi4[idx(v, v, h, h)] = 1.0 / std::sqrt(3.0);
    for (const auto& [s1, s2] : {std::pair{h, v}, std::pair{v, h}})
        for (const auto& [s3, s4] : {std::pair{h, v}, std::pair{v, h}})
            psi4[idx(s1, s2, s3, s4)] += 0.5 / std::sqrt(3.0);

    Eigen::VectorXcd phi4 = Eigen::VectorXcd::Zero(16);
    phi4[idx(h, v, h, v)] = 0.5;
    phi4[idx(h, v, v, h)] = -0.5;
    phi4[idx(v, h, h, v)] = -0.5;
    phi4[idx(v, h, v, h)] = 0.5;

    const double w_sym = 3.0 * (1.0 + k_b) / (4.0 + 2.0 * k_b);
    const double w_anti = (1.0 - k_b) / (4.0 + 2.0 * k_b);
    Eigen::MatrixXcd rho = w_sym * psi4 * psi4.adjoint() +
                           w_anti * phi4 * phi4.adjoint();

    std::vector<std::string> basis;
    basis.reserve(16);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c)
                for (int d = 0; d < dim; ++d)
                    basis.push_back(
                        slot_tuple_name(labels, {a, b, c, d}));
    return DensityMatrix(std::move(basis), std::move(rho));
}

/**
 * A Schmidt spectrum with a prescribed K = sum phi^4, for scanning K
 * ranges. Exact uniform spectra are used when K = 1/d; otherwise one
 * strong coefficient plus d-1 equal weak ones solve the two moment
 * constraints.
 */
inline SchmidtSpec schmidt_spec_with_k(double k,
                                       const std::string& prefix = "s") {
    detail::require(k > 0.0 && k <= 1.0, errc::out_of_range,
                    "K must lie in (0, 1]");
    if (k >= 1.0 - 1e-14) return SchmidtSpec::trivial(prefix + "0");
    int d = static_cast<int>(std::ceil(1.0 / k - 1e-12));
    if (std::abs(1.0 / d - k) <= 1e-14) return SchmidtSpec::uniform(d, prefix);
    if (d < 2) d = 2;
    // s + (d-1) t = 1, s^2 + (d-1) t^2 = k with s = strong, t = weak.
    const double disc = 1.0 - d * (1.0 - k) / (d - 1.0);
    const double t = (1.0 - std::sqrt(disc)) / d;
    const double s = 1.0 - (d - 1.0) * t;
    std::vector<double> coeffs;
    coeffs.push_back(std::sqrt(s));
    for (int i = 1; i < d; ++i) coeffs.push_back(std::sqrt(t));
    std::vector<std::string> labels;
    for (int i = 0; i < d; ++i) labels.push_back(prefix + std::to_string(i));
    auto copy = labels;
    return SchmidtSpec(std::move(coeffs), std::move(labels),
                       std::move(copy));
}

} // namespace mdp
