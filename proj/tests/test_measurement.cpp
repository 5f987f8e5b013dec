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

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace mdp;
using Catch::Approx;

namespace {

SchmidtSpec bell_spec() {
    const double r = 1.0 / std::sqrt(2.0);
    return SchmidtSpec({r, r}, {"H", "V"}, {"V", "H"});
}

/// Second-quantized oracle: builds M = sum f_ij g_mn adag adag a a with
/// ladder operators on a one-path registry and returns its matrix over
/// the normalized two-photon occupation basis.
struct LadderOracle {
    std::vector<FockState> basis_states;
    std::vector<Eigen::VectorXcd> slot_vectors; // matching slot-space vectors
    Eigen::MatrixXcd matrix;
};

LadderOracle ladder_oracle(const MeasurementKernel& kernel) {
    const int da = kernel.dim_a();
    const int db = kernel.dim_b();
    std::vector<std::string> labels_a, labels_b;
    for (int i = 0; i < da; ++i) labels_a.push_back("a" + std::to_string(i));
    for (int j = 0; j < db; ++j) labels_b.push_back("b" + std::to_string(j));
    auto registry = make_registry({{"A", labels_a}, {"B", labels_b}});
    const int modes = registry->mode_count(); // = da * db = slot labels

    LadderOracle oracle;
    const FockState vac = vacuum(registry);
    for (int first = 0; first < modes; ++first) {
        for (int second = first; second < modes; ++second) {
            oracle.basis_states.push_back(normalize(apply_creation(
                apply_creation(vac, Mode{first}), Mode{second})));
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(modes * modes);
            if (first == second) {
                v[first * modes + second] = 1.0;
            } else {
                v[first * modes + second] = 1.0 / std::sqrt(2.0);
                v[second * modes + first] = 1.0 / std::sqrt(2.0);
            }
            oracle.slot_vectors.push_back(std::move(v));
        }
    }

    const auto n = oracle.basis_states.size();
    oracle.matrix = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        FockState accumulated(registry);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j)
                for (int m = 0; m < da; ++m)
                    for (int nn = 0; nn < db; ++nn) {
                        const Amplitude w = kernel.f(i, j) * kernel.g(m, nn);
                        if (w == Amplitude{0.0, 0.0}) continue;
                        const Mode ij{i * db + j};
                        const Mode mn{m * db + nn};
                        FockState term = apply_annihilation(
                            oracle.basis_states[col], ij);
                        term = apply_annihilation(term, mn);
                        term = apply_creation(term, mn);
                        term = apply_creation(term, ij);
                        accumulated = add(accumulated, scale(term, w));
                    }
        for (std::size_t row = 0; row < n; ++row)
            oracle.matrix(row, col) =
                inner_product(oracle.basis_states[row], accumulated);
    }
    return oracle;
}

} // namespace

TEST_CASE("measurement kernel validation", "[measurement]") {
    REQUIRE_THROWS_AS(MeasurementKernel(Eigen::MatrixXcd::Zero(2, 2),
                                        Eigen::MatrixXcd::Ones(2, 2)),
                      Error);
    REQUIRE_THROWS_AS(MeasurementKernel(Eigen::MatrixXcd::Ones(2, 2),
                                        Eigen::MatrixXcd::Ones(2, 3)),
                      Error);
}

TEST_CASE("two_photon_projector against the ladder oracle",
          "[measurement]") {
    SECTION("a single delta kernel projects onto the doubly occupied mode") {
        Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(2, 2);
        f(0, 0) = 1.0;
        const MeasurementKernel kernel(f, f);
        const PairOperator m = two_photon_projector(kernel);
        // Eigenvalue 2 on |2> of the (a0, b0) mode, nothing else.
        Eigen::VectorXcd bunched = Eigen::VectorXcd::Zero(16);
        bunched[0] = 1.0;
        REQUIRE((m.matrix * bunched - 2.0 * bunched).norm() <= 1e-14);
        REQUIRE(m.matrix.norm() == Approx(2.0));
    }
    SECTION("random real kernels match the a^dag a^dag a a construction") {
        auto rng = test::make_rng(461);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        for (int trial = 0; trial < 5; ++trial) {
            Eigen::MatrixXcd f(2, 2), g(2, 2);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    f(r, c) = uniform(rng);
                    g(r, c) = uniform(rng);
                }
            const MeasurementKernel kernel(f, g);
            const PairOperator impl = two_photon_projector(kernel);
            const LadderOracle oracle = ladder_oracle(kernel);
            const auto n = oracle.basis_states.size();
            for (std::size_t row = 0; row < n; ++row)
                for (std::size_t col = 0; col < n; ++col) {
                    const Amplitude via_slots =
                        oracle.slot_vectors[row].dot(
                            impl.matrix * oracle.slot_vectors[col]);
                    REQUIRE(std::abs(via_slots - oracle.matrix(row, col)) <=
                            1e-12);
                }
        }
    }
    SECTION("kernels with cross terms populate both symmetry blocks") {
        Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(2, 2);
        Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(2, 2);
        f(0, 0) = 1.0; // photon (a0, b0)
        g(1, 1) = 1.0; // photon (a1, b1)
        const PairOperator m = two_photon_projector(MeasurementKernel(f, g));
        const Eigen::MatrixXcd p_sym = pair_symmetric_projector(4);
        const Eigen::MatrixXcd p_anti = pair_antisymmetric_projector(4);
        REQUIRE((p_sym * m.matrix * p_sym).norm() > 0.1);
        REQUIRE((p_anti * m.matrix * p_anti).norm() > 0.1);
    }
    SECTION("equal rank-1 kernels have no antisymmetric block") {
        auto rng = test::make_rng(462);
        std::uniform_real_distribution<double> uniform(0.1, 1.0);
        Eigen::VectorXcd u(2), w(2);
        for (int i = 0; i < 2; ++i) {
            u[i] = uniform(rng);
            w[i] = uniform(rng);
        }
        const Eigen::MatrixXcd f = u * w.transpose();
        const PairOperator m = two_photon_projector(MeasurementKernel(f, f));
        const Eigen::MatrixXcd p_anti = pair_antisymmetric_projector(4);
        REQUIRE((p_anti * m.matrix * p_anti).norm() <= 1e-14);
    }
    SECTION("Hermitian and positive semidefinite for nonnegative kernels") {
        auto rng = test::make_rng(463);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        for (int trial = 0; trial < 5; ++trial) {
            Eigen::MatrixXcd f(2, 2), g(2, 2);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    f(r, c) = uniform(rng);
                    g(r, c) = uniform(rng);
                }
            const PairOperator m =
                two_photon_projector(MeasurementKernel(f, g));
            REQUIRE((m.matrix - m.matrix.adjoint()).norm() <= 1e-12);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.matrix);
            REQUIRE(solver.eigenvalues().minCoeff() >= -1e-10);
        }
    }
}

TEST_CASE("single-DOF kernels keep the antisymmetric block",
          "[measurement]") {
    const MeasurementKernel crossed(Eigen::MatrixXcd{{1.0}, {0.0}},
                                    Eigen::MatrixXcd{{0.0}, {1.0}});
    const PairOperator m = two_photon_projector(crossed);
    REQUIRE(m.slot_dim == 2);
    // Exactly the symmetric plus antisymmetric (H, V) pair projectors.
    Eigen::VectorXcd sym = Eigen::VectorXcd::Zero(4);
    sym[1] = sym[2] = 1.0 / std::sqrt(2.0);
    Eigen::VectorXcd anti = Eigen::VectorXcd::Zero(4);
    anti[1] = 1.0 / std::sqrt(2.0);
    anti[2] = -1.0 / std::sqrt(2.0);
    const Eigen::MatrixXcd expected =
        sym * sym.adjoint() + anti * anti.adjoint();
    REQUIRE((m.matrix - expected).norm() <= 1e-14);
}

TEST_CASE("traced kernels reproduce the full-space rates",
          "[measurement]") {
    // A B-insensitive detector pair measured on the full state must give
    // the same coincidence rate as the effective A-only operator on the
    // reduced state.
    auto rng = test::make_rng(464);
    std::uniform_real_distribution<double> uniform(0.1, 1.0);
    const SchmidtSpec spec_b =
        SchmidtSpec({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}, {"x", "y"},
                    {"x", "y"});
    const FockState state = four_photon(bell_spec(), spec_b);
    const DensityMatrix rho_full =
        test::block_density(extract_uudd_block(state));
    const DensityMatrix rho_a = reduced_density(state, "A");

    for (int trial = 0; trial < 3; ++trial) {
        Eigen::VectorXcd fa(2), ga(2);
        for (int i = 0; i < 2; ++i) {
            fa[i] = uniform(rng);
            ga[i] = uniform(rng);
        }
        // Flat extension over the two B labels.
        Eigen::MatrixXcd f_flat(2, 2), g_flat(2, 2);
        f_flat << fa[0], fa[0], fa[1], fa[1];
        g_flat << ga[0], ga[0], ga[1], ga[1];
        const MeasurementKernel full_kernel(f_flat, g_flat);
        const MeasurementKernel traced_kernel(fa, ga);
        const double rate_full =
            coincidence_rate(rho_full, full_kernel, full_kernel);
        const double rate_traced =
            coincidence_rate(rho_a, traced_kernel, traced_kernel);
        REQUIRE(rate_full == Approx(rate_traced).margin(1e-10));
    }
}

TEST_CASE("coincidence_rate", "[measurement]") {
    const MeasurementKernel crossed(Eigen::MatrixXcd{{1.0}, {0.0}},
                                    Eigen::MatrixXcd{{0.0}, {1.0}});

    SECTION("pure symmetric state with the (H, V) pair detector") {
        // |<HV-pair (x) HV-pair | Psi_4>|^2 = 1/3.
        const double rate =
            coincidence_rate(polarization_mixture(1.0), crossed, crossed);
        REQUIRE(rate == Approx(1.0 / 3.0));
    }
    SECTION("linear in the density matrix") {
        const double rate_sym =
            coincidence_rate(polarization_mixture(1.0), crossed, crossed);
        // Recover the antisymmetric component from two mixtures.
        const Eigen::MatrixXcd anti_matrix =
            4.0 * polarization_mixture(0.0).matrix() -
            3.0 * polarization_mixture(1.0).matrix();
        const DensityMatrix rho_anti(polarization_mixture(0.0).basis(),
                                     anti_matrix);
        const double rate_anti =
            coincidence_rate(rho_anti, crossed, crossed);
        for (double kb : {0.0, 0.3, 0.8}) {
            const double w_sym = 3.0 * (1.0 + kb) / (4.0 + 2.0 * kb);
            const double w_anti = (1.0 - kb) / (4.0 + 2.0 * kb);
            const double mixed =
                coincidence_rate(polarization_mixture(kb), crossed, crossed);
            REQUIRE(mixed ==
                    Approx(w_sym * rate_sym + w_anti * rate_anti)
                        .margin(1e-12));
        }
    }
    SECTION("the antisymmetric component's rate is rotation invariant") {
        const Eigen::MatrixXcd anti_matrix =
            4.0 * polarization_mixture(0.0).matrix() -
            3.0 * polarization_mixture(1.0).matrix();
        const auto basis = polarization_mixture(0.0).basis();
        const double reference =
            coincidence_rate(DensityMatrix(basis, anti_matrix), crossed,
                             crossed);
        REQUIRE(reference > 0.0);
        auto rng = test::make_rng(465);
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::MatrixXcd u = random_unitary(rng, 2);
            const Eigen::MatrixXcd u4 =
                kronecker(kronecker(u, u), kronecker(u, u));
            const DensityMatrix rotated(basis,
                                        u4 * anti_matrix * u4.adjoint());
            REQUIRE(coincidence_rate(rotated, crossed, crossed) ==
                    Approx(reference).margin(1e-10));
        }
    }
    SECTION("sector mismatch is rejected") {
        const MeasurementKernel wide(Eigen::MatrixXcd::Ones(3, 1),
                                     Eigen::MatrixXcd::Ones(3, 1));
        try {
            coincidence_rate(polarization_mixture(0.5), wide, wide);
            FAIL("expected BasisMismatch");
        } catch (const Error& e) {
            REQUIRE(e.code() == errc::basis_mismatch);
        }
    }
}

TEST_CASE("analyzer sweep and visibility", "[measurement]") {
    SECTION("full visibility without inter-DOF entanglement") {
        const auto curve = analyzer_sweep(polarization_mixture(1.0), 64);
        REQUIRE_THAT(visibility(curve),
                     Catch::Matchers::WithinAbs(1.0, 1e-10));
    }
    SECTION("visibility grows strictly with K_B") {
        double previous = -1.0;
        for (double kb : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const double v =
                visibility(analyzer_sweep(polarization_mixture(kb), 64));
            REQUIRE(v > previous);
            previous = v;
        }
    }
    SECTION("the background keeps visibility below one") {
        const double v =
            visibility(analyzer_sweep(polarization_mixture(0.5), 64));
        REQUIRE(v < 1.0);
        REQUIRE(v == Approx(0.6).margin(1e-10));
    }
    SECTION("constant positive curves have zero visibility") {
        const std::vector<std::pair<double, double>> flat{
            {0.0, 0.4}, {0.5, 0.4}, {1.0, 0.4}};
        REQUIRE(visibility(flat) == Approx(0.0));
    }
    SECTION("degenerate curves are rejected") {
        const std::vector<std::pair<double, double>> zero{
            {0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}};
        try {
            visibility(zero);
            FAIL("expected DegenerateCurve");
        } catch (const Error& e) {
            REQUIRE(e.code() == errc::degenerate_curve);
        }
        REQUIRE_THROWS_AS(
            visibility(std::vector<std::pair<double, double>>{{0.0, 1.0}}),
            Error);
    }
}
