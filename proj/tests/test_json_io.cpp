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

TEST_CASE("fock state serialization", "[json]") {
    auto registry = make_registry({{"pol", {"H", "V"}}, {"path", {"u", "d"}}});
    auto rng = test::make_rng(471);

    SECTION("round trip preserves every amplitude") {
        const FockState state = test::random_state(rng, registry, 3, 6);
        const FockState back = io::fock_from_json(io::fock_to_json(state));
        REQUIRE(*back.registry() == *state.registry());
        REQUIRE(test::max_state_difference(state, back) == 0.0);
    }
    SECTION("serialization is byte-stable") {
        const FockState state = test::random_state(rng, registry, 2, 4);
        const std::string once = io::fock_to_json(state).dump();
        const std::string twice =
            io::fock_to_json(io::fock_from_json(io::fock_to_json(state)))
                .dump();
        REQUIRE(once == twice);
    }
    SECTION("missing fields fail cleanly") {
        try {
            io::fock_from_json(io::json::parse(R"({"amplitudes": []})"));
            FAIL("expected ParseError");
        } catch (const Error& e) {
            REQUIRE(e.code() == errc::parse_error);
        }
    }
}

TEST_CASE("sym tensor serialization", "[json]") {
    auto registry = make_registry({{"m", {"a", "b"}}});
    auto rng = test::make_rng(472);
    const FockState state = test::random_state(rng, registry, 3, 3);
    const SymTensor tensor = fock_to_sym(state);
    const SymTensor back = io::sym_from_json(io::sym_to_json(tensor));
    REQUIRE(back.photons() == tensor.photons());
    double worst = 0.0;
    for (const auto& [slots, amp] : tensor.amplitudes())
        worst = std::max(worst, std::abs(amp - back.amplitude(slots)));
    REQUIRE(worst == 0.0);
}

TEST_CASE("schmidt spec serialization", "[json]") {
    SECTION("round trip") {
        const SchmidtSpec spec =
            SchmidtSpec({0.8, 0.6}, {"H", "V"}, {"V", "H"});
        const SchmidtSpec back =
            io::schmidt_from_json(io::schmidt_to_json(spec));
        REQUIRE(back.coefficients == spec.coefficients);
        REQUIRE(back.labels_a == spec.labels_a);
        REQUIRE(back.labels_b == spec.labels_b);
    }
    SECTION("unnormalized spec files are rejected") {
        const auto j = io::json::parse(
            R"({"coefficients": [1.0, 1.0], "labels_a": ["a", "b"],
                "labels_b": ["c", "d"]})");
        REQUIRE_THROWS_AS(io::schmidt_from_json(j), Error);
    }
}

TEST_CASE("kernel parsing", "[json]") {
    SECTION("bare matrices default to H/V labels") {
        const auto kernel = io::kernel_from_json(
            io::json::parse("[[0, 0.7071067811865476], "
                            "[-0.7071067811865476, 0]]"));
        REQUIRE(kernel.labels == std::vector<std::string>{"H", "V"});
        REQUIRE(kernel.phi(0, 1).real() == Approx(1.0 / std::sqrt(2.0)));
        REQUIRE(kernel.phi(1, 0).real() == Approx(-1.0 / std::sqrt(2.0)));
    }
    SECTION("labeled kernels and {re, im} entries") {
        const auto kernel = io::kernel_from_json(io::json::parse(
            R"({"labels": ["x", "y"],
                "matrix": [[{"re": 0, "im": 1}, 0], [0, 1]]})"));
        REQUIRE(kernel.labels == std::vector<std::string>{"x", "y"});
        REQUIRE(kernel.phi(0, 0).imag() == Approx(1.0));
    }
    SECTION("larger kernels generate indexed labels") {
        const auto kernel = io::kernel_from_json(
            io::json::parse("[[1, 0, 0], [0, 1, 0], [0, 0, 1]]"));
        REQUIRE(kernel.labels ==
                std::vector<std::string>{"a0", "a1", "a2"});
    }
    SECTION("garbage is rejected") {
        REQUIRE_THROWS_AS(io::kernel_from_json(io::json::parse("42")), Error);
    }
}

TEST_CASE("gate parsing", "[json]") {
    auto registry = make_registry({{"pol", {"H", "V"}}, {"path", {"u", "d"}}});

    SECTION("beamsplitter spec") {
        const ModeUnitary gate = io::gate_from_json(
            io::json::parse(R"({"bs": {"R": 0.5}})"), registry);
        REQUIRE(gate.target_dof() == std::string("path"));
    }
    SECTION("explicit DOF matrix") {
        const ModeUnitary gate = io::gate_from_json(
            io::json::parse(
                R"({"dof": "pol", "matrix": [[0, 1], [1, 0]]})"),
            registry);
        const FockState photon = apply_creation(vacuum(registry), Mode{0});
        const FockState flipped = apply(gate, photon);
        OccupationVector v_photon(registry->mode_count(), 0);
        v_photon[2] = 1; // (V, u)
        REQUIRE(flipped.amplitude(v_photon).real() == Approx(1.0));
    }
    SECTION("unknown shapes are rejected") {
        REQUIRE_THROWS_AS(
            io::gate_from_json(io::json::parse(R"({"boost": 2})"), registry),
            Error);
    }
}

TEST_CASE("density matrix serialization", "[json]") {
    const DensityMatrix rho = polarization_mixture(0.5);
    const DensityMatrix back = io::density_from_json(io::density_to_json(rho));
    REQUIRE(back.basis() == rho.basis());
    REQUIRE((back.matrix() - rho.matrix()).norm() == 0.0);
}
