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

// End-to-end acceptance suite. Each numbered check pins the project's
// headline results at fixed tolerances and prints one PASS/FAIL line;
// the process exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mdp/mdp.hpp"
#include "mdp/random.hpp"
#include "test_support.hpp"

using namespace mdp;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool passed,
            const std::string& detail) {
    std::printf("[%s] %2d. %s — %s\n", passed ? "PASS" : "FAIL", number,
                name.c_str(), detail.c_str());
    if (!passed) ++failures;
}

std::string fmt(double v) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.3g", v);
    return buffer;
}

double relative_error(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

// 1. Numeric purity of the reduced four-photon state equals the closed
//    form over random Schmidt spectra, and both reductions agree.
void criterion_purity_theorem() {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    auto rng = test::make_rng(20260810);
    std::uniform_int_distribution<int> dims(2, 4);
    double worst_closed = 0.0, worst_pair = 0.0;
    const int pairs = 50;
    for (int trial = 0; trial < pairs; ++trial) {
        const SchmidtSpec spec_a = random_schmidt_spec(rng, dims(rng));
        const SchmidtSpec spec_b = random_schmidt_spec(rng, dims(rng));
        const FockState state = four_photon(spec_a, spec_b);
        const double purity_a = purity(reduced_density(state, "A"));
        const double purity_b = purity(reduced_density(state, "B"));
        const double closed = purity_closed_form(k_coefficient(spec_a),
                                                 k_coefficient(spec_b));
        worst_closed = std::max(worst_closed, std::abs(purity_a - closed));
        worst_pair = std::max(worst_pair, std::abs(purity_a - purity_b));
    }
    const double seconds =
        std::chrono::duration<double>(clock::now() - start).count();
    const bool passed =
        worst_closed <= 1e-8 && worst_pair <= 1e-8 && seconds < 30.0;
    report(1, "purity closed form over 50 random spec pairs", passed,
           "max |numeric-closed| = " + fmt(worst_closed) +
               ", max |A-B| = " + fmt(worst_pair) + ", " + fmt(seconds) +
               " s");
}

// 2. Purity surface endpoints and strict monotonicity on the diagonal.
void criterion_surface_endpoints() {
    const bool corner = purity_closed_form(1.0, 1.0) == 1.0;
    const bool floor = purity_closed_form(0.05, 0.05) <= 0.51;
    bool monotone = true;
    double previous = -1.0;
    for (int i = 0; i < 50; ++i) {
        const double k = 0.05 + (1.0 - 0.05) * i / 49.0;
        const double value = purity_closed_form(k, k);
        if (value <= previous) monotone = false;
        previous = value;
    }
    report(2, "purity surface endpoints and diagonal monotonicity",
           corner && floor && monotone,
           "P(1,1) = 1, P(0.05, 0.05) = " +
               fmt(purity_closed_form(0.05, 0.05)) + ", strictly rising");
}

// 3. Triplets bunch at the symmetric splitter; the singlet coincides at
//    every reflectivity.
void criterion_hom_dichotomy() {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    double worst_triplet = 0.0, worst_singlet = 0.0;
    for (auto which : {BellState::phi_plus, BellState::phi_minus,
                       BellState::psi_plus})
        worst_triplet = std::max(worst_triplet,
                                 run_hom(bell_kernel(which), 0.5).p_ud);
    for (int i = 0; i <= 10; ++i)
        worst_singlet = std::max(
            worst_singlet,
            std::abs(run_hom(bell_kernel(BellState::psi_minus), i / 10.0)
                         .p_ud -
                     1.0));
    const double seconds =
        std::chrono::duration<double>(clock::now() - start).count();
    report(3, "Hong-Ou-Mandel bunching/anti-bunching dichotomy",
           worst_triplet <= 1e-12 && worst_singlet <= 1e-12 &&
               seconds < 1.0,
           "max triplet p_ud = " + fmt(worst_triplet) +
               ", max singlet |p_ud - 1| = " + fmt(worst_singlet) + ", " +
               fmt(seconds) + " s");
}

// 4. The singlet is invariant under every collective polarization
//    rotation.
void criterion_singlet_invariance() {
    auto rng = test::make_rng(77);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Matrix2cd u = random_unitary(rng, 2);
        worst = std::max(worst, std::abs(singlet_invariance(u) - 1.0));
    }
    report(4, "singlet invariance under 100 random unitaries",
           worst <= 1e-10, "max |F - 1| = " + fmt(worst));
}

// 5. Repeated creation on one mode accumulates sqrt(N!).
void criterion_bunching_factor() {
    auto registry = make_registry({{"m", {"a"}}});
    FockState state = vacuum(registry);
    double worst = 0.0;
    double factorial = 1.0;
    for (int n = 1; n <= 6; ++n) {
        state = apply_creation(state, Mode{0});
        factorial *= n;
        OccupationVector occ{n};
        worst = std::max(worst, std::abs(state.amplitude(occ).real() -
                                         std::sqrt(factorial)));
    }
    report(5, "bunching amplitude sqrt(N!) up to N = 6", worst <= 1e-12,
           "max |amp - sqrt(N!)| = " + fmt(worst));
}

// 6. Creation-operator substitution agrees with the per-slot tensor
//    oracle.
void criterion_gate_oracle() {
    auto registry = make_registry(
        {{"m", {"x", "y", "z", "w"}}, {"path", {"u", "d"}}});
    auto rng = test::make_rng(20268);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int photons = 1 + static_cast<int>(rng() % 4);
        const FockState psi = test::random_state(rng, registry, photons, 5);
        const ModeUnitary gate =
            (trial % 3 == 0)
                ? beamsplitter(registry, uniform(rng))
                : dof_unitary(registry, trial % 3 == 1 ? "m" : "path",
                              random_unitary(rng, trial % 3 == 1 ? 4 : 2));
        worst = std::max(worst,
                         test::max_state_difference(
                             apply(gate, psi),
                             test::slot_oracle_apply(gate, psi)));
    }
    report(6, "gate application vs first-quantized slot oracle",
           worst <= 1e-10, "max amplitude difference = " + fmt(worst) +
                               " over 100 random (gate, state) pairs");
}

// 7. The built four-photon state projects onto the component basis with
//    the closed-form coefficients.
void criterion_decomposition() {
    auto rng = test::make_rng(31415);
    std::uniform_int_distribution<int> dims(2, 4);
    double worst = 0.0;
    for (int trial = 0; trial < 12; ++trial) {
        const SchmidtSpec spec_a = random_schmidt_spec(rng, dims(rng));
        const SchmidtSpec spec_b = random_schmidt_spec(rng, dims(rng));
        const auto projected = projected_decomposition(spec_a, spec_b);
        const auto closed = closed_form_decomposition(
            k_coefficient(spec_a), k_coefficient(spec_b));
        worst = std::max(
            {worst, std::abs(projected.c_a1b1 - closed.c_a1b1),
             std::abs(projected.c_a1b2 - closed.c_a1b2),
             std::abs(projected.c_a2b1 - closed.c_a2b1),
             std::abs(projected.c_a2b2 - closed.c_a2b2),
             std::abs(projected.c_a3b3 - closed.c_a3b3)});
    }
    // The antisymmetric pair vanishes whenever either spec is a product.
    const SchmidtSpec bell({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)},
                           {"H", "V"}, {"V", "H"});
    const double anti_one =
        std::abs(projected_decomposition(bell, SchmidtSpec::trivial())
                     .c_a3b3);
    const double anti_two =
        std::abs(projected_decomposition(SchmidtSpec::trivial(), bell)
                     .c_a3b3);
    report(7, "four-photon decomposition coefficients", worst <= 1e-10 &&
               anti_one <= 1e-12 && anti_two <= 1e-12,
           "max |projected-closed| = " + fmt(worst) +
               ", product-spec antisymmetric coefficient <= " +
               fmt(std::max(anti_one, anti_two)));
}

// 8. Tracing the second DOF reproduces the two-component polarization
//    mixture, and the alpha identification holds.
void criterion_mixture() {
    const SchmidtSpec bell({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)},
                           {"H", "V"}, {"V", "H"});
    const std::vector<std::pair<double, SchmidtSpec>> cases{
        {1.0, SchmidtSpec::trivial()},
        {0.5, SchmidtSpec({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)},
                          {"x", "y"}, {"x", "y"})},
        {0.25, SchmidtSpec::uniform(4)}};
    double worst = 0.0;
    for (const auto& [kb, spec_b] : cases) {
        const DensityMatrix traced =
            reduced_density(four_photon(bell, spec_b), "A");
        worst = std::max(worst, test::max_density_difference(
                                    traced, polarization_mixture(kb)));
    }
    const bool alphas = std::abs(alpha_from_kb(1.0) - 1.0) <= 1e-15 &&
                        std::abs(alpha_from_kb(0.5) - 0.6) <= 1e-15 &&
                        std::abs(alpha_from_kb(0.25) - 1.0 / 3.0) <= 1e-15;
    report(8, "polarization mixture vs partial trace",
           worst <= 1e-10 && alphas,
           "max elementwise difference = " + fmt(worst) +
               ", alpha(1, 1/2, 1/4) = (1, 0.6, 1/3)");
}

// 9. The rate-based estimator recovers K from the truncated source
//    series at eta = 0.05.
void criterion_k_estimator() {
    const std::vector<std::pair<double, SchmidtSpec>> cases{
        {1.0, SchmidtSpec::trivial()},
        {0.5, SchmidtSpec::uniform(2)},
        {0.25, SchmidtSpec::uniform(4)}};
    double worst = 0.0;
    for (const auto& [k, spec] : cases) {
        const PdcConfig config{Amplitude{0.05, 0.0}, spec,
                               SchmidtSpec::trivial(), 2};
        const PathRates rates = path_photon_rates(pdc_series(config));
        worst = std::max(
            worst, relative_error(k_from_rates(rates.p1, rates.p2), k));
    }
    report(9, "rate-based K estimator at eta = 0.05", worst <= 0.05,
           "max relative error = " + fmt(worst) + " (valid small-eta)");
}

// 10. Analyzer-sweep visibility: full at K_B = 1, strictly rising in
//     K_B.
void criterion_visibility() {
    const double full =
        visibility(analyzer_sweep(polarization_mixture(1.0), 64));
    bool monotone = true;
    double previous = -1.0;
    std::ostringstream values;
    for (double kb : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double v =
            visibility(analyzer_sweep(polarization_mixture(kb), 64));
        if (v <= previous) monotone = false;
        previous = v;
        values << fmt(v) << (kb < 1.0 ? " " : "");
    }
    report(10, "four-photon visibility behavior",
           std::abs(full - 1.0) <= 1e-10 && monotone,
           "|V(1) - 1| = " + fmt(std::abs(full - 1.0)) +
               ", V over K_B grid = [" + values.str() + "]");
}

// 11. CLI outputs are byte-identical across repeated runs.
void criterion_cli_golden() {
#ifndef MDP_CLI_PATH
    report(11, "CLI golden outputs", false, "CLI path not configured");
#else
    const fs::path dir = fs::temp_directory_path() / "mdp_acceptance";
    fs::create_directories(dir);
    const fs::path spec = dir / "spec.json";
    {
        std::ofstream out(spec);
        out << R"({"coefficients": [0.7071067811865476,
                   0.7071067811865476],
                   "labels_a": ["H", "V"], "labels_b": ["V", "H"]})";
    }
    auto run = [&](const std::string& args, const fs::path& out_path) {
        const std::string command = std::string(MDP_CLI_PATH) + " " + args +
                                    " --out " + out_path.string() +
                                    " > /dev/null 2>&1";
        return WEXITSTATUS(std::system(command.c_str())) == 0;
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };
    bool passed = true;
    std::string detail;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"purity-surface --steps 4", "surface"},
        {"bell-table --r 0.5", "bell"},
        {"pdc-report --spec-a " + spec.string() + " --spec-b " +
             spec.string(),
         "report"}};
    for (const auto& [args, tag] : commands) {
        const fs::path first = dir / (tag + ".1");
        const fs::path second = dir / (tag + ".2");
        if (!run(args, first) || !run(args, second)) {
            passed = false;
            detail = tag + " run failed";
            break;
        }
        const std::string a = slurp(first), b = slurp(second);
        if (a.empty() || a != b) {
            passed = false;
            detail = tag + " output not byte-stable";
            break;
        }
    }
    if (passed) detail = "purity-surface, bell-table, pdc-report";
    report(11, "CLI outputs byte-identical across runs", passed, detail);
#endif
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_purity_theorem();
    criterion_surface_endpoints();
    criterion_hom_dichotomy();
    criterion_singlet_invariance();
    criterion_bunching_factor();
    criterion_gate_oracle();
    criterion_decomposition();
    criterion_mixture();
    criterion_k_estimator();
    criterion_visibility();
    criterion_cli_golden();
    if (failures > 0) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
