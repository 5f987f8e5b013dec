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

// Scenario runner for the mdp library: emits plot-ready CSV/JSON data for
// purity surfaces, Hong-Ou-Mandel scans, down-conversion reports and Bell
// tables. Exit codes: 0 success, 2 usage or input error, 3 violated
// numerical self-check.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mdp/mdp.hpp"
#include "mdp/random.hpp"

namespace {

struct SelfCheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i)
        grid[i] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
    return grid;
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw mdp::Error(mdp::errc::parse_error,
                         "cannot open output file '" + path + "'");
    out << payload;
}

mdp::io::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw mdp::Error(mdp::errc::parse_error,
                         "cannot open input file '" + path + "'");
    try {
        return mdp::io::json::parse(in);
    } catch (const std::exception& e) {
        throw mdp::Error(mdp::errc::parse_error,
                         "invalid JSON in '" + path + "': " + e.what());
    }
}

/// Deterministic parallel map: cells are computed on a worker pool but
/// stored by index, so assembly order never depends on scheduling.
template <typename F>
void parallel_for(int count, F&& body) {
    const unsigned hardware = std::thread::hardware_concurrency();
    const unsigned workers =
        std::max(1u, std::min<unsigned>(hardware ? hardware : 1,
                                        static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& thread : pool) thread.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct SurfaceRow {
    double k_a, k_b, closed, numeric, error;
};

void cmd_purity_surface(double kmin, double kmax, int steps,
                        const std::string& out, const std::string& format) {
    if (!(kmin > 0.0 && kmin <= kmax && kmax <= 1.0))
        throw mdp::Error(mdp::errc::out_of_range,
                         "need 0 < kmin <= kmax <= 1");
    if (steps < 2)
        throw mdp::Error(mdp::errc::out_of_range, "need steps >= 2");

    const auto grid = linspace(kmin, kmax, steps);
    std::vector<SurfaceRow> rows(static_cast<std::size_t>(steps) * steps);
    parallel_for(steps * steps, [&](int cell) {
        const double k_a = grid[cell / steps];
        const double k_b = grid[cell % steps];
        const auto spec_a = mdp::schmidt_spec_with_k(k_a);
        const auto spec_b = mdp::schmidt_spec_with_k(k_b);
        const double numeric = mdp::reduced_purity(
            mdp::four_photon_block(spec_a, spec_b), true);
        const double closed = mdp::purity_closed_form(k_a, k_b);
        rows[cell] = {k_a, k_b, closed, numeric, std::abs(closed - numeric)};
    });

    double max_error = 0.0;
    for (const auto& row : rows) max_error = std::max(max_error, row.error);

    std::string payload;
    if (format == "json") {
        mdp::io::json doc = mdp::io::json::array();
        for (const auto& row : rows)
            doc.push_back({{"k_a", row.k_a},
                           {"k_b", row.k_b},
                           {"purity_closed", row.closed},
                           {"purity_numeric", row.numeric},
                           {"abs_error", row.error}});
        payload = doc.dump(2) + "\n";
    } else {
        std::ostringstream csv;
        csv << "k_a,k_b,purity_closed,purity_numeric,abs_error\n";
        for (const auto& row : rows)
            csv << fmt(row.k_a) << ',' << fmt(row.k_b) << ','
                << fmt(row.closed) << ',' << fmt(row.numeric) << ','
                << fmt(row.error) << '\n';
        payload = csv.str();
    }
    write_output(out, payload);
    if (max_error > 1e-8)
        throw SelfCheckFailure("purity surface max |closed - numeric| = " +
                               fmt(max_error) + " exceeds 1e-8");
}

void cmd_hom_scan(const std::string& kernel_path, double reflectivity,
                  int steps, const std::string& out,
                  const std::string& format) {
    if (steps < 2)
        throw mdp::Error(mdp::errc::out_of_range, "need steps >= 2");
    const mdp::TwoPhotonKernel kernel =
        mdp::io::kernel_from_json(load_json(kernel_path));
    const auto lambdas = linspace(0.0, 1.0, steps);
    const auto scan = mdp::hom_scan(kernel, lambdas, reflectivity);

    for (const auto& point : scan)
        if (std::abs(point.outcome.total() - 1.0) > 1e-9)
            throw SelfCheckFailure("outcome probabilities sum to " +
                                   fmt(point.outcome.total()));

    std::string payload;
    if (format == "json") {
        mdp::io::json doc = mdp::io::json::array();
        for (const auto& point : scan)
            doc.push_back({{"lambda", point.lambda},
                           {"r", reflectivity},
                           {"p_uu", point.outcome.p_uu},
                           {"p_dd", point.outcome.p_dd},
                           {"p_ud", point.outcome.p_ud}});
        payload = doc.dump(2) + "\n";
    } else {
        std::ostringstream csv;
        csv << "lambda,r,p_uu,p_dd,p_ud\n";
        for (const auto& point : scan)
            csv << fmt(point.lambda) << ',' << fmt(reflectivity) << ','
                << fmt(point.outcome.p_uu) << ',' << fmt(point.outcome.p_dd)
                << ',' << fmt(point.outcome.p_ud) << '\n';
        payload = csv.str();
    }
    write_output(out, payload);
}

void cmd_pdc_report(const std::string& spec_a_path,
                    const std::string& spec_b_path, const std::string& out,
                    const std::string& format) {
    const auto spec_a = mdp::io::schmidt_from_json(load_json(spec_a_path));
    const auto spec_b = mdp::io::schmidt_from_json(load_json(spec_b_path));
    const double k_a = mdp::k_coefficient(spec_a);
    const double k_b = mdp::k_coefficient(spec_b);

    const auto decomposition = mdp::closed_form_decomposition(k_a, k_b);
    const double purity_closed = mdp::purity_closed_form(k_a, k_b);
    const auto rho_a =
        mdp::reduced_density(mdp::four_photon(spec_a, spec_b), "A");
    const double purity_numeric = mdp::purity(rho_a);
    const double alpha = mdp::alpha_from_kb(k_b);
    const auto curve =
        mdp::analyzer_sweep(mdp::polarization_mixture(k_b), 64);
    const double vis = mdp::visibility(curve);

    std::string payload;
    if (format == "csv") {
        std::ostringstream csv;
        csv << "k_a,k_b,c_a1b1,c_a1b2,c_a2b1,c_a2b2,c_a3b3,"
               "purity_closed,purity_numeric,alpha,visibility\n";
        csv << fmt(k_a) << ',' << fmt(k_b) << ','
            << fmt(decomposition.c_a1b1) << ',' << fmt(decomposition.c_a1b2)
            << ',' << fmt(decomposition.c_a2b1) << ','
            << fmt(decomposition.c_a2b2) << ',' << fmt(decomposition.c_a3b3)
            << ',' << fmt(purity_closed) << ',' << fmt(purity_numeric) << ','
            << fmt(alpha) << ',' << fmt(vis) << '\n';
        payload = csv.str();
    } else {
        mdp::io::json doc{
            {"k_a", k_a},
            {"k_b", k_b},
            {"coefficients",
             {{"a1b1", decomposition.c_a1b1},
              {"a1b2", decomposition.c_a1b2},
              {"a2b1", decomposition.c_a2b1},
              {"a2b2", decomposition.c_a2b2},
              {"a3b3", decomposition.c_a3b3}}},
            {"purity_closed", purity_closed},
            {"purity_numeric", purity_numeric},
            {"alpha", alpha},
            {"visibility", vis}};
        payload = doc.dump(2) + "\n";
    }
    write_output(out, payload);
    if (std::abs(purity_closed - purity_numeric) > 1e-8)
        throw SelfCheckFailure(
            "purity closed/numeric mismatch: " +
            fmt(std::abs(purity_closed - purity_numeric)));
}

void cmd_bell_table(double reflectivity, const std::string& out,
                    const std::string& format) {
    const std::pair<const char*, mdp::BellState> states[] = {
        {"phi_plus", mdp::BellState::phi_plus},
        {"phi_minus", mdp::BellState::phi_minus},
        {"psi_plus", mdp::BellState::psi_plus},
        {"psi_minus", mdp::BellState::psi_minus}};

    std::string payload;
    if (format == "json") {
        mdp::io::json doc = mdp::io::json::array();
        for (const auto& [name, which] : states) {
            const auto dist =
                mdp::run_hom(mdp::bell_kernel(which), reflectivity);
            doc.push_back({{"state", name},
                           {"p_uu", dist.p_uu},
                           {"p_dd", dist.p_dd},
                           {"p_ud", dist.p_ud}});
        }
        payload = doc.dump(2) + "\n";
    } else {
        std::ostringstream csv;
        csv << "state,p_uu,p_dd,p_ud\n";
        for (const auto& [name, which] : states) {
            const auto dist =
                mdp::run_hom(mdp::bell_kernel(which), reflectivity);
            if (std::abs(dist.total() - 1.0) > 1e-9)
                throw SelfCheckFailure("bell row does not sum to 1");
            csv << name << ',' << fmt(dist.p_uu) << ',' << fmt(dist.p_dd)
                << ',' << fmt(dist.p_ud) << '\n';
        }
        payload = csv.str();
    }
    write_output(out, payload);
}

void cmd_self_test(unsigned long seed) {
    std::mt19937_64 rng(seed);
    double worst_fidelity_defect = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Eigen::Matrix2cd u = mdp::random_unitary(rng, 2);
        worst_fidelity_defect = std::max(
            worst_fidelity_defect, std::abs(mdp::singlet_invariance(u) - 1.0));
    }
    std::cout << "singlet invariance over 100 random unitaries: max |F-1| = "
              << fmt(worst_fidelity_defect) << "\n";
    if (worst_fidelity_defect > 1e-10)
        throw SelfCheckFailure("singlet invariance violated");

    double worst_purity_defect = 0.0;
    for (int i = 0; i < 5; ++i) {
        std::uniform_int_distribution<int> dims(2, 3);
        const auto spec_a = mdp::random_schmidt_spec(rng, dims(rng));
        const auto spec_b = mdp::random_schmidt_spec(rng, dims(rng));
        const auto rho =
            mdp::reduced_density(mdp::four_photon(spec_a, spec_b), "A");
        const double closed = mdp::purity_closed_form(
            mdp::k_coefficient(spec_a), mdp::k_coefficient(spec_b));
        worst_purity_defect = std::max(
            worst_purity_defect, std::abs(mdp::purity(rho) - closed));
    }
    std::cout << "purity closed form over 5 random spec pairs: max error = "
              << fmt(worst_purity_defect) << "\n";
    if (worst_purity_defect > 1e-8)
        throw SelfCheckFailure("purity closed form violated");
    std::cout << "self-test passed\n";
}

} // namespace

int main(int argc, char** argv) {
    if (const char* tol = std::getenv("MDP_PRUNE_TOL")) {
        try {
            mdp::set_prune_tolerance(std::stod(tol));
        } catch (const std::exception&) {
            std::cerr << "invalid MDP_PRUNE_TOL value '" << tol << "'\n";
            return 2;
        }
    }

    CLI::App app{"Few-photon multi-DOF interference and entanglement "
                 "scenario runner"};
    app.require_subcommand(1);

    std::string out, format = "csv";
    std::string kernel_path, spec_a_path, spec_b_path;
    double kmin = 0.05, kmax = 1.0, reflectivity = 0.5;
    int steps = 21;
    unsigned long seed = 20260810;

    auto* surface = app.add_subcommand(
        "purity-surface", "Reduced-state purity over a (K_A, K_B) grid");
    surface->add_option("--kmin", kmin, "lower K bound (default 0.05)");
    surface->add_option("--kmax", kmax, "upper K bound (default 1.0)");
    surface->add_option("--steps", steps, "grid points per axis");
    surface->add_option("--out", out, "output path (default stdout)");
    surface->add_option("--format", format, "csv|json");

    auto* hom = app.add_subcommand(
        "hom-scan", "Coincidence scan over the symmetric/antisymmetric "
                    "kernel mixture");
    hom->add_option("--kernel", kernel_path, "kernel JSON file")->required();
    hom->add_option("--r", reflectivity, "beamsplitter reflectivity");
    hom->add_option("--steps", steps, "lambda grid points");
    hom->add_option("--out", out, "output path (default stdout)");
    hom->add_option("--format", format, "csv|json");

    auto* report = app.add_subcommand(
        "pdc-report", "Four-photon decomposition, purity and visibility "
                      "from two Schmidt spectra");
    report->add_option("--spec-a", spec_a_path, "DOF A spec JSON")->required();
    report->add_option("--spec-b", spec_b_path, "DOF B spec JSON")->required();
    report->add_option("--out", out, "output path (default stdout)");
    report->add_option("--format", format, "json|csv");

    auto* bell = app.add_subcommand(
        "bell-table", "Beamsplitter output statistics of the four Bell "
                      "states");
    bell->add_option("--r", reflectivity, "beamsplitter reflectivity");
    bell->add_option("--out", out, "output path (default stdout)");
    bell->add_option("--format", format, "csv|json");

    auto* selftest = app.add_subcommand(
        "self-test", "Seeded random-sweep invariant checks");
    selftest->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (surface->parsed()) {
            cmd_purity_surface(kmin, kmax, steps, out, format);
        } else if (hom->parsed()) {
            cmd_hom_scan(kernel_path, reflectivity, steps, out, format);
        } else if (report->parsed()) {
            // Reports default to JSON unless the flag says otherwise.
            if (report->count("--format") == 0) format = "json";
            cmd_pdc_report(spec_a_path, spec_b_path, out, format);
        } else if (bell->parsed()) {
            cmd_bell_table(reflectivity, out, format);
        } else if (selftest->parsed()) {
            cmd_self_test(seed);
        }
    } catch (const SelfCheckFailure& e) {
        std::cerr << "self-check failed: " << e.what() << "\n";
        return 3;
    } catch (const mdp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
