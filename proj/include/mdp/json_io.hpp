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

#include <string>
#include <vector>

#include <json.hpp>

#include "mdp/density.hpp"
#include "mdp/error.hpp"
#include "mdp/fock.hpp"
#include "mdp/gates.hpp"
#include "mdp/hom.hpp"
#include "mdp/schmidt.hpp"
#include "mdp/sym.hpp"

namespace mdp::io {

using json = nlohmann::ordered_json;

namespace detail {
using mdp::detail::require;

inline Amplitude parse_complex(const json& j, const char* where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_object() && j.contains("re"))
        return {j.value("re", 0.0), j.value("im", 0.0)};
    if (j.is_array() && j.size() == 2)
        return {j[0].get<double>(), j[1].get<double>()};
    mdp::detail::fail(errc::parse_error,
                      std::string(where) +
                          ": expected number, {re, im} or [re, im]");
}

inline json dump_complex(Amplitude z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

inline Eigen::MatrixXcd parse_matrix(const json& j, const char* where) {
    require(j.is_array() && !j.empty(), errc::parse_error,
            std::string(where) + ": expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        require(j[r].is_array() &&
                    static_cast<Eigen::Index>(j[r].size()) == cols,
                errc::parse_error,
                std::string(where) + ": ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = parse_complex(j[r][c], where);
    }
    return m;
}

inline json dump_matrix(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(dump_complex(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}
} // namespace detail

inline json registry_to_json(const DofRegistry& registry) {
    json dofs = json::array();
    for (int d = 0; d < registry.dof_count(); ++d)
        dofs.push_back({{"name", registry.dof(d).name},
                        {"basis", registry.dof(d).basis}});
    return dofs;
}

inline RegistryPtr registry_from_json(const json& j) {
    detail::require(j.is_array() && !j.empty(), errc::parse_error,
                    "registry: expected a non-empty array of DOFs");
    std::vector<DofRegistry::Dof> dofs;
    for (const auto& entry : j) {
        detail::require(entry.contains("name") && entry.contains("basis"),
                        errc::parse_error,
                        "registry: each DOF needs 'name' and 'basis'");
        dofs.push_back({entry["name"].get<std::string>(),
                        entry["basis"].get<std::vector<std::string>>()});
    }
    return make_registry(std::move(dofs));
}

/// Amplitudes come out sorted by occupation vector (lexicographic), so
/// serialization is byte-stable for a given state.
inline json fock_to_json(const FockState& state) {
    json j;
    j["registry"] = registry_to_json(*state.registry());
    json amps = json::array();
    for (const auto& [occ, amp] : state.amplitudes())
        amps.push_back(
            {{"occ", occ}, {"re", amp.real()}, {"im", amp.imag()}});
    j["amplitudes"] = std::move(amps);
    return j;
}

inline FockState fock_from_json(const json& j) {
    detail::require(j.contains("registry") && j.contains("amplitudes"),
                    errc::parse_error,
                    "state: expected 'registry' and 'amplitudes'");
    auto registry = registry_from_json(j["registry"]);
    FockState::AmplitudeMap amps;
    for (const auto& entry : j["amplitudes"]) {
        detail::require(entry.contains("occ"), errc::parse_error,
                        "state: amplitude entry without 'occ'");
        amps[entry["occ"].get<OccupationVector>()] +=
            Amplitude{entry.value("re", 0.0), entry.value("im", 0.0)};
    }
    return FockState(std::move(registry), std::move(amps));
}

inline json sym_to_json(const SymTensor& tensor) {
    json j;
    j["registry"] = registry_to_json(*tensor.registry());
    j["photons"] = tensor.photons();
    json tuples = json::array();
    for (const auto& [slots, amp] : tensor.amplitudes())
        tuples.push_back(
            {{"slots", slots}, {"re", amp.real()}, {"im", amp.imag()}});
    j["tuples"] = std::move(tuples);
    return j;
}

inline SymTensor sym_from_json(const json& j) {
    detail::require(j.contains("registry") && j.contains("photons") &&
                        j.contains("tuples"),
                    errc::parse_error,
                    "tensor: expected 'registry', 'photons' and 'tuples'");
    auto registry = registry_from_json(j["registry"]);
    SymTensor::AmplitudeMap amps;
    for (const auto& entry : j["tuples"])
        amps[entry["slots"].get<SlotTuple>()] +=
            Amplitude{entry.value("re", 0.0), entry.value("im", 0.0)};
    return SymTensor(std::move(registry), j["photons"].get<int>(),
                     std::move(amps));
}

inline json schmidt_to_json(const SchmidtSpec& spec) {
    return json{{"coefficients", spec.coefficients},
                {"labels_a", spec.labels_a},
                {"labels_b", spec.labels_b}};
}

inline SchmidtSpec schmidt_from_json(const json& j) {
    detail::require(j.contains("coefficients") && j.contains("labels_a") &&
                        j.contains("labels_b"),
                    errc::parse_error,
                    "spec: expected 'coefficients', 'labels_a', 'labels_b'");
    return SchmidtSpec(j["coefficients"].get<std::vector<double>>(),
                       j["labels_a"].get<std::vector<std::string>>(),
                       j["labels_b"].get<std::vector<std::string>>());
}

/// Accepts {"labels": [...], "matrix": [[...]]} or a bare matrix; labels
/// default to H/V for dimension 2, a0, a1, ... otherwise.
inline TwoPhotonKernel kernel_from_json(const json& j) {
    json matrix;
    std::vector<std::string> labels;
    if (j.is_array()) {
        matrix = j;
    } else if (j.is_object() && j.contains("matrix")) {
        matrix = j["matrix"];
        if (j.contains("labels"))
            labels = j["labels"].get<std::vector<std::string>>();
    } else {
        mdp::detail::fail(errc::parse_error,
                          "kernel: expected a matrix or {labels, matrix}");
    }
    Eigen::MatrixXcd phi = detail::parse_matrix(matrix, "kernel");
    if (labels.empty()) {
        if (phi.rows() == 2) {
            labels = {"H", "V"};
        } else {
            for (Eigen::Index i = 0; i < phi.rows(); ++i)
                labels.push_back("a" + std::to_string(i));
        }
    }
    return TwoPhotonKernel(std::move(labels), std::move(phi));
}

/// Gate specs: {"bs": {"R": 0.5}} or {"dof": name, "matrix": [[...]]}.
inline ModeUnitary gate_from_json(const json& j, RegistryPtr registry) {
    detail::require(j.is_object(), errc::parse_error,
                    "gate: expected an object");
    if (j.contains("bs")) {
        detail::require(j["bs"].contains("R"), errc::parse_error,
                        "gate: 'bs' needs a reflectivity 'R'");
        return beamsplitter(std::move(registry), j["bs"]["R"].get<double>());
    }
    detail::require(j.contains("dof") && j.contains("matrix"),
                    errc::parse_error,
                    "gate: expected 'bs' or 'dof' + 'matrix'");
    return dof_unitary(std::move(registry), j["dof"].get<std::string>(),
                       detail::parse_matrix(j["matrix"], "gate"));
}

inline json density_to_json(const DensityMatrix& rho) {
    return json{{"basis", rho.basis()},
                {"matrix", detail::dump_matrix(rho.matrix())}};
}

inline DensityMatrix density_from_json(const json& j) {
    detail::require(j.contains("basis") && j.contains("matrix"),
                    errc::parse_error,
                    "density: expected 'basis' and 'matrix'");
    return DensityMatrix(j["basis"].get<std::vector<std::string>>(),
                         detail::parse_matrix(j["matrix"], "density"));
}

} // namespace mdp::io
