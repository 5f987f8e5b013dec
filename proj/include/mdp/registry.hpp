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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdp/error.hpp"

namespace mdp {

/**
 * @brief Ordered collection of the degrees of freedom a photon carries.
 *
 * Each degree of freedom (DOF) has a unique name and a finite, ordered
 * basis of string labels. A composite mode is one basis choice per DOF;
 * modes are numbered in mixed radix with the first registered DOF most
 * significant. The ordering is fixed for the lifetime of the registry.
 */
class DofRegistry {
  public:
    struct Dof {
        std::string name;
        std::vector<std::string> basis;
    };

    explicit DofRegistry(std::vector<Dof> dofs) : dofs_(std::move(dofs)) {
        detail::require(!dofs_.empty(), errc::invalid_spec,
                        "registry needs at least one DOF");
        mode_count_ = 1;
        for (const auto& dof : dofs_) {
            detail::require(!dof.basis.empty(), errc::invalid_spec,
                            "DOF '" + dof.name + "' has an empty basis");
            for (std::size_t i = 0; i < dof.basis.size(); ++i)
                for (std::size_t j = i + 1; j < dof.basis.size(); ++j)
                    detail::require(dof.basis[i] != dof.basis[j],
                                    errc::invalid_spec,
                                    "duplicate label '" + dof.basis[i] +
                                        "' in DOF '" + dof.name + "'");
            mode_count_ *= static_cast<int>(dof.basis.size());
        }
        for (std::size_t i = 0; i < dofs_.size(); ++i)
            for (std::size_t j = i + 1; j < dofs_.size(); ++j)
                detail::require(dofs_[i].name != dofs_[j].name,
                                errc::invalid_spec,
                                "duplicate DOF name '" + dofs_[i].name + "'");
    }

    int dof_count() const { return static_cast<int>(dofs_.size()); }
    const Dof& dof(int index) const { return dofs_.at(index); }

    int dof_index(std::string_view name) const {
        for (std::size_t i = 0; i < dofs_.size(); ++i)
            if (dofs_[i].name == name) return static_cast<int>(i);
        detail::fail(errc::unknown_dof, "no DOF named '" + std::string(name) + "'");
    }

    bool has_dof(std::string_view name) const {
        return std::any_of(dofs_.begin(), dofs_.end(),
                           [&](const Dof& d) { return d.name == name; });
    }

    int dof_dimension(int index) const {
        return static_cast<int>(dofs_.at(index).basis.size());
    }

    /// Total number of composite modes (product of the DOF dimensions).
    int mode_count() const { return mode_count_; }

    /// Flattened mode index from one basis index per DOF, registry order.
    int mode_index(std::span<const int> assignment) const {
        detail::require(assignment.size() == dofs_.size(), errc::invalid_mode,
                        "assignment length does not match DOF count");
        int index = 0;
        for (std::size_t d = 0; d < dofs_.size(); ++d) {
            const int dim = dof_dimension(static_cast<int>(d));
            detail::require(assignment[d] >= 0 && assignment[d] < dim,
                            errc::invalid_mode,
                            "basis index out of range for DOF '" +
                                dofs_[d].name + "'");
            index = index * dim + assignment[d];
        }
        return index;
    }

    /// Per-DOF basis indices of a composite mode.
    std::vector<int> mode_assignment(int mode) const {
        detail::require(mode >= 0 && mode < mode_count_, errc::invalid_mode,
                        "mode index out of range");
        std::vector<int> assignment(dofs_.size());
        for (int d = dof_count() - 1; d >= 0; --d) {
            const int dim = dof_dimension(d);
            assignment[d] = mode % dim;
            mode /= dim;
        }
        return assignment;
    }

    /// Basis index of one DOF within a composite mode.
    int mode_component(int mode, int dof) const {
        detail::require(mode >= 0 && mode < mode_count_, errc::invalid_mode,
                        "mode index out of range");
        int stride = 1;
        for (int d = dof_count() - 1; d > dof; --d) stride *= dof_dimension(d);
        return (mode / stride) % dof_dimension(dof);
    }

    /// Mode from (dof name, label) pairs; every DOF must be assigned.
    int mode(std::span<const std::pair<std::string_view, std::string_view>>
                 labels) const {
        detail::require(labels.size() == dofs_.size(), errc::invalid_mode,
                        "every DOF needs exactly one label");
        std::vector<int> assignment(dofs_.size(), -1);
        for (const auto& [name, label] : labels) {
            const int d = dof_index(name);
            assignment[d] = label_index(d, label);
        }
        for (int v : assignment)
            detail::require(v >= 0, errc::invalid_mode, "DOF assigned twice");
        return mode_index(assignment);
    }

    int label_index(int dof, std::string_view label) const {
        const auto& basis = dofs_.at(dof).basis;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == label) return static_cast<int>(i);
        detail::fail(errc::invalid_mode, "no label '" + std::string(label) +
                                             "' in DOF '" + dofs_.at(dof).name +
                                             "'");
    }

    /// Readable name of a composite mode, e.g. "H.u".
    std::string mode_name(int mode) const {
        const auto assignment = mode_assignment(mode);
        std::string name;
        for (std::size_t d = 0; d < dofs_.size(); ++d) {
            if (d > 0) name += '.';
            name += dofs_[d].basis[assignment[d]];
        }
        return name;
    }

    bool operator==(const DofRegistry& other) const {
        if (dofs_.size() != other.dofs_.size()) return false;
        for (std::size_t d = 0; d < dofs_.size(); ++d) {
            if (dofs_[d].name != other.dofs_[d].name ||
                dofs_[d].basis != other.dofs_[d].basis)
                return false;
        }
        return true;
    }

  private:
    std::vector<Dof> dofs_;
    int mode_count_ = 0;
};

using RegistryPtr = std::shared_ptr<const DofRegistry>;

inline RegistryPtr
make_registry(std::vector<DofRegistry::Dof> dofs) {
    return std::make_shared<const DofRegistry>(std::move(dofs));
}

/// A composite mode of a specific registry: one basis label per DOF.
struct Mode {
    int index = 0;

    friend bool operator==(Mode a, Mode b) { return a.index == b.index; }
};

inline Mode mode_of(const DofRegistry& registry,
                    std::initializer_list<std::pair<std::string_view, std::string_view>>
                        labels) {
    std::vector<std::pair<std::string_view, std::string_view>> v(labels);
    return Mode{registry.mode(v)};
}

namespace detail {
inline void check_same_registry(const RegistryPtr& a, const RegistryPtr& b) {
    if (a == b) return;
    require(a && b && *a == *b, errc::registry_mismatch,
            "operands use different registries");
}
} // namespace detail

} // namespace mdp
