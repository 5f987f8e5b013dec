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

#include <stdexcept>
#include <string>

namespace mdp {

/// Error categories raised by the library. Each value corresponds to a
/// documented precondition or invariant of the operation that throws it.
enum class errc {
    invalid_mode,
    registry_mismatch,
    zero_state,
    mixed_photon_number,
    bad_photon_number,
    not_symmetric,
    non_square,
    r_out_of_range,
    no_path_dof,
    not_unitary,
    dimension_mismatch,
    unknown_dof,
    zero_kernel,
    zero_ket,
    invalid_spec,
    spec_too_small,
    out_of_range,
    nonpositive_p1,
    zero_matrix,
    bad_sector,
    basis_mismatch,
    degenerate_curve,
    parse_error,
};

inline const char* to_string(errc code) {
    switch (code) {
    case errc::invalid_mode: return "InvalidMode";
    case errc::registry_mismatch: return "RegistryMismatch";
    case errc::zero_state: return "ZeroState";
    case errc::mixed_photon_number: return "MixedPhotonNumber";
    case errc::bad_photon_number: return "BadPhotonNumber";
    case errc::not_symmetric: return "NotSymmetric";
    case errc::non_square: return "NonSquare";
    case errc::r_out_of_range: return "ROutOfRange";
    case errc::no_path_dof: return "NoPathDof";
    case errc::not_unitary: return "NotUnitary";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::unknown_dof: return "UnknownDof";
    case errc::zero_kernel: return "ZeroKernel";
    case errc::zero_ket: return "ZeroKet";
    case errc::invalid_spec: return "InvalidSpec";
    case errc::spec_too_small: return "SpecTooSmall";
    case errc::out_of_range: return "OutOfRange";
    case errc::nonpositive_p1: return "NonpositiveP1";
    case errc::zero_matrix: return "ZeroMatrix";
    case errc::bad_sector: return "BadSector";
    case errc::basis_mismatch: return "BasisMismatch";
    case errc::degenerate_curve: return "DegenerateCurve";
    case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

/// Exception type carrying an errc tag plus a human-readable message.
class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

namespace detail {
[[noreturn]] inline void fail(errc code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, errc code, const std::string& message) {
    if (!condition) fail(code, message);
}
} // namespace detail

} // namespace mdp
