// Copyright 2026 The cavnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Single-excitation Hamiltonian of a cavity network in the rotating frame.
//
//   H = [[ diag(Delta) - (i/2) diag(kappa),  G^dagger                         ],
//        [ G,                                 M - (i/2) diag(gamma_f)         ]]
//
// M is the fiber-mode coupling (J/2 times each element's involution, plus
// longitudinal detunings) and G_{m,i} the coupling of fiber mode m to cavity i.

#include <cstddef>
#include <vector>

#include "cavnet/model.hpp"

namespace cavnet {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

/// Fiber coupling J = pi c / L of a fiber with round-trip time 2L/c.
double j_from_length(double length);

struct ComponentBlock {
  std::size_t offset = 0;  ///< first mode inside the fiber block
  std::size_t size = 0;
  double J = 0.0;
  CMatrix involution;  ///< W (tensored with the longitudinal identity)
};

struct CouplingBlocks {
  CMatrix mode_coupling;    ///< M, F x F Hermitian
  CMatrix cavity_coupling;  ///< G, F x C
  RVector detuning;         ///< Delta, length C
  RVector decay;            ///< kappa, length C
  RVector fiber_loss;       ///< gamma_f, length F
  std::vector<ComponentBlock> components;

  std::size_t cavity_count() const { return static_cast<std::size_t>(detuning.size()); }
  std::size_t fiber_count() const { return static_cast<std::size_t>(mode_coupling.rows()); }
};

/// Validates the spec (throws SpecError) and assembles M, G and the diagonals.
CouplingBlocks build_coupling_blocks(const NetworkSpec& spec);

namespace detail {
/// Assembly without validation; the spec must already be known valid.
CouplingBlocks assemble_coupling_blocks(const NetworkSpec& spec);
}  // namespace detail

struct FullHamiltonian {
  CMatrix matrix;
  std::size_t cavities = 0;
  std::size_t fibers = 0;
};

FullHamiltonian build_full_hamiltonian(const CouplingBlocks& blocks);

}  // namespace cavnet
