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

#include "cavnet/hamiltonian.hpp"

#include <cmath>
#include <numbers>

#include "cavnet/linop.hpp"

namespace cavnet {

double j_from_length(double length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidArgument("fiber length must be positive");
  }
  return std::numbers::pi * kSpeedOfLight / length;
}

CouplingBlocks build_coupling_blocks(const NetworkSpec& spec) {
  require_valid(spec);
  return detail::assemble_coupling_blocks(spec);
}

CouplingBlocks detail::assemble_coupling_blocks(const NetworkSpec& spec) {
  const ModeIndex index(spec);
  const auto cavities = static_cast<Eigen::Index>(index.cavity_count());
  const auto fibers = static_cast<Eigen::Index>(index.fiber_count());

  CouplingBlocks blocks;
  blocks.mode_coupling = CMatrix::Zero(fibers, fibers);
  blocks.cavity_coupling = CMatrix::Zero(fibers, cavities);
  blocks.detuning.resize(cavities);
  blocks.decay.resize(cavities);
  blocks.fiber_loss = RVector::Zero(fibers);
  for (Eigen::Index i = 0; i < cavities; ++i) {
    blocks.detuning(i) = spec.cavities[static_cast<std::size_t>(i)].detuning;
    blocks.decay(i) = spec.cavities[static_cast<std::size_t>(i)].decay;
  }

  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    const auto& comp = spec.components[c];
    const double J = comp.coupling_rate();
    const CMatrix w = element_involution(comp.element).matrix();
    const auto ports = static_cast<std::size_t>(comp.element.port_count());
    const std::size_t mult = comp.multiplicity();
    const std::size_t size = comp.fiber_mode_count();
    const auto offset = index.component_offset(c);

    // W tensored with the identity on longitudinal modes.
    CMatrix wk = CMatrix::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    for (std::size_t i = 0; i < 2 * ports; ++i) {
      for (std::size_t j = 0; j < 2 * ports; ++j) {
        const Complex wij = w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (wij == Complex{}) continue;
        for (std::size_t m = 0; m < mult; ++m) {
          wk(static_cast<Eigen::Index>(i * mult + m), static_cast<Eigen::Index>(j * mult + m)) = wij;
        }
      }
    }

    auto block = blocks.mode_coupling.block(static_cast<Eigen::Index>(offset),
                                            static_cast<Eigen::Index>(offset),
                                            static_cast<Eigen::Index>(size),
                                            static_cast<Eigen::Index>(size));
    block = (0.5 * J) * wk;
    blocks.fiber_loss.segment(static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(size))
        .setConstant(comp.loss);

    for (Side side : {Side::kInput, Side::kOutput}) {
      const auto& attachments = side == Side::kInput ? comp.inputs : comp.outputs;
      for (std::size_t p = 0; p < ports; ++p) {
        const auto& a = attachments[p];
        for (std::size_t m = 0; m < mult; ++m) {
          const auto row = static_cast<Eigen::Index>(index.fiber_offset({c, side, p, m}));
          if (!comp.modes.empty()) {
            blocks.mode_coupling(row, row) += comp.modes[m].detuning;
          }
          if (!a.attached()) continue;
          Complex g = a.g;
          if (!comp.modes.empty()) {
            const auto& over = side == Side::kInput ? comp.modes[m].g_in : comp.modes[m].g_out;
            if (over) g = *over;
          }
          const auto col = static_cast<Eigen::Index>(*spec.cavity_position(*a.cavity));
          blocks.cavity_coupling(row, col) = g;
        }
      }
    }
    blocks.components.push_back({offset, size, J, std::move(wk)});
  }
  return blocks;
}

FullHamiltonian build_full_hamiltonian(const CouplingBlocks& blocks) {
  const Eigen::Index c = blocks.detuning.size();
  const Eigen::Index f = blocks.mode_coupling.rows();
  if (blocks.mode_coupling.cols() != f || blocks.cavity_coupling.rows() != f ||
      blocks.cavity_coupling.cols() != c || blocks.decay.size() != c || blocks.fiber_loss.size() != f) {
    throw InvalidArgument("coupling block dimensions do not match");
  }
  constexpr Complex kHalfI{0.0, 0.5};
  FullHamiltonian h;
  h.cavities = static_cast<std::size_t>(c);
  h.fibers = static_cast<std::size_t>(f);
  h.matrix = CMatrix::Zero(c + f, c + f);
  h.matrix.topLeftCorner(c, c).diagonal() =
      blocks.detuning.cast<Complex>() - kHalfI * blocks.decay.cast<Complex>();
  h.matrix.topRightCorner(c, f) = blocks.cavity_coupling.adjoint();
  h.matrix.bottomLeftCorner(f, c) = blocks.cavity_coupling;
  h.matrix.bottomRightCorner(f, f) = blocks.mode_coupling;
  h.matrix.bottomRightCorner(f, f).diagonal() -= kHalfI * blocks.fiber_loss.cast<Complex>();
  return h;
}

}  // namespace cavnet
