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

// Linear-optics scattering matrices and their fiber-mode coupling form.
//
// Beam-splitter convention:
//
//   S(theta, phi) = [[ cos(theta),                -i e^{+i phi} sin(theta) ],
//                    [ -i e^{-i phi} sin(theta),   cos(theta)              ]]
//
// so that S(pi/4, 0) = (1/sqrt2) [[1, -i], [-i, 1]].
//
// An element with n ports on each side owns 2n directional fiber modes,
// ordered input side first. Its coupling matrix is the Hermitian involution
//
//   W = [[0, S^dagger], [S, 0]],
//
// whose lower-left block S maps input modes onto output modes.

#include <span>
#include <string>
#include <vector>

#include "cavnet/model.hpp"

namespace cavnet {

inline constexpr double kUnitaryTolerance = 1e-12;

/// max_ij |(S^dagger S - I)_ij|
double unitarity_error(const CMatrix& s);
/// max(||W - W^dagger||_max, ||W^2 - I||_max); infinity for odd or non-square W.
double involution_error(const CMatrix& w);

class Unitary {
 public:
  /// Throws InvalidArgument unless `m` is square and unitary to `tol`.
  static Unitary checked(CMatrix m, double tol = kUnitaryTolerance);
  static Unitary identity(int n);

  const CMatrix& matrix() const { return m_; }
  int size() const { return static_cast<int>(m_.rows()); }
  Complex operator()(int row, int col) const { return m_(row, col); }

 private:
  explicit Unitary(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

class InvolutionW {
 public:
  /// Throws InvalidArgument unless `w` is a 2n x 2n Hermitian involution.
  static InvolutionW checked(CMatrix w, double tol = kUnitaryTolerance);

  const CMatrix& matrix() const { return w_; }
  int size() const { return static_cast<int>(w_.rows()); }
  int ports() const { return size() / 2; }

 private:
  explicit InvolutionW(CMatrix w) : w_(std::move(w)) {}
  CMatrix w_;
};

Unitary beam_splitter(double theta, double phi);
Unitary phase_shifter(int ports, int port, double phi);
/// Balanced multiport S_jk = exp(2 pi i jk / n) / sqrt(n).
Unitary dft_multiport(int ports);

struct Stage {
  Unitary op;
  int offset = 0;
};

/// Embeds every stage at its port offset and multiplies them in order; the
/// first stage acts first (rightmost factor).
Unitary compose(std::span<const Stage> stages, int ports);

InvolutionW expand_to_w(const Unitary& s);

/// Scattering matrix of a (non-involution) element.
Unitary element_scattering(const ElementDef& element);
/// Coupling involution of any element.
InvolutionW element_involution(const ElementDef& element);

/// One element of a triangular interferometer mesh. Beam splitters act on
/// ports (port, port + 1).
struct MeshElement {
  enum class Kind { kBeamSplitter, kPhaseShifter };
  Kind kind = Kind::kPhaseShifter;
  int port = 0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Triangular (Reck-style) factorisation into at most n(n-1)/2 nearest
/// neighbour beam splitters followed by n output phase shifters.
std::vector<MeshElement> decompose_reck(const Unitary& u);
Unitary compose(std::span<const MeshElement> mesh, int ports);

struct Synthesis {
  ComponentDef component;
  int ancilla_modes = 0;
};

/// Dilates a Hermitian target coupling into a custom-involution component
/// W = [[A, B], [B, -A]] with A = -(J / 2g^2) target and B = sqrt(I - A^2).
/// Input ports attach to `cavity_ids` with coupling g; output ports are
/// unattached ancillas. Requires ||target||_2 <= 2 g^2 / J.
Synthesis synthesize_from_bilinear(const CMatrix& target, double J, double g,
                                   std::span<const std::string> cavity_ids = {});

/// Wraps the synthesized component into a spec with resonant cavities c1..cn.
NetworkSpec synthesize_network(const CMatrix& target, double J, double g);

}  // namespace cavnet
