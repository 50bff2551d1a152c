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

#include "cavnet/linop.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace cavnet {

namespace {

constexpr Complex kI{0.0, 1.0};

// Roundoff from products of many stages; construction checks use 1e-12.
constexpr double kCompositionTolerance = 1e-9;

}  // namespace

double unitarity_error(const CMatrix& s) {
  if (s.rows() != s.cols() || s.rows() == 0) return std::numeric_limits<double>::infinity();
  const CMatrix d = s.adjoint() * s - CMatrix::Identity(s.rows(), s.cols());
  return d.cwiseAbs().maxCoeff();
}

double involution_error(const CMatrix& w) {
  if (w.rows() != w.cols() || w.rows() == 0 || w.rows() % 2 != 0) {
    return std::numeric_limits<double>::infinity();
  }
  const double hermitian = (w - w.adjoint()).cwiseAbs().maxCoeff();
  const double square = (w * w - CMatrix::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff();
  return std::max(hermitian, square);
}

Unitary Unitary::checked(CMatrix m, double tol) {
  const double err = unitarity_error(m);
  if (!(err <= tol)) {
    throw InvalidArgument("matrix is not unitary (error " + std::to_string(err) + ")");
  }
  return Unitary(std::move(m));
}

Unitary Unitary::identity(int n) {
  if (n < 1) throw InvalidArgument("identity needs n >= 1");
  return Unitary(CMatrix::Identity(n, n));
}

InvolutionW InvolutionW::checked(CMatrix w, double tol) {
  const double err = involution_error(w);
  if (!(err <= tol)) {
    throw InvalidArgument("matrix is not a Hermitian involution (error " + std::to_string(err) + ")");
  }
  return InvolutionW(std::move(w));
}

Unitary beam_splitter(double theta, double phi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  CMatrix m(2, 2);
  m << c, -kI * std::polar(1.0, phi) * s,
       -kI * std::polar(1.0, -phi) * s, c;
  return Unitary::checked(std::move(m));
}

Unitary phase_shifter(int ports, int port, double phi) {
  if (ports < 1 || port < 0 || port >= ports) {
    throw InvalidArgument("phase shifter port " + std::to_string(port) + " out of range for " +
                          std::to_string(ports) + " ports");
  }
  CMatrix m = CMatrix::Identity(ports, ports);
  m(port, port) = std::polar(1.0, phi);
  return Unitary::checked(std::move(m));
}

Unitary dft_multiport(int ports) {
  if (ports < 2) throw InvalidArgument("dft multiport needs n >= 2");
  const double norm = 1.0 / std::sqrt(static_cast<double>(ports));
  CMatrix m(ports, ports);
  for (int j = 0; j < ports; ++j) {
    for (int k = 0; k < ports; ++k) {
      // Reduce jk mod n first so large n keeps full phase accuracy.
      const int e = (j * k) % ports;
      m(j, k) = std::polar(norm, 2.0 * std::numbers::pi * e / ports);
    }
  }
  return Unitary::checked(std::move(m));
}

Unitary compose(std::span<const Stage> stages, int ports) {
  if (ports < 1) throw InvalidArgument("compose needs at least one port");
  CMatrix total = CMatrix::Identity(ports, ports);
  for (const auto& stage : stages) {
    const int k = stage.op.size();
    if (stage.offset < 0 || stage.offset + k > ports) {
      throw InvalidArgument("stage of width " + std::to_string(k) + " at offset " +
                            std::to_string(stage.offset) + " overflows " + std::to_string(ports) +
                            " ports");
    }
    // Left-multiply by the embedded stage, touching only its rows.
    total.middleRows(stage.offset, k) = stage.op.matrix() * total.middleRows(stage.offset, k);
  }
  return Unitary::checked(std::move(total), kCompositionTolerance);
}

InvolutionW expand_to_w(const Unitary& s) {
  const int n = s.size();
  CMatrix w = CMatrix::Zero(2 * n, 2 * n);
  w.topRightCorner(n, n) = s.matrix().adjoint();
  w.bottomLeftCorner(n, n) = s.matrix();
  return InvolutionW::checked(std::move(w));
}

Unitary element_scattering(const ElementDef& element) {
  switch (element.kind) {
    case ElementKind::kBareFiber: return Unitary::identity(1);
    case ElementKind::kBeamSplitter: return beam_splitter(element.theta, element.phi);
    case ElementKind::kPhaseShifter: return phase_shifter(element.ports, element.port, element.phi);
    case ElementKind::kDftMultiport: return dft_multiport(element.ports);
    case ElementKind::kComposed: return Unitary::checked(element.matrix);
    case ElementKind::kCustomInvolution: break;
  }
  throw InvalidArgument("custom-involution elements have no scattering matrix");
}

InvolutionW element_involution(const ElementDef& element) {
  if (element.kind == ElementKind::kCustomInvolution) return InvolutionW::checked(element.matrix);
  return expand_to_w(element_scattering(element));
}

std::vector<MeshElement> decompose_reck(const Unitary& u) {
  const int n = u.size();
  CMatrix v = u.matrix();
  // Nulling rotations T_k with T_K ... T_1 U = D, recorded in order.
  std::vector<MeshElement> nulling;
  for (int col = 0; col + 1 < n; ++col) {
    for (int r = n - 1; r > col; --r) {
      const Complex a = v(r - 1, col);
      const Complex b = v(r, col);
      if (std::abs(b) == 0.0) continue;
      const double theta = std::atan2(std::abs(b), std::abs(a));
      const double phi = std::numbers::pi / 2 - std::arg(b) + std::arg(a);
      const Unitary t = beam_splitter(theta, phi);
      v.middleRows(r - 1, 2) = t.matrix() * v.middleRows(r - 1, 2);
      v(r, col) = 0.0;
      nulling.push_back({MeshElement::Kind::kBeamSplitter, r - 1, theta, phi});
    }
  }

  // U = T_1^dagger ... T_K^dagger D, and bs(theta, phi)^dagger = bs(-theta, phi).
  std::vector<MeshElement> mesh;
  mesh.reserve(nulling.size() + static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    mesh.push_back({MeshElement::Kind::kPhaseShifter, i, 0.0, std::arg(v(i, i))});
  }
  for (auto it = nulling.rbegin(); it != nulling.rend(); ++it) {
    mesh.push_back({MeshElement::Kind::kBeamSplitter, it->port, -it->theta, it->phi});
  }
  return mesh;
}

Unitary compose(std::span<const MeshElement> mesh, int ports) {
  std::vector<Stage> stages;
  stages.reserve(mesh.size());
  for (const auto& e : mesh) {
    if (e.kind == MeshElement::Kind::kBeamSplitter) {
      stages.push_back({beam_splitter(e.theta, e.phi), e.port});
    } else {
      stages.push_back({phase_shifter(1, 0, e.phi), e.port});
    }
  }
  return compose(stages, ports);
}

Synthesis synthesize_from_bilinear(const CMatrix& target, double J, double g,
                                   std::span<const std::string> cavity_ids) {
  const auto n = target.rows();
  if (n == 0 || target.cols() != n) throw InvalidArgument("target must be a non-empty square matrix");
  if (!(J > 0.0) || !(g > 0.0) || !std::isfinite(J) || !std::isfinite(g)) {
    throw InvalidArgument("J and g must be positive");
  }
  if (!target.allFinite()) throw InvalidArgument("target has non-finite entries");
  const double scale = std::max(1.0, target.cwiseAbs().maxCoeff());
  if ((target - target.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidArgument("target coupling matrix is not Hermitian");
  }
  if (!cavity_ids.empty() && cavity_ids.size() != static_cast<std::size_t>(n)) {
    throw InvalidArgument("need one cavity id per target row");
  }

  const double bound = 2.0 * g * g / J;
  const CMatrix hermitian = 0.5 * (target + target.adjoint());
  const CMatrix a = -(1.0 / bound) * hermitian;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(a);
  const RVector& ev = eig.eigenvalues();
  const double norm = ev.cwiseAbs().maxCoeff();
  if (norm > 1.0 + 1e-12) {
    throw InvalidArgument("target norm " + std::to_string(norm * bound) +
                          " exceeds the reachable bound 2 g^2 / J = " + std::to_string(bound));
  }
  RVector root(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double arg = 1.0 - ev(i) * ev(i);
    if (arg < 1e-14) arg = 0.0;
    root(i) = std::sqrt(arg);
  }
  CMatrix b = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().adjoint();
  b = 0.5 * (b + b.adjoint()).eval();

  CMatrix w(2 * n, 2 * n);
  w.topLeftCorner(n, n) = a;
  w.topRightCorner(n, n) = b;
  w.bottomLeftCorner(n, n) = b;
  w.bottomRightCorner(n, n) = -a;

  Synthesis out;
  out.component.element = ElementDef::custom_involution(std::move(w));
  out.component.fiber_coupling = J;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::string id = cavity_ids.empty() ? "c" + std::to_string(i + 1)
                                        : cavity_ids[static_cast<std::size_t>(i)];
    out.component.inputs.push_back(Attachment::to(std::move(id), g));
    out.component.outputs.push_back(Attachment::open());
  }
  out.ancilla_modes = static_cast<int>(n);
  return out;
}

NetworkSpec synthesize_network(const CMatrix& target, double J, double g) {
  NetworkSpec spec;
  spec.name = "synthesized";
  auto synthesis = synthesize_from_bilinear(target, J, g);
  for (Eigen::Index i = 0; i < target.rows(); ++i) {
    spec.cavities.push_back({"c" + std::to_string(i + 1), 0.0, 0.0});
  }
  spec.components.push_back(std::move(synthesis.component));
  return spec;
}

}  // namespace cavnet
