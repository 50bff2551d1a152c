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

#include "cavnet/eliminate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cavnet {

namespace {

constexpr double kDefaultRelativeCutoff = 1e-10;
// Relative overlap of a dropped fiber direction with range(G) that counts as coupled.
constexpr double kDarkOverlap = 1e-8;

struct Range {
  Eigen::Index offset;
  Eigen::Index size;
};

// Component ranges when they tile the fiber block and M vanishes outside them.
std::vector<Range> diagonal_blocks(const CouplingBlocks& blocks) {
  const Eigen::Index f = blocks.mode_coupling.rows();
  std::vector<Range> ranges;
  Eigen::Index next = 0;
  for (const auto& c : blocks.components) {
    if (static_cast<Eigen::Index>(c.offset) != next) return {{0, f}};
    ranges.push_back({next, static_cast<Eigen::Index>(c.size)});
    next += static_cast<Eigen::Index>(c.size);
  }
  if (next != f) return {{0, f}};
  Eigen::MatrixXd mask = blocks.mode_coupling.cwiseAbs();
  for (const auto& r : ranges) mask.block(r.offset, r.offset, r.size, r.size).setZero();
  if (f > 0 && mask.maxCoeff() != 0.0) return {{0, f}};
  return ranges;
}

}  // namespace

EffectiveCoupling adiabatic_eliminate(const CouplingBlocks& blocks, std::optional<double> svd_tol) {
  const Eigen::Index c = blocks.detuning.size();
  const Eigen::Index f = blocks.mode_coupling.rows();
  if (blocks.mode_coupling.cols() != f || blocks.cavity_coupling.rows() != f ||
      blocks.cavity_coupling.cols() != c) {
    throw InvalidArgument("coupling block dimensions do not match");
  }
  if (svd_tol && !(*svd_tol >= 0.0)) throw InvalidArgument("svd tolerance must be >= 0");

  EffectiveCoupling out;
  out.lambda = blocks.detuning.cast<Complex>().asDiagonal();

  if (f > 0) {
    for (const auto& r : diagonal_blocks(blocks)) {
      const CMatrix m = blocks.mode_coupling.block(r.offset, r.offset, r.size, r.size);
      const CMatrix g = blocks.cavity_coupling.middleRows(r.offset, r.size);
      const double g_norm = g.norm();
      if (g_norm == 0.0) continue;

      Eigen::SelfAdjointEigenSolver<CMatrix> eig(m);
      if (eig.info() != Eigen::Success) throw NumericalError("fiber block diagonalisation failed");
      const RVector& ev = eig.eigenvalues();
      const double tol = svd_tol ? *svd_tol : kDefaultRelativeCutoff * ev.cwiseAbs().maxCoeff();
      out.tolerance = std::max(out.tolerance, tol);

      // lambda -= G^dagger V diag(1/ev) V^dagger G over retained directions.
      const CMatrix x = eig.eigenvectors().adjoint() * g;
      for (Eigen::Index i = 0; i < r.size; ++i) {
        if (std::abs(ev(i)) > tol) {
          out.lambda.noalias() -= x.row(i).adjoint() * x.row(i) / ev(i);
        } else if (x.row(i).norm() > kDarkOverlap * g_norm) {
          std::ostringstream msg;
          msg << "fiber mode with eigenvalue " << ev(i)
              << " rad/s is resonant and couples to the cavities; elimination is invalid";
          throw NumericalError(msg.str());
        }
      }
    }
  }
  out.lambda = (0.5 * (out.lambda + out.lambda.adjoint())).eval();
  out.validity = validity_ratio(blocks);
  return out;
}

RVector validity_ratio(const CouplingBlocks& blocks) {
  const Eigen::Index c = blocks.cavity_coupling.cols();
  RVector ratio = RVector::Zero(c);
  for (Eigen::Index i = 0; i < c; ++i) {
    double sum = 0.0;
    double j_min = std::numeric_limits<double>::infinity();
    for (const auto& comp : blocks.components) {
      const double part = blocks.cavity_coupling.col(i)
                              .segment(static_cast<Eigen::Index>(comp.offset),
                                       static_cast<Eigen::Index>(comp.size))
                              .cwiseAbs()
                              .sum();
      if (part > 0.0) {
        sum += part;
        j_min = std::min(j_min, comp.J);
      }
    }
    if (sum > 0.0) ratio(i) = sum / j_min;
  }
  return ratio;
}

RVector validity_ratio(const NetworkSpec& spec) { return validity_ratio(build_coupling_blocks(spec)); }

Complex two_cavity_jeff(std::span<const Complex> g1, std::span<const Complex> g2, double J) {
  if (g1.size() != g2.size()) throw InvalidArgument("coupling vectors differ in length");
  if (!(J > 0.0)) throw InvalidArgument("J must be positive");
  Complex overlap{};
  for (std::size_t k = 0; k < g1.size(); ++k) overlap += std::conj(g1[k]) * g2[k];
  return -overlap / J;
}

std::vector<std::size_t> ConnectivityGraph::degrees() const {
  std::vector<std::size_t> d(nodes.size(), 0);
  for (const auto& e : edges) {
    ++d[e.a];
    ++d[e.b];
  }
  return d;
}

ConnectivityGraph connectivity_graph(const CMatrix& lambda, std::vector<std::string> nodes,
                                     std::optional<double> eps) {
  const Eigen::Index n = lambda.rows();
  if (lambda.cols() != n) throw InvalidArgument("coupling matrix must be square");
  if (nodes.empty()) {
    for (Eigen::Index i = 0; i < n; ++i) nodes.push_back("c" + std::to_string(i + 1));
  }
  if (nodes.size() != static_cast<std::size_t>(n)) throw InvalidArgument("one node name per cavity");

  double largest = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) largest = std::max(largest, std::abs(lambda(i, j)));
  }
  const double cutoff = eps ? *eps : 1e-12 * largest;

  ConnectivityGraph graph;
  graph.nodes = std::move(nodes);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double w = std::abs(lambda(i, j));
      if (w > cutoff) {
        graph.edges.push_back(
            {static_cast<std::size_t>(i), static_cast<std::size_t>(j), w, std::arg(lambda(i, j))});
      }
    }
  }
  return graph;
}

}  // namespace cavnet
