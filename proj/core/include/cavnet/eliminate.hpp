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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cavnet/hamiltonian.hpp"
#include "cavnet/model.hpp"

namespace cavnet {

/// Effective cavity-cavity coupling H_eff = sum_ij lambda_ij c_i^dagger c_j.
struct EffectiveCoupling {
  CMatrix lambda;
  RVector validity;  ///< per-cavity sum |g| / J
  double tolerance = 0.0;
};

/// Adiabatically eliminates the fiber modes:
///
///   lambda = diag(Delta) - G^dagger M^+ G
///
/// M^+ is the pseudoinverse with eigenvalues of magnitude <= svd_tol dropped
/// (default 1e-10 ||M|| per component). A dropped direction that still
/// couples to a cavity makes the elimination invalid and throws
/// NumericalError. Losses do not enter.
EffectiveCoupling adiabatic_eliminate(const CouplingBlocks& blocks,
                                      std::optional<double> svd_tol = std::nullopt);

RVector validity_ratio(const CouplingBlocks& blocks);
RVector validity_ratio(const NetworkSpec& spec);

/// Closed form for two cavities sharing one fiber: -(1/J) sum_k conj(g1_k) g2_k.
Complex two_cavity_jeff(std::span<const Complex> g1, std::span<const Complex> g2, double J);

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;  ///< |lambda_ab|
  double phase = 0.0;   ///< arg lambda_ab
};

struct ConnectivityGraph {
  std::vector<std::string> nodes;
  std::vector<Edge> edges;  ///< a < b, lexicographic order

  std::vector<std::size_t> degrees() const;
};

/// Edge (i, j) for every |lambda_ij| > eps with i < j. Default eps is
/// 1e-12 times the largest off-diagonal magnitude.
ConnectivityGraph connectivity_graph(const CMatrix& lambda, std::vector<std::string> nodes,
                                     std::optional<double> eps = std::nullopt);

}  // namespace cavnet
