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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cavnet/model.hpp"

namespace cavnet {

struct StateVector {
  CVector amplitudes;
  double time = 0.0;
};

/// Column-oriented table of observables on a shared time grid.
struct TimeSeries {
  std::vector<double> times;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return times.size(); }
  /// Index of the column with the given label; throws InvalidArgument.
  std::size_t column(std::string_view label) const;
  void add_column(std::string label, std::vector<double> values);
};

/// exp(-i H t) for a fixed H. Hermitian H is diagonalised once and every
/// evolution is exact to roundoff; other H use scaling and squaring.
class Propagator {
 public:
  explicit Propagator(CMatrix h);

  bool hermitian() const { return hermitian_; }
  std::size_t dimension() const { return static_cast<std::size_t>(h_.rows()); }
  const CMatrix& hamiltonian() const { return h_; }

  StateVector evolve(const StateVector& psi, double t) const;
  /// Full propagator matrix at time t.
  CMatrix matrix(double t) const;
  /// States at t_k = k T / steps for k = 0..steps.
  std::vector<CVector> evolve_grid(const CVector& psi0, double duration, int steps) const;

 private:
  CMatrix h_;
  bool hermitian_ = false;
  RVector energies_;
  CMatrix basis_;
};

StateVector propagate(const CMatrix& h, const StateVector& psi0, double t);

/// Classical fixed-step fourth-order Runge-Kutta on i d(psi)/dt = H psi.
/// Requires dt ||H||_2 < 0.1. The last step is shortened to land on t.
StateVector propagate_rk4(const CMatrix& h, const StateVector& psi0, double t, double dt);

/// Largest singular value.
double spectral_norm(const CMatrix& m);

struct Populations {
  RVector per_mode;
  double cavity_total = 0.0;
  double fiber_total = 0.0;
};

Populations populations(const CVector& psi, const ModeIndex& index);
Populations populations(const CVector& psi, std::size_t cavity_count);

/// Dominant angular frequency of one column: weighted-mean removal, Hann
/// window, zero-padded FFT, quadratic interpolation of the log-magnitude peak.
/// Needs >= 8 uniformly spaced samples covering at least one period.
double extract_oscillation(const TimeSeries& series, std::size_t column);
double extract_oscillation(std::span<const double> times, std::span<const double> values);

enum class Model { kFull, kEffective };

/// Evolves a cavity excitation and records P_cav_<i> (1-based), P_fiber and
/// norm on a uniform grid of steps + 1 points.
TimeSeries simulate(const NetworkSpec& spec, Model model, const CVector& cavity_state,
                    double duration, int steps);

/// Cavity basis state for the cavity with this id.
CVector excite(const NetworkSpec& spec, std::string_view cavity_id);

struct ComparisonReport {
  double max_cavity_deviation = 0.0;
  double max_fiber_population = 0.0;
  /// Oscillation frequency of the excited cavity's population; unset when the
  /// window is shorter than one period.
  std::optional<double> population_frequency;
  /// Half the population frequency: the exchange rate |lambda_ij| of a
  /// resonant pair.
  std::optional<double> coupling_frequency;
  double validity_ratio = 0.0;
};

struct Comparison {
  ComparisonReport report;
  TimeSeries series;
};

/// Evolves the full network and the eliminated model from the same cavity
/// state and compares cavity populations. Cavity decay enters both models;
/// fiber loss only the full one.
Comparison compare_full_vs_effective(const NetworkSpec& spec, const CVector& cavity_state,
                                     double duration, int steps);

/// Single-photon scattering identity of one component: with cavities and
/// losses removed, exp(-i M t) at t = pi / J equals -i W.
struct ScatterCheck {
  std::size_t component = 0;
  double J = 0.0;
  double time = 0.0;
  double max_error = 0.0;  ///< max_ij |exp(-i M t) + i W|
  bool detuned = false;    ///< longitudinal detunings present; identity not expected
};

std::vector<ScatterCheck> scatter_check(const NetworkSpec& spec);

}  // namespace cavnet
