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

#include "cavnet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>
#include <unsupported/Eigen/MatrixFunctions>

#include "cavnet/eliminate.hpp"
#include "cavnet/hamiltonian.hpp"

namespace cavnet {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

void check_square_finite(const CMatrix& h) {
  if (h.rows() != h.cols()) throw InvalidArgument("Hamiltonian must be square");
  if (!h.allFinite()) throw NumericalError("Hamiltonian has non-finite entries");
}

void check_state(const CMatrix& h, const CVector& psi) {
  if (psi.size() != h.rows()) {
    throw InvalidArgument("state has dimension " + std::to_string(psi.size()) + ", Hamiltonian " +
                          std::to_string(h.rows()));
  }
  if (!psi.allFinite()) throw NumericalError("state has non-finite entries");
}

}  // namespace

std::size_t TimeSeries::column(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  throw InvalidArgument("no column '" + std::string(label) + "'");
}

void TimeSeries::add_column(std::string label, std::vector<double> values) {
  if (values.size() != times.size()) throw InvalidArgument("column length differs from time grid");
  labels.push_back(std::move(label));
  columns.push_back(std::move(values));
}

Propagator::Propagator(CMatrix h) : h_(std::move(h)) {
  check_square_finite(h_);
  const double scale = h_.size() == 0 ? 0.0 : h_.cwiseAbs().maxCoeff();
  hermitian_ = h_.size() == 0 || (h_ - h_.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale;
  if (hermitian_ && h_.size() > 0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h_);
    if (eig.info() != Eigen::Success) throw NumericalError("Hamiltonian diagonalisation failed");
    energies_ = eig.eigenvalues();
    basis_ = eig.eigenvectors();
  }
}

CMatrix Propagator::matrix(double t) const {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("evolution time must be finite and >= 0");
  if (h_.size() == 0) return h_;
  if (t == 0.0) return CMatrix::Identity(h_.rows(), h_.cols());
  if (hermitian_) {
    const CVector phases = (kMinusI * t * energies_.cast<Complex>()).array().exp();
    return basis_ * phases.asDiagonal() * basis_.adjoint();
  }
  return (kMinusI * t * h_).exp();
}

StateVector Propagator::evolve(const StateVector& psi, double t) const {
  check_state(h_, psi.amplitudes);
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("evolution time must be finite and >= 0");
  if (h_.size() == 0 || t == 0.0) return {psi.amplitudes, psi.time + t};
  if (hermitian_) {
    const CVector coeffs = basis_.adjoint() * psi.amplitudes;
    const CVector phases = (kMinusI * t * energies_.cast<Complex>()).array().exp();
    return {basis_ * phases.cwiseProduct(coeffs), psi.time + t};
  }
  return {(kMinusI * t * h_).exp() * psi.amplitudes, psi.time + t};
}

std::vector<CVector> Propagator::evolve_grid(const CVector& psi0, double duration, int steps) const {
  check_state(h_, psi0);
  if (steps < 1) throw InvalidArgument("need at least one step");
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw InvalidArgument("duration must be >= 0");
  std::vector<CVector> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  if (h_.size() == 0) {
    out.assign(static_cast<std::size_t>(steps) + 1, psi0);
    return out;
  }
  if (hermitian_) {
    // Every grid point is evolved from t = 0 so no error accumulates.
    const CVector coeffs = basis_.adjoint() * psi0;
    out.push_back(psi0);
    for (int k = 1; k <= steps; ++k) {
      const double t = duration * k / steps;
      const CVector phases = (kMinusI * t * energies_.cast<Complex>()).array().exp();
      out.push_back(basis_ * phases.cwiseProduct(coeffs));
    }
    return out;
  }
  const CMatrix step = (kMinusI * (duration / steps) * h_).exp();
  out.push_back(psi0);
  for (int k = 1; k <= steps; ++k) out.push_back(step * out.back());
  return out;
}

StateVector propagate(const CMatrix& h, const StateVector& psi0, double t) {
  return Propagator(h).evolve(psi0, t);
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

StateVector propagate_rk4(const CMatrix& h, const StateVector& psi0, double t, double dt) {
  check_square_finite(h);
  check_state(h, psi0.amplitudes);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("rk4 step must be positive");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("evolution time must be finite and >= 0");
  const double norm = spectral_norm(h);
  if (!(dt * norm < 0.1)) {
    throw InvalidArgument("rk4 stability guard violated: dt * ||H|| = " + std::to_string(dt * norm) +
                          " >= 0.1");
  }
  if (t == 0.0) return psi0;

  const auto steps = static_cast<long long>(std::ceil(t / dt * (1.0 - 1e-12)));
  const double tail = t - static_cast<double>(steps - 1) * dt;
  const CMatrix a = kMinusI * h;
  CVector psi = psi0.amplitudes;
  CVector k1(psi.size()), k2(psi.size()), k3(psi.size()), k4(psi.size()), tmp(psi.size());
  for (long long s = 0; s < steps; ++s) {
    const double step = s + 1 == steps ? tail : dt;
    k1.noalias() = a * psi;
    tmp = psi + (0.5 * step) * k1;
    k2.noalias() = a * tmp;
    tmp = psi + (0.5 * step) * k2;
    k3.noalias() = a * tmp;
    tmp = psi + step * k3;
    k4.noalias() = a * tmp;
    psi += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return {psi, psi0.time + t};
}

Populations populations(const CVector& psi, std::size_t cavity_count) {
  if (cavity_count > static_cast<std::size_t>(psi.size())) {
    throw InvalidArgument("more cavities than modes");
  }
  Populations p;
  p.per_mode = psi.cwiseAbs2();
  const auto c = static_cast<Eigen::Index>(cavity_count);
  p.cavity_total = p.per_mode.head(c).sum();
  p.fiber_total = p.per_mode.tail(psi.size() - c).sum();
  return p;
}

Populations populations(const CVector& psi, const ModeIndex& index) {
  if (index.size() != static_cast<std::size_t>(psi.size())) {
    throw InvalidArgument("state dimension does not match the mode index");
  }
  return populations(psi, index.cavity_count());
}

double extract_oscillation(std::span<const double> times, std::span<const double> values) {
  const std::size_t n = values.size();
  if (times.size() != n) throw InvalidArgument("times and values differ in length");
  if (n < 8) throw InvalidArgument("need at least 8 samples to extract an oscillation");
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw InvalidArgument("times must be strictly increasing");
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(times[k] - times[k - 1] - dt) > 1e-6 * dt) {
      throw InvalidArgument("times must be uniformly spaced");
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument("series has non-finite values");
  }

  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi - *lo <= 1e-12 * std::max(1.0, std::abs(*hi))) {
    throw InvalidArgument("no oscillation: series is constant");
  }

  std::vector<double> window(n);
  double wsum = 0.0;
  double wvsum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    window[k] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * k / (n - 1)));
    wsum += window[k];
    wvsum += window[k] * values[k];
  }
  const double mean = wvsum / wsum;

  std::size_t padded = 1;
  while (padded < n) padded <<= 1;
  padded *= 8;
  std::vector<double> x(padded, 0.0);
  for (std::size_t k = 0; k < n; ++k) x[k] = window[k] * (values[k] - mean);

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, x);

  const std::size_t half = padded / 2;
  std::size_t peak = 1;
  for (std::size_t k = 2; k <= half; ++k) {
    if (std::abs(spectrum[k]) > std::abs(spectrum[peak])) peak = k;
  }
  double offset = 0.0;
  if (peak > 1 && peak < half) {
    const double a = std::abs(spectrum[peak - 1]);
    const double b = std::abs(spectrum[peak]);
    const double c = std::abs(spectrum[peak + 1]);
    if (a > 0.0 && c > 0.0) {
      const double la = std::log(a), lb = std::log(b), lc = std::log(c);
      const double denom = la - 2.0 * lb + lc;
      if (denom < 0.0) offset = 0.5 * (la - lc) / denom;
    }
  }
  const double frequency = 2.0 * std::numbers::pi * (static_cast<double>(peak) + offset) /
                           (static_cast<double>(padded) * dt);
  const double span = times[n - 1] - times[0];
  if (frequency * span < 2.0 * std::numbers::pi * (1.0 - 1e-9)) {
    throw InvalidArgument("series covers less than one oscillation period");
  }
  return frequency;
}

double extract_oscillation(const TimeSeries& series, std::size_t column) {
  if (column >= series.columns.size()) throw InvalidArgument("column index out of range");
  return extract_oscillation(series.times, series.columns[column]);
}

CVector excite(const NetworkSpec& spec, std::string_view cavity_id) {
  const auto pos = spec.cavity_position(cavity_id);
  if (!pos) throw InvalidArgument("unknown cavity '" + std::string(cavity_id) + "'");
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(spec.cavities.size()));
  psi(static_cast<Eigen::Index>(*pos)) = 1.0;
  return psi;
}

namespace {

CVector normalized_cavity_state(const CVector& state, std::size_t cavities) {
  if (static_cast<std::size_t>(state.size()) != cavities) {
    throw InvalidArgument("initial state needs one amplitude per cavity");
  }
  const double norm = state.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidArgument("initial state has zero norm");
  return state / norm;
}

CMatrix effective_hamiltonian(const CouplingBlocks& blocks) {
  CMatrix h = adiabatic_eliminate(blocks).lambda;
  h.diagonal() -= Complex{0.0, 0.5} * blocks.decay.cast<Complex>();
  return h;
}

// Populations of `cavities` cavities plus the fiber total and the norm.
struct GridObservables {
  std::vector<std::vector<double>> cavity;
  std::vector<double> fiber;
  std::vector<double> norm;
};

GridObservables observe(const std::vector<CVector>& states, std::size_t cavities) {
  GridObservables obs;
  obs.cavity.assign(cavities, std::vector<double>(states.size()));
  obs.fiber.resize(states.size());
  obs.norm.resize(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto p = populations(states[k], cavities);
    for (std::size_t i = 0; i < cavities; ++i) obs.cavity[i][k] = p.per_mode(static_cast<Eigen::Index>(i));
    obs.fiber[k] = p.fiber_total;
    obs.norm[k] = std::sqrt(p.cavity_total + p.fiber_total);
  }
  return obs;
}

std::vector<double> grid(double duration, int steps) {
  std::vector<double> t(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) t[static_cast<std::size_t>(k)] = duration * k / steps;
  return t;
}

GridObservables run_model(const CouplingBlocks& blocks, Model model, const CVector& cavity_state,
                          double duration, int steps) {
  const std::size_t c = blocks.cavity_count();
  if (model == Model::kFull) {
    const auto h = build_full_hamiltonian(blocks);
    CVector psi0 = CVector::Zero(h.matrix.rows());
    psi0.head(static_cast<Eigen::Index>(c)) = cavity_state;
    return observe(Propagator(h.matrix).evolve_grid(psi0, duration, steps), c);
  }
  return observe(Propagator(effective_hamiltonian(blocks)).evolve_grid(cavity_state, duration, steps), c);
}

}  // namespace

TimeSeries simulate(const NetworkSpec& spec, Model model, const CVector& cavity_state, double duration,
                    int steps) {
  const auto blocks = build_coupling_blocks(spec);
  const CVector psi0 = normalized_cavity_state(cavity_state, blocks.cavity_count());
  auto obs = run_model(blocks, model, psi0, duration, steps);

  TimeSeries series;
  series.times = grid(duration, steps);
  for (std::size_t i = 0; i < obs.cavity.size(); ++i) {
    series.add_column("P_cav_" + std::to_string(i + 1), std::move(obs.cavity[i]));
  }
  series.add_column("P_fiber", std::move(obs.fiber));
  series.add_column("norm", std::move(obs.norm));
  return series;
}

Comparison compare_full_vs_effective(const NetworkSpec& spec, const CVector& cavity_state,
                                     double duration, int steps) {
  const auto blocks = build_coupling_blocks(spec);
  const std::size_t c = blocks.cavity_count();
  const CVector psi0 = normalized_cavity_state(cavity_state, c);
  auto full = run_model(blocks, Model::kFull, psi0, duration, steps);
  auto eff = run_model(blocks, Model::kEffective, psi0, duration, steps);

  Comparison out;
  auto& report = out.report;
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t k = 0; k < full.cavity[i].size(); ++k) {
      report.max_cavity_deviation =
          std::max(report.max_cavity_deviation, std::abs(full.cavity[i][k] - eff.cavity[i][k]));
    }
  }
  report.max_fiber_population = *std::max_element(full.fiber.begin(), full.fiber.end());
  const RVector ratio = validity_ratio(blocks);
  report.validity_ratio = ratio.size() ? ratio.maxCoeff() : 0.0;

  Eigen::Index excited = 0;
  psi0.cwiseAbs2().maxCoeff(&excited);
  const auto times = grid(duration, steps);
  try {
    const double f = extract_oscillation(times, full.cavity[static_cast<std::size_t>(excited)]);
    report.population_frequency = f;
    report.coupling_frequency = 0.5 * f;
  } catch (const InvalidArgument&) {
    // Window too short or no dynamics: leave the frequency unset.
  }

  out.series.times = times;
  for (std::size_t i = 0; i < c; ++i) {
    out.series.add_column("P_cav_" + std::to_string(i + 1), std::move(full.cavity[i]));
  }
  for (std::size_t i = 0; i < c; ++i) {
    out.series.add_column("P_cav_" + std::to_string(i + 1) + "_eff", std::move(eff.cavity[i]));
  }
  out.series.add_column("P_fiber", std::move(full.fiber));
  return out;
}

std::vector<ScatterCheck> scatter_check(const NetworkSpec& spec) {
  const auto blocks = build_coupling_blocks(spec);
  std::vector<ScatterCheck> out;
  for (std::size_t c = 0; c < blocks.components.size(); ++c) {
    const auto& comp = blocks.components[c];
    const auto offset = static_cast<Eigen::Index>(comp.offset);
    const auto size = static_cast<Eigen::Index>(comp.size);
    const CMatrix m = blocks.mode_coupling.block(offset, offset, size, size);

    ScatterCheck check;
    check.component = c;
    check.J = comp.J;
    check.time = std::numbers::pi / comp.J;
    for (const auto& mode : spec.components[c].modes) check.detuned = check.detuned || mode.detuning != 0.0;
    const CMatrix u = Propagator(m).matrix(check.time);
    check.max_error = (u - kMinusI * comp.involution).cwiseAbs().maxCoeff();
    out.push_back(check);
  }
  return out;
}

}  // namespace cavnet
