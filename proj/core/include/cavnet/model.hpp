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

// Domain types for fiber-linked cavity networks.
//
// Units: hbar = 1 and every rate (detuning, decay, coupling) is an angular
// frequency in rad/s. Detunings are measured in the frame rotating at the
// common reference frequency, so a resonant network has all-zero diagonals.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cavnet/error.hpp"

namespace cavnet {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Validity ratio above which the fast-fiber approximation is flagged.
inline constexpr double kValidityWarningThreshold = 0.1;

struct CavityDef {
  std::string id;
  double detuning = 0.0;  ///< cavity frequency minus reference, rad/s
  double decay = 0.0;     ///< energy decay rate kappa, rad/s

  bool operator==(const CavityDef&) const = default;
};

enum class ElementKind {
  kBareFiber,
  kBeamSplitter,
  kPhaseShifter,
  kDftMultiport,
  kComposed,
  kCustomInvolution,
};

std::string_view to_string(ElementKind kind);
std::optional<ElementKind> element_kind_from_string(std::string_view name);

/// A passive linear-optics element. Only the fields relevant to `kind` are
/// meaningful; use the named constructors.
struct ElementDef {
  ElementKind kind = ElementKind::kBareFiber;
  double theta = 0.0;  ///< beam-splitter mixing angle
  double phi = 0.0;    ///< beam-splitter / phase-shifter phase
  int ports = 1;       ///< phase-shifter and dft-multiport width
  int port = 0;        ///< phase-shifter target port
  CMatrix matrix;      ///< composed: S (n x n); custom-involution: W (2n x 2n)

  static ElementDef bare_fiber();
  static ElementDef beam_splitter(double theta, double phi);
  static ElementDef phase_shifter(int ports, int port, double phi);
  static ElementDef dft_multiport(int ports);
  static ElementDef composed(CMatrix scattering);
  static ElementDef custom_involution(CMatrix involution);

  /// Number of ports n on each side; the element owns 2n directional modes.
  int port_count() const;

  friend bool operator==(const ElementDef& a, const ElementDef& b);
};

/// One fiber port touching a cavity mirror. An unattached port (no cavity)
/// is allowed and models an ancilla mode.
struct Attachment {
  std::optional<std::string> cavity;
  Complex g{0.0, 0.0};

  static Attachment to(std::string cavity, Complex g) { return {std::move(cavity), g}; }
  static Attachment open() { return {}; }
  bool attached() const { return cavity.has_value(); }

  bool operator==(const Attachment&) const = default;
};

/// A longitudinal mode of a bare fiber. Couplings left unset fall back to
/// the attachment coupling of the respective end.
struct LongitudinalMode {
  double detuning = 0.0;  ///< omega_k minus reference, rad/s
  std::optional<Complex> g_in;
  std::optional<Complex> g_out;

  bool operator==(const LongitudinalMode&) const = default;
};

struct ComponentDef {
  ElementDef element;
  std::optional<double> fiber_coupling;  ///< J in rad/s
  std::optional<double> length;          ///< fiber length in m; J = pi c / L
  std::vector<Attachment> inputs;
  std::vector<Attachment> outputs;
  std::vector<LongitudinalMode> modes;  ///< bare fibers only
  double loss = 0.0;                    ///< fiber-mode amplitude loss gamma_f, rad/s

  /// J, either given directly or derived from the length.
  double coupling_rate() const;
  /// Longitudinal modes per port (1 unless a mode list is given).
  std::size_t multiplicity() const { return modes.empty() ? 1 : modes.size(); }
  /// Directional fiber modes owned by this component.
  std::size_t fiber_mode_count() const {
    return 2 * static_cast<std::size_t>(element.port_count()) * multiplicity();
  }

  bool operator==(const ComponentDef&) const = default;
};

struct NetworkSpec {
  std::string name;
  std::optional<double> wavelength;  ///< reference wavelength in m, informational
  std::vector<CavityDef> cavities;
  std::vector<ComponentDef> components;

  std::optional<std::size_t> cavity_position(std::string_view id) const;

  bool operator==(const NetworkSpec&) const = default;
};

struct ValidationReport {
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;
  RVector validity;  ///< per-cavity validity ratio; empty when errors exist

  bool ok() const { return errors.empty(); }
};

/// Checks every structural invariant of a spec. Pure: the same spec always
/// yields the same report.
ValidationReport validate_network(const NetworkSpec& spec);

/// Throws SpecError carrying the error list when validation fails.
void require_valid(const NetworkSpec& spec);

enum class Side { kInput = 0, kOutput = 1 };

struct CavityKey {
  std::size_t cavity = 0;
  bool operator==(const CavityKey&) const = default;
};

struct FiberKey {
  std::size_t component = 0;
  Side side = Side::kInput;
  std::size_t port = 0;
  std::size_t mode = 0;
  bool operator==(const FiberKey&) const = default;
};

using ModeKey = std::variant<CavityKey, FiberKey>;

/// Global ordering of every mode of a network: cavities in declaration
/// order, then each component's fiber modes (input side before output side,
/// ports in order, longitudinal modes innermost).
class ModeIndex {
 public:
  explicit ModeIndex(const NetworkSpec& spec);

  std::size_t cavity_count() const { return cavity_ids_.size(); }
  std::size_t fiber_count() const { return fiber_count_; }
  std::size_t size() const { return cavity_count() + fiber_count(); }
  std::size_t component_count() const { return offsets_.size(); }

  /// Offset of a component's first mode inside the fiber block.
  std::size_t component_offset(std::size_t component) const;
  std::size_t component_size(std::size_t component) const;

  std::size_t index_of(const ModeKey& key) const;
  /// Position of a fiber mode inside the fiber block (global minus cavities).
  std::size_t fiber_offset(const FiberKey& key) const;
  ModeKey key_at(std::size_t index) const;
  std::string label(std::size_t index) const;

 private:
  struct Layout {
    std::size_t offset;
    std::size_t ports;
    std::size_t multiplicity;
  };
  std::vector<std::string> cavity_ids_;
  std::vector<Layout> offsets_;
  std::size_t fiber_count_ = 0;
};

}  // namespace cavnet
