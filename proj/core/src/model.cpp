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

#include "cavnet/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "cavnet/eliminate.hpp"
#include "cavnet/hamiltonian.hpp"
#include "cavnet/linop.hpp"

namespace cavnet {

std::string Diagnostic::str() const {
  std::ostringstream os;
  if (line > 0) {
    os << "line " << line << ", column " << column << ": ";
  } else if (!where.empty()) {
    os << where << ": ";
  }
  os << message;
  return os.str();
}

namespace {

std::string join_messages(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += "; ";
    out += d.str();
  }
  return out.empty() ? "invalid network" : out;
}

}  // namespace

SpecError::SpecError(std::vector<Diagnostic> diagnostics)
    : Error(join_messages(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::string_view to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::kBareFiber: return "bare-fiber";
    case ElementKind::kBeamSplitter: return "beam-splitter";
    case ElementKind::kPhaseShifter: return "phase-shifter";
    case ElementKind::kDftMultiport: return "dft-multiport";
    case ElementKind::kComposed: return "composed";
    case ElementKind::kCustomInvolution: return "custom-involution";
  }
  return "unknown";
}

std::optional<ElementKind> element_kind_from_string(std::string_view name) {
  for (auto kind : {ElementKind::kBareFiber, ElementKind::kBeamSplitter, ElementKind::kPhaseShifter,
                    ElementKind::kDftMultiport, ElementKind::kComposed,
                    ElementKind::kCustomInvolution}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

ElementDef ElementDef::bare_fiber() { return {}; }

ElementDef ElementDef::beam_splitter(double theta, double phi) {
  ElementDef e;
  e.kind = ElementKind::kBeamSplitter;
  e.theta = theta;
  e.phi = phi;
  e.ports = 2;
  return e;
}

ElementDef ElementDef::phase_shifter(int ports, int port, double phi) {
  ElementDef e;
  e.kind = ElementKind::kPhaseShifter;
  e.ports = ports;
  e.port = port;
  e.phi = phi;
  return e;
}

ElementDef ElementDef::dft_multiport(int ports) {
  ElementDef e;
  e.kind = ElementKind::kDftMultiport;
  e.ports = ports;
  return e;
}

ElementDef ElementDef::composed(CMatrix scattering) {
  ElementDef e;
  e.kind = ElementKind::kComposed;
  e.ports = static_cast<int>(scattering.rows());
  e.matrix = std::move(scattering);
  return e;
}

ElementDef ElementDef::custom_involution(CMatrix involution) {
  ElementDef e;
  e.kind = ElementKind::kCustomInvolution;
  e.ports = static_cast<int>(involution.rows() / 2);
  e.matrix = std::move(involution);
  return e;
}

int ElementDef::port_count() const {
  switch (kind) {
    case ElementKind::kBareFiber: return 1;
    case ElementKind::kBeamSplitter: return 2;
    case ElementKind::kPhaseShifter:
    case ElementKind::kDftMultiport: return ports;
    case ElementKind::kComposed: return static_cast<int>(matrix.rows());
    case ElementKind::kCustomInvolution: return static_cast<int>(matrix.rows() / 2);
  }
  return 0;
}

bool operator==(const ElementDef& a, const ElementDef& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ElementKind::kBareFiber: return true;
    case ElementKind::kBeamSplitter: return a.theta == b.theta && a.phi == b.phi;
    case ElementKind::kPhaseShifter:
      return a.ports == b.ports && a.port == b.port && a.phi == b.phi;
    case ElementKind::kDftMultiport: return a.ports == b.ports;
    case ElementKind::kComposed:
    case ElementKind::kCustomInvolution:
      return a.matrix.rows() == b.matrix.rows() && a.matrix.cols() == b.matrix.cols() &&
             (a.matrix.array() == b.matrix.array()).all();
  }
  return false;
}

double ComponentDef::coupling_rate() const {
  if (fiber_coupling) return *fiber_coupling;
  if (length) return j_from_length(*length);
  throw InvalidArgument("component has neither J nor length");
}

std::optional<std::size_t> NetworkSpec::cavity_position(std::string_view id) const {
  for (std::size_t i = 0; i < cavities.size(); ++i) {
    if (cavities[i].id == id) return i;
  }
  return std::nullopt;
}

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_element(const ElementDef& e, const std::string& where, std::vector<Diagnostic>& errors) {
  auto fail = [&](std::string msg) { errors.push_back({std::move(msg), where + "/element"}); };
  switch (e.kind) {
    case ElementKind::kBareFiber:
      break;
    case ElementKind::kBeamSplitter:
      if (!std::isfinite(e.theta) || !std::isfinite(e.phi)) fail("beam-splitter angles must be finite");
      break;
    case ElementKind::kPhaseShifter:
      if (e.ports < 1) fail("phase-shifter needs at least one port");
      if (e.port < 0 || e.port >= e.ports) fail("phase-shifter port out of range");
      if (!std::isfinite(e.phi)) fail("phase-shifter phase must be finite");
      break;
    case ElementKind::kDftMultiport:
      if (e.ports < 2) fail("dft-multiport needs at least two ports");
      break;
    case ElementKind::kComposed:
      if (e.matrix.rows() == 0 || e.matrix.rows() != e.matrix.cols()) {
        fail("composed matrix must be square and non-empty");
      } else if (!(unitarity_error(e.matrix) <= kUnitaryTolerance)) {
        fail("composed matrix is not unitary");
      }
      break;
    case ElementKind::kCustomInvolution:
      if (e.matrix.rows() == 0 || e.matrix.rows() != e.matrix.cols() || e.matrix.rows() % 2 != 0) {
        fail("custom-involution matrix must be square with even, non-zero size");
      } else if (!(involution_error(e.matrix) <= kUnitaryTolerance)) {
        fail("custom-involution matrix is not a Hermitian involution");
      }
      break;
  }
}

}  // namespace

ValidationReport validate_network(const NetworkSpec& spec) {
  ValidationReport report;
  auto& errors = report.errors;

  if (spec.cavities.empty()) errors.push_back({"network has no cavities", "/cavities"});
  if (spec.wavelength && !(*spec.wavelength > 0.0)) {
    errors.push_back({"wavelength must be positive", "/wavelength"});
  }

  std::set<std::string, std::less<>> ids;
  for (std::size_t i = 0; i < spec.cavities.size(); ++i) {
    const auto& c = spec.cavities[i];
    const std::string where = "/cavities/" + std::to_string(i);
    if (c.id.empty()) errors.push_back({"cavity id is empty", where + "/id"});
    if (!ids.insert(c.id).second) errors.push_back({"duplicate cavity id '" + c.id + "'", where + "/id"});
    if (!std::isfinite(c.detuning)) errors.push_back({"detuning must be finite", where + "/detuning"});
    if (!(c.decay >= 0.0) || !std::isfinite(c.decay)) {
      errors.push_back({"kappa must be finite and >= 0", where + "/kappa"});
    }
  }

  std::vector<bool> used(spec.cavities.size(), false);
  for (std::size_t k = 0; k < spec.components.size(); ++k) {
    const auto& comp = spec.components[k];
    const std::string where = "/components/" + std::to_string(k);
    const std::size_t before = errors.size();
    check_element(comp.element, where, errors);
    const bool element_ok = errors.size() == before;

    if (comp.fiber_coupling && comp.length) {
      errors.push_back({"J and length are mutually exclusive", where});
    } else if (!comp.fiber_coupling && !comp.length) {
      errors.push_back({"component needs J or length", where});
    } else if (comp.fiber_coupling && !(*comp.fiber_coupling > 0.0 && std::isfinite(*comp.fiber_coupling))) {
      errors.push_back({"J must be positive", where + "/J"});
    } else if (comp.length && !(*comp.length > 0.0 && std::isfinite(*comp.length))) {
      errors.push_back({"length must be positive", where + "/length"});
    }
    if (!(comp.loss >= 0.0) || !std::isfinite(comp.loss)) {
      errors.push_back({"loss must be finite and >= 0", where + "/loss"});
    }

    // Arity is only meaningful once the element itself is sound.
    const int n = element_ok ? comp.element.port_count() : -1;
    auto check_side = [&](const std::vector<Attachment>& side, const char* name) {
      const std::string side_where = where + "/" + name;
      if (n >= 0 && side.size() != static_cast<std::size_t>(n)) {
        errors.push_back({std::to_string(side.size()) + " " + name + " attachments on a " +
                              std::to_string(n) + "-port " + std::string(to_string(comp.element.kind)),
                          side_where});
      }
      for (std::size_t p = 0; p < side.size(); ++p) {
        const auto& a = side[p];
        if (!finite(a.g)) errors.push_back({"coupling must be finite", side_where + "/" + std::to_string(p)});
        if (!a.attached()) continue;
        if (auto pos = spec.cavity_position(*a.cavity)) {
          used[*pos] = true;
        } else {
          errors.push_back({"unknown cavity '" + *a.cavity + "'", side_where + "/" + std::to_string(p)});
        }
      }
    };
    check_side(comp.inputs, "inputs");
    check_side(comp.outputs, "outputs");

    if (!comp.modes.empty() && comp.element.kind != ElementKind::kBareFiber) {
      errors.push_back({"longitudinal modes are only allowed on bare fibers", where + "/modes"});
    }
    for (std::size_t m = 0; m < comp.modes.size(); ++m) {
      const auto& mode = comp.modes[m];
      if (!std::isfinite(mode.detuning) || (mode.g_in && !finite(*mode.g_in)) ||
          (mode.g_out && !finite(*mode.g_out))) {
        errors.push_back({"mode values must be finite", where + "/modes/" + std::to_string(m)});
      }
    }
  }

  for (std::size_t i = 0; i < spec.cavities.size(); ++i) {
    if (!used[i]) {
      report.warnings.push_back({"cavity '" + spec.cavities[i].id + "' is not attached to any component",
                                 "/cavities/" + std::to_string(i)});
    }
  }

  if (errors.empty()) {
    report.validity = validity_ratio(detail::assemble_coupling_blocks(spec));
    for (Eigen::Index i = 0; i < report.validity.size(); ++i) {
      const double r = report.validity(i);
      if (r > kValidityWarningThreshold) {
        std::ostringstream msg;
        msg << "validity ratio " << r << " exceeds " << kValidityWarningThreshold << " for cavity '"
            << spec.cavities[static_cast<std::size_t>(i)].id << "'";
        report.warnings.push_back({msg.str(), "/cavities/" + std::to_string(i)});
      }
    }
  }
  return report;
}

void require_valid(const NetworkSpec& spec) {
  auto report = validate_network(spec);
  if (!report.ok()) throw SpecError(std::move(report.errors));
}

ModeIndex::ModeIndex(const NetworkSpec& spec) {
  cavity_ids_.reserve(spec.cavities.size());
  for (const auto& c : spec.cavities) cavity_ids_.push_back(c.id);
  for (const auto& comp : spec.components) {
    const auto ports = static_cast<std::size_t>(comp.element.port_count());
    offsets_.push_back({fiber_count_, ports, comp.multiplicity()});
    fiber_count_ += comp.fiber_mode_count();
  }
}

std::size_t ModeIndex::component_offset(std::size_t component) const {
  return offsets_.at(component).offset;
}

std::size_t ModeIndex::component_size(std::size_t component) const {
  const auto& l = offsets_.at(component);
  return 2 * l.ports * l.multiplicity;
}

std::size_t ModeIndex::fiber_offset(const FiberKey& key) const {
  const auto& l = offsets_.at(key.component);
  if (key.port >= l.ports || key.mode >= l.multiplicity) throw InvalidArgument("fiber key out of range");
  const std::size_t side = key.side == Side::kInput ? 0 : 1;
  return l.offset + (side * l.ports + key.port) * l.multiplicity + key.mode;
}

std::size_t ModeIndex::index_of(const ModeKey& key) const {
  if (const auto* c = std::get_if<CavityKey>(&key)) {
    if (c->cavity >= cavity_count()) throw InvalidArgument("cavity key out of range");
    return c->cavity;
  }
  return cavity_count() + fiber_offset(std::get<FiberKey>(key));
}

ModeKey ModeIndex::key_at(std::size_t index) const {
  if (index < cavity_count()) return CavityKey{index};
  const std::size_t local = index - cavity_count();
  if (local >= fiber_count_) throw InvalidArgument("mode index out of range");
  for (std::size_t c = offsets_.size(); c-- > 0;) {
    const auto& l = offsets_[c];
    if (local < l.offset) continue;
    std::size_t rest = local - l.offset;
    FiberKey key;
    key.component = c;
    key.mode = rest % l.multiplicity;
    rest /= l.multiplicity;
    key.port = rest % l.ports;
    key.side = rest / l.ports == 0 ? Side::kInput : Side::kOutput;
    return key;
  }
  throw InvalidArgument("mode index out of range");
}

std::string ModeIndex::label(std::size_t index) const {
  const auto key = key_at(index);
  if (const auto* c = std::get_if<CavityKey>(&key)) return cavity_ids_[c->cavity];
  const auto& f = std::get<FiberKey>(key);
  std::ostringstream os;
  os << "f" << f.component << (f.side == Side::kInput ? ".in" : ".out") << f.port;
  if (offsets_[f.component].multiplicity > 1) os << ".k" << f.mode;
  return os.str();
}

}  // namespace cavnet
