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

#include "cavnet/netio.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cavnet {

using nlohmann::json;

namespace {

// Collects positioned diagnostics while walking a parsed document.
class Reader {
 public:
  std::vector<Diagnostic> errors;

  void fail(std::string message, const std::string& where) {
    errors.push_back({std::move(message), where.empty() ? "/" : where});
  }

  bool object(const json& j, const std::string& where, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) {
      fail("expected an object", where);
      return false;
    }
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (auto a : allowed) known = known || a == key;
      if (!known) fail("unknown key '" + key + "'", where + "/" + key);
    }
    return true;
  }

  const json* array(const json& obj, std::string_view key, const std::string& where, bool required) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail("missing required key '" + std::string(key) + "'", where);
      return nullptr;
    }
    if (!it->is_array()) {
      fail("expected an array", where + "/" + std::string(key));
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const json& obj, std::string_view key, const std::string& where,
                               bool required) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail("missing required key '" + std::string(key) + "'", where);
      return std::nullopt;
    }
    if (!it->is_number()) {
      fail("expected a number", where + "/" + std::string(key));
      return std::nullopt;
    }
    return it->get<double>();
  }

  std::optional<int> integer(const json& obj, std::string_view key, const std::string& where) {
    auto v = number(obj, key, where, true);
    if (!v) return std::nullopt;
    if (std::floor(*v) != *v || std::abs(*v) > 1e6) {
      fail("expected an integer", where + "/" + std::string(key));
      return std::nullopt;
    }
    return static_cast<int>(*v);
  }

  std::optional<Complex> complex(const json& obj, std::string_view re_key, std::string_view im_key,
                                 const std::string& where) {
    const bool has = obj.contains(re_key) || obj.contains(im_key);
    if (!has) return std::nullopt;
    const double re = number(obj, re_key, where, false).value_or(0.0);
    const double im = number(obj, im_key, where, false).value_or(0.0);
    return Complex{re, im};
  }

  std::optional<CMatrix> matrix(const json& j, const std::string& where) {
    if (!object(j, where, {"re", "im"})) return std::nullopt;
    const json* re = array(j, "re", where, true);
    if (!re) return std::nullopt;
    const json* im = array(j, "im", where, false);
    const auto rows = re->size();
    const auto cols = rows ? (*re)[0].size() : 0;
    if (rows == 0 || cols == 0) {
      fail("matrix is empty", where + "/re");
      return std::nullopt;
    }
    CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    auto fill = [&](const json& part, const std::string& part_where, bool imaginary) {
      if (part.size() != rows) {
        fail("expected " + std::to_string(rows) + " rows", part_where);
        return false;
      }
      for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = part[r];
        const std::string row_where = part_where + "/" + std::to_string(r);
        if (!row.is_array() || row.size() != cols) {
          fail("expected a row of " + std::to_string(cols) + " numbers", row_where);
          return false;
        }
        for (std::size_t c = 0; c < cols; ++c) {
          if (!row[c].is_number()) {
            fail("expected a number", row_where + "/" + std::to_string(c));
            return false;
          }
          const double v = row[c].get<double>();
          auto& entry = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
          entry = imaginary ? Complex{entry.real(), v} : Complex{v, 0.0};
        }
      }
      return true;
    };
    if (!fill(*re, where + "/re", false)) return std::nullopt;
    if (im && !fill(*im, where + "/im", true)) return std::nullopt;
    return m;
  }

  std::optional<ElementDef> element(const json& j, const std::string& where) {
    if (!j.is_object()) {
      fail("expected an object", where);
      return std::nullopt;
    }
    const auto kind_it = j.find("kind");
    if (kind_it == j.end() || !kind_it->is_string()) {
      fail("element needs a string 'kind'", where);
      return std::nullopt;
    }
    const auto name = kind_it->get<std::string>();
    const auto kind = element_kind_from_string(name);
    if (!kind) {
      fail("unknown element kind '" + name + "'", where + "/kind");
      return std::nullopt;
    }
    const std::size_t before = errors.size();
    ElementDef e;
    switch (*kind) {
      case ElementKind::kBareFiber:
        object(j, where, {"kind"});
        e = ElementDef::bare_fiber();
        break;
      case ElementKind::kBeamSplitter: {
        object(j, where, {"kind", "theta", "phi"});
        const auto theta = number(j, "theta", where, true);
        const auto phi = number(j, "phi", where, false);
        e = ElementDef::beam_splitter(theta.value_or(0.0), phi.value_or(0.0));
        break;
      }
      case ElementKind::kPhaseShifter: {
        object(j, where, {"kind", "ports", "port", "phi"});
        const auto ports = integer(j, "ports", where);
        const auto port = integer(j, "port", where);
        const auto phi = number(j, "phi", where, true);
        e = ElementDef::phase_shifter(ports.value_or(1), port.value_or(0), phi.value_or(0.0));
        break;
      }
      case ElementKind::kDftMultiport: {
        object(j, where, {"kind", "ports"});
        e = ElementDef::dft_multiport(integer(j, "ports", where).value_or(2));
        break;
      }
      case ElementKind::kComposed:
      case ElementKind::kCustomInvolution: {
        object(j, where, {"kind", "matrix"});
        const auto it = j.find("matrix");
        if (it == j.end()) {
          fail("missing required key 'matrix'", where);
          break;
        }
        auto m = matrix(*it, where + "/matrix");
        if (!m) break;
        e = *kind == ElementKind::kComposed ? ElementDef::composed(std::move(*m))
                                            : ElementDef::custom_involution(std::move(*m));
        break;
      }
    }
    if (errors.size() != before) return std::nullopt;
    return e;
  }

  std::vector<Attachment> attachments(const json& list, const std::string& where) {
    std::vector<Attachment> out;
    for (std::size_t p = 0; p < list.size(); ++p) {
      const auto& a = list[p];
      const std::string aw = where + "/" + std::to_string(p);
      if (!object(a, aw, {"cavity", "g_re", "g_im"})) continue;
      const auto it = a.find("cavity");
      if (it == a.end()) {
        fail("missing required key 'cavity' (use null for an open port)", aw);
        continue;
      }
      Attachment att;
      if (it->is_string()) {
        att.cavity = it->get<std::string>();
      } else if (!it->is_null()) {
        fail("cavity must be a string or null", aw + "/cavity");
        continue;
      }
      att.g = complex(a, "g_re", "g_im", aw).value_or(Complex{});
      out.push_back(std::move(att));
    }
    return out;
  }

  std::optional<ComponentDef> component(const json& j, const std::string& where) {
    if (!object(j, where, {"element", "J", "length", "loss", "inputs", "outputs", "modes"})) {
      return std::nullopt;
    }
    const std::size_t before = errors.size();
    ComponentDef comp;
    if (const auto it = j.find("element"); it != j.end()) {
      if (auto e = element(*it, where + "/element")) comp.element = std::move(*e);
    } else {
      fail("missing required key 'element'", where);
    }
    comp.fiber_coupling = number(j, "J", where, false);
    comp.length = number(j, "length", where, false);
    if (comp.fiber_coupling && comp.length) fail("J and length are mutually exclusive", where);
    if (!comp.fiber_coupling && !comp.length) fail("component needs J or length", where);
    comp.loss = number(j, "loss", where, false).value_or(0.0);
    if (const json* in = array(j, "inputs", where, true)) comp.inputs = attachments(*in, where + "/inputs");
    if (const json* out = array(j, "outputs", where, true)) {
      comp.outputs = attachments(*out, where + "/outputs");
    }
    if (const json* modes = array(j, "modes", where, false)) {
      if (modes->empty()) fail("mode list must not be empty", where + "/modes");
      for (std::size_t m = 0; m < modes->size(); ++m) {
        const auto& mj = (*modes)[m];
        const std::string mw = where + "/modes/" + std::to_string(m);
        if (!object(mj, mw, {"delta", "g_in_re", "g_in_im", "g_out_re", "g_out_im"})) continue;
        LongitudinalMode mode;
        mode.detuning = number(mj, "delta", mw, false).value_or(0.0);
        mode.g_in = complex(mj, "g_in_re", "g_in_im", mw);
        mode.g_out = complex(mj, "g_out_re", "g_out_im", mw);
        comp.modes.push_back(mode);
      }
    }
    if (errors.size() != before) return std::nullopt;
    return comp;
  }

  NetworkSpec network(const json& doc) {
    NetworkSpec spec;
    if (!object(doc, "", {"name", "wavelength", "cavities", "components"})) return spec;
    if (const auto it = doc.find("name"); it != doc.end()) {
      if (it->is_string()) {
        spec.name = it->get<std::string>();
      } else {
        fail("name must be a string", "/name");
      }
    }
    spec.wavelength = number(doc, "wavelength", "", false);
    if (const json* cavities = array(doc, "cavities", "", true)) {
      for (std::size_t i = 0; i < cavities->size(); ++i) {
        const auto& cj = (*cavities)[i];
        const std::string cw = "/cavities/" + std::to_string(i);
        if (!object(cj, cw, {"id", "detuning", "kappa"})) continue;
        CavityDef c;
        const auto id = cj.find("id");
        if (id == cj.end() || !id->is_string()) {
          fail("cavity needs a string 'id'", cw);
          continue;
        }
        c.id = id->get<std::string>();
        c.detuning = number(cj, "detuning", cw, false).value_or(0.0);
        c.decay = number(cj, "kappa", cw, false).value_or(0.0);
        spec.cavities.push_back(std::move(c));
      }
    }
    if (const json* components = array(doc, "components", "", false)) {
      for (std::size_t k = 0; k < components->size(); ++k) {
        if (auto comp = component((*components)[k], "/components/" + std::to_string(k))) {
          spec.components.push_back(std::move(*comp));
        }
      }
    }
    return spec;
  }
};

Diagnostic syntax_error(std::string_view text, const json::parse_error& e) {
  // e.byte is the 1-based offset of the last character read.
  const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
  int line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      line_start = i + 1;
    }
  }
  std::string message = e.what();
  if (const auto pos = message.find("syntax error"); pos != std::string::npos) message = message.substr(pos);
  return {std::move(message), "", line, static_cast<int>(end - line_start) + 1};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SpecError({syntax_error(text, e)});
  }
}

json matrix_json(const CMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array();
    json ir = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

json attachment_json(const Attachment& a) {
  if (!a.attached()) return {{"cavity", nullptr}};
  return {{"cavity", *a.cavity}, {"g_re", a.g.real()}, {"g_im", a.g.imag()}};
}

json element_json(const ElementDef& e) {
  json j = {{"kind", std::string(to_string(e.kind))}};
  switch (e.kind) {
    case ElementKind::kBareFiber: break;
    case ElementKind::kBeamSplitter:
      j["theta"] = e.theta;
      j["phi"] = e.phi;
      break;
    case ElementKind::kPhaseShifter:
      j["ports"] = e.ports;
      j["port"] = e.port;
      j["phi"] = e.phi;
      break;
    case ElementKind::kDftMultiport:
      j["ports"] = e.ports;
      break;
    case ElementKind::kComposed:
    case ElementKind::kCustomInvolution:
      j["matrix"] = matrix_json(e.matrix);
      break;
  }
  return j;
}

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string format_digits(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

NetworkSpec parse_network(std::string_view text) {
  const json doc = parse_json(text);
  Reader reader;
  NetworkSpec spec = reader.network(doc);
  if (!reader.errors.empty()) throw SpecError(std::move(reader.errors));
  require_valid(spec);
  return spec;
}

std::string write_network(const NetworkSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  if (spec.wavelength) doc["wavelength"] = *spec.wavelength;
  json cavities = json::array();
  for (const auto& c : spec.cavities) {
    cavities.push_back({{"id", c.id}, {"detuning", c.detuning}, {"kappa", c.decay}});
  }
  doc["cavities"] = std::move(cavities);
  json components = json::array();
  for (const auto& comp : spec.components) {
    json j;
    j["element"] = element_json(comp.element);
    if (comp.fiber_coupling) j["J"] = *comp.fiber_coupling;
    if (comp.length) j["length"] = *comp.length;
    if (comp.loss != 0.0) j["loss"] = comp.loss;
    j["inputs"] = json::array();
    for (const auto& a : comp.inputs) j["inputs"].push_back(attachment_json(a));
    j["outputs"] = json::array();
    for (const auto& a : comp.outputs) j["outputs"].push_back(attachment_json(a));
    if (!comp.modes.empty()) {
      json modes = json::array();
      for (const auto& m : comp.modes) {
        json mj = {{"delta", m.detuning}};
        if (m.g_in) {
          mj["g_in_re"] = m.g_in->real();
          mj["g_in_im"] = m.g_in->imag();
        }
        if (m.g_out) {
          mj["g_out_re"] = m.g_out->real();
          mj["g_out_im"] = m.g_out->imag();
        }
        modes.push_back(std::move(mj));
      }
      j["modes"] = std::move(modes);
    }
    components.push_back(std::move(j));
  }
  doc["components"] = std::move(components);
  return doc.dump(2) + "\n";
}

std::string export_dot(const ConnectivityGraph& graph) {
  if (graph.nodes.empty() && graph.edges.empty()) return "graph G { }\n";
  std::ostringstream os;
  os << "graph G {\n";
  for (const auto& node : graph.nodes) os << "  " << quoted(node) << ";\n";
  for (const auto& e : graph.edges) {
    os << "  " << quoted(graph.nodes.at(e.a)) << " -- " << quoted(graph.nodes.at(e.b)) << " [label=\""
       << format("%.2e", e.weight) << "\", phase=" << format("%.12g", e.phase) << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_timeseries_csv(const TimeSeries& series, int significant_digits) {
  if (significant_digits < 1 || significant_digits > 17) {
    throw InvalidArgument("significant digits must be in 1..17");
  }
  for (const auto& col : series.columns) {
    if (col.size() != series.times.size()) throw InvalidArgument("ragged time series");
  }
  std::string out = "t";
  for (const auto& label : series.labels) out += "," + label;
  out += "\n";
  for (std::size_t k = 0; k < series.rows(); ++k) {
    out += format_digits(series.times[k], significant_digits);
    for (const auto& col : series.columns) out += "," + format_digits(col[k], significant_digits);
    out += "\n";
  }
  return out;
}

TimeSeries parse_timeseries_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::stringstream ss(l);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(in, line)) throw InvalidArgument("empty CSV");
  auto header = split(line);
  if (header.empty() || header[0] != "t") throw InvalidArgument("CSV header must start with 't'");
  TimeSeries series;
  series.labels.assign(header.begin() + 1, header.end());
  series.columns.resize(series.labels.size());
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != header.size()) {
      throw InvalidArgument("CSV row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                            " cells, expected " + std::to_string(header.size()));
    }
    try {
      series.times.push_back(std::stod(cells[0]));
      for (std::size_t c = 1; c < cells.size(); ++c) series.columns[c - 1].push_back(std::stod(cells[c]));
    } catch (const std::exception&) {
      throw InvalidArgument("CSV row " + std::to_string(row) + " has a non-numeric cell");
    }
  }
  return series;
}

CMatrix parse_matrix(std::string_view text) {
  const json doc = parse_json(text);
  Reader reader;
  auto m = reader.matrix(doc, "");
  if (!m) throw SpecError(std::move(reader.errors));
  return *m;
}

std::string write_matrix(const CMatrix& m) { return matrix_json(m).dump(2) + "\n"; }

}  // namespace cavnet
