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

// Text formats: the JSON network description, DOT connectivity graphs and
// CSV time series.
//
// Network document layout (keys are sorted on output):
//
//   {
//     "name": "fig2-two-cavity",
//     "wavelength": 7.8e-07,                      // optional
//     "cavities": [{"id": "c1", "detuning": 0, "kappa": 0}, ...],
//     "components": [{
//       "element": {"kind": "beam-splitter", "theta": 0.785..., "phi": 0},
//       "J": 1e9,                                 // or "length": 0.5
//       "loss": 0,                                // optional
//       "inputs":  [{"cavity": "c1", "g_re": 1e6, "g_im": 0}, {"cavity": null}],
//       "outputs": [...],
//       "modes": [{"delta": 0, "g_in_re": ..., "g_in_im": ..., ...}]  // bare-fiber only
//     }]
//   }
//
// Element kinds: bare-fiber, beam-splitter {theta, phi},
// phase-shifter {ports, port, phi}, dft-multiport {ports},
// composed {matrix}, custom-involution {matrix}, where a matrix is
// {"re": [[...]], "im": [[...]]}.

#include <string>
#include <string_view>
#include <vector>

#include "cavnet/dynamics.hpp"
#include "cavnet/eliminate.hpp"
#include "cavnet/model.hpp"

namespace cavnet {

/// Parses and validates a network document. Throws SpecError listing every
/// problem found (syntax errors carry line and column, semantic ones a path).
NetworkSpec parse_network(std::string_view text);

/// Canonical text: sorted keys, two-space indent, shortest round-trip numbers.
std::string write_network(const NetworkSpec& spec);

/// Names accepted by builtin_example, which also takes the short form "figN".
std::vector<std::string> builtin_names();
NetworkSpec builtin_example(std::string_view name);

std::string export_dot(const ConnectivityGraph& graph);

std::string export_timeseries_csv(const TimeSeries& series, int significant_digits = 12);
TimeSeries parse_timeseries_csv(std::string_view text);

/// Complex matrix document {"re": [[...]], "im": [[...]]}; "im" is optional.
CMatrix parse_matrix(std::string_view text);
std::string write_matrix(const CMatrix& m);

}  // namespace cavnet
