// Copyright 2026 The qinstr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "json.hpp"
#include "qinstr/circuit.hpp"
#include "qinstr/noise.hpp"
#include "qinstr/qstate.hpp"
#include "qinstr/tomography.hpp"

namespace qinstr::cli {

using json = nlohmann::ordered_json;

// {"dim": n, "re": [[...]], "im": [[...]]}
json to_json(const CMatrix& m);
json to_json(const DensityMatrix& m);
json to_json(const BlochVector& b);
// chi with {"re", "im", "basis": "IXYZ"}
json to_json(const ProcessMap& p);
json to_json(const GateOp& g);
json to_json(const Circuit& c);
json to_json(const NoiseParams& np);

// NoiseParams file form: {"q1": {...}, "q2": {...}, "t_1qb_ns", "t_cz_ns",
// "cz_gap_ns"}. Missing lifetimes default to infinity.
NoiseParams noise_from_json(const json& j, const std::string& name);

// "none" | "sim" | "device" | "file:<path>"
NoiseParams resolve_noise(const std::string& spec);

json read_json_file(const std::string& path);

}  // namespace qinstr::cli
