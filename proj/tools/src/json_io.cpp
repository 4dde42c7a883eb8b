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

#include "qinstr_cli/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qinstr/errors.hpp"

namespace qinstr::cli {
namespace {

json params_json(const GateOp& g) {
  json p = json::object();
  const auto& v = g.params;
  switch (g.kind) {
    case GateKind::kPhasedX:
      p["theta"] = v[0];
      p["phi"] = v[1];
      break;
    case GateKind::kVirtualZ:
      p["phi"] = v[0];
      break;
    case GateKind::kCZGeneral:
      p["phi01"] = v[0];
      p["phi10"] = v[1];
      p["phi11"] = v[2];
      break;
    case GateKind::kSwapPow:
      p["delta"] = v[0];
      break;
    case GateKind::kQmeMark:
      p["nx"] = v[0];
      p["ny"] = v[1];
      p["nz"] = v[2];
      p["coin"] = v[3] != 0.0;
      break;
    case GateKind::kH:
    case GateKind::kCZ:
    case GateKind::kCNOT:
      break;
  }
  return p;
}

// Infinite lifetimes are written as null; JSON has no infinity.
json lifetime(double us) { return std::isfinite(us) ? json(us) : json(nullptr); }

double read_lifetime(const json& q, const char* key) {
  if (!q.contains(key) || q.at(key).is_null()) return INFINITY;
  if (!q.at(key).is_number()) throw ConfigError(std::string("noise file: ") + key + " must be a number");
  return q.at(key).get<double>();
}

}  // namespace

json to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ii = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

json to_json(const DensityMatrix& m) { return to_json(m.mat()); }

json to_json(const BlochVector& b) { return json::array({b.x, b.y, b.z}); }

json to_json(const ProcessMap& p) {
  json j = to_json(p.chi);
  j.erase("dim");
  j["basis"] = "IXYZ";
  j["cptp_projected"] = p.cptp_projected;
  return j;
}

json to_json(const GateOp& g) {
  json q = json::array();
  for (int i : g.qubits) q.push_back(i);
  return json{{"kind", std::string(kind_name(g.kind))},
              {"params", params_json(g)},
              {"qubits", std::move(q)},
              {"dur_ns", g.dur_ns}};
}

json to_json(const Circuit& c) {
  json moments = json::array();
  for (const auto& m : c.moments) {
    json ops = json::array();
    for (const auto& g : m.ops) ops.push_back(to_json(g));
    moments.push_back(json{{"tag", m.tag}, {"duration_ns", m.duration_ns()}, {"ops", std::move(ops)}});
  }
  return json{{"qubit_count", c.qubit_count}, {"moments", std::move(moments)}};
}

json to_json(const NoiseParams& np) {
  auto qubit = [](const QubitCoherence& q) {
    return json{{"t1_us", lifetime(q.t1_us)},
                {"t2r_us", lifetime(q.t2r_us)},
                {"t1_eff_us", lifetime(q.t1_eff_us)},
                {"t2r_eff_us", lifetime(q.t2r_eff_us)}};
  };
  return json{{"name", np.name},
              {"q1", qubit(np.q[0])},
              {"q2", qubit(np.q[1])},
              {"t_1qb_ns", np.t_1qb_ns},
              {"t_cz_ns", np.t_cz_ns},
              {"cz_gap_ns", np.cz_gap_ns}};
}

NoiseParams noise_from_json(const json& j, const std::string& name) {
  if (!j.is_object()) throw ConfigError("noise file: top level must be an object");
  NoiseParams np;
  np.name = name;
  const char* keys[2] = {"q1", "q2"};
  for (int i = 0; i < 2; ++i) {
    if (!j.contains(keys[i])) continue;
    const json& q = j.at(keys[i]);
    if (!q.is_object()) throw ConfigError(std::string("noise file: ") + keys[i] + " must be an object");
    np.q[i].t1_us = read_lifetime(q, "t1_us");
    np.q[i].t2r_us = read_lifetime(q, "t2r_us");
    np.q[i].t1_eff_us = read_lifetime(q, "t1_eff_us");
    np.q[i].t2r_eff_us = read_lifetime(q, "t2r_eff_us");
  }
  if (j.contains("t_1qb_ns")) np.t_1qb_ns = j.at("t_1qb_ns").get<double>();
  if (j.contains("t_cz_ns")) np.t_cz_ns = j.at("t_cz_ns").get<double>();
  if (j.contains("cz_gap_ns")) np.cz_gap_ns = j.at("cz_gap_ns").get<double>();
  validate(np);
  return np;
}

NoiseParams resolve_noise(const std::string& spec) {
  constexpr std::string_view kFile = "file:";
  if (spec.rfind(kFile, 0) == 0) {
    const std::string path = spec.substr(kFile.size());
    return noise_from_json(read_json_file(path), spec);
  }
  return noise_preset(spec);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace qinstr::cli
