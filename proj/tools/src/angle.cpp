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

#include "qinstr_cli/angle.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "qinstr/errors.hpp"

namespace qinstr::cli {
namespace {

bool parse_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

}  // namespace

double parse_angle(std::string_view text) {
  const std::string original(text);
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);

  const auto pi_pos = text.find("pi");
  if (pi_pos == std::string_view::npos) {
    double v = 0.0;
    if (!parse_number(text, v)) throw ConfigError("cannot parse angle '" + original + "'");
    return v;
  }

  std::string_view coeff = text.substr(0, pi_pos);
  std::string_view rest = text.substr(pi_pos + 2);
  if (!coeff.empty() && coeff.back() == '*') coeff.remove_suffix(1);

  double k = 1.0;
  if (coeff == "-") {
    k = -1.0;
  } else if (!coeff.empty() && coeff != "+" && !parse_number(coeff, k)) {
    throw ConfigError("cannot parse angle '" + original + "'");
  }
  double d = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/' || !parse_number(rest.substr(1), d) || d == 0.0) {
      throw ConfigError("cannot parse angle '" + original + "'");
    }
  }
  return k * M_PI / d;
}

}  // namespace qinstr::cli
