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

#include <string_view>

namespace qinstr::cli {

// Accepts "pi", "-pi/2", "0.08pi", "3pi/4", "2*pi" and plain decimal radians.
// Symbolic forms are evaluated as (k * pi) / d. Throws ConfigError otherwise.
double parse_angle(std::string_view text);

}  // namespace qinstr::cli
