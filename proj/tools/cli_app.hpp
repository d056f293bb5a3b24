// Copyright 2026 The qfi-probe Authors
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

namespace qfiprobe::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes: 0 success, 2 invalid configuration or command line,
/// 3 numerical failure while computing results.
int run(int argc, char** argv);

/// Formats a value with 12 significant digits for CSV output.
std::string format_number(double value);

}  // namespace qfiprobe::cli
