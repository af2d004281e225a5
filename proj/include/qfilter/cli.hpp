// Copyright 2026 The qfilter Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace qfilter::cli {

/// Environment variable that overrides `simulate --seed`.
inline constexpr const char* kSeedEnv = "QFILTER_SEED";

/// Runs `qfilter <solve|oracle-check|simulate|sweep|embed> [flags]`.
/// `args` excludes the program name. Returns 0 on success, 1 when
/// oracle-check exceeds its tolerance, 2 on parse or validation errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfilter::cli
