// Copyright 2026 The qdisturb authors
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

/**
 * @file
 * Command-line front end. Subcommands: expand, bound, simulate, assess,
 * verify. Exit status contract: 0 on success, 1 when a verification sweep
 * recorded failures, 2 on usage or input-validation errors.
 */

#pragma once

#include <string>
#include <vector>

namespace qdisturb::cli {

int run(int argc, const char* const* argv);

/// Convenience overload: `args` excludes the program name.
int run(const std::vector<std::string>& args);

} // namespace qdisturb::cli
