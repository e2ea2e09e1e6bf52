// Copyright 2026 The cvlearn Authors
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

#ifndef CVLEARN_CLI_H_
#define CVLEARN_CLI_H_

#include <iosfwd>
#include <string>

#include "json.hpp"

namespace cvlearn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInapplicable = 3;

/// Git blob hash ("blob <size>\0" + content, SHA-1) of a byte string / file.
std::string git_blob_sha1(const std::string& content);
std::string git_blob_sha1_file(const std::string& path);

/// Defaults of every config key accepted by a subcommand, before overrides.
nlohmann::ordered_json default_config(const std::string& command);

/// Merges a user config onto the defaults. Unknown keys raise InvalidInput;
/// a "_manifest" key (present when a manifest is reused) is ignored.
nlohmann::ordered_json resolve_config(const std::string& command,
                                      const nlohmann::json& user);

/// Entry point of the `cvlearn` binary; returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cvlearn

#endif  // CVLEARN_CLI_H_
