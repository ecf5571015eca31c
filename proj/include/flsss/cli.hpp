// Copyright 2026 The flsss Authors
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

// Command-line front end. Exit codes: 0 solved, 2 infeasible, 1 usage or
// input error.

#ifndef FLSSS_CLI_HPP_
#define FLSSS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "flsss/core.hpp"

namespace flsss::cli {

inline constexpr int kSolved = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInfeasible = 2;

// Malformed instance file; the message names the file, line and field.
class InputError : public Error {
 public:
  using Error::Error;
};

// args excludes the program name. Results go to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// One superset row per line, comma separated. Blank lines and lines starting
// with '#' are skipped, as is a leading header line with a non-numeric field.
RealMatrix parse_csv(std::string_view text, const std::string& source);

}  // namespace flsss::cli

#endif  // FLSSS_CLI_HPP_
