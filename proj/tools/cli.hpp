/* Copyright 2026 The ordcalc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ORDCALC_TOOLS_CLI_HPP_
#define ORDCALC_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace ordcalc::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;

// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordcalc::cli

#endif  // ORDCALC_TOOLS_CLI_HPP_
