// cli.h
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
//
// Copyright 2026 The mtht Authors.
//
// \file
// Entry point of the mtht command-line tool, separated from main() so
// tests can drive it with captured streams.

#ifndef MTHT_TOOLS_CLI_H_
#define MTHT_TOOLS_CLI_H_

#include <iosfwd>

namespace mtht {

enum ExitStatus { kExitOk = 0, kExitUsage = 1, kExitData = 2 };

// Machine-readable results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace mtht

#endif  // MTHT_TOOLS_CLI_H_
