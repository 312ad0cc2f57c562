// Copyright 2026 The cecsim Authors
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

#ifndef CECSIM_CLI_H
#define CECSIM_CLI_H

#include <iosfwd>

namespace cecsim {

enum ExitCode : int {
    EXIT_OK = 0,
    EXIT_VALIDATION = 1,
    EXIT_USAGE = 2,
    EXIT_NUMERICAL = 3,
};

/// Entry point of the cecsim tool. Payloads go to `out` (or the --out file),
/// diagnostics to `err`.
int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace cecsim

#endif
