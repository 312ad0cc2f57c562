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

#ifndef CECSIM_ERRORS_H
#define CECSIM_ERRORS_H

#include <stdexcept>
#include <string>

namespace cecsim {

/// Bad arguments: mismatched lengths, out-of-range indices, unknown names.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A structural check over a code or circuit did not hold.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iteration caps, missing sign changes and other numerical dead ends.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cecsim

#endif
