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

#ifndef CECSIM_VERIFY_H
#define CECSIM_VERIFY_H

#include <cstddef>
#include <string>
#include <vector>

#include "cecsim/circuit.h"
#include "cecsim/code.h"
#include "json.hpp"

namespace cecsim {

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    CodeKind code = CodeKind::BF;
    std::vector<VerifyCheck> checks;
    nlohmann::json incidence;

    bool passed() const;
};

struct SingleFaultReport {
    std::size_t total = 0;
    std::size_t passed = 0;
    /// A few human-readable descriptions of failing paths.
    std::vector<std::string> failures;

    bool all_passed() const { return total == passed; }
};

/// Every single fault (memory sites x 3 Paulis, gate sites x all Paulis) on a
/// clean input, followed by one noiseless cycle, must classify as Correct. Codes
/// that do not protect phase only get X-type fault components.
SingleFaultReport exhaustive_single_fault(const CodeSpec &code, const CecCircuit &circuit);

/// Ancilla bits after only the extraction gates of the first half-cycle.
uint64_t extraction_ancillas(const CecCircuit &circuit, const PauliString &data_frame);

VerifyReport run_verify(CodeKind kind, const CircuitOptions &options = {});

nlohmann::json to_json(const VerifyReport &report);

}  // namespace cecsim

#endif
