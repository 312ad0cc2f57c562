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

#ifndef CECSIM_CODE_H
#define CECSIM_CODE_H

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cecsim/pauli.h"
#include "json.hpp"

namespace cecsim {

enum class CodeKind : uint8_t { BF, BS, STEANE };

std::string code_name(CodeKind kind);
/// Accepts "bf", "bs", "steane" in any case.
CodeKind code_from_name(const std::string &name);

enum class LogicalClass : uint8_t { Correct = 0, XErr = 1, ZErr = 2, YErr = 3, Failed = 4 };
constexpr std::size_t NUM_CLASSES = 5;
constexpr std::array<LogicalClass, NUM_CLASSES> ALL_CLASSES = {
    LogicalClass::Correct, LogicalClass::XErr, LogicalClass::ZErr, LogicalClass::YErr, LogicalClass::Failed};
std::string class_name(LogicalClass c);
constexpr std::size_t class_index(LogicalClass c) { return static_cast<std::size_t>(c); }

/// Extracted check values packed one bit per check (bit k = check k).
struct Syndrome {
    std::size_t num_z = 0;
    std::size_t num_x = 0;
    uint64_t z_bits = 0;
    uint64_t x_bits = 0;

    bool z(std::size_t k) const { return (z_bits >> k) & 1; }
    bool x(std::size_t k) const { return (x_bits >> k) & 1; }
    bool operator==(const Syndrome &other) const = default;
};

/// Row-reduced basis of a GF(2) subspace of bitmasks.
class Gf2Span {
   public:
    void add(uint64_t v);
    uint64_t reduce(uint64_t v) const;
    bool contains(uint64_t v) const { return reduce(v) == 0; }
    std::size_t rank() const { return basis_.size(); }

   private:
    std::vector<uint64_t> basis_;  // each with a distinct leading bit, sorted descending
};

/// A C_kNOT correction: fires on `target` iff ancillas `controls` (indices into
/// the check list of the matching type) equal `pattern`.
struct CorrectionGroup {
    std::vector<uint32_t> controls;
    std::vector<uint8_t> pattern;
    uint32_t target = 0;
};

/// Syndrome-indexed decoder. Entry s is the minimal-weight correction for
/// packed syndrome s, or identity when s is unreachable.
struct DecoderTable {
    std::vector<PauliString> corrections;
    std::vector<uint8_t> reachable;
};

struct CodeSpec {
    CodeKind kind = CodeKind::BF;
    std::size_t n_data = 0;
    std::vector<PauliString> z_checks;
    std::vector<PauliString> x_checks;
    std::vector<PauliString> gauge_gens;
    PauliString logical_x;
    PauliString logical_z;
    /// Corrects X-type errors; indexed by the z_check syndrome.
    DecoderTable decode_x;
    /// Corrects Z-type errors; indexed by the x_check syndrome.
    DecoderTable decode_z;
    std::vector<CorrectionGroup> x_correction_groups;
    std::vector<CorrectionGroup> z_correction_groups;
    /// False for the bit-flip code, which stores a classical bit and leaves phase unprotected.
    bool protects_phase = true;

    /// X-type (resp. Z-type) stabilizer+gauge group as GF(2) spans over qubit masks.
    Gf2Span x_group;
    Gf2Span z_group;

    std::string name() const { return code_name(kind); }
};

CodeSpec make_code(CodeKind kind);
/// Shared immutable instances, built once.
const CodeSpec &get_code(CodeKind kind);

Syndrome syndrome(const CodeSpec &code, const PauliString &frame);
PauliString minimal_correction(const CodeSpec &code, const Syndrome &s);
LogicalClass classify(const CodeSpec &code, const PauliString &frame);

/// Drops the parts of a frame the code does not protect (Z components for BF).
PauliString tracked_part(const CodeSpec &code, const PauliString &frame);

struct IncidenceReport {
    std::vector<std::size_t> check_weights;
    std::vector<std::size_t> qubit_degrees;
    /// overlaps[a][b] = number of qubits shared by checks a and b.
    std::vector<std::vector<std::size_t>> overlaps;

    bool uniform(std::size_t weight, std::size_t degree, std::size_t overlap) const;
};

/// Incidence structure of the Z checks. For STEANE, throws ValidationError
/// unless weights, degrees and pairwise overlaps are 4, 4 and 2.
IncidenceReport check_incidence(const CodeSpec &code);

/// Commutation and logical-operator invariants. Throws ValidationError.
void validate_code(const CodeSpec &code);

nlohmann::json to_json(const CodeSpec &code);
nlohmann::json to_json(const IncidenceReport &report);

}  // namespace cecsim

#endif
