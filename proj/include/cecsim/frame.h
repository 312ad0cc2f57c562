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

#ifndef CECSIM_FRAME_H
#define CECSIM_FRAME_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cecsim/pauli.h"

namespace cecsim {

enum class GateKind : uint8_t {
    ExtractZ,   // CNOT data -> ancilla; copies the data qubit's bit-flip onto the ancilla.
    ExtractX,   // Hadamard-conjugated extraction; copies the data qubit's phase-flip.
    CorrectX,   // X on the data target iff the control ancillas equal the pattern.
    CorrectZ,   // Z on the data target iff the control ancillas equal the pattern.
    Reset,      // ancilla -> 0
    PolarityX,  // explicit X on a control ancilla; only built when polarity gates are noisy.
};

std::string gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string &name);

/// One operation of a correction cycle.
///
/// Data qubits are indexed 0..n_data-1 and ancillas 0..n_ancilla-1 in their
/// own index spaces. For correction gates `pattern[k]` is the required value
/// of ancilla `controls[k]`.
struct Gate {
    GateKind kind = GateKind::ExtractZ;
    uint32_t data = 0;
    uint32_t ancilla = 0;
    std::vector<uint32_t> controls;
    std::vector<uint8_t> pattern;
    uint32_t layer = 0;

    static Gate extract_z(uint32_t data, uint32_t ancilla);
    static Gate extract_x(uint32_t data, uint32_t ancilla);
    static Gate correct_x(std::vector<uint32_t> controls, std::vector<uint8_t> pattern, uint32_t target);
    static Gate correct_z(std::vector<uint32_t> controls, std::vector<uint8_t> pattern, uint32_t target);
    static Gate reset(uint32_t ancilla);
    static Gate polarity_x(uint32_t ancilla);

    bool is_correction() const { return kind == GateKind::CorrectX || kind == GateKind::CorrectZ; }
    /// Number of independent error sites the gate contributes.
    std::size_t num_sites() const;
    /// Number of nontrivial Paulis a fault on one of this gate's sites can take (15 or 3).
    std::size_t paulis_per_site() const;

    bool operator==(const Gate &other) const = default;
};

/// A fault on one site of a gate.
///
/// `slot` picks the site: always 0 except for correction gates, where it is the
/// index into `controls`. For two-qubit sites `first` acts on the data qubit of
/// an extraction gate or the control ancilla of a correction gate, and `second`
/// on the ancilla or the data target respectively. Single-qubit sites only use
/// `first`.
struct GateFault {
    uint32_t slot = 0;
    Pauli first = Pauli::I;
    Pauli second = Pauli::I;
};

/// Classical ancilla bits. Phase information is never stored.
class AncillaRegister {
   public:
    AncillaRegister() = default;
    explicit AncillaRegister(std::size_t count);

    std::size_t size() const { return count_; }
    bool get(std::size_t k) const;
    void set(std::size_t k, bool value);
    void flip(std::size_t k);
    uint64_t bits() const { return bits_; }

    bool operator==(const AncillaRegister &other) const = default;

   private:
    std::size_t count_ = 0;
    uint64_t bits_ = 0;
};

struct FrameState {
    PauliString data;
    AncillaRegister ancillas;

    FrameState() = default;
    FrameState(PauliString data_frame, std::size_t n_ancilla) : data(data_frame), ancillas(n_ancilla) {
    }

    bool operator==(const FrameState &other) const = default;
};

/// Applies a single-qubit Pauli to a data qubit of the frame.
void apply_data_pauli(FrameState &state, std::size_t qubit, Pauli p);
/// Applies a Pauli to a classical ancilla: X and Y flip the bit, Z does nothing.
void apply_ancilla_pauli(FrameState &state, std::size_t ancilla, Pauli p);

/// Propagates the frame through `gate`, then injects `faults` (each on a distinct site).
void apply_gate_in_place(FrameState &state, const Gate &gate, std::span<const GateFault> faults = {});

FrameState apply_gate(FrameState state, const Gate &gate, std::optional<GateFault> fault = std::nullopt);

}  // namespace cecsim

#endif
