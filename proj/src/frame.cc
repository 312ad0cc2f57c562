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

#include "cecsim/frame.h"

#include "cecsim/errors.h"

namespace cecsim {

std::string gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::ExtractZ:
            return "ExtractZ";
        case GateKind::ExtractX:
            return "ExtractX";
        case GateKind::CorrectX:
            return "CorrectX";
        case GateKind::CorrectZ:
            return "CorrectZ";
        case GateKind::Reset:
            return "Reset";
        case GateKind::PolarityX:
            return "PolarityX";
    }
    throw UsageError("unknown gate kind");
}

GateKind gate_kind_from_name(const std::string &name) {
    for (auto k : {GateKind::ExtractZ, GateKind::ExtractX, GateKind::CorrectX, GateKind::CorrectZ, GateKind::Reset,
                   GateKind::PolarityX}) {
        if (gate_kind_name(k) == name) {
            return k;
        }
    }
    throw UsageError("unknown gate kind '" + name + "'");
}

Gate Gate::extract_z(uint32_t data, uint32_t ancilla) {
    Gate g;
    g.kind = GateKind::ExtractZ;
    g.data = data;
    g.ancilla = ancilla;
    return g;
}

Gate Gate::extract_x(uint32_t data, uint32_t ancilla) {
    Gate g = extract_z(data, ancilla);
    g.kind = GateKind::ExtractX;
    return g;
}

static Gate make_correction(GateKind kind, std::vector<uint32_t> controls, std::vector<uint8_t> pattern,
                            uint32_t target) {
    if (controls.size() != pattern.size()) {
        throw UsageError("correction gate needs one pattern bit per control");
    }
    for (std::size_t a = 0; a < controls.size(); a++) {
        for (std::size_t b = a + 1; b < controls.size(); b++) {
            if (controls[a] == controls[b]) {
                throw UsageError("correction gate has a duplicate control");
            }
        }
    }
    Gate g;
    g.kind = kind;
    g.data = target;
    g.controls = std::move(controls);
    g.pattern = std::move(pattern);
    return g;
}

Gate Gate::correct_x(std::vector<uint32_t> controls, std::vector<uint8_t> pattern, uint32_t target) {
    return make_correction(GateKind::CorrectX, std::move(controls), std::move(pattern), target);
}

Gate Gate::correct_z(std::vector<uint32_t> controls, std::vector<uint8_t> pattern, uint32_t target) {
    return make_correction(GateKind::CorrectZ, std::move(controls), std::move(pattern), target);
}

Gate Gate::reset(uint32_t ancilla) {
    Gate g;
    g.kind = GateKind::Reset;
    g.ancilla = ancilla;
    return g;
}

Gate Gate::polarity_x(uint32_t ancilla) {
    Gate g;
    g.kind = GateKind::PolarityX;
    g.ancilla = ancilla;
    return g;
}

std::size_t Gate::num_sites() const {
    switch (kind) {
        case GateKind::ExtractZ:
        case GateKind::ExtractX:
        case GateKind::PolarityX:
            return 1;
        case GateKind::CorrectX:
        case GateKind::CorrectZ:
            return controls.size();
        case GateKind::Reset:
            return 0;
    }
    return 0;
}

std::size_t Gate::paulis_per_site() const {
    return kind == GateKind::PolarityX ? 3 : 15;
}

AncillaRegister::AncillaRegister(std::size_t count) : count_(count) {
    if (count > 64) {
        throw UsageError("at most 64 ancillas are supported");
    }
}

bool AncillaRegister::get(std::size_t k) const {
    if (k >= count_) {
        throw UsageError("ancilla " + std::to_string(k) + " out of range");
    }
    return (bits_ >> k) & 1;
}

void AncillaRegister::set(std::size_t k, bool value) {
    if (k >= count_) {
        throw UsageError("ancilla " + std::to_string(k) + " out of range");
    }
    uint64_t bit = uint64_t{1} << k;
    bits_ = value ? (bits_ | bit) : (bits_ & ~bit);
}

void AncillaRegister::flip(std::size_t k) {
    if (k >= count_) {
        throw UsageError("ancilla " + std::to_string(k) + " out of range");
    }
    bits_ ^= uint64_t{1} << k;
}

void apply_data_pauli(FrameState &state, std::size_t qubit, Pauli p) {
    state.data *= PauliString::single(state.data.num_qubits(), qubit, p);
}

void apply_ancilla_pauli(FrameState &state, std::size_t ancilla, Pauli p) {
    if (has_x(p)) {
        state.ancillas.flip(ancilla);
    } else if (ancilla >= state.ancillas.size()) {
        throw UsageError("ancilla " + std::to_string(ancilla) + " out of range");
    }
}

static void check_data(const FrameState &state, uint32_t q) {
    if (q >= state.data.num_qubits()) {
        throw UsageError("data qubit " + std::to_string(q) + " out of range");
    }
}

static void check_ancilla(const FrameState &state, uint32_t a) {
    if (a >= state.ancillas.size()) {
        throw UsageError("ancilla " + std::to_string(a) + " out of range");
    }
}

void apply_gate_in_place(FrameState &state, const Gate &gate, std::span<const GateFault> faults) {
    switch (gate.kind) {
        case GateKind::ExtractZ:
            check_data(state, gate.data);
            check_ancilla(state, gate.ancilla);
            if ((state.data.x_bits() >> gate.data) & 1) {
                state.ancillas.flip(gate.ancilla);
            }
            break;
        case GateKind::ExtractX:
            check_data(state, gate.data);
            check_ancilla(state, gate.ancilla);
            if ((state.data.z_bits() >> gate.data) & 1) {
                state.ancillas.flip(gate.ancilla);
            }
            break;
        case GateKind::CorrectX:
        case GateKind::CorrectZ: {
            check_data(state, gate.data);
            bool match = true;
            for (std::size_t k = 0; k < gate.controls.size(); k++) {
                if (state.ancillas.get(gate.controls[k]) != (gate.pattern[k] != 0)) {
                    match = false;
                }
            }
            if (match) {
                apply_data_pauli(state, gate.data, gate.kind == GateKind::CorrectX ? Pauli::X : Pauli::Z);
            }
            break;
        }
        case GateKind::Reset:
            state.ancillas.set(gate.ancilla, false);
            break;
        case GateKind::PolarityX:
            // The flanking X pair cancels on the frame; only its fault sites matter.
            check_ancilla(state, gate.ancilla);
            break;
    }

    for (const auto &f : faults) {
        if (f.slot >= gate.num_sites()) {
            throw UsageError("fault slot " + std::to_string(f.slot) + " does not exist on " +
                             gate_kind_name(gate.kind));
        }
        switch (gate.kind) {
            case GateKind::ExtractZ:
            case GateKind::ExtractX:
                apply_data_pauli(state, gate.data, f.first);
                apply_ancilla_pauli(state, gate.ancilla, f.second);
                break;
            case GateKind::CorrectX:
            case GateKind::CorrectZ:
                apply_ancilla_pauli(state, gate.controls[f.slot], f.first);
                apply_data_pauli(state, gate.data, f.second);
                break;
            case GateKind::PolarityX:
                if (f.second != Pauli::I) {
                    throw UsageError("single-qubit gate fault with a second Pauli");
                }
                apply_ancilla_pauli(state, gate.ancilla, f.first);
                break;
            case GateKind::Reset:
                break;
        }
    }
}

FrameState apply_gate(FrameState state, const Gate &gate, std::optional<GateFault> fault) {
    if (fault) {
        GateFault f = *fault;
        apply_gate_in_place(state, gate, std::span<const GateFault>(&f, 1));
    } else {
        apply_gate_in_place(state, gate);
    }
    return state;
}

}  // namespace cecsim
