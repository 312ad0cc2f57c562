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

#include "cecsim/circuit.h"

#include <algorithm>
#include <array>

#include "cecsim/errors.h"

namespace cecsim {

namespace {

int stage_of(GateKind kind) {
    switch (kind) {
        case GateKind::ExtractZ:
        case GateKind::ExtractX:
            return 0;
        case GateKind::CorrectX:
        case GateKind::CorrectZ:
        case GateKind::PolarityX:
            return 1;
        case GateKind::Reset:
            return 2;
    }
    return 0;
}

constexpr uint32_t ANCILLA_KEY_OFFSET = 64;

/// Qubits touched by a gate, ancillas offset so they do not collide with data.
std::vector<uint32_t> touched(const Gate &g) {
    switch (g.kind) {
        case GateKind::ExtractZ:
        case GateKind::ExtractX:
            return {g.data, ANCILLA_KEY_OFFSET + g.ancilla};
        case GateKind::CorrectX:
        case GateKind::CorrectZ: {
            std::vector<uint32_t> out{g.data};
            for (auto c : g.controls) {
                out.push_back(ANCILLA_KEY_OFFSET + c);
            }
            return out;
        }
        case GateKind::Reset:
        case GateKind::PolarityX:
            return {ANCILLA_KEY_OFFSET + g.ancilla};
    }
    return {};
}

/// Reorders (data, ancilla) extraction pairs into greedy matching rounds, so the
/// ASAP scheduler packs each round into one layer.
std::vector<std::pair<uint32_t, uint32_t>> matching_order(std::vector<std::pair<uint32_t, uint32_t>> edges) {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    std::vector<uint8_t> taken(edges.size(), 0);
    std::size_t remaining = edges.size();
    while (remaining > 0) {
        std::array<uint8_t, 64> data_busy{};
        std::array<uint8_t, 64> anc_busy{};
        for (std::size_t k = 0; k < edges.size(); k++) {
            auto [d, a] = edges[k];
            if (taken[k] || data_busy[d] || anc_busy[a]) {
                continue;
            }
            taken[k] = 1;
            data_busy[d] = 1;
            anc_busy[a] = 1;
            out.push_back(edges[k]);
            remaining--;
        }
    }
    return out;
}

void append_half(std::vector<Gate> &gates, const std::vector<PauliString> &checks,
                 const std::vector<CorrectionGroup> &groups, bool x_errors, const CircuitOptions &options,
                 std::size_t n_ancilla) {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (std::size_t k = 0; k < checks.size(); k++) {
        uint64_t support = x_errors ? checks[k].z_bits() : checks[k].x_bits();
        for (uint32_t q = 0; q < checks[k].num_qubits(); q++) {
            if ((support >> q) & 1) {
                edges.emplace_back(q, static_cast<uint32_t>(k));
            }
        }
    }
    for (auto [d, a] : matching_order(edges)) {
        gates.push_back(x_errors ? Gate::extract_z(d, a) : Gate::extract_x(d, a));
    }
    for (const auto &grp : groups) {
        std::vector<uint32_t> flipped;
        if (options.polarity_gates_noisy) {
            for (std::size_t k = 0; k < grp.controls.size(); k++) {
                if (!grp.pattern[k]) {
                    flipped.push_back(grp.controls[k]);
                }
            }
        }
        for (auto a : flipped) {
            gates.push_back(Gate::polarity_x(a));
        }
        gates.push_back(x_errors ? Gate::correct_x(grp.controls, grp.pattern, grp.target)
                                 : Gate::correct_z(grp.controls, grp.pattern, grp.target));
        for (auto a : flipped) {
            gates.push_back(Gate::polarity_x(a));
        }
    }
    for (std::size_t a = 0; a < n_ancilla; a++) {
        gates.push_back(Gate::reset(static_cast<uint32_t>(a)));
    }
}

}  // namespace

Schedule schedule(std::vector<Gate> gates) {
    Schedule out;
    std::array<std::size_t, 2 * ANCILLA_KEY_OFFSET> next_free{};
    std::size_t barrier = 0;
    std::size_t depth = 0;
    int prev_stage = -1;
    for (auto &g : gates) {
        int stage = stage_of(g.kind);
        if (prev_stage != -1 && stage != prev_stage) {
            barrier = depth;
        }
        prev_stage = stage;
        std::size_t layer = barrier;
        auto keys = touched(g);
        for (auto k : keys) {
            if (k >= next_free.size()) {
                throw UsageError("gate operand out of range for scheduling");
            }
            layer = std::max(layer, next_free[k]);
        }
        g.layer = static_cast<uint32_t>(layer);
        for (auto k : keys) {
            next_free[k] = layer + 1;
        }
        depth = std::max(depth, layer + 1);
    }
    out.gates = std::move(gates);
    out.num_layers = depth;
    return out;
}

std::size_t CecCircuit::extraction_gate_count() const {
    return static_cast<std::size_t>(std::count_if(gates.begin(), gates.end(), [](const Gate &g) {
        return g.kind == GateKind::ExtractZ || g.kind == GateKind::ExtractX;
    }));
}

CecCircuit build_cycle(const CodeSpec &code, const CircuitOptions &options) {
    CecCircuit c;
    c.code = code.kind;
    c.n_data = code.n_data;
    c.n_ancilla = std::max(code.z_checks.size(), code.x_checks.size());
    c.options = options;

    std::vector<Gate> gates;
    append_half(gates, code.z_checks, code.x_correction_groups, true, options, c.n_ancilla);
    if (!code.x_checks.empty()) {
        append_half(gates, code.x_checks, code.z_correction_groups, false, options, c.n_ancilla);
    }
    Schedule s = schedule(std::move(gates));
    c.num_layers = s.num_layers;
    c.gates = std::move(s.gates);
    std::stable_sort(c.gates.begin(), c.gates.end(), [](const Gate &a, const Gate &b) { return a.layer < b.layer; });

    c.layer_begin.assign(c.num_layers + 1, 0);
    for (const auto &g : c.gates) {
        c.layer_begin[g.layer + 1]++;
    }
    for (std::size_t l = 0; l < c.num_layers; l++) {
        c.layer_begin[l + 1] += c.layer_begin[l];
    }
    for (uint32_t gi = 0; gi < c.gates.size(); gi++) {
        c.first_site.push_back(static_cast<uint32_t>(c.gate_sites.size()));
        for (uint32_t slot = 0; slot < c.gates[gi].num_sites(); slot++) {
            c.gate_sites.push_back({gi, slot});
        }
    }
    return c;
}

SiteCounts count_sites(const CecCircuit &circuit) {
    return {circuit.q(), circuit.t(), circuit.g()};
}

nlohmann::json to_json(const Gate &gate) {
    nlohmann::json j{{"kind", gate_kind_name(gate.kind)}};
    switch (gate.kind) {
        case GateKind::ExtractZ:
        case GateKind::ExtractX:
            j["data"] = gate.data;
            j["ancilla"] = gate.ancilla;
            break;
        case GateKind::CorrectX:
        case GateKind::CorrectZ:
            j["controls"] = gate.controls;
            j["pattern"] = gate.pattern;
            j["data"] = gate.data;
            break;
        case GateKind::Reset:
        case GateKind::PolarityX:
            j["ancilla"] = gate.ancilla;
            break;
    }
    j["layer"] = gate.layer;
    return j;
}

nlohmann::json to_json(const CecCircuit &circuit) {
    auto layers = nlohmann::json::array();
    for (std::size_t l = 0; l < circuit.num_layers; l++) {
        auto gates = nlohmann::json::array();
        for (auto k = circuit.layer_begin[l]; k < circuit.layer_begin[l + 1]; k++) {
            gates.push_back(to_json(circuit.gates[k]));
        }
        layers.push_back({{"index", l}, {"gates", gates}});
    }
    return {{"code", code_name(circuit.code)},
            {"q", circuit.q()},
            {"t", circuit.t()},
            {"g", circuit.g()},
            {"layers", layers}};
}

}  // namespace cecsim
