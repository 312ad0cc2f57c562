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

#ifndef CECSIM_CIRCUIT_H
#define CECSIM_CIRCUIT_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cecsim/code.h"
#include "cecsim/frame.h"
#include "json.hpp"

namespace cecsim {

struct CircuitOptions {
    /// Build the X gates that flank zero-pattern controls as explicit, noisy gates.
    bool polarity_gates_noisy = false;
};

/// One gate error site: a gate, and for correction gates the control index.
struct GateSite {
    uint32_t gate = 0;
    uint32_t slot = 0;
};

struct Schedule {
    std::vector<Gate> gates;  // input order, with `layer` filled in
    std::size_t num_layers = 0;
};

/// Greedy earliest-layer assignment that keeps per-qubit order. A change of
/// stage (extraction, correction, reset) starts after every earlier layer.
Schedule schedule(std::vector<Gate> gates);

/// One scheduled error-correction cycle.
struct CecCircuit {
    CodeKind code = CodeKind::BF;
    std::size_t n_data = 0;
    std::size_t n_ancilla = 0;
    std::size_t num_layers = 0;
    /// Sorted by layer (stable in construction order).
    std::vector<Gate> gates;
    /// gates[layer_begin[l] .. layer_begin[l+1]) run in layer l.
    std::vector<uint32_t> layer_begin;
    std::vector<GateSite> gate_sites;
    /// First site index of each gate.
    std::vector<uint32_t> first_site;
    CircuitOptions options;

    std::size_t q() const { return n_data + n_ancilla; }
    std::size_t t() const { return num_layers; }
    std::size_t g() const { return gate_sites.size(); }
    std::size_t num_memory_sites() const { return q() * t(); }
    std::size_t extraction_gate_count() const;
    const Gate &site_gate(std::size_t site) const { return gates[gate_sites[site].gate]; }
};

CecCircuit build_cycle(const CodeSpec &code, const CircuitOptions &options = {});

struct SiteCounts {
    std::size_t q = 0;
    std::size_t t = 0;
    std::size_t g = 0;

    std::size_t memory_sites() const { return q * t; }
    bool operator==(const SiteCounts &other) const = default;
};

SiteCounts count_sites(const CecCircuit &circuit);

nlohmann::json to_json(const Gate &gate);
nlohmann::json to_json(const CecCircuit &circuit);

}  // namespace cecsim

#endif
