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

#ifndef CECSIM_NOISE_H
#define CECSIM_NOISE_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cecsim/circuit.h"
#include "cecsim/pauli.h"
#include "cecsim/rng.h"

namespace cecsim {

enum class MemMode : uint8_t { Zero, Fixed, Tied };

std::string mem_mode_name(MemMode mode);

/// Two-rate depolarizing model: one rate per gate site, one per memory site.
struct ErrorModel {
    double p_gate = 0.0;
    MemMode mem_mode = MemMode::Zero;
    /// Only read in Fixed mode.
    double p_mem_fixed = 0.0;

    static ErrorModel zero_memory(double p_gate) { return {p_gate, MemMode::Zero, 0.0}; }
    static ErrorModel fixed_memory(double p_gate, double p_mem) { return {p_gate, MemMode::Fixed, p_mem}; }
    static ErrorModel tied(double p_gate) { return {p_gate, MemMode::Tied, 0.0}; }

    double p_mem() const;
    ErrorModel with_gate_rate(double p) const;
    /// Throws UsageError unless both rates lie in [0, 1).
    void validate() const;
};

/// Memory fault on global qubit `qubit` (data first, then ancillas) at the start of `layer`.
struct MemoryFault {
    uint32_t qubit = 0;
    uint32_t layer = 0;
    Pauli pauli = Pauli::X;
};

/// Fault on gate site `site`. `second` is I for single-qubit sites.
struct GateSiteFault {
    uint32_t site = 0;
    Pauli first = Pauli::X;
    Pauli second = Pauli::I;
};

struct FaultPath {
    std::vector<MemoryFault> mem_faults;
    std::vector<GateSiteFault> gate_faults;

    bool empty() const { return mem_faults.empty() && gate_faults.empty(); }
};

/// log P(i, j): probability that exactly i memory sites and j gate sites fault.
double log_path_weight(const SiteCounts &dims, const ErrorModel &model, std::size_t i, std::size_t j);

/// Uniform placement of exactly i memory faults and j gate faults on distinct sites,
/// with uniform nontrivial Paulis (3 per single-qubit site, 15 per two-qubit site).
FaultPath sample_fault_path(const CecCircuit &circuit, std::size_t i, std::size_t j, CounterRng &rng);

/// Nontrivial Pauli with index k: single-qubit k in [0,3), two-qubit k in [0,15).
Pauli single_pauli(std::size_t k);
std::pair<Pauli, Pauli> two_qubit_pauli(std::size_t k);

struct TruncationSet {
    std::vector<std::pair<std::size_t, std::size_t>> cells;  // (i, j), ordered by i+j then i
    std::size_t order = 0;
    /// Probability mass of fault counts outside `cells`.
    double residual_mass = 0.0;
    /// True when `max_order` was reached before the residual fell below epsilon * P(0,0).
    bool capped = false;
};

constexpr std::size_t DEFAULT_MAX_ORDER = 12;

/// All (i, j) with nonzero weight and i + j <= W, for the smallest W whose excluded
/// mass is below epsilon * P(0, 0).
TruncationSet truncation_set(const SiteCounts &dims, const ErrorModel &model, double epsilon,
                             std::size_t max_order = DEFAULT_MAX_ORDER);

}  // namespace cecsim

#endif
