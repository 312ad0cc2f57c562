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

#include "cecsim/noise.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cecsim/errors.h"

namespace cecsim {

std::string mem_mode_name(MemMode mode) {
    switch (mode) {
        case MemMode::Zero:
            return "zero";
        case MemMode::Fixed:
            return "fixed";
        case MemMode::Tied:
            return "tied";
    }
    return "?";
}

double ErrorModel::p_mem() const {
    switch (mem_mode) {
        case MemMode::Zero:
            return 0.0;
        case MemMode::Fixed:
            return p_mem_fixed;
        case MemMode::Tied:
            return p_gate;
    }
    return 0.0;
}

ErrorModel ErrorModel::with_gate_rate(double p) const {
    ErrorModel m = *this;
    m.p_gate = p;
    return m;
}

void ErrorModel::validate() const {
    auto ok = [](double p) { return p >= 0.0 && p < 1.0; };
    if (!ok(p_gate) || !ok(p_mem())) {
        throw UsageError("error rates must lie in [0, 1): p_gate=" + std::to_string(p_gate) +
                         " p_mem=" + std::to_string(p_mem()));
    }
}

namespace {

double log_binomial(std::size_t n, std::size_t k) {
    return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
           std::lgamma(static_cast<double>(n - k) + 1);
}

/// log of C(n,k) p^k (1-p)^(n-k), with p = 0 handled exactly.
double log_binomial_pmf(std::size_t n, std::size_t k, double p) {
    if (p == 0.0) {
        return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    return log_binomial(n, k) + static_cast<double>(k) * std::log(p) + static_cast<double>(n - k) * std::log1p(-p);
}

std::vector<double> binomial_pmf(std::size_t n, double p) {
    std::vector<double> out(n + 1);
    for (std::size_t k = 0; k <= n; k++) {
        out[k] = std::exp(log_binomial_pmf(n, k, p));
    }
    return out;
}

/// suffix[k] = sum_{m > k} pmf[m], for k in [0, n]; suffix[n] = 0.
std::vector<double> upper_tail(const std::vector<double> &pmf) {
    std::vector<double> out(pmf.size(), 0.0);
    double acc = 0.0;
    for (std::size_t k = pmf.size(); k-- > 0;) {
        out[k] = acc;
        acc += pmf[k];
    }
    return out;
}

/// Floyd's algorithm: k distinct values from [0, n), uniformly.
std::vector<uint32_t> distinct_sample(std::size_t n, std::size_t k, CounterRng &rng) {
    std::vector<uint32_t> out;
    out.reserve(k);
    for (std::size_t r = n - k; r < n; r++) {
        auto v = static_cast<uint32_t>(rng.below(r + 1));
        if (std::find(out.begin(), out.end(), v) != out.end()) {
            v = static_cast<uint32_t>(r);
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace

double log_path_weight(const SiteCounts &dims, const ErrorModel &model, std::size_t i, std::size_t j) {
    std::size_t mem_sites = dims.memory_sites();
    if (i > mem_sites || j > dims.g) {
        throw UsageError("fault counts (" + std::to_string(i) + "," + std::to_string(j) + ") exceed sites (" +
                         std::to_string(mem_sites) + "," + std::to_string(dims.g) + ")");
    }
    return log_binomial_pmf(mem_sites, i, model.p_mem()) + log_binomial_pmf(dims.g, j, model.p_gate);
}

Pauli single_pauli(std::size_t k) {
    static constexpr Pauli table[3] = {Pauli::X, Pauli::Y, Pauli::Z};
    return table[k];
}

std::pair<Pauli, Pauli> two_qubit_pauli(std::size_t k) {
    std::size_t v = k + 1;
    return {static_cast<Pauli>(v & 3), static_cast<Pauli>(v >> 2)};
}

FaultPath sample_fault_path(const CecCircuit &circuit, std::size_t i, std::size_t j, CounterRng &rng) {
    std::size_t mem_sites = circuit.num_memory_sites();
    if (i > mem_sites || j > circuit.g()) {
        throw UsageError("cannot place " + std::to_string(i) + " memory and " + std::to_string(j) +
                         " gate faults on a circuit with " + std::to_string(mem_sites) + " and " +
                         std::to_string(circuit.g()) + " sites");
    }
    FaultPath path;
    path.mem_faults.reserve(i);
    for (auto m : distinct_sample(mem_sites, i, rng)) {
        MemoryFault f;
        f.layer = static_cast<uint32_t>(m / circuit.q());
        f.qubit = static_cast<uint32_t>(m % circuit.q());
        f.pauli = single_pauli(rng.below(3));
        path.mem_faults.push_back(f);
    }
    path.gate_faults.reserve(j);
    for (auto s : distinct_sample(circuit.g(), j, rng)) {
        GateSiteFault f;
        f.site = s;
        if (circuit.site_gate(s).paulis_per_site() == 3) {
            f.first = single_pauli(rng.below(3));
            f.second = Pauli::I;
        } else {
            std::tie(f.first, f.second) = two_qubit_pauli(rng.below(15));
        }
        path.gate_faults.push_back(f);
    }
    return path;
}

TruncationSet truncation_set(const SiteCounts &dims, const ErrorModel &model, double epsilon,
                             std::size_t max_order) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw UsageError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
    }
    model.validate();
    std::size_t mem_sites = dims.memory_sites();
    double pm = model.p_mem();
    double pg = model.p_gate;
    auto pmf_i = binomial_pmf(mem_sites, pm);
    auto pmf_j = binomial_pmf(dims.g, pg);
    auto tail_i = upper_tail(pmf_i);
    auto tail_j = upper_tail(pmf_j);
    double p00 = std::exp(log_path_weight(dims, model, 0, 0));

    auto excluded = [&](std::size_t w) {
        double mass = w < mem_sites ? tail_i[w] : 0.0;
        for (std::size_t i = 0; i <= std::min(w, mem_sites); i++) {
            std::size_t rest = w - i;
            if (rest < dims.g) {
                mass += pmf_i[i] * tail_j[rest];
            }
        }
        return mass;
    };

    TruncationSet out;
    std::size_t w = 0;
    while (!(excluded(w) < epsilon * p00)) {
        if (w >= max_order) {
            out.capped = true;
            break;
        }
        w++;
    }
    out.order = w;
    out.residual_mass = excluded(w);
    for (std::size_t total = 0; total <= w; total++) {
        for (std::size_t i = 0; i <= total; i++) {
            std::size_t j = total - i;
            if (i > mem_sites || j > dims.g) {
                continue;
            }
            if ((i > 0 && pm == 0.0) || (j > 0 && pg == 0.0)) {
                continue;
            }
            out.cells.emplace_back(i, j);
        }
    }
    return out;
}

}  // namespace cecsim
