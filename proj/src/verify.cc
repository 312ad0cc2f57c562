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

#include "cecsim/verify.h"

#include <bit>
#include <sstream>

#include "cecsim/errors.h"
#include "cecsim/estimator.h"
#include "cecsim/noise.h"

namespace cecsim {

bool VerifyReport::passed() const {
    for (const auto &c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

namespace {

bool x_type(Pauli p) { return !has_z(p); }

std::string describe(const FaultPath &path) {
    std::ostringstream s;
    for (const auto &f : path.mem_faults) {
        s << "mem(q=" << f.qubit << ",layer=" << f.layer << "," << pauli_char(f.pauli) << ") ";
    }
    for (const auto &f : path.gate_faults) {
        s << "gate(site=" << f.site << "," << pauli_char(f.first) << pauli_char(f.second) << ") ";
    }
    return s.str();
}

void record(SingleFaultReport &report, const CodeSpec &code, const CecCircuit &circuit, const FaultPath &path) {
    report.total++;
    PauliString clean(code.n_data);
    PauliString after = run_cycle_frame(code, circuit, clean, path);
    if (run_one_cycle(code, circuit, after, FaultPath{}) == LogicalClass::Correct) {
        report.passed++;
    } else if (report.failures.size() < 8) {
        report.failures.push_back(describe(path));
    }
}

VerifyCheck check(std::string name, bool passed, std::string detail = {}) {
    return VerifyCheck{std::move(name), passed, std::move(detail)};
}

}  // namespace

SingleFaultReport exhaustive_single_fault(const CodeSpec &code, const CecCircuit &circuit) {
    SingleFaultReport report;
    bool x_only = !code.protects_phase;
    for (uint32_t layer = 0; layer < circuit.num_layers; layer++) {
        for (uint32_t qubit = 0; qubit < circuit.q(); qubit++) {
            for (std::size_t k = 0; k < 3; k++) {
                Pauli p = single_pauli(k);
                if (x_only && !x_type(p)) {
                    continue;
                }
                FaultPath path;
                path.mem_faults.push_back({qubit, layer, p});
                record(report, code, circuit, path);
            }
        }
    }
    for (uint32_t site = 0; site < circuit.g(); site++) {
        std::size_t count = circuit.site_gate(site).paulis_per_site();
        for (std::size_t k = 0; k < count; k++) {
            GateSiteFault f;
            f.site = site;
            if (count == 3) {
                f.first = single_pauli(k);
            } else {
                std::tie(f.first, f.second) = two_qubit_pauli(k);
            }
            if (x_only && !(x_type(f.first) && x_type(f.second))) {
                continue;
            }
            FaultPath path;
            path.gate_faults.push_back(f);
            record(report, code, circuit, path);
        }
    }
    return report;
}

uint64_t extraction_ancillas(const CecCircuit &circuit, const PauliString &data_frame) {
    FrameState state(data_frame, circuit.n_ancilla);
    for (const auto &gate : circuit.gates) {
        if (gate.kind == GateKind::ExtractZ) {
            apply_gate_in_place(state, gate);
        }
    }
    return state.ancillas.bits();
}

VerifyReport run_verify(CodeKind kind, const CircuitOptions &options) {
    VerifyReport report;
    report.code = kind;
    const CodeSpec &code = get_code(kind);

    try {
        validate_code(code);
        report.checks.push_back(check("code_invariants", true));
    } catch (const ValidationError &e) {
        report.checks.push_back(check("code_invariants", false, e.what()));
    }

    try {
        IncidenceReport inc = check_incidence(code);
        report.incidence = to_json(inc);
        report.checks.push_back(check("incidence", true));
    } catch (const ValidationError &e) {
        report.checks.push_back(check("incidence", false, e.what()));
    }

    CecCircuit circuit = build_cycle(code, options);
    std::size_t n = code.n_data;

    if (kind == CodeKind::BF) {
        // Ancilla values for no error and a flip on each data qubit.
        static constexpr uint64_t expected[4] = {0b000, 0b101, 0b011, 0b110};
        bool ok = extraction_ancillas(circuit, PauliString(n)) == expected[0];
        for (std::size_t qb = 0; qb < n; qb++) {
            ok = ok && extraction_ancillas(circuit, PauliString::single(n, qb, Pauli::X)) == expected[qb + 1];
        }
        report.checks.push_back(check("bf_syndrome_table", ok));
    }

    {
        bool ok = true;
        std::string detail;
        for (uint64_t m = 0; m < (uint64_t{1} << n); m++) {
            uint64_t bits = extraction_ancillas(circuit, PauliString(n, m, 0));
            auto w = std::popcount(bits);
            bool allowed = true;
            if (kind == CodeKind::BF) {
                allowed = w % 2 == 0;
            } else if (kind == CodeKind::STEANE) {
                allowed = w == 0 || w == 4;
            }
            if (!allowed) {
                ok = false;
                detail = "x mask " + std::to_string(m) + " gives ancilla weight " + std::to_string(w);
                break;
            }
        }
        report.checks.push_back(check("ancilla_parity", ok, detail));
    }

    if (kind != CodeKind::BF) {
        std::size_t expected = kind == CodeKind::STEANE ? 56 : 36;
        std::size_t got = circuit.extraction_gate_count();
        report.checks.push_back(check("extraction_gate_count", got == expected,
                                      "expected " + std::to_string(expected) + ", got " + std::to_string(got)));
    }

    {
        bool ok = true;
        std::string detail;
        for (std::size_t qb = 0; qb < n && ok; qb++) {
            for (Pauli p : {Pauli::X, Pauli::Z, Pauli::Y}) {
                if (!code.protects_phase && p != Pauli::X) {
                    continue;
                }
                auto out = run_cycle_frame(code, circuit, PauliString::single(n, qb, p), FaultPath{});
                if (classify(code, out) != LogicalClass::Correct) {
                    ok = false;
                    detail = std::string("uncorrected ") + pauli_char(p) + " on qubit " + std::to_string(qb);
                    break;
                }
            }
        }
        report.checks.push_back(check("noiseless_completeness", ok, detail));
    }

    {
        // A flipped ancilla while checks are extracted must not reach the data.
        bool ok = true;
        std::string detail;
        for (uint32_t layer = 0; layer < circuit.num_layers && ok; layer++) {
            bool extraction_layer = false;
            for (auto gi = circuit.layer_begin[layer]; gi < circuit.layer_begin[layer + 1]; gi++) {
                auto k = circuit.gates[gi].kind;
                extraction_layer = extraction_layer || k == GateKind::ExtractZ || k == GateKind::ExtractX;
            }
            if (!extraction_layer) {
                continue;
            }
            for (std::size_t a = 0; a < circuit.n_ancilla; a++) {
                FaultPath path;
                path.mem_faults.push_back({static_cast<uint32_t>(n + a), layer, Pauli::X});
                if (!run_cycle_frame(code, circuit, PauliString(n), path).is_identity()) {
                    ok = false;
                    detail = "ancilla " + std::to_string(a) + " flipped at layer " + std::to_string(layer);
                    break;
                }
            }
        }
        report.checks.push_back(check("faulty_extraction_safety", ok, detail));
    }

    {
        SingleFaultReport sf = exhaustive_single_fault(code, circuit);
        std::string detail = std::to_string(sf.passed) + "/" + std::to_string(sf.total);
        if (!sf.failures.empty()) {
            detail += "; first failure: " + sf.failures.front();
        }
        report.checks.push_back(check("single_fault_survival", sf.all_passed(), detail));
    }
    return report;
}

nlohmann::json to_json(const VerifyReport &report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &c : report.checks) {
        nlohmann::json j = {{"name", c.name}, {"passed", c.passed}};
        if (!c.detail.empty()) {
            j["detail"] = c.detail;
        }
        checks.push_back(j);
    }
    nlohmann::json out = {{"code", code_name(report.code)}, {"passed", report.passed()}, {"checks", checks}};
    if (!report.incidence.is_null()) {
        out["incidence"] = report.incidence;
    }
    return out;
}

}  // namespace cecsim
