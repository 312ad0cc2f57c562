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

#include "cecsim/estimator.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "cecsim/parallel.h"

namespace cecsim {

namespace {

constexpr uint64_t ALPHA_STREAM_TAG = 0xA1FA;
constexpr uint64_t DIRECT_STREAM_TAG = 0xD1EC;

bool by_site(const GateSiteFault &a, const GateSiteFault &b) {
    return a.site < b.site;
}

bool by_layer(const MemoryFault &a, const MemoryFault &b) {
    return a.layer < b.layer;
}

uint64_t cell_stream_key(const CodeSpec &code, const CecCircuit &circuit, LogicalClass from, std::size_t i,
                         std::size_t j, uint64_t seed) {
    return CounterRng::derive_key(seed, {ALPHA_STREAM_TAG, static_cast<uint64_t>(code.kind),
                                         circuit.options.polarity_gates_noisy ? 1u : 0u, class_index(from), i, j});
}

void accumulate_samples(const CodeSpec &code, const CecCircuit &circuit, AlphaRow &row, uint64_t begin,
                        uint64_t end, uint64_t seed) {
    uint64_t key = cell_stream_key(code, circuit, row.from, row.i, row.j, seed);
    for (uint64_t s = begin; s < end; s++) {
        CounterRng rng(CounterRng::derive_key(key, {s}));
        PauliString input = sample_representative(code, row.from, rng);
        FaultPath path = sample_fault_path(circuit, row.i, row.j, rng);
        row.weight[class_index(run_one_cycle(code, circuit, input, path))]++;
    }
    row.total += end - begin;
    row.n_samples = end;
}

double choose(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0.0;
    }
    return std::exp(std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
                    std::lgamma(static_cast<double>(n - k) + 1));
}

/// Geometric skipping over n sites that each fault with probability p.
template <typename Visit>
void bernoulli_sites(std::size_t n, double p, CounterRng &rng, Visit &&visit) {
    if (p <= 0.0 || n == 0) {
        return;
    }
    double log_q = std::log1p(-p);
    double pos = -1.0;
    while (true) {
        double u = 1.0 - rng.uniform();  // (0, 1]
        pos += 1.0 + std::floor(std::log(u) / log_q);
        if (pos >= static_cast<double>(n)) {
            return;
        }
        visit(static_cast<std::size_t>(pos));
    }
}

using Matrix4 = std::array<std::array<double, 4>, 4>;

struct PerronResult {
    /// Smallest real eigenvalue of I - Q, i.e. 1 - rho(Q).
    double gap = 0.0;
    std::array<double, 4> right{};
    std::array<double, 4> left{};
};

/// Eigenvalue of `a` with the smallest real part, and its eigenvector (absolute values).
std::pair<double, std::array<double, 4>> lowest_eigenpair(const Eigen::Matrix4d &a) {
    Eigen::EigenSolver<Eigen::Matrix4d> solver(a);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition of the transfer block failed");
    }
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < 4; k++) {
        if (solver.eigenvalues()[k].real() < solver.eigenvalues()[best].real()) {
            best = k;
        }
    }
    std::array<double, 4> vec{};
    for (Eigen::Index k = 0; k < 4; k++) {
        vec[static_cast<std::size_t>(k)] = std::abs(solver.eigenvectors()(k, best).real());
    }
    return {solver.eigenvalues()[best].real(), vec};
}

PerronResult perron(const Matrix4 &q) {
    Eigen::Matrix4d a;
    for (std::size_t r = 0; r < 4; r++) {
        for (std::size_t c = 0; c < 4; c++) {
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (r == c ? 1.0 : 0.0) - q[r][c];
        }
    }
    PerronResult out;
    std::tie(out.gap, out.right) = lowest_eigenpair(a);
    out.left = lowest_eigenpair(a.transpose()).second;
    return out;
}

}  // namespace

PauliString run_cycle_frame(const CodeSpec &code, const CecCircuit &circuit, const PauliString &input,
                            const FaultPath &path) {
    if (input.num_qubits() != code.n_data) {
        throw UsageError("input frame does not match code size");
    }
    std::vector<MemoryFault> mem = path.mem_faults;
    std::vector<GateSiteFault> gate = path.gate_faults;
    std::sort(mem.begin(), mem.end(), by_layer);
    std::sort(gate.begin(), gate.end(), by_site);

    FrameState state(tracked_part(code, input), circuit.n_ancilla);
    std::size_t next_mem = 0;
    std::size_t next_gate = 0;
    std::vector<GateFault> faults;
    for (std::size_t layer = 0; layer < circuit.num_layers; layer++) {
        for (; next_mem < mem.size() && mem[next_mem].layer == layer; next_mem++) {
            const auto &f = mem[next_mem];
            if (f.qubit < circuit.n_data) {
                apply_data_pauli(state, f.qubit, f.pauli);
            } else {
                apply_ancilla_pauli(state, f.qubit - circuit.n_data, f.pauli);
            }
        }
        for (auto gi = circuit.layer_begin[layer]; gi < circuit.layer_begin[layer + 1]; gi++) {
            faults.clear();
            for (; next_gate < gate.size() && circuit.gate_sites[gate[next_gate].site].gate == gi; next_gate++) {
                const auto &f = gate[next_gate];
                faults.push_back({circuit.gate_sites[f.site].slot, f.first, f.second});
            }
            apply_gate_in_place(state, circuit.gates[gi], faults);
        }
    }
    if (next_mem != mem.size() || next_gate != gate.size()) {
        throw UsageError("fault path references sites outside the circuit");
    }
    return tracked_part(code, state.data);
}

LogicalClass run_one_cycle(const CodeSpec &code, const CecCircuit &circuit, const PauliString &input,
                           const FaultPath &path) {
    return classify(code, run_cycle_frame(code, circuit, input, path));
}

bool class_representable(const CodeSpec &code, LogicalClass c) {
    if (c == LogicalClass::Failed) {
        return false;
    }
    return code.protects_phase || c == LogicalClass::Correct || c == LogicalClass::XErr;
}

PauliString sample_representative(const CodeSpec &code, LogicalClass c, CounterRng &rng) {
    std::size_t n = code.n_data;
    switch (c) {
        case LogicalClass::Correct:
            return PauliString(n);
        case LogicalClass::XErr:
            return PauliString::single(n, rng.below(n), Pauli::X);
        case LogicalClass::ZErr:
            return PauliString::single(n, rng.below(n), Pauli::Z);
        case LogicalClass::YErr: {
            PauliString p = PauliString::single(n, rng.below(n), Pauli::X);
            return p * PauliString::single(n, rng.below(n), Pauli::Z);
        }
        case LogicalClass::Failed:
            break;
    }
    throw UsageError("the Failed class has no representative");
}

std::vector<PauliString> all_representatives(const CodeSpec &code, LogicalClass c) {
    std::size_t n = code.n_data;
    std::vector<PauliString> out;
    switch (c) {
        case LogicalClass::Correct:
            out.emplace_back(n);
            break;
        case LogicalClass::XErr:
        case LogicalClass::ZErr:
            for (std::size_t q = 0; q < n; q++) {
                out.push_back(PauliString::single(n, q, c == LogicalClass::XErr ? Pauli::X : Pauli::Z));
            }
            break;
        case LogicalClass::YErr:
            for (std::size_t a = 0; a < n; a++) {
                for (std::size_t b = 0; b < n; b++) {
                    out.push_back(PauliString::single(n, a, Pauli::X) * PauliString::single(n, b, Pauli::Z));
                }
            }
            break;
        case LogicalClass::Failed:
            throw UsageError("the Failed class has no representative");
    }
    return out;
}

double AlphaRow::estimate(LogicalClass to) const {
    if (total == 0) {
        return 0.0;
    }
    return static_cast<double>(static_cast<long double>(weight[class_index(to)]) / static_cast<long double>(total));
}

double AlphaRow::stderr_of(LogicalClass to) const {
    if (exact || n_samples == 0) {
        return 0.0;
    }
    double n = static_cast<double>(n_samples);
    double smoothed = (static_cast<double>(weight[class_index(to)]) + 1.0) / (n + 2.0);
    return std::sqrt(smoothed * (1.0 - smoothed) / n);
}

std::vector<AlphaCell> AlphaRow::cells() const {
    std::vector<AlphaCell> out;
    for (auto to : ALL_CLASSES) {
        out.push_back({from, to, i, j, estimate(to), stderr_of(to), n_samples, exact});
    }
    return out;
}

AlphaRow estimate_alpha(const CodeSpec &code, const CecCircuit &circuit, LogicalClass from, std::size_t i,
                        std::size_t j, uint64_t n_samples, uint64_t seed) {
    if (!class_representable(code, from)) {
        throw UsageError("class " + class_name(from) + " has no representative in code " + code.name());
    }
    if (n_samples == 0) {
        throw UsageError("n_samples must be at least 1");
    }
    AlphaRow row;
    row.from = from;
    row.i = i;
    row.j = j;
    accumulate_samples(code, circuit, row, 0, n_samples, seed);
    return row;
}

void extend_alpha(const CodeSpec &code, const CecCircuit &circuit, AlphaRow &row, uint64_t n_samples, uint64_t seed) {
    if (row.exact || n_samples <= row.n_samples) {
        return;
    }
    accumulate_samples(code, circuit, row, row.n_samples, n_samples, seed);
}

double enumeration_size(const CodeSpec &code, const CecCircuit &circuit, LogicalClass from, std::size_t i,
                        std::size_t j) {
    double reps = static_cast<double>(all_representatives(code, from).size());
    double mem = choose(circuit.num_memory_sites(), i) * std::pow(3.0, static_cast<double>(i));
    // Elementary symmetric polynomial of the per-site Pauli counts.
    std::vector<double> e(j + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t s = 0; s < circuit.g(); s++) {
        double c = static_cast<double>(circuit.site_gate(s).paulis_per_site());
        for (std::size_t k = std::min(j, s + 1); k >= 1; k--) {
            e[k] += e[k - 1] * c;
        }
    }
    return reps * mem * e[j];
}

AlphaRow enumerate_alpha(const CodeSpec &code, const CecCircuit &circuit, LogicalClass from, std::size_t i,
                         std::size_t j, double budget) {
    if (!class_representable(code, from)) {
        throw UsageError("class " + class_name(from) + " has no representative in code " + code.name());
    }
    if (i > circuit.num_memory_sites() || j > circuit.g()) {
        throw UsageError("fault counts exceed available sites");
    }
    double size = enumeration_size(code, circuit, from, i, j);
    if (size > budget) {
        throw BudgetExceeded(size, "enumeration of " + std::to_string(size) + " paths exceeds budget " +
                                       std::to_string(budget));
    }
    auto reps = all_representatives(code, from);
    AlphaRow row;
    row.from = from;
    row.i = i;
    row.j = j;
    row.exact = true;

    FaultPath path;
    std::size_t mem_sites = circuit.num_memory_sites();

    // Weight of a path relative to the sampler: every gate fault on a 3-Pauli site
    // counts 5 times a fault on a 15-Pauli site.
    std::function<void(std::size_t, unsigned __int128)> gate_level = [&](std::size_t start, unsigned __int128 w) {
        if (path.gate_faults.size() == j) {
            for (const auto &rep : reps) {
                row.weight[class_index(run_one_cycle(code, circuit, rep, path))] += w;
                row.total += w;
            }
            return;
        }
        std::size_t still = j - path.gate_faults.size();
        for (std::size_t s = start; s + still <= circuit.g(); s++) {
            std::size_t count = circuit.site_gate(s).paulis_per_site();
            for (std::size_t k = 0; k < count; k++) {
                GateSiteFault f;
                f.site = static_cast<uint32_t>(s);
                if (count == 3) {
                    f.first = single_pauli(k);
                    f.second = Pauli::I;
                } else {
                    std::tie(f.first, f.second) = two_qubit_pauli(k);
                }
                path.gate_faults.push_back(f);
                gate_level(s + 1, w * (15 / count));
                path.gate_faults.pop_back();
            }
        }
    };
    std::function<void(std::size_t)> mem_level = [&](std::size_t start) {
        if (path.mem_faults.size() == i) {
            gate_level(0, 1);
            return;
        }
        std::size_t still = i - path.mem_faults.size();
        for (std::size_t m = start; m + still <= mem_sites; m++) {
            for (std::size_t k = 0; k < 3; k++) {
                MemoryFault f;
                f.layer = static_cast<uint32_t>(m / circuit.q());
                f.qubit = static_cast<uint32_t>(m % circuit.q());
                f.pauli = single_pauli(k);
                path.mem_faults.push_back(f);
                mem_level(m + 1);
                path.mem_faults.pop_back();
            }
        }
    };
    mem_level(0);
    row.n_samples = static_cast<uint64_t>(size);
    return row;
}

AlphaTable::AlphaTable(const CodeSpec &code, const CecCircuit &circuit, EstimatorOptions options)
    : code_(&code), circuit_(&circuit), options_(options) {
    if (options_.n_samples == 0) {
        throw UsageError("n_samples must be at least 1");
    }
}

void AlphaTable::ensure(const std::vector<std::pair<std::size_t, std::size_t>> &cells) {
    std::vector<AlphaRow> todo;
    for (auto [i, j] : cells) {
        for (auto from : ALL_CLASSES) {
            if (!class_representable(*code_, from) || rows_.count({class_index(from), i, j})) {
                continue;
            }
            AlphaRow r;
            r.from = from;
            r.i = i;
            r.j = j;
            todo.push_back(r);
        }
    }
    parallel_for(todo.size(), options_.workers, [&](std::size_t k) {
        AlphaRow &r = todo[k];
        bool want_exact = options_.exact_order >= 0 && r.i + r.j <= static_cast<std::size_t>(options_.exact_order) &&
                          enumeration_size(*code_, *circuit_, r.from, r.i, r.j) <= options_.enumeration_budget;
        if (want_exact) {
            r = enumerate_alpha(*code_, *circuit_, r.from, r.i, r.j, options_.enumeration_budget);
        } else {
            r = estimate_alpha(*code_, *circuit_, r.from, r.i, r.j, options_.n_samples, options_.seed);
        }
    });
    for (auto &r : todo) {
        rows_.emplace(Key{class_index(r.from), r.i, r.j}, std::move(r));
    }
}

const AlphaRow &AlphaTable::row(LogicalClass from, std::size_t i, std::size_t j) const {
    auto it = rows_.find({class_index(from), i, j});
    if (it == rows_.end()) {
        throw UsageError("alpha row not computed: " + class_name(from) + " (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
    }
    return it->second;
}

void AlphaTable::grow(uint64_t n_samples) {
    if (n_samples <= options_.n_samples) {
        return;
    }
    options_.n_samples = n_samples;
    std::vector<AlphaRow *> sampled;
    for (auto &[key, r] : rows_) {
        if (!r.exact) {
            sampled.push_back(&r);
        }
    }
    parallel_for(sampled.size(), options_.workers, [&](std::size_t k) {
        extend_alpha(*code_, *circuit_, *sampled[k], n_samples, options_.seed);
    });
}

TransferMatrix build_transfer(AlphaTable &table, const ErrorModel &model) {
    model.validate();
    const auto &opts = table.options();
    SiteCounts dims = count_sites(table.circuit());
    TruncationSet ts = truncation_set(dims, model, opts.epsilon, opts.max_order);
    table.ensure(ts.cells);

    TransferMatrix t;
    t.order = ts.order;
    t.truncation_capped = ts.capped;
    t.n_samples = table.n_samples();
    t.seed = opts.seed;

    std::vector<double> weights;
    for (auto [i, j] : ts.cells) {
        weights.push_back(std::exp(log_path_weight(dims, model, i, j)));
    }
    double included = 0.0;
    for (double w : weights) {
        included += w;
    }
    double residual = std::max(0.0, 1.0 - included);
    t.residual_mass = residual;

    for (auto from : ALL_CLASSES) {
        auto a = class_index(from);
        if (!class_representable(table.code(), from)) {
            t.entries[a][class_index(LogicalClass::Failed)] = 1.0;
            continue;
        }
        for (std::size_t c = 0; c < ts.cells.size(); c++) {
            const AlphaRow &row = table.row(from, ts.cells[c].first, ts.cells[c].second);
            double w = weights[c];
            for (auto to : ALL_CLASSES) {
                auto b = class_index(to);
                t.entries[a][b] += w * row.estimate(to);
                double se = row.stderr_of(to);
                t.variance[a][b] += w * w * se * se;
            }
        }
        t.entries[a][a] += residual;
    }
    return t;
}

TransferMatrix build_transfer(const CodeSpec &code, const CecCircuit &circuit, const ErrorModel &model,
                              const EstimatorOptions &options) {
    AlphaTable table(code, circuit, options);
    return build_transfer(table, model);
}

double spectral_radius(const Matrix4 &q) {
    for (const auto &row : q) {
        for (double v : row) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw NumericalError("spectral radius needs a finite nonnegative matrix");
            }
        }
    }
    return 1.0 - perron(q).gap;
}

LogicalRate logical_rate(const TransferMatrix &t) {
    Matrix4 q{};
    for (std::size_t a = 0; a < 4; a++) {
        for (std::size_t b = 0; b < 4; b++) {
            q[a][b] = t.entries[a][b];
        }
    }
    PerronResult pr = perron(q);
    LogicalRate out;
    out.p_log = std::max(0.0, pr.gap);

    // First-order perturbation: d rho / d Q_ab = u_a v_b / (u . v).
    double uv = 0.0;
    for (std::size_t a = 0; a < 4; a++) {
        uv += pr.left[a] * pr.right[a];
    }
    if (uv > 0.0) {
        double var = 0.0;
        for (std::size_t a = 0; a < 4; a++) {
            for (std::size_t b = 0; b < 4; b++) {
                double d = pr.left[a] * pr.right[b] / uv;
                var += d * d * t.variance[a][b];
            }
        }
        out.stderr_ = std::sqrt(var);
    }
    return out;
}

DirectRate fit_geometric(const std::vector<uint64_t> &failure_cycle, uint64_t max_cycles) {
    DirectRate out;
    out.trajectories = failure_cycle.size();
    for (uint64_t c : failure_cycle) {
        if (c == 0) {
            out.total_cycles += max_cycles;
        } else {
            out.total_cycles += c;
            out.failures++;
        }
    }
    if (out.total_cycles == 0) {
        out.upper_bound_only = true;
        out.ci_high = 1.0;
        return out;
    }
    double n = static_cast<double>(out.total_cycles);
    if (out.failures == 0) {
        out.upper_bound_only = true;
        out.ci_high = -std::log(0.05) / n;
        return out;
    }
    double k = static_cast<double>(out.failures);
    out.rate = k / n;
    out.stderr_ = out.rate * std::sqrt((1.0 - out.rate) / k);
    out.ci_low = std::max(0.0, out.rate - 1.96 * out.stderr_);
    out.ci_high = out.rate + 1.96 * out.stderr_;
    return out;
}

FaultPath sample_unconditional_path(const CecCircuit &circuit, const ErrorModel &model, CounterRng &rng) {
    FaultPath path;
    bernoulli_sites(circuit.num_memory_sites(), model.p_mem(), rng, [&](std::size_t m) {
        MemoryFault f;
        f.layer = static_cast<uint32_t>(m / circuit.q());
        f.qubit = static_cast<uint32_t>(m % circuit.q());
        f.pauli = single_pauli(rng.below(3));
        path.mem_faults.push_back(f);
    });
    bernoulli_sites(circuit.g(), model.p_gate, rng, [&](std::size_t s) {
        GateSiteFault f;
        f.site = static_cast<uint32_t>(s);
        if (circuit.site_gate(s).paulis_per_site() == 3) {
            f.first = single_pauli(rng.below(3));
            f.second = Pauli::I;
        } else {
            std::tie(f.first, f.second) = two_qubit_pauli(rng.below(15));
        }
        path.gate_faults.push_back(f);
    });
    return path;
}

DirectRate direct_monte_carlo_rate(const CodeSpec &code, const CecCircuit &circuit, const ErrorModel &model,
                                   uint64_t n_trajectories, uint64_t max_cycles, uint64_t seed,
                                   std::size_t workers) {
    model.validate();
    std::vector<uint64_t> failure_cycle(n_trajectories, 0);
    uint64_t key = CounterRng::derive_key(seed, {DIRECT_STREAM_TAG, static_cast<uint64_t>(code.kind),
                                                 circuit.options.polarity_gates_noisy ? 1u : 0u});
    parallel_for(n_trajectories, workers, [&](std::size_t k) {
        CounterRng rng(CounterRng::derive_key(key, {k}));
        PauliString frame(code.n_data);
        for (uint64_t cycle = 1; cycle <= max_cycles; cycle++) {
            FaultPath path = sample_unconditional_path(circuit, model, rng);
            if (!path.empty() || !frame.is_identity()) {
                frame = run_cycle_frame(code, circuit, frame, path);
            }
            if (classify(code, frame) == LogicalClass::Failed) {
                failure_cycle[k] = cycle;
                return;
            }
        }
    });
    return fit_geometric(failure_cycle, max_cycles);
}

nlohmann::json result_json(const CodeSpec &code, const ErrorModel &model, const TransferMatrix &t,
                           const LogicalRate &rate) {
    auto matrix = nlohmann::json::array();
    for (const auto &row : t.entries) {
        matrix.push_back(row);
    }
    return {
        {"code", code.name()},
        {"p_gate", model.p_gate},
        {"p_mem", model.p_mem()},
        {"mem_mode", mem_mode_name(model.mem_mode)},
        {"T", matrix},
        {"p_log", rate.p_log},
        {"stderr", rate.stderr_},
        {"truncation", {{"order", t.order}, {"residual_mass", t.residual_mass}, {"capped", t.truncation_capped}}},
        {"seed", t.seed},
        {"n_samples", t.n_samples},
    };
}

}  // namespace cecsim
