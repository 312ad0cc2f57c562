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

#ifndef CECSIM_ESTIMATOR_H
#define CECSIM_ESTIMATOR_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "cecsim/circuit.h"
#include "cecsim/code.h"
#include "cecsim/errors.h"
#include "cecsim/noise.h"
#include "cecsim/rng.h"
#include "json.hpp"

namespace cecsim {

using ClassArray = std::array<double, NUM_CLASSES>;
using ClassMatrix = std::array<ClassArray, NUM_CLASSES>;

/// Runs one cycle on `input` with the faults of `path` and returns the final data frame
/// restricted to what the code tracks (see tracked_part).
PauliString run_cycle_frame(const CodeSpec &code, const CecCircuit &circuit, const PauliString &input,
                            const FaultPath &path);

LogicalClass run_one_cycle(const CodeSpec &code, const CecCircuit &circuit, const PauliString &input,
                           const FaultPath &path);

/// False for classes a code cannot hold (phase classes of the bit-flip code).
bool class_representable(const CodeSpec &code, LogicalClass c);

/// Uniform minimal-weight representative: identity, single X, single Z, or single X times single Z.
PauliString sample_representative(const CodeSpec &code, LogicalClass c, CounterRng &rng);
std::vector<PauliString> all_representatives(const CodeSpec &code, LogicalClass c);

struct AlphaCell {
    LogicalClass from = LogicalClass::Correct;
    LogicalClass to = LogicalClass::Correct;
    std::size_t i = 0;
    std::size_t j = 0;
    double estimate = 0.0;
    double stderr_ = 0.0;
    uint64_t n_samples = 0;
    bool exact = false;
};

/// Conditional destination distribution for one (from, i, j).
struct AlphaRow {
    LogicalClass from = LogicalClass::Correct;
    std::size_t i = 0;
    std::size_t j = 0;
    bool exact = false;
    /// Sampled: destination counts. Exact: integer path weights.
    std::array<unsigned __int128, NUM_CLASSES> weight{};
    unsigned __int128 total = 0;
    uint64_t n_samples = 0;

    double estimate(LogicalClass to) const;
    /// Binomial standard error with add-one smoothing so empty cells keep a nonzero spread; 0 when exact.
    double stderr_of(LogicalClass to) const;
    std::vector<AlphaCell> cells() const;
};

/// Monte Carlo estimate of the row. Sample k draws from stream (seed, cell, k), so
/// a row with more samples extends one with fewer.
AlphaRow estimate_alpha(const CodeSpec &code, const CecCircuit &circuit, LogicalClass from, std::size_t i,
                        std::size_t j, uint64_t n_samples, uint64_t seed);

/// Adds samples [row.n_samples, n_samples) to a sampled row.
void extend_alpha(const CodeSpec &code, const CecCircuit &circuit, AlphaRow &row, uint64_t n_samples, uint64_t seed);

struct BudgetExceeded : UsageError {
    double combinations;
    BudgetExceeded(double count, const std::string &what) : UsageError(what), combinations(count) {
    }
};

constexpr double DEFAULT_ENUMERATION_BUDGET = 1e8;

/// Number of (representative, placement, Pauli) paths enumerate_alpha would visit.
double enumeration_size(const CodeSpec &code, const CecCircuit &circuit, LogicalClass from, std::size_t i,
                        std::size_t j);

/// Exact row by visiting every placement, Pauli choice and representative with
/// the weights of the uniform sampler.
AlphaRow enumerate_alpha(const CodeSpec &code, const CecCircuit &circuit, LogicalClass from, std::size_t i,
                         std::size_t j, double budget = DEFAULT_ENUMERATION_BUDGET);

struct EstimatorOptions {
    double epsilon = 1e-4;
    uint64_t n_samples = 10000;
    uint64_t seed = 1;
    std::size_t max_order = DEFAULT_MAX_ORDER;
    /// Cells with i + j <= exact_order are enumerated when within budget; -1 disables.
    int exact_order = 1;
    double enumeration_budget = 2e6;
    std::size_t workers = 1;
};

/// Lazily filled cache of alpha rows for one (code, circuit, seed). Rows do not
/// depend on the error rates, so one table serves a whole sweep.
class AlphaTable {
   public:
    AlphaTable(const CodeSpec &code, const CecCircuit &circuit, EstimatorOptions options);

    /// Computes any missing rows for the given cells, fanning out to the workers.
    void ensure(const std::vector<std::pair<std::size_t, std::size_t>> &cells);
    const AlphaRow &row(LogicalClass from, std::size_t i, std::size_t j) const;
    /// Raises every sampled row to n_samples.
    void grow(uint64_t n_samples);

    const CodeSpec &code() const { return *code_; }
    const CecCircuit &circuit() const { return *circuit_; }
    const EstimatorOptions &options() const { return options_; }
    uint64_t n_samples() const { return options_.n_samples; }

   private:
    using Key = std::tuple<std::size_t, std::size_t, std::size_t>;
    const CodeSpec *code_;
    const CecCircuit *circuit_;
    EstimatorOptions options_;
    std::map<Key, AlphaRow> rows_;
};

struct TransferMatrix {
    ClassMatrix entries{};
    /// Variance of each entry from sampling.
    ClassMatrix variance{};
    std::size_t order = 0;
    double residual_mass = 0.0;
    bool truncation_capped = false;
    uint64_t n_samples = 0;
    uint64_t seed = 0;

    double at(LogicalClass a, LogicalClass b) const { return entries[class_index(a)][class_index(b)]; }
};

/// T_ab = sum over the truncation set of alpha_ab(i,j) P(i,j). Leftover mass stays on the
/// diagonal and the Failed row is absorbing.
TransferMatrix build_transfer(AlphaTable &table, const ErrorModel &model);
TransferMatrix build_transfer(const CodeSpec &code, const CecCircuit &circuit, const ErrorModel &model,
                              const EstimatorOptions &options);

struct LogicalRate {
    double p_log = 0.0;
    double stderr_ = 0.0;
};


/// p_log = 1 - spectral radius of the block of T over the four non-failed classes.
LogicalRate logical_rate(const TransferMatrix &t);
/// Spectral radius of a nonnegative 4x4 matrix.
double spectral_radius(const std::array<std::array<double, 4>, 4> &q);

struct DirectRate {
    double rate = 0.0;
    double stderr_ = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    uint64_t failures = 0;
    uint64_t total_cycles = 0;
    uint64_t trajectories = 0;
    bool upper_bound_only = false;
};

/// Geometric-failure MLE from per-trajectory failure cycles (0 = censored at max_cycles).
DirectRate fit_geometric(const std::vector<uint64_t> &failure_cycle, uint64_t max_cycles);

/// Simulates trajectories with every site faulting independently, cycle after
/// cycle, until the data frame classifies as Failed.
DirectRate direct_monte_carlo_rate(const CodeSpec &code, const CecCircuit &circuit, const ErrorModel &model,
                                   uint64_t n_trajectories, uint64_t max_cycles, uint64_t seed,
                                   std::size_t workers = 1);

/// Unconditional fault path: each site faults independently with its rate.
FaultPath sample_unconditional_path(const CecCircuit &circuit, const ErrorModel &model, CounterRng &rng);

nlohmann::json result_json(const CodeSpec &code, const ErrorModel &model, const TransferMatrix &t,
                           const LogicalRate &rate);

}  // namespace cecsim

#endif
