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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cecsim/circuit.h"
#include "cecsim/code.h"
#include "cecsim/errors.h"
#include "cecsim/estimator.h"
#include "cecsim/noise.h"

namespace cecsim {
namespace {

constexpr LogicalClass kCorrect = LogicalClass::Correct;
constexpr LogicalClass kFailed = LogicalClass::Failed;

TEST(RunOneCycle, CleanInputStaysCorrect) {
    for (auto kind : {CodeKind::BF, CodeKind::BS, CodeKind::STEANE}) {
        const CodeSpec &code = get_code(kind);
        CecCircuit c = build_cycle(code);
        EXPECT_EQ(run_one_cycle(code, c, PauliString(code.n_data), FaultPath{}), kCorrect) << code.name();
    }
}

TEST(RunOneCycle, CorrectableInputIsCleared) {
    for (auto kind : {CodeKind::BS, CodeKind::STEANE}) {
        const CodeSpec &code = get_code(kind);
        CecCircuit c = build_cycle(code);
        for (auto cls : {LogicalClass::XErr, LogicalClass::ZErr, LogicalClass::YErr}) {
            for (const auto &rep : all_representatives(code, cls)) {
                EXPECT_EQ(classify(code, rep), cls) << rep.str();
                EXPECT_EQ(run_one_cycle(code, c, rep, FaultPath{}), kCorrect) << rep.str();
            }
        }
    }
}

TEST(RunOneCycle, BitFlipCodeDropsPhase) {
    const CodeSpec &code = get_code(CodeKind::BF);
    CecCircuit c = build_cycle(code);
    auto out = run_cycle_frame(code, c, PauliString::single(3, 1, Pauli::Z), FaultPath{});
    EXPECT_TRUE(out.is_identity());
    EXPECT_FALSE(class_representable(code, LogicalClass::ZErr));
    EXPECT_TRUE(class_representable(code, LogicalClass::XErr));
}

TEST(Representatives, MinimalWeight) {
    const CodeSpec &code = get_code(CodeKind::STEANE);
    EXPECT_EQ(all_representatives(code, kCorrect).size(), 1u);
    EXPECT_EQ(all_representatives(code, LogicalClass::XErr).size(), 7u);
    EXPECT_EQ(all_representatives(code, LogicalClass::YErr).size(), 49u);
    CounterRng rng(5);
    for (int k = 0; k < 50; k++) {
        auto p = sample_representative(code, LogicalClass::YErr, rng);
        EXPECT_EQ(classify(code, p), LogicalClass::YErr);
        EXPECT_LE(p.weight(), 2u);
    }
    EXPECT_THROW(enumerate_alpha(get_code(CodeKind::BF), build_cycle(get_code(CodeKind::BF)), LogicalClass::ZErr, 0, 1),
                 UsageError);
}

TEST(Alpha, ZeroFaultsClearsInput) {
    for (auto kind : {CodeKind::BF, CodeKind::BS, CodeKind::STEANE}) {
        const CodeSpec &code = get_code(kind);
        CecCircuit c = build_cycle(code);
        for (auto from : ALL_CLASSES) {
            if (from == kFailed || !class_representable(code, from)) {
                continue;
            }
            // A noiseless cycle clears any correctable input.
            AlphaRow row = enumerate_alpha(code, c, from, 0, 0);
            EXPECT_EQ(row.estimate(kCorrect), 1.0);
        }
    }
}

TEST(Alpha, SteaneSingleGateFaultNeverFails) {
    const CodeSpec &code = get_code(CodeKind::STEANE);
    CecCircuit c = build_cycle(code);
    AlphaRow row = enumerate_alpha(code, c, kCorrect, 0, 1);
    EXPECT_TRUE(row.exact);
    EXPECT_EQ(row.estimate(kFailed), 0.0);
    EXPECT_EQ(row.stderr_of(kCorrect), 0.0);
}

TEST(Alpha, RowsSumToOne) {
    const CodeSpec &code = get_code(CodeKind::BS);
    CecCircuit c = build_cycle(code);
    for (auto from : {kCorrect, LogicalClass::XErr, LogicalClass::YErr}) {
        AlphaRow row = estimate_alpha(code, c, from, 1, 2, 2000, 9);
        double s = 0.0;
        for (auto to : ALL_CLASSES) {
            s += row.estimate(to);
        }
        EXPECT_NEAR(s, 1.0, 1e-12);
    }
}

TEST(Alpha, SampledAgreesWithEnumerated) {
    const CodeSpec &code = get_code(CodeKind::BF);
    CecCircuit c = build_cycle(code);
    for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 0}, {0, 2}}) {
        for (auto from : {kCorrect, LogicalClass::XErr}) {
            AlphaRow exact = enumerate_alpha(code, c, from, i, j);
            AlphaRow sampled = estimate_alpha(code, c, from, i, j, 20000, 3);
            for (auto to : ALL_CLASSES) {
                double se = sampled.stderr_of(to);
                EXPECT_LE(std::abs(sampled.estimate(to) - exact.estimate(to)), 3.0 * se + 1e-12)
                    << class_name(from) << "->" << class_name(to) << " (" << i << "," << j << ")";
            }
        }
    }
}

TEST(Alpha, ExtendMatchesFreshRow) {
    const CodeSpec &code = get_code(CodeKind::BS);
    CecCircuit c = build_cycle(code);
    AlphaRow grown = estimate_alpha(code, c, kCorrect, 1, 1, 300, 4);
    extend_alpha(code, c, grown, 900, 4);
    AlphaRow fresh = estimate_alpha(code, c, kCorrect, 1, 1, 900, 4);
    EXPECT_EQ(grown.n_samples, 900u);
    for (auto to : ALL_CLASSES) {
        EXPECT_EQ(grown.estimate(to), fresh.estimate(to));
    }
}

TEST(Alpha, BudgetExceeded) {
    const CodeSpec &code = get_code(CodeKind::STEANE);
    CecCircuit c = build_cycle(code);
    EXPECT_GT(enumeration_size(code, c, kCorrect, 2, 2), 1e8);
    EXPECT_THROW(enumerate_alpha(code, c, kCorrect, 2, 2), BudgetExceeded);
    EXPECT_THROW(enumerate_alpha(code, c, kCorrect, 0, 3, 1000.0), BudgetExceeded);
}

TEST(Alpha, EmptyCellIsNotCertain) {
    AlphaRow row;
    row.n_samples = 100;
    row.total = 100;
    row.weight[0] = 100;
    EXPECT_GT(row.stderr_of(kFailed), 0.0);
}

TEST(Transfer, NoiselessClearsEveryClass) {
    for (auto kind : {CodeKind::BF, CodeKind::STEANE}) {
        const CodeSpec &code = get_code(kind);
        CecCircuit c = build_cycle(code);
        TransferMatrix t = build_transfer(code, c, ErrorModel::zero_memory(0.0), EstimatorOptions{});
        for (auto a : ALL_CLASSES) {
            if (!class_representable(code, a)) {
                EXPECT_EQ(t.at(a, kFailed), 1.0);
                continue;
            }
            for (auto b : ALL_CLASSES) {
                EXPECT_EQ(t.at(a, b), b == kCorrect ? 1.0 : 0.0);
            }
        }
        EXPECT_EQ(logical_rate(t).p_log, 0.0);
    }
}

TEST(Transfer, StochasticWithAbsorbingFailure) {
    const CodeSpec &code = get_code(CodeKind::BS);
    CecCircuit c = build_cycle(code);
    EstimatorOptions opts;
    opts.n_samples = 2000;
    TransferMatrix t = build_transfer(code, c, ErrorModel::tied(2e-4), opts);
    for (auto a : ALL_CLASSES) {
        double s = 0.0;
        for (auto b : ALL_CLASSES) {
            EXPECT_GE(t.at(a, b), 0.0);
            s += t.at(a, b);
        }
        EXPECT_NEAR(s, 1.0, 1e-9);
    }
    EXPECT_EQ(t.at(kFailed, kFailed), 1.0);
}

TEST(Transfer, SharedTableMatchesFresh) {
    const CodeSpec &code = get_code(CodeKind::BF);
    CecCircuit c = build_cycle(code);
    EstimatorOptions opts;
    opts.n_samples = 3000;
    AlphaTable table(code, c, opts);
    build_transfer(table, ErrorModel::tied(1e-2));
    TransferMatrix shared = build_transfer(table, ErrorModel::tied(3e-3));
    TransferMatrix fresh = build_transfer(code, c, ErrorModel::tied(3e-3), opts);
    EXPECT_EQ(shared.entries, fresh.entries);
}

TransferMatrix from_block(const std::array<std::array<double, 4>, 4> &q) {
    TransferMatrix t;
    for (std::size_t a = 0; a < 4; a++) {
        double s = 0.0;
        for (std::size_t b = 0; b < 4; b++) {
            t.entries[a][b] = q[a][b];
            s += q[a][b];
        }
        t.entries[a][4] = 1.0 - s;
    }
    t.entries[4][4] = 1.0;
    return t;
}

TEST(LogicalRate, Identity) {
    std::array<std::array<double, 4>, 4> q{};
    for (std::size_t a = 0; a < 4; a++) q[a][a] = 1.0;
    EXPECT_EQ(logical_rate(from_block(q)).p_log, 0.0);
}

TEST(LogicalRate, UniformLoss) {
    for (double p : {1e-6, 1e-3, 0.2}) {
        std::array<std::array<double, 4>, 4> q{};
        for (std::size_t a = 0; a < 4; a++) q[a][a] = 1.0 - p;
        EXPECT_NEAR(logical_rate(from_block(q)).p_log, p, 1e-14);
    }
}

std::array<std::array<double, 4>, 4> random_block(std::mt19937_64 &gen, double loss) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::array<std::array<double, 4>, 4> q{};
    for (std::size_t a = 0; a < 4; a++) {
        double s = 0.0;
        for (std::size_t b = 0; b < 4; b++) {
            q[a][b] = u(gen) + (a == b ? 4.0 : 0.0);
            s += q[a][b];
        }
        double keep = 1.0 - loss * (0.5 + u(gen));
        for (std::size_t b = 0; b < 4; b++) q[a][b] *= keep / s;
    }
    return q;
}

TEST(LogicalRate, MatchesLongRunSurvival) {
    // Oracle: decay rate of the survival probability under repeated T.
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 5; trial++) {
        auto q = random_block(gen, 0.01);
        std::array<double, 4> v{1.0, 0.0, 0.0, 0.0};
        double prev = 1.0;
        double ratio = 0.0;
        for (int n = 0; n < 10000; n++) {
            std::array<double, 4> next{};
            for (std::size_t a = 0; a < 4; a++) {
                for (std::size_t b = 0; b < 4; b++) next[b] += v[a] * q[a][b];
            }
            v = next;
            double s = v[0] + v[1] + v[2] + v[3];
            ratio = s / prev;
            prev = s;
        }
        EXPECT_NEAR(logical_rate(from_block(q)).p_log, 1.0 - ratio, 1e-6);
        EXPECT_NEAR(spectral_radius(q), ratio, 1e-6);
    }
}

TEST(LogicalRate, RelabelingInvariant) {
    std::mt19937_64 gen(12);
    auto q = random_block(gen, 0.05);
    std::array<std::size_t, 4> perm{0, 3, 1, 2};
    std::array<std::array<double, 4>, 4> r{};
    for (std::size_t a = 0; a < 4; a++) {
        for (std::size_t b = 0; b < 4; b++) r[perm[a]][perm[b]] = q[a][b];
    }
    EXPECT_NEAR(logical_rate(from_block(q)).p_log, logical_rate(from_block(r)).p_log, 1e-13);
}

TEST(LogicalRate, StderrFromVariance) {
    std::array<std::array<double, 4>, 4> q{};
    for (std::size_t a = 0; a < 4; a++) q[a][a] = 0.99;
    TransferMatrix t = from_block(q);
    EXPECT_EQ(logical_rate(t).stderr_, 0.0);
    t.variance[0][0] = 1e-6;
    EXPECT_GT(logical_rate(t).stderr_, 0.0);
}

TEST(LogicalRate, RejectsNegative) {
    std::array<std::array<double, 4>, 4> q{};
    q[0][0] = -0.1;
    EXPECT_THROW(spectral_radius(q), NumericalError);
}

TEST(FitGeometric, Synthetic) {
    std::vector<uint64_t> cycles;
    for (int k = 0; k < 1000; k++) cycles.push_back(100);
    DirectRate r = fit_geometric(cycles, 1000);
    EXPECT_DOUBLE_EQ(r.rate, 0.01);
    EXPECT_EQ(r.failures, 1000u);
    EXPECT_LT(r.ci_low, 0.01);
    EXPECT_GT(r.ci_high, 0.01);

    std::vector<uint64_t> censored(10, 0);
    DirectRate c = fit_geometric(censored, 50);
    EXPECT_TRUE(c.upper_bound_only);
    EXPECT_EQ(c.total_cycles, 500u);
    EXPECT_NEAR(c.ci_high, 3.0 / 500.0, 1e-3);
}

TEST(DirectMonteCarlo, NoiselessOnlyBounds) {
    const CodeSpec &code = get_code(CodeKind::BF);
    CecCircuit c = build_cycle(code);
    DirectRate r = direct_monte_carlo_rate(code, c, ErrorModel::zero_memory(0.0), 20, 50, 1);
    EXPECT_TRUE(r.upper_bound_only);
    EXPECT_EQ(r.failures, 0u);
}

TEST(DirectMonteCarlo, WorkerCountInvariant) {
    const CodeSpec &code = get_code(CodeKind::BF);
    CecCircuit c = build_cycle(code);
    ErrorModel m = ErrorModel::tied(0.02);
    DirectRate a = direct_monte_carlo_rate(code, c, m, 200, 2000, 8, 1);
    DirectRate b = direct_monte_carlo_rate(code, c, m, 200, 2000, 8, 3);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(a.total_cycles, b.total_cycles);
}

TEST(Determinism, WorkerCountInvariant) {
    const CodeSpec &code = get_code(CodeKind::BS);
    CecCircuit c = build_cycle(code);
    EstimatorOptions one;
    one.n_samples = 1000;
    EstimatorOptions many = one;
    many.workers = 4;
    auto m = ErrorModel::tied(1e-3);
    EXPECT_EQ(build_transfer(code, c, m, one).entries, build_transfer(code, c, m, many).entries);
}

TEST(Determinism, SeedStable) {
    const CodeSpec &code = get_code(CodeKind::BF);
    CecCircuit c = build_cycle(code);
    EstimatorOptions opts;
    opts.n_samples = 2000;
    auto m = ErrorModel::tied(1e-3);
    double a = logical_rate(build_transfer(code, c, m, opts)).p_log;
    double b = logical_rate(build_transfer(code, c, m, opts)).p_log;
    EXPECT_EQ(a, b);
    opts.seed = 2;
    double d = logical_rate(build_transfer(code, c, m, opts)).p_log;
    EXPECT_GT(a, 0.0);
    EXPECT_GT(d, 0.0);
}

TEST(ResultJson, Keys) {
    const CodeSpec &code = get_code(CodeKind::BF);
    CecCircuit c = build_cycle(code);
    auto m = ErrorModel::zero_memory(1e-3);
    TransferMatrix t = build_transfer(code, c, m, EstimatorOptions{});
    auto j = result_json(code, m, t, logical_rate(t));
    for (const char *k : {"p_log", "T", "stderr", "truncation"}) {
        EXPECT_TRUE(j.contains(k)) << k;
    }
}

}  // namespace
}  // namespace cecsim
