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
#include <sstream>

#include "cecsim/errors.h"
#include "cecsim/threshold.h"

namespace cecsim {
namespace {

TEST(Config, Defaults) {
    RunConfig c = parse_config(nlohmann::json::object());
    EXPECT_EQ(c.code, CodeKind::BF);
    EXPECT_EQ(c.mem_mode, MemMode::Zero);
    EXPECT_EQ(c.epsilon, 1e-4);
    EXPECT_EQ(c.n_samples, 10000u);
}

TEST(Config, MemoryModes) {
    auto tied = parse_config(nlohmann::json::parse(R"({"p_mem": "tied", "p_gate": 0.01})"));
    EXPECT_EQ(tied.mem_mode, MemMode::Tied);
    EXPECT_EQ(tied.model(0.01).p_mem(), 0.01);

    auto fixed = parse_config(nlohmann::json::parse(R"({"p_mem": 1e-5})"));
    EXPECT_EQ(fixed.mem_mode, MemMode::Fixed);
    EXPECT_EQ(fixed.model(0.003).p_mem(), 1e-5);

    auto zero = parse_config(nlohmann::json::parse(R"({"p_mem": 0})"), fixed);
    EXPECT_EQ(zero.mem_mode, MemMode::Zero);
}

TEST(Config, OverlayKeepsBase) {
    RunConfig base;
    base.seed = 77;
    base.code = CodeKind::STEANE;
    auto c = parse_config(nlohmann::json::parse(R"({"n_samples": 123})"), base);
    EXPECT_EQ(c.seed, 77u);
    EXPECT_EQ(c.code, CodeKind::STEANE);
    EXPECT_EQ(c.n_samples, 123u);
}

TEST(Config, GridForms) {
    auto a = parse_config(nlohmann::json::parse(R"({"grid": [1e-4, 1e-3]})"));
    EXPECT_EQ(a.grid, (std::vector<double>{1e-4, 1e-3}));
    auto b = parse_config(nlohmann::json::parse(R"({"grid": {"min": 1e-4, "max": 1e-2, "points": 3}})"));
    ASSERT_EQ(b.grid.size(), 3u);
    EXPECT_NEAR(b.grid[1], 1e-3, 1e-15);
}

TEST(Config, Rejects) {
    for (const char *bad : {R"({"code": "surface"})", R"({"p_gate": 0.7})", R"({"p_gate": -1})",
                            R"({"p_mem": "sometimes"})", R"({"grid": [1e-3, 1e-4]})", R"({"epsilon": 0})",
                            R"({"bracket": [0.1, 0.01]})", R"({"bracket": [0.1]})", R"({"n_samples": "many"})",
                            R"({"n_samples": 0})"}) {
        EXPECT_THROW(parse_config(nlohmann::json::parse(bad)), UsageError) << bad;
    }
    EXPECT_THROW(parse_config(nlohmann::json::array()), UsageError);
}

TEST(Config, DocumentLoading) {
    auto inline_doc = load_config_document(R"({"seed": 4})");
    EXPECT_EQ(inline_doc.at("seed"), 4);
    EXPECT_THROW(load_config_document("/nonexistent/config.json"), UsageError);
    EXPECT_ANY_THROW(load_config_document("{p_gate:0}"));
}

TEST(Config, JsonRoundTrip) {
    RunConfig c;
    c.code = CodeKind::BS;
    c.mem_mode = MemMode::Fixed;
    c.p_mem_fixed = 1e-5;
    c.seed = 9;
    RunConfig back = parse_config(to_json(c));
    EXPECT_EQ(back.code, c.code);
    EXPECT_EQ(back.mem_mode, c.mem_mode);
    EXPECT_EQ(back.p_mem_fixed, c.p_mem_fixed);
    EXPECT_EQ(back.seed, c.seed);
}

TEST(LogGrid, Endpoints) {
    auto g = log_grid(1e-4, 1e-1, 4);
    ASSERT_EQ(g.size(), 4u);
    EXPECT_DOUBLE_EQ(g.front(), 1e-4);
    EXPECT_DOUBLE_EQ(g.back(), 1e-1);
    for (std::size_t k = 1; k < g.size(); k++) {
        EXPECT_NEAR(g[k] / g[k - 1], 10.0, 1e-9);
    }
    EXPECT_EQ(log_grid(1e-3, 1e-3, 1), (std::vector<double>{1e-3}));
    EXPECT_THROW(log_grid(0.0, 1e-3, 3), UsageError);
    EXPECT_THROW(log_grid(1e-3, 1e-2, 0), UsageError);
}

TEST(FormatDouble, RoundTrips) {
    for (double v : {0.1, 1e-5, 3.0000000000000004e-3, 0.0}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(0.001), "0.001");
}

TEST(Sweep, CsvLayout) {
    RunConfig c;
    c.code = CodeKind::BF;
    c.grid = {1e-3};
    c.n_samples = 500;
    auto rows = sweep(c);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_GT(rows[0].p_log, 0.0);
    EXPECT_LT(rows[0].p_log, 1e-3);
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    std::string text = csv.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), SWEEP_CSV_HEADER);
    std::ostringstream diag;
    write_diagonal_csv(diag, rows);
    EXPECT_EQ(diag.str(), "p_gate,p_log\n0.001,0.001\n");

    c.grid.clear();
    EXPECT_THROW(sweep(c), UsageError);
}

TEST(Sweep, MonotoneInGateRate) {
    for (auto kind : {CodeKind::BF, CodeKind::BS}) {
        RunConfig c;
        c.code = kind;
        c.mem_mode = MemMode::Tied;
        c.n_samples = 2000;
        c.grid = log_grid(1e-4, 2e-2, 7);
        auto rows = sweep(c);
        for (std::size_t k = 1; k < rows.size(); k++) {
            EXPECT_GE(rows[k].p_log, rows[k - 1].p_log - 2.0 * (rows[k].stderr_ + rows[k - 1].stderr_))
                << code_name(kind) << " at " << rows[k].p_gate;
        }
    }
}

TEST(Threshold, BitFlipBracketInvariant) {
    RunConfig c;
    c.code = CodeKind::BF;
    c.n_samples = 2000;
    c.max_samples = 8000;
    c.relative_tolerance = 0.1;
    ThresholdResult r = find_threshold(c);
    EXPECT_LT(r.bracket_low, r.p_threshold);
    EXPECT_GT(r.bracket_high, r.p_threshold);
    EXPECT_GT(r.iterations, 0u);
    // Every evaluated point at or below the final low end was below threshold, and
    // every point at or above the high end was above.
    for (const auto &rec : r.records) {
        if (rec.p_gate <= r.bracket_low) {
            EXPECT_FALSE(rec.above) << rec.p_gate;
        }
        if (rec.p_gate >= r.bracket_high) {
            EXPECT_TRUE(rec.above) << rec.p_gate;
        }
    }
    auto j = to_json(r);
    EXPECT_EQ(j.at("code"), "bf");
    EXPECT_EQ(j.at("records").size(), r.records.size());
}

TEST(Threshold, NoSignChange) {
    RunConfig c;
    c.code = CodeKind::BF;
    c.n_samples = 500;
    c.bracket_low = 1e-6;
    c.bracket_high = 1e-5;
    try {
        find_threshold(c);
        FAIL() << "expected NoSignChange";
    } catch (const NoSignChange &e) {
        EXPECT_LT(e.f_low, 0.0);
        EXPECT_LT(e.f_high, 0.0);
    }
}

TEST(Threshold, TruncationLimitedCountsAsAbove) {
    RunConfig c;
    c.code = CodeKind::STEANE;
    c.mem_mode = MemMode::Tied;
    c.n_samples = 200;
    c.max_order = 2;
    const CodeSpec &code = get_code(c.code);
    CecCircuit circuit = build_cycle(code);
    AlphaTable table(code, circuit, c.estimator_options());
    ThresholdRecord r = evaluate_point(table, c, 0.1);
    EXPECT_TRUE(r.truncation_limited);
    EXPECT_TRUE(r.above);
}

}  // namespace
}  // namespace cecsim
