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

#ifndef CECSIM_THRESHOLD_H
#define CECSIM_THRESHOLD_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cecsim/code.h"
#include "cecsim/errors.h"
#include "cecsim/estimator.h"
#include "cecsim/noise.h"
#include "json.hpp"

namespace cecsim {

/// Memory-rate presets offered next to zero and tied memory.
constexpr double MEM_PRESET_LOW = 1e-5;
constexpr double MEM_PRESET_HIGH = 1e-4;

struct RunConfig {
    CodeKind code = CodeKind::BF;
    MemMode mem_mode = MemMode::Zero;
    double p_mem_fixed = 0.0;
    double p_gate = 0.0;
    std::vector<double> grid;
    double epsilon = 1e-4;
    uint64_t n_samples = 10000;
    /// Ceiling for adaptive sample growth during threshold search.
    uint64_t max_samples = 160000;
    uint64_t seed = 1;
    bool polarity_gates_noisy = false;
    double bracket_low = 1e-6;
    double bracket_high = 1e-1;
    double relative_tolerance = 0.05;
    std::size_t max_order = DEFAULT_MAX_ORDER;
    int exact_order = 1;
    std::size_t workers = 1;
    std::string out;

    ErrorModel model(double p_gate_value) const;
    EstimatorOptions estimator_options() const;
    /// Throws UsageError on out-of-range probabilities or a non-increasing grid.
    void validate() const;
};

/// Overlays the keys present in `doc` onto `base`.
RunConfig parse_config(const nlohmann::json &doc, RunConfig base = {});
/// `text` is either inline JSON (starting with '{') or a path to a JSON file.
nlohmann::json load_config_document(const std::string &text);
nlohmann::json to_json(const RunConfig &config);

/// Log-spaced grid with `points` values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t points);

struct ThresholdRecord {
    double p_gate = 0.0;
    double p_log = 0.0;
    double stderr_ = 0.0;
    std::size_t truncation_order = 0;
    bool truncation_limited = false;
    uint64_t n_samples = 0;
    /// Point counted as above threshold (p_log > p_gate, or truncation-limited).
    bool above = false;
};

struct ThresholdResult {
    CodeKind code = CodeKind::BF;
    MemMode mem_mode = MemMode::Zero;
    double p_mem_fixed = 0.0;
    double p_threshold = 0.0;
    double bracket_low = 0.0;
    double bracket_high = 0.0;
    std::size_t iterations = 0;
    std::vector<ThresholdRecord> records;
    uint64_t n_samples = 0;
    uint64_t initial_n_samples = 0;
    double relative_tolerance = 0.0;
    uint64_t seed = 0;
    std::string termination;
};

/// Raised when f(p) = p_log(p) - p has no sign change across the bracket.
struct NoSignChange : NumericalError {
    double f_low;
    double f_high;
    NoSignChange(double lo, double hi, const std::string &what) : NumericalError(what), f_low(lo), f_high(hi) {
    }
};

/// Evaluates p_log at one p_gate against a shared alpha table.
ThresholdRecord evaluate_point(AlphaTable &table, const RunConfig &config, double p_gate);

/// Bisection in log p on f(p) = p_log(p) - p.
ThresholdResult find_threshold(const RunConfig &config);

struct SweepRow {
    double p_gate = 0.0;
    double p_mem = 0.0;
    double p_log = 0.0;
    double stderr_ = 0.0;
    std::size_t trunc_order = 0;
    uint64_t seed = 0;
};

std::vector<SweepRow> sweep(const RunConfig &config);

constexpr const char *SWEEP_CSV_HEADER = "p_gate,p_mem,p_log,p_log_stderr,trunc_order,seed";
void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows);
/// The p_log = p_gate reference line over the same grid.
void write_diagonal_csv(std::ostream &out, const std::vector<SweepRow> &rows);

nlohmann::json to_json(const ThresholdResult &result);

/// Shortest round-trip decimal for a double.
std::string format_double(double v);

}  // namespace cecsim

#endif
