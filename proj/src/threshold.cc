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

#include "cecsim/threshold.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cecsim/circuit.h"

namespace cecsim {

namespace {

/// Truncation-limited points keep more than this much probability outside the
/// sampled orders; their p_log is a lower bound only.
constexpr double TRUNCATION_RELIABLE_MASS = 1e-2;

bool valid_probability(double p) {
    return p >= 0.0 && p < 0.5;
}

}  // namespace

ErrorModel RunConfig::model(double p_gate_value) const {
    return ErrorModel{p_gate_value, mem_mode, p_mem_fixed};
}

EstimatorOptions RunConfig::estimator_options() const {
    EstimatorOptions o;
    o.epsilon = epsilon;
    o.n_samples = n_samples;
    o.seed = seed;
    o.max_order = max_order;
    o.exact_order = exact_order;
    o.workers = workers;
    return o;
}

void RunConfig::validate() const {
    if (!valid_probability(p_gate)) {
        throw UsageError("p_gate must lie in [0, 0.5), got " + format_double(p_gate));
    }
    if (mem_mode == MemMode::Fixed && !valid_probability(p_mem_fixed)) {
        throw UsageError("p_mem must lie in [0, 0.5), got " + format_double(p_mem_fixed));
    }
    for (std::size_t k = 0; k < grid.size(); k++) {
        if (!valid_probability(grid[k])) {
            throw UsageError("grid value " + format_double(grid[k]) + " outside [0, 0.5)");
        }
        if (k > 0 && !(grid[k] > grid[k - 1])) {
            throw UsageError("grid must be strictly increasing");
        }
    }
    if (!(bracket_low > 0.0 && bracket_low < bracket_high && valid_probability(bracket_high))) {
        throw UsageError("bracket must satisfy 0 < low < high < 0.5");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw UsageError("epsilon must lie in (0, 1)");
    }
    if (n_samples == 0) {
        throw UsageError("n_samples must be at least 1");
    }
    if (!(relative_tolerance > 0.0)) {
        throw UsageError("relative tolerance must be positive");
    }
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    if (points == 0 || !(lo > 0.0) || !(hi >= lo)) {
        throw UsageError("log grid needs points >= 1 and 0 < lo <= hi");
    }
    std::vector<double> out;
    if (points == 1) {
        out.push_back(lo);
        return out;
    }
    double a = std::log10(lo);
    double b = std::log10(hi);
    for (std::size_t k = 0; k < points; k++) {
        out.push_back(std::pow(10.0, a + (b - a) * static_cast<double>(k) / static_cast<double>(points - 1)));
    }
    return out;
}

RunConfig parse_config(const nlohmann::json &doc, RunConfig base) {
    if (!doc.is_object()) {
        throw UsageError("config must be a JSON object");
    }
    RunConfig c = std::move(base);
    try {
        if (doc.contains("code")) {
            c.code = code_from_name(doc.at("code").get<std::string>());
        }
        if (doc.contains("p_gate")) {
            c.p_gate = doc.at("p_gate").get<double>();
        }
        for (const char *key : {"p_mem", "mem"}) {
            if (!doc.contains(key)) {
                continue;
            }
            const auto &v = doc.at(key);
            if (v.is_string()) {
                auto s = v.get<std::string>();
                if (s == "tied") {
                    c.mem_mode = MemMode::Tied;
                } else if (s == "zero") {
                    c.mem_mode = MemMode::Zero;
                    c.p_mem_fixed = 0.0;
                } else {
                    throw UsageError("p_mem must be a number, \"tied\" or \"zero\", got \"" + s + "\"");
                }
            } else {
                double p = v.get<double>();
                if (p == 0.0) {
                    c.mem_mode = MemMode::Zero;
                    c.p_mem_fixed = 0.0;
                } else {
                    c.mem_mode = MemMode::Fixed;
                    c.p_mem_fixed = p;
                }
            }
        }
        if (doc.contains("epsilon")) {
            c.epsilon = doc.at("epsilon").get<double>();
        }
        if (doc.contains("seed")) {
            c.seed = doc.at("seed").get<uint64_t>();
        }
        if (doc.contains("n_samples")) {
            c.n_samples = doc.at("n_samples").get<uint64_t>();
        }
        if (doc.contains("max_samples")) {
            c.max_samples = doc.at("max_samples").get<uint64_t>();
        }
        if (doc.contains("polarity_gates_noisy")) {
            c.polarity_gates_noisy = doc.at("polarity_gates_noisy").get<bool>();
        }
        if (doc.contains("bracket")) {
            auto b = doc.at("bracket").get<std::vector<double>>();
            if (b.size() != 2) {
                throw UsageError("bracket must be [low, high]");
            }
            c.bracket_low = b[0];
            c.bracket_high = b[1];
        }
        if (doc.contains("relative_tolerance")) {
            c.relative_tolerance = doc.at("relative_tolerance").get<double>();
        }
        if (doc.contains("max_order")) {
            c.max_order = doc.at("max_order").get<std::size_t>();
        }
        if (doc.contains("exact_order")) {
            c.exact_order = doc.at("exact_order").get<int>();
        }
        if (doc.contains("workers")) {
            c.workers = doc.at("workers").get<std::size_t>();
        }
        if (doc.contains("out")) {
            c.out = doc.at("out").get<std::string>();
        }
        if (doc.contains("grid")) {
            const auto &g = doc.at("grid");
            if (g.is_array()) {
                c.grid = g.get<std::vector<double>>();
            } else {
                c.grid = log_grid(g.at("min").get<double>(), g.at("max").get<double>(),
                                  g.at("points").get<std::size_t>());
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(std::string("bad config: ") + e.what());
    }
    c.validate();
    return c;
}

nlohmann::json load_config_document(const std::string &text) {
    std::string body = text;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
        std::ifstream in(text);
        if (!in) {
            throw UsageError("cannot read config file '" + text + "'");
        }
        std::stringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    try {
        return nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
}

nlohmann::json to_json(const RunConfig &c) {
    nlohmann::json p_mem;
    switch (c.mem_mode) {
        case MemMode::Zero:
            p_mem = 0;
            break;
        case MemMode::Fixed:
            p_mem = c.p_mem_fixed;
            break;
        case MemMode::Tied:
            p_mem = "tied";
            break;
    }
    return {{"code", code_name(c.code)},
            {"p_gate", c.p_gate},
            {"p_mem", p_mem},
            {"grid", c.grid},
            {"epsilon", c.epsilon},
            {"n_samples", c.n_samples},
            {"max_samples", c.max_samples},
            {"seed", c.seed},
            {"polarity_gates_noisy", c.polarity_gates_noisy},
            {"bracket", {c.bracket_low, c.bracket_high}},
            {"relative_tolerance", c.relative_tolerance},
            {"max_order", c.max_order},
            {"exact_order", c.exact_order}};
}

ThresholdRecord evaluate_point(AlphaTable &table, const RunConfig &config, double p_gate) {
    ErrorModel model = config.model(p_gate);
    TransferMatrix t = build_transfer(table, model);
    LogicalRate rate = logical_rate(t);
    ThresholdRecord r;
    r.p_gate = p_gate;
    r.p_log = rate.p_log;
    r.stderr_ = rate.stderr_;
    r.truncation_order = t.order;
    r.truncation_limited = t.truncation_capped && t.residual_mass > TRUNCATION_RELIABLE_MASS;
    r.n_samples = table.n_samples();
    r.above = r.truncation_limited || r.p_log > p_gate;
    return r;
}

ThresholdResult find_threshold(const RunConfig &config) {
    config.validate();
    const CodeSpec &code = get_code(config.code);
    CecCircuit circuit = build_cycle(code, CircuitOptions{config.polarity_gates_noisy});
    AlphaTable table(code, circuit, config.estimator_options());

    ThresholdResult result;
    result.code = config.code;
    result.mem_mode = config.mem_mode;
    result.p_mem_fixed = config.p_mem_fixed;
    result.seed = config.seed;
    result.initial_n_samples = config.n_samples;
    result.relative_tolerance = config.relative_tolerance;

    double lo = config.bracket_low;
    double hi = config.bracket_high;
    ThresholdRecord r_lo = evaluate_point(table, config, lo);
    ThresholdRecord r_hi = evaluate_point(table, config, hi);
    result.records.push_back(r_lo);
    result.records.push_back(r_hi);
    if (r_lo.above || !r_hi.above) {
        double f_lo = r_lo.p_log - lo;
        double f_hi = r_hi.p_log - hi;
        throw NoSignChange(f_lo, f_hi,
                           "p_log(p) - p does not change sign on [" + format_double(lo) + ", " + format_double(hi) +
                               "]: f(low) = " + format_double(f_lo) + ", f(high) = " + format_double(f_hi));
    }

    result.termination = "bracket";
    while (hi / lo - 1.0 >= config.relative_tolerance) {
        double mid = std::sqrt(lo * hi);
        ThresholdRecord r = evaluate_point(table, config, mid);
        // Grow the samples while the sign of f is not resolved at 2 sigma.
        while (!r.truncation_limited && std::abs(r.p_log - mid) < 2.0 * r.stderr_ &&
               table.n_samples() < config.max_samples) {
            table.grow(std::min(config.max_samples, table.n_samples() * 4));
            r = evaluate_point(table, config, mid);
        }
        result.records.push_back(r);
        result.iterations++;
        if (r.above) {
            hi = mid;
        } else {
            lo = mid;
        }
        if (!r.truncation_limited && std::abs(r.p_log - mid) < 2.0 * r.stderr_) {
            result.termination = "statistical";
            break;
        }
    }
    result.bracket_low = lo;
    result.bracket_high = hi;
    result.p_threshold = std::sqrt(lo * hi);
    result.n_samples = table.n_samples();
    return result;
}

std::vector<SweepRow> sweep(const RunConfig &config) {
    config.validate();
    if (config.grid.empty()) {
        throw UsageError("sweep needs a nonempty grid");
    }
    const CodeSpec &code = get_code(config.code);
    CecCircuit circuit = build_cycle(code, CircuitOptions{config.polarity_gates_noisy});
    AlphaTable table(code, circuit, config.estimator_options());
    std::vector<SweepRow> rows;
    for (double p : config.grid) {
        ErrorModel model = config.model(p);
        TransferMatrix t = build_transfer(table, model);
        LogicalRate rate = logical_rate(t);
        rows.push_back({p, model.p_mem(), rate.p_log, rate.stderr_, t.order, config.seed});
    }
    return rows;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << SWEEP_CSV_HEADER << "\n";
    for (const auto &r : rows) {
        out << format_double(r.p_gate) << "," << format_double(r.p_mem) << "," << format_double(r.p_log) << ","
            << format_double(r.stderr_) << "," << r.trunc_order << "," << r.seed << "\n";
    }
}

void write_diagonal_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << "p_gate,p_log\n";
    for (const auto &r : rows) {
        out << format_double(r.p_gate) << "," << format_double(r.p_gate) << "\n";
    }
}

nlohmann::json to_json(const ThresholdResult &result) {
    auto records = nlohmann::json::array();
    for (const auto &r : result.records) {
        records.push_back({{"p_gate", r.p_gate},
                           {"p_log", r.p_log},
                           {"stderr", r.stderr_},
                           {"truncation_order", r.truncation_order},
                           {"truncation_limited", r.truncation_limited},
                           {"n_samples", r.n_samples}});
    }
    return {{"code", code_name(result.code)},
            {"mem_mode", mem_mode_name(result.mem_mode)},
            {"p_mem", result.mem_mode == MemMode::Fixed ? result.p_mem_fixed : 0.0},
            {"p_threshold", result.p_threshold},
            {"bracket", {result.bracket_low, result.bracket_high}},
            {"iterations", result.iterations},
            {"records", records},
            {"n_samples", result.n_samples},
            {"seed", result.seed},
            {"termination", result.termination},
            {"metadata",
             {{"relative_tolerance", result.relative_tolerance},
              {"initial_n_samples", result.initial_n_samples},
              {"note", "search tolerance and sample budgets are cecsim defaults, not published values"}}}};
}

}  // namespace cecsim
