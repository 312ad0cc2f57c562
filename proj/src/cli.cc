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

#include "cecsim/cli.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cecsim/circuit.h"
#include "cecsim/code.h"
#include "cecsim/errors.h"
#include "cecsim/estimator.h"
#include "cecsim/threshold.h"
#include "cecsim/verify.h"

namespace cecsim {

namespace {

struct Flags {
    std::string code;
    std::string config;
    std::optional<uint64_t> seed;
    std::string out;
    std::optional<std::size_t> workers;
};

RunConfig resolve_config(const Flags &flags) {
    RunConfig config;
    if (!flags.config.empty()) {
        config = parse_config(load_config_document(flags.config), config);
    }
    if (!flags.code.empty()) {
        config.code = code_from_name(flags.code);
    }
    if (flags.seed) {
        config.seed = *flags.seed;
    }
    if (!flags.out.empty()) {
        config.out = flags.out;
    }
    if (flags.workers) {
        config.workers = *flags.workers;
    }
    if (const char *env = std::getenv("CECSIM_WORKERS"); env != nullptr && *env != '\0') {
        try {
            std::size_t pos = 0;
            long long w = std::stoll(env, &pos);
            if (pos != std::string(env).size() || w < 1) {
                throw std::invalid_argument(env);
            }
            config.workers = static_cast<std::size_t>(w);
        } catch (const std::logic_error &) {
            throw UsageError(std::string("CECSIM_WORKERS must be a positive integer, got \"") + env + "\"");
        }
    }
    if (config.workers == 0) {
        config.workers = 1;
    }
    config.validate();
    return config;
}

/// Writes `payload` to config.out if set, otherwise to `out`.
void emit(const std::string &path, const std::string &payload, std::ostream &out) {
    if (path.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open output file " + path);
    }
    f << payload;
}

std::string sidecar_path(const std::string &path) {
    std::string stem = path;
    if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0) {
        stem.resize(stem.size() - 4);
    }
    return stem + "_diagonal.csv";
}

int run_simulate(const RunConfig &config, std::ostream &out) {
    const CodeSpec &code = get_code(config.code);
    CecCircuit circuit = build_cycle(code, CircuitOptions{config.polarity_gates_noisy});
    ErrorModel model = config.model(config.p_gate);
    TransferMatrix t = build_transfer(code, circuit, model, config.estimator_options());
    LogicalRate rate = logical_rate(t);
    emit(config.out, result_json(code, model, t, rate).dump(2) + "\n", out);
    return EXIT_OK;
}

int run_threshold(const RunConfig &config, std::ostream &out) {
    ThresholdResult result = find_threshold(config);
    emit(config.out, to_json(result).dump(2) + "\n", out);
    return EXIT_OK;
}

int run_sweep(const RunConfig &config, std::ostream &out) {
    auto rows = sweep(config);
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    emit(config.out, csv.str(), out);
    if (!config.out.empty()) {
        std::ostringstream diag;
        write_diagonal_csv(diag, rows);
        emit(sidecar_path(config.out), diag.str(), out);
    }
    return EXIT_OK;
}

int run_dump_circuit(const RunConfig &config, std::ostream &out) {
    CecCircuit circuit = build_cycle(get_code(config.code), CircuitOptions{config.polarity_gates_noisy});
    emit(config.out, to_json(circuit).dump(2) + "\n", out);
    return EXIT_OK;
}

int run_verify_command(const RunConfig &config, std::ostream &out) {
    VerifyReport report = run_verify(config.code, CircuitOptions{config.polarity_gates_noisy});
    emit(config.out, to_json(report).dump(2) + "\n", out);
    return report.passed() ? EXIT_OK : EXIT_VALIDATION;
}

}  // namespace

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Measurement-free error correction simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags flags;
    app.add_option("--code", flags.code, "bf, bs or steane");
    app.add_option("--config", flags.config, "JSON config document or path to one");
    app.add_option("--seed", flags.seed, "master seed");
    app.add_option("--out", flags.out, "output path (default stdout)");
    app.add_option("--workers", flags.workers, "worker threads; CECSIM_WORKERS overrides");

    auto *simulate = app.add_subcommand("simulate", "logical error rate at one (p_gate, p_mem)");
    auto *threshold = app.add_subcommand("threshold", "solve p_log(p) = p");
    auto *sweep_cmd = app.add_subcommand("sweep", "p_log over a p_gate grid as CSV");
    auto *dump = app.add_subcommand("dump-circuit", "scheduled circuit as JSON");
    auto *verify = app.add_subcommand("verify", "code, circuit and single-fault checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return EXIT_OK;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    }

    try {
        RunConfig config = resolve_config(flags);
        if (simulate->parsed()) {
            return run_simulate(config, out);
        }
        if (threshold->parsed()) {
            return run_threshold(config, out);
        }
        if (sweep_cmd->parsed()) {
            return run_sweep(config, out);
        }
        if (dump->parsed()) {
            return run_dump_circuit(config, out);
        }
        if (verify->parsed()) {
            return run_verify_command(config, out);
        }
        err << "error: no subcommand\n";
        return EXIT_USAGE;
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const nlohmann::json::exception &e) {
        err << "config error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const ValidationError &e) {
        err << "validation failure: " << e.what() << "\n";
        return EXIT_VALIDATION;
    } catch (const NumericalError &e) {
        err << "numerical failure: " << e.what() << "\n";
        return EXIT_NUMERICAL;
    }
}

}  // namespace cecsim
