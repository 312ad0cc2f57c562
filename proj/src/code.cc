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

#include "cecsim/code.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <mutex>

#include "cecsim/errors.h"

namespace cecsim {

std::string code_name(CodeKind kind) {
    switch (kind) {
        case CodeKind::BF:
            return "bf";
        case CodeKind::BS:
            return "bs";
        case CodeKind::STEANE:
            return "steane";
    }
    throw UsageError("unknown code kind");
}

CodeKind code_from_name(const std::string &name) {
    std::string lower;
    for (char c : name) {
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (lower == "bf") {
        return CodeKind::BF;
    }
    if (lower == "bs") {
        return CodeKind::BS;
    }
    if (lower == "steane") {
        return CodeKind::STEANE;
    }
    throw UsageError("unknown code '" + name + "' (expected bf, bs or steane)");
}

std::string class_name(LogicalClass c) {
    switch (c) {
        case LogicalClass::Correct:
            return "Correct";
        case LogicalClass::XErr:
            return "XErr";
        case LogicalClass::ZErr:
            return "ZErr";
        case LogicalClass::YErr:
            return "YErr";
        case LogicalClass::Failed:
            return "Failed";
    }
    return "?";
}

static int leading_bit(uint64_t v) {
    return 63 - std::countl_zero(v);
}

uint64_t Gf2Span::reduce(uint64_t v) const {
    for (uint64_t b : basis_) {
        if ((v >> leading_bit(b)) & 1) {
            v ^= b;
        }
    }
    return v;
}

void Gf2Span::add(uint64_t v) {
    uint64_t r = reduce(v);
    if (r == 0) {
        return;
    }
    auto pos = std::find_if(basis_.begin(), basis_.end(), [&](uint64_t b) { return leading_bit(b) < leading_bit(r); });
    basis_.insert(pos, r);
}

namespace {

uint64_t parity_syndrome(uint64_t bits, const std::vector<uint64_t> &check_masks) {
    uint64_t s = 0;
    for (std::size_t k = 0; k < check_masks.size(); k++) {
        s |= static_cast<uint64_t>(std::popcount(bits & check_masks[k]) & 1) << k;
    }
    return s;
}

std::vector<uint64_t> z_masks(const std::vector<PauliString> &checks) {
    std::vector<uint64_t> out;
    for (const auto &c : checks) {
        out.push_back(c.z_bits());
    }
    return out;
}

std::vector<uint64_t> x_masks(const std::vector<PauliString> &checks) {
    std::vector<uint64_t> out;
    for (const auto &c : checks) {
        out.push_back(c.x_bits());
    }
    return out;
}

/// Minimal-weight search over single-type frames of weight <= 2; first hit wins,
/// so ties go to the lowest qubit index.
DecoderTable build_decoder(std::size_t n, const std::vector<uint64_t> &check_masks, bool x_type) {
    DecoderTable table;
    std::size_t size = std::size_t{1} << check_masks.size();
    table.corrections.assign(size, PauliString(n));
    table.reachable.assign(size, 0);
    table.reachable[0] = 1;
    auto offer = [&](uint64_t bits) {
        uint64_t s = parity_syndrome(bits, check_masks);
        if (!table.reachable[s]) {
            table.reachable[s] = 1;
            table.corrections[s] = x_type ? PauliString(n, bits, 0) : PauliString(n, 0, bits);
        }
    };
    for (std::size_t a = 0; a < n; a++) {
        offer(uint64_t{1} << a);
    }
    for (std::size_t a = 0; a < n; a++) {
        for (std::size_t b = a + 1; b < n; b++) {
            offer((uint64_t{1} << a) | (uint64_t{1} << b));
        }
    }
    return table;
}

std::vector<uint8_t> syndrome_pattern(uint64_t s, std::size_t count) {
    std::vector<uint8_t> out;
    for (std::size_t k = 0; k < count; k++) {
        out.push_back(static_cast<uint8_t>((s >> k) & 1));
    }
    return out;
}

/// One C_kNOT per single-qubit-reachable syndrome target, controlled by every check
/// with the exact syndrome as the pattern (BF and BS style).
std::vector<CorrectionGroup> full_pattern_groups(const DecoderTable &table, std::size_t num_checks, bool x_type) {
    std::vector<CorrectionGroup> out;
    for (std::size_t s = 1; s < table.corrections.size(); s++) {
        const auto &c = table.corrections[s];
        if (!table.reachable[s] || c.weight() != 1) {
            continue;
        }
        CorrectionGroup g;
        for (std::size_t k = 0; k < num_checks; k++) {
            g.controls.push_back(static_cast<uint32_t>(k));
        }
        g.pattern = syndrome_pattern(s, num_checks);
        g.target = static_cast<uint32_t>(std::countr_zero(x_type ? c.x_bits() : c.z_bits()));
        out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.target < b.target; });
    return out;
}

/// One C_kNOT per data qubit, controlled by exactly the checks that touch it.
std::vector<CorrectionGroup> incidence_groups(std::size_t n, const std::vector<uint64_t> &check_masks) {
    std::vector<CorrectionGroup> out;
    for (std::size_t q = 0; q < n; q++) {
        CorrectionGroup g;
        g.target = static_cast<uint32_t>(q);
        for (std::size_t k = 0; k < check_masks.size(); k++) {
            if ((check_masks[k] >> q) & 1) {
                g.controls.push_back(static_cast<uint32_t>(k));
                g.pattern.push_back(1);
            }
        }
        out.push_back(std::move(g));
    }
    return out;
}

void finish(CodeSpec &code) {
    auto zm = z_masks(code.z_checks);
    auto xm = x_masks(code.x_checks);
    code.decode_x = build_decoder(code.n_data, zm, true);
    code.decode_z = build_decoder(code.n_data, xm, false);

    auto add_to_groups = [&](const PauliString &p) {
        if (p.z_bits() == 0) {
            code.x_group.add(p.x_bits());
        } else if (p.x_bits() == 0) {
            code.z_group.add(p.z_bits());
        } else {
            throw ValidationError("non-CSS generator " + p.str());
        }
    };
    for (const auto &p : code.z_checks) {
        add_to_groups(p);
    }
    for (const auto &p : code.x_checks) {
        add_to_groups(p);
    }
    for (const auto &p : code.gauge_gens) {
        add_to_groups(p);
    }

    if (code.kind == CodeKind::STEANE) {
        code.x_correction_groups = incidence_groups(code.n_data, zm);
        code.z_correction_groups = incidence_groups(code.n_data, xm);
    } else {
        code.x_correction_groups = full_pattern_groups(code.decode_x, code.z_checks.size(), true);
        code.z_correction_groups = full_pattern_groups(code.decode_z, code.x_checks.size(), false);
    }
}

PauliString swap_type(const PauliString &p) {
    return PauliString(p.num_qubits(), p.z_bits(), p.x_bits());
}

CodeSpec make_bf() {
    CodeSpec c;
    c.kind = CodeKind::BF;
    c.n_data = 3;
    c.z_checks = {PauliString::z_on(3, {0, 1}), PauliString::z_on(3, {1, 2}), PauliString::z_on(3, {0, 2})};
    c.logical_x = PauliString::x_on(3, {0, 1, 2});
    c.logical_z = PauliString::z_on(3, {0, 1, 2});
    c.protects_phase = false;
    finish(c);
    return c;
}

CodeSpec make_bs() {
    constexpr std::size_t n = 9;
    CodeSpec c;
    c.kind = CodeKind::BS;
    c.n_data = n;
    PauliString zu = PauliString::z_on(n, {0, 1, 2, 3, 4, 5});
    PauliString zd = PauliString::z_on(n, {3, 4, 5, 6, 7, 8});
    PauliString xl = PauliString::x_on(n, {0, 3, 6, 1, 4, 7});
    PauliString xr = PauliString::x_on(n, {1, 4, 7, 2, 5, 8});
    c.z_checks = {zu, zd, zu * zd};
    c.x_checks = {xl, xr, xl * xr};
    for (std::size_t r = 0; r < 3; r++) {
        for (std::size_t a = 0; a < 3; a++) {
            for (std::size_t b = a + 1; b < 3; b++) {
                c.gauge_gens.push_back(PauliString::x_on(n, {3 * r + a, 3 * r + b}));
            }
        }
    }
    for (std::size_t col = 0; col < 3; col++) {
        for (std::size_t a = 0; a < 3; a++) {
            for (std::size_t b = a + 1; b < 3; b++) {
                c.gauge_gens.push_back(PauliString::z_on(n, {col + 3 * a, col + 3 * b}));
            }
        }
    }
    c.logical_x = PauliString(n, low_mask(n), 0);
    c.logical_z = PauliString(n, 0, low_mask(n));
    finish(c);
    return c;
}

CodeSpec make_steane() {
    constexpr std::size_t n = 7;
    CodeSpec c;
    c.kind = CodeKind::STEANE;
    c.n_data = n;
    // Generators on qubits (1,2,3,7), (1,2,4,6), (1,3,4,5), then their products.
    PauliString s1 = PauliString::z_on(n, {0, 1, 2, 6});
    PauliString s2 = PauliString::z_on(n, {0, 1, 3, 5});
    PauliString s3 = PauliString::z_on(n, {0, 2, 3, 4});
    c.z_checks = {s1, s2, s3, s1 * s2, s1 * s3, s2 * s3, s1 * s2 * s3};
    for (const auto &z : c.z_checks) {
        c.x_checks.push_back(swap_type(z));
    }
    c.logical_x = PauliString(n, low_mask(n), 0);
    c.logical_z = PauliString(n, 0, low_mask(n));
    finish(c);
    return c;
}

enum class PartStatus { Clean, Correctable, Failed };

PartStatus part_status(uint64_t bits, const std::vector<PauliString> &checks, bool x_part, const DecoderTable &table,
                       const Gf2Span &group) {
    if (group.contains(bits)) {
        return PartStatus::Clean;
    }
    uint64_t s = 0;
    for (std::size_t k = 0; k < checks.size(); k++) {
        uint64_t m = x_part ? checks[k].z_bits() : checks[k].x_bits();
        s |= static_cast<uint64_t>(std::popcount(bits & m) & 1) << k;
    }
    if (s == 0 || !table.reachable[s]) {
        return PartStatus::Failed;
    }
    const auto &corr = table.corrections[s];
    uint64_t residue = bits ^ (x_part ? corr.x_bits() : corr.z_bits());
    return group.contains(residue) ? PartStatus::Correctable : PartStatus::Failed;
}

}  // namespace

CodeSpec make_code(CodeKind kind) {
    switch (kind) {
        case CodeKind::BF:
            return make_bf();
        case CodeKind::BS:
            return make_bs();
        case CodeKind::STEANE:
            return make_steane();
    }
    throw UsageError("unknown code kind");
}

const CodeSpec &get_code(CodeKind kind) {
    static const CodeSpec bf = make_bf();
    static const CodeSpec bs = make_bs();
    static const CodeSpec steane = make_steane();
    switch (kind) {
        case CodeKind::BF:
            return bf;
        case CodeKind::BS:
            return bs;
        case CodeKind::STEANE:
            return steane;
    }
    throw UsageError("unknown code kind");
}

Syndrome syndrome(const CodeSpec &code, const PauliString &frame) {
    if (frame.num_qubits() != code.n_data) {
        throw UsageError("frame has " + std::to_string(frame.num_qubits()) + " qubits, code has " +
                         std::to_string(code.n_data));
    }
    Syndrome s;
    s.num_z = code.z_checks.size();
    s.num_x = code.x_checks.size();
    for (std::size_t k = 0; k < code.z_checks.size(); k++) {
        if (!frame.commutes_with(code.z_checks[k])) {
            s.z_bits |= uint64_t{1} << k;
        }
    }
    for (std::size_t k = 0; k < code.x_checks.size(); k++) {
        if (!frame.commutes_with(code.x_checks[k])) {
            s.x_bits |= uint64_t{1} << k;
        }
    }
    return s;
}

PauliString minimal_correction(const CodeSpec &code, const Syndrome &s) {
    if (s.num_z != code.z_checks.size() || s.num_x != code.x_checks.size()) {
        throw UsageError("syndrome dimensions do not match code " + code.name());
    }
    PauliString out(code.n_data);
    if (code.decode_x.reachable[s.z_bits]) {
        out *= code.decode_x.corrections[s.z_bits];
    }
    if (code.decode_z.reachable[s.x_bits]) {
        out *= code.decode_z.corrections[s.x_bits];
    }
    return out;
}

LogicalClass classify(const CodeSpec &code, const PauliString &frame) {
    if (frame.num_qubits() != code.n_data) {
        throw UsageError("frame has " + std::to_string(frame.num_qubits()) + " qubits, code has " +
                         std::to_string(code.n_data));
    }
    // X errors are seen by the Z checks and vice versa.
    PartStatus xs = part_status(frame.x_bits(), code.z_checks, true, code.decode_x, code.x_group);
    PartStatus zs = part_status(frame.z_bits(), code.x_checks, false, code.decode_z, code.z_group);
    if (xs == PartStatus::Failed || zs == PartStatus::Failed) {
        return LogicalClass::Failed;
    }
    bool x_err = xs == PartStatus::Correctable;
    bool z_err = zs == PartStatus::Correctable;
    if (x_err && z_err) {
        return LogicalClass::YErr;
    }
    if (x_err) {
        return LogicalClass::XErr;
    }
    if (z_err) {
        return LogicalClass::ZErr;
    }
    return LogicalClass::Correct;
}

PauliString tracked_part(const CodeSpec &code, const PauliString &frame) {
    return code.protects_phase ? frame : frame.x_part();
}

bool IncidenceReport::uniform(std::size_t weight, std::size_t degree, std::size_t overlap) const {
    bool ok = std::all_of(check_weights.begin(), check_weights.end(), [&](auto w) { return w == weight; }) &&
              std::all_of(qubit_degrees.begin(), qubit_degrees.end(), [&](auto d) { return d == degree; });
    for (std::size_t a = 0; a < overlaps.size(); a++) {
        for (std::size_t b = 0; b < overlaps.size(); b++) {
            if (a != b && overlaps[a][b] != overlap) {
                ok = false;
            }
        }
    }
    return ok;
}

IncidenceReport check_incidence(const CodeSpec &code) {
    IncidenceReport r;
    const auto &checks = code.z_checks;
    r.qubit_degrees.assign(code.n_data, 0);
    for (const auto &c : checks) {
        r.check_weights.push_back(c.weight());
        for (std::size_t q = 0; q < code.n_data; q++) {
            if ((c.z_bits() >> q) & 1) {
                r.qubit_degrees[q]++;
            }
        }
    }
    r.overlaps.assign(checks.size(), std::vector<std::size_t>(checks.size(), 0));
    for (std::size_t a = 0; a < checks.size(); a++) {
        for (std::size_t b = 0; b < checks.size(); b++) {
            r.overlaps[a][b] = static_cast<std::size_t>(std::popcount(checks[a].z_bits() & checks[b].z_bits()));
        }
    }
    if (code.kind == CodeKind::STEANE && !r.uniform(4, 4, 2)) {
        throw ValidationError("steane incidence structure is not (weight 4, degree 4, overlap 2): " +
                              to_json(r).dump());
    }
    return r;
}

void validate_code(const CodeSpec &code) {
    std::vector<const PauliString *> checks;
    for (const auto &c : code.z_checks) {
        checks.push_back(&c);
    }
    for (const auto &c : code.x_checks) {
        checks.push_back(&c);
    }
    for (auto *a : checks) {
        for (auto *b : checks) {
            if (!a->commutes_with(*b)) {
                throw ValidationError("checks " + a->str() + " and " + b->str() + " anticommute");
            }
        }
    }
    if (code.logical_x.commutes_with(code.logical_z)) {
        throw ValidationError("logical X and Z commute");
    }
    for (const auto *logical : {&code.logical_x, &code.logical_z}) {
        for (auto *c : checks) {
            if (!logical->commutes_with(*c)) {
                throw ValidationError("logical " + logical->str() + " anticommutes with check " + c->str());
            }
        }
        for (const auto &g : code.gauge_gens) {
            if (!logical->commutes_with(g)) {
                throw ValidationError("logical " + logical->str() + " anticommutes with gauge " + g.str());
            }
        }
    }
    for (const auto &g : code.gauge_gens) {
        for (auto *c : checks) {
            if (!g.commutes_with(*c)) {
                throw ValidationError("gauge " + g.str() + " anticommutes with check " + c->str());
            }
        }
    }
}

static nlohmann::json paulis_json(const std::vector<PauliString> &ps) {
    auto out = nlohmann::json::array();
    for (const auto &p : ps) {
        out.push_back(p.str());
    }
    return out;
}

static nlohmann::json decoder_json(const DecoderTable &t) {
    auto out = nlohmann::json::object();
    for (std::size_t s = 0; s < t.corrections.size(); s++) {
        if (t.reachable[s]) {
            out[std::to_string(s)] = t.corrections[s].str();
        }
    }
    return out;
}

static nlohmann::json groups_json(const std::vector<CorrectionGroup> &groups) {
    auto out = nlohmann::json::array();
    for (const auto &g : groups) {
        out.push_back({{"controls", g.controls}, {"pattern", g.pattern}, {"target", g.target}});
    }
    return out;
}

nlohmann::json to_json(const CodeSpec &code) {
    return {
        {"name", code.name()},
        {"n_data", code.n_data},
        {"z_checks", paulis_json(code.z_checks)},
        {"x_checks", paulis_json(code.x_checks)},
        {"gauge_gens", paulis_json(code.gauge_gens)},
        {"logical_x", code.logical_x.str()},
        {"logical_z", code.logical_z.str()},
        {"decode_x", decoder_json(code.decode_x)},
        {"decode_z", decoder_json(code.decode_z)},
        {"correction_groups", {{"x", groups_json(code.x_correction_groups)}, {"z", groups_json(code.z_correction_groups)}}},
    };
}

nlohmann::json to_json(const IncidenceReport &report) {
    return {{"weights", report.check_weights}, {"degrees", report.qubit_degrees}, {"overlaps", report.overlaps}};
}

}  // namespace cecsim
