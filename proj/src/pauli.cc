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

#include "cecsim/pauli.h"

#include "cecsim/errors.h"

namespace cecsim {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I:
            return 'I';
        case Pauli::X:
            return 'X';
        case Pauli::Y:
            return 'Y';
        case Pauli::Z:
            return 'Z';
    }
    return '?';
}

PauliString::PauliString(std::size_t n) : PauliString(n, 0, 0) {
}

PauliString::PauliString(std::size_t n, uint64_t x_bits, uint64_t z_bits) : n_(n), x_(x_bits), z_(z_bits) {
    if (n > MAX_QUBITS) {
        throw UsageError("PauliString supports at most 64 qubits, got " + std::to_string(n));
    }
    if (((x_bits | z_bits) & ~low_mask(n)) != 0) {
        throw UsageError("PauliString bits set beyond qubit count " + std::to_string(n));
    }
}

PauliString PauliString::single(std::size_t n, std::size_t qubit, Pauli p) {
    if (qubit >= n) {
        throw UsageError("qubit " + std::to_string(qubit) + " out of range for " + std::to_string(n) + " qubits");
    }
    uint64_t bit = uint64_t{1} << qubit;
    return PauliString(n, has_x(p) ? bit : 0, has_z(p) ? bit : 0);
}

PauliString PauliString::x_on(std::size_t n, std::initializer_list<std::size_t> qubits) {
    PauliString out(n);
    for (auto q : qubits) {
        out *= single(n, q, Pauli::X);
    }
    return out;
}

PauliString PauliString::z_on(std::size_t n, std::initializer_list<std::size_t> qubits) {
    PauliString out(n);
    for (auto q : qubits) {
        out *= single(n, q, Pauli::Z);
    }
    return out;
}

PauliString PauliString::from_text(std::string_view text) {
    uint64_t x = 0;
    uint64_t z = 0;
    if (text.size() > MAX_QUBITS) {
        throw UsageError("Pauli text longer than 64 qubits");
    }
    for (std::size_t k = 0; k < text.size(); k++) {
        uint64_t bit = uint64_t{1} << k;
        switch (text[k]) {
            case 'I':
            case '_':
                break;
            case 'X':
                x |= bit;
                break;
            case 'Z':
                z |= bit;
                break;
            case 'Y':
                x |= bit;
                z |= bit;
                break;
            default:
                throw UsageError("bad Pauli character '" + std::string(1, text[k]) + "'");
        }
    }
    return PauliString(text.size(), x, z);
}

Pauli PauliString::at(std::size_t qubit) const {
    if (qubit >= n_) {
        throw UsageError("qubit " + std::to_string(qubit) + " out of range");
    }
    return pauli_from_bits((x_ >> qubit) & 1, (z_ >> qubit) & 1);
}

bool PauliString::commutes_with(const PauliString &other) const {
    if (other.n_ != n_) {
        throw UsageError("Pauli length mismatch in commutation test");
    }
    return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
}

PauliString &PauliString::operator*=(const PauliString &other) {
    if (other.n_ != n_) {
        throw UsageError("Pauli length mismatch: " + std::to_string(n_) + " vs " + std::to_string(other.n_));
    }
    x_ ^= other.x_;
    z_ ^= other.z_;
    return *this;
}

std::string PauliString::str() const {
    std::string out;
    out.reserve(n_);
    for (std::size_t k = 0; k < n_; k++) {
        out.push_back(pauli_char(at(k)));
    }
    return out;
}

PauliString multiply(const PauliString &a, const PauliString &b) {
    PauliString out = a;
    out *= b;
    return out;
}

bool anticommutes_with_z(const PauliString &frame, std::size_t qubit) {
    if (qubit >= frame.num_qubits()) {
        throw UsageError("qubit " + std::to_string(qubit) + " out of range");
    }
    return (frame.x_bits() >> qubit) & 1;
}

}  // namespace cecsim
