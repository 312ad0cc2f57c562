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

#ifndef CECSIM_PAULI_H
#define CECSIM_PAULI_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace cecsim {

/// Single-qubit Pauli with the symplectic encoding bit0 = x, bit1 = z.
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

constexpr bool has_x(Pauli p) { return (static_cast<uint8_t>(p) & 1) != 0; }
constexpr bool has_z(Pauli p) { return (static_cast<uint8_t>(p) & 2) != 0; }
constexpr Pauli pauli_from_bits(bool x, bool z) { return static_cast<Pauli>((x ? 1 : 0) | (z ? 2 : 0)); }
char pauli_char(Pauli p);

constexpr std::size_t MAX_QUBITS = 64;

/// An n-qubit Pauli operator without phase, stored as x and z bitmasks.
///
/// Bit i of `x` is set iff the operator has X or Y on qubit i, and bit i of `z`
/// is set iff it has Z or Y there. Bits at or above `n` are always zero.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::size_t n);
    PauliString(std::size_t n, uint64_t x_bits, uint64_t z_bits);

    static PauliString single(std::size_t n, std::size_t qubit, Pauli p);
    static PauliString x_on(std::size_t n, std::initializer_list<std::size_t> qubits);
    static PauliString z_on(std::size_t n, std::initializer_list<std::size_t> qubits);
    /// Parses strings like "XIZY" (qubit 0 first). '_' is accepted for identity.
    static PauliString from_text(std::string_view text);

    std::size_t num_qubits() const { return n_; }
    uint64_t x_bits() const { return x_; }
    uint64_t z_bits() const { return z_; }

    bool is_identity() const { return x_ == 0 && z_ == 0; }
    std::size_t weight() const { return static_cast<std::size_t>(std::popcount(x_ | z_)); }
    Pauli at(std::size_t qubit) const;

    PauliString x_part() const { return PauliString(n_, x_, 0); }
    PauliString z_part() const { return PauliString(n_, 0, z_); }

    bool commutes_with(const PauliString &other) const;

    /// Phase-free product. Throws UsageError on a length mismatch.
    PauliString &operator*=(const PauliString &other);

    bool operator==(const PauliString &other) const = default;

    std::string str() const;

   private:
    std::size_t n_ = 0;
    uint64_t x_ = 0;
    uint64_t z_ = 0;
};

PauliString multiply(const PauliString &a, const PauliString &b);
inline PauliString operator*(PauliString a, const PauliString &b) { return a *= b; }

/// True iff the frame carries X or Y on `qubit`, i.e. it anticommutes with Z there.
bool anticommutes_with_z(const PauliString &frame, std::size_t qubit);

/// Bits of a mask below n.
constexpr uint64_t low_mask(std::size_t n) { return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1; }

}  // namespace cecsim

#endif
