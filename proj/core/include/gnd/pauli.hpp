#pragma once

// Phase-free n-qubit Pauli operators in binary symplectic form. An operator
// is a pair of bit vectors (x, z): qubit i carries X if x_i=1, Z if z_i=1,
// Y if both. Global phases are irrelevant for stabilizer decoding and are
// not tracked.

#include <cstddef>
#include <string>
#include <string_view>

#include "gnd/gf2.hpp"

namespace gnd {

struct PauliOperator {
  BinaryVector x, z;

  PauliOperator() = default;
  explicit PauliOperator(std::size_t n) : x(n), z(n) {}
  PauliOperator(BinaryVector x_bits, BinaryVector z_bits);

  std::size_t num_qubits() const { return x.size(); }
  bool is_identity() const { return x.is_zero() && z.is_zero(); }

  static PauliOperator identity(std::size_t n) { return PauliOperator(n); }

  // Parses "IXZY..." (one letter per qubit, case-insensitive).
  static PauliOperator from_string(std::string_view s);
  std::string to_string() const;

  bool operator==(const PauliOperator&) const = default;
};

// Phase-free product: component-wise XOR of x and z parts.
PauliOperator operator*(const PauliOperator& a, const PauliOperator& b);

// 0 if a and b commute, 1 if they anticommute:
// (a.x . b.z + a.z . b.x) mod 2.
int symplectic_product(const PauliOperator& a, const PauliOperator& b);

// Number of qubits acted on non-trivially.
std::size_t pauli_weight(const PauliOperator& p);

// Row vector (x | z) of length 2n.
BinaryVector symplectic_row(const PauliOperator& p);
PauliOperator pauli_from_symplectic_row(const BinaryVector& row);

}  // namespace gnd
