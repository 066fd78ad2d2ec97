#include "gnd/pauli.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>

namespace gnd {

PauliOperator::PauliOperator(BinaryVector x_bits, BinaryVector z_bits)
    : x(std::move(x_bits)), z(std::move(z_bits)) {
  if (x.size() != z.size())
    throw std::invalid_argument("PauliOperator: x and z length mismatch");
}

PauliOperator PauliOperator::from_string(std::string_view s) {
  PauliOperator p(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    switch (std::toupper(static_cast<unsigned char>(s[i]))) {
      case 'I':
        break;
      case 'X':
        p.x.set(i, true);
        break;
      case 'Z':
        p.z.set(i, true);
        break;
      case 'Y':
        p.x.set(i, true);
        p.z.set(i, true);
        break;
      default:
        throw std::invalid_argument(
            "PauliOperator::from_string: bad character '" +
            std::string(1, s[i]) + "'");
    }
  }
  return p;
}

std::string PauliOperator::to_string() const {
  std::string s(num_qubits(), 'I');
  for (std::size_t i = 0; i < num_qubits(); ++i) {
    const bool xi = x.get(i), zi = z.get(i);
    if (xi && zi)
      s[i] = 'Y';
    else if (xi)
      s[i] = 'X';
    else if (zi)
      s[i] = 'Z';
  }
  return s;
}

PauliOperator operator*(const PauliOperator& a, const PauliOperator& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("PauliOperator product: qubit count mismatch");
  PauliOperator c = a;
  c.x ^= b.x;
  c.z ^= b.z;
  return c;
}

int symplectic_product(const PauliOperator& a, const PauliOperator& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("symplectic_product: qubit count mismatch");
  return (a.x.dot(b.z) ^ a.z.dot(b.x)) ? 1 : 0;
}

std::size_t pauli_weight(const PauliOperator& p) {
  std::size_t n = 0;
  auto xw = p.x.words();
  auto zw = p.z.words();
  for (std::size_t w = 0; w < xw.size(); ++w)
    n += std::popcount(xw[w] | zw[w]);
  return n;
}

BinaryVector symplectic_row(const PauliOperator& p) {
  const std::size_t n = p.num_qubits();
  BinaryVector row(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.x.get(i)) row.set(i, true);
    if (p.z.get(i)) row.set(n + i, true);
  }
  return row;
}

PauliOperator pauli_from_symplectic_row(const BinaryVector& row) {
  if (row.size() % 2 != 0)
    throw std::invalid_argument("pauli_from_symplectic_row: odd length");
  const std::size_t n = row.size() / 2;
  PauliOperator p(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (row.get(i)) p.x.set(i, true);
    if (row.get(n + i)) p.z.set(i, true);
  }
  return p;
}

}  // namespace gnd
