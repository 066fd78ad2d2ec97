#include "gnd/stabilizer_code.hpp"

#include <stdexcept>

namespace gnd {

ValidationReport validate_code(const StabilizerCode& code) {
  ValidationReport rep;
  const std::size_t m = code.stabilizers.size();
  if (code.n == 0) rep.violations.push_back("code has zero qubits");
  if (m > code.n)
    rep.violations.push_back("more generators than qubits (" +
                             std::to_string(m) + " > " +
                             std::to_string(code.n) + ")");
  for (std::size_t i = 0; i < m; ++i) {
    if (code.stabilizers[i].num_qubits() != code.n) {
      rep.violations.push_back("generator " + std::to_string(i) + " acts on " +
                               std::to_string(code.stabilizers[i].num_qubits()) +
                               " qubits, expected " + std::to_string(code.n));
      return rep;  // later checks would throw on mixed sizes
    }
    if (code.stabilizers[i].is_identity())
      rep.violations.push_back("generator " + std::to_string(i) +
                               " is the identity");
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (symplectic_product(code.stabilizers[i], code.stabilizers[j]))
        rep.violations.push_back("generators " + std::to_string(i) + " and " +
                                 std::to_string(j) + " anticommute");
  if (m > 0 && gf2_rank(check_matrix(code)) != m)
    rep.violations.push_back("generators are linearly dependent");
  if (code.k != code.n - m)
    rep.violations.push_back("k=" + std::to_string(code.k) +
                             " but n - m = " + std::to_string(code.n - m));
  return rep;
}

BinaryMatrix check_matrix(const StabilizerCode& code) {
  BinaryMatrix h(code.stabilizers.size(), 2 * code.n);
  for (std::size_t r = 0; r < code.stabilizers.size(); ++r)
    h.set_row(r, symplectic_row(code.stabilizers[r]));
  return h;
}

}  // namespace gnd
