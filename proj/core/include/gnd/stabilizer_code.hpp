#pragma once

// Stabilizer codes and the error-coset coordinate frame used by every
// decoder in this library. A frame splits an arbitrary Pauli error E into
// three bit blocks:
//
//   alpha (m bits)  which stabilizer generators appear in E   (irrelevant)
//   beta  (2k bits) which logical operators appear in E       (the target)
//   gamma (m bits)  the syndrome E triggers                   (the evidence)
//
// Decoding means inferring beta from gamma; alpha never changes the effect
// of the correction.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gnd/pauli.hpp"

namespace gnd {

struct StabilizerCode {
  std::size_t n = 0;  // physical qubits
  std::size_t k = 0;  // logical qubits, always n - stabilizers.size()
  std::vector<PauliOperator> stabilizers;
  std::string name;
  // Distance of the code when known; purely informational.
  std::optional<std::size_t> claimed_distance;

  std::size_t num_checks() const { return stabilizers.size(); }
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks generator count, qubit-count consistency, pairwise commutation,
// independence (full GF(2) rank of the symplectic rows), and k = n - m.
ValidationReport validate_code(const StabilizerCode& code);

// Check matrix with one symplectic row (x | z) per generator, m x 2n.
BinaryMatrix check_matrix(const StabilizerCode& code);

struct ElsFrame {
  StabilizerCode code;
  // l_1^X, l_1^Z, ..., l_k^X, l_k^Z. Each pair anticommutes internally and
  // commutes with everything else in the frame.
  std::vector<PauliOperator> logicals;
  // e_1..e_m with symplectic_product(e_i, g_j) = delta_ij and the e_i
  // commuting among themselves.
  std::vector<PauliOperator> pure_errors;

  std::size_t n() const { return code.n; }
  std::size_t k() const { return code.k; }
  std::size_t m() const { return code.num_checks(); }
};

struct ElsConfig {
  BinaryVector alpha;  // m bits
  BinaryVector beta;   // 2k bits: beta_1^X, beta_1^Z, beta_2^X, ...
  BinaryVector gamma;  // m bits
};

// Builds a frame for a valid code. Throws std::invalid_argument with the
// validation violations if the code is not a valid stabilizer code. The
// construction is deterministic, so equal codes give equal frames.
ElsFrame build_els_frame(const StabilizerCode& code);

// Frame invariant check (commutation table, ranks). Used by tests and by
// load paths that accept externally supplied frames.
ValidationReport validate_frame(const ElsFrame& frame);

// Coordinates of e in the frame:
//   gamma_i      = <e, g_i>
//   beta_{2j}    = <e, l_j^Z>   (X-type sector bit)
//   beta_{2j+1}  = <e, l_j^X>   (Z-type sector bit)
//   alpha_i      = <e, pure_error_i>
ElsConfig decompose_error(const ElsFrame& frame, const PauliOperator& e);

// Inverse of decompose_error up to phase:
//   e = prod g_i^alpha_i . prod (l_j^X)^beta_{2j} (l_j^Z)^beta_{2j+1}
//       . prod e_i^gamma_i
PauliOperator compose_error(const ElsFrame& frame, const ElsConfig& config);

// Syndrome alone: gamma_i = <e, g_i>. Cheaper than a full decomposition.
BinaryVector syndrome_of(const ElsFrame& frame, const PauliOperator& e);

// Sector alone: the beta block of decompose_error.
BinaryVector sector_of(const ElsFrame& frame, const PauliOperator& e);

}  // namespace gnd
