#include <stdexcept>

#include "gnd/stabilizer_code.hpp"

namespace gnd {

namespace {

// Row such that (row . symplectic_row(q)) = <p, q>: the x/z halves of p
// swapped.
BinaryVector swapped_row(const PauliOperator& p) {
  const std::size_t n = p.num_qubits();
  BinaryVector row(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.z.get(i)) row.set(i, true);
    if (p.x.get(i)) row.set(n + i, true);
  }
  return row;
}

std::string join_violations(const ValidationReport& rep) {
  std::string s;
  for (const auto& v : rep.violations) {
    if (!s.empty()) s += "; ";
    s += v;
  }
  return s;
}

}  // namespace

ElsFrame build_els_frame(const StabilizerCode& code) {
  ValidationReport rep = validate_code(code);
  if (!rep.ok())
    throw std::invalid_argument("build_els_frame: invalid code: " +
                                join_violations(rep));

  const std::size_t n = code.n, m = code.num_checks(), k = code.k;
  ElsFrame frame;
  frame.code = code;

  // Pure errors: solve <g_i, e_j> = delta_ij. One RREF of the commutation
  // matrix augmented with the identity gives all m right-hand sides at once;
  // free variables are zero, so the result is deterministic.
  if (m > 0) {
    BinaryMatrix aug(m, 2 * n + m);
    for (std::size_t r = 0; r < m; ++r) {
      BinaryVector sw = swapped_row(code.stabilizers[r]);
      for (std::size_t c = 0; c < 2 * n; ++c)
        if (sw.get(c)) aug.set(r, c, true);
      aug.set(r, 2 * n + r, true);
    }
    RowReduction rr = gf2_row_reduce(aug);
    if (rr.rank != m || rr.pivots.back() >= 2 * n)
      throw std::logic_error("build_els_frame: commutation system is rank "
                             "deficient for a validated code");
    frame.pure_errors.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      BinaryVector x(2 * n);
      for (std::size_t r = 0; r < m; ++r)
        if (rr.reduced.get(r, 2 * n + i)) x.set(rr.pivots[r], true);
      frame.pure_errors.push_back(pauli_from_symplectic_row(x));
    }
    // The solver fixes <e_j, g_i> but not <e_i, e_j>. Multiplying e_j by g_i
    // cancels an anticommuting pair without disturbing any other relation.
    for (std::size_t j = 1; j < m; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (symplectic_product(frame.pure_errors[i], frame.pure_errors[j]))
          frame.pure_errors[j] =
              frame.pure_errors[j] * code.stabilizers[i];
  }

  // Logical operators: a basis of everything commuting with all g_i and all
  // e_i, paired up so that <l_j^X, l_j^Z> = 1 and all other pairs commute.
  if (k > 0) {
    BinaryMatrix stacked(2 * m, 2 * n);
    for (std::size_t r = 0; r < m; ++r) {
      stacked.set_row(r, swapped_row(code.stabilizers[r]));
      stacked.set_row(m + r, swapped_row(frame.pure_errors[r]));
    }
    std::vector<BinaryVector> kernel = gf2_kernel_basis(stacked);
    if (kernel.size() != 2 * k)
      throw std::logic_error("build_els_frame: logical space has dimension " +
                             std::to_string(kernel.size()) + ", expected " +
                             std::to_string(2 * k));
    std::vector<PauliOperator> pool;
    pool.reserve(kernel.size());
    for (const auto& v : kernel) pool.push_back(pauli_from_symplectic_row(v));

    frame.logicals.reserve(2 * k);
    while (!pool.empty()) {
      PauliOperator a = pool.front();
      pool.erase(pool.begin());
      std::size_t partner = pool.size();
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (symplectic_product(a, pool[i])) {
          partner = i;
          break;
        }
      }
      if (partner == pool.size())
        throw std::logic_error(
            "build_els_frame: symplectic pairing found no partner");
      PauliOperator b = pool[partner];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(partner));
      for (auto& u : pool) {
        const int needs_a = symplectic_product(u, b);
        const int needs_b = symplectic_product(u, a);
        if (needs_a) u = u * a;
        if (needs_b) u = u * b;
      }
      frame.logicals.push_back(std::move(a));  // l^X
      frame.logicals.push_back(std::move(b));  // l^Z
    }
  }
  return frame;
}

ValidationReport validate_frame(const ElsFrame& frame) {
  ValidationReport rep = validate_code(frame.code);
  if (!rep.ok()) return rep;
  const std::size_t m = frame.m(), k = frame.k();
  auto fail = [&rep](std::string msg) { rep.violations.push_back(std::move(msg)); };

  if (frame.pure_errors.size() != m)
    fail("expected " + std::to_string(m) + " pure errors, got " +
         std::to_string(frame.pure_errors.size()));
  if (frame.logicals.size() != 2 * k)
    fail("expected " + std::to_string(2 * k) + " logicals, got " +
         std::to_string(frame.logicals.size()));
  if (!rep.ok()) return rep;

  const auto& g = frame.code.stabilizers;
  const auto& e = frame.pure_errors;
  const auto& l = frame.logicals;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (symplectic_product(e[i], g[j]) != (i == j ? 1 : 0))
        fail("pure error " + std::to_string(i) +
             " has wrong commutation with generator " + std::to_string(j));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (symplectic_product(e[i], e[j]))
        fail("pure errors " + std::to_string(i) + " and " + std::to_string(j) +
             " anticommute");
  for (std::size_t i = 0; i < 2 * k; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (symplectic_product(l[i], g[j]))
        fail("logical " + std::to_string(i) + " anticommutes with generator " +
             std::to_string(j));
      if (symplectic_product(l[i], e[j]))
        fail("logical " + std::to_string(i) +
             " anticommutes with pure error " + std::to_string(j));
    }
  }
  for (std::size_t i = 0; i < 2 * k; ++i)
    for (std::size_t j = i + 1; j < 2 * k; ++j) {
      const int want = (j == i + 1 && i % 2 == 0) ? 1 : 0;
      if (symplectic_product(l[i], l[j]) != want)
        fail("logicals " + std::to_string(i) + " and " + std::to_string(j) +
             (want ? " should anticommute" : " should commute"));
    }

  // The 2n frame operators together must span the full Pauli group.
  std::vector<BinaryVector> rows;
  for (const auto& p : g) rows.push_back(symplectic_row(p));
  for (const auto& p : l) rows.push_back(symplectic_row(p));
  for (const auto& p : e) rows.push_back(symplectic_row(p));
  if (!rows.empty() && gf2_rank(BinaryMatrix::from_rows(rows)) != 2 * frame.n())
    fail("frame operators do not span the full group");
  return rep;
}

ElsConfig decompose_error(const ElsFrame& frame, const PauliOperator& e) {
  if (e.num_qubits() != frame.n())
    throw std::invalid_argument("decompose_error: qubit count mismatch");
  const std::size_t m = frame.m(), k = frame.k();
  ElsConfig cfg{BinaryVector(m), BinaryVector(2 * k), BinaryVector(m)};
  for (std::size_t i = 0; i < m; ++i) {
    if (symplectic_product(e, frame.pure_errors[i])) cfg.alpha.set(i, true);
    if (symplectic_product(e, frame.code.stabilizers[i])) cfg.gamma.set(i, true);
  }
  for (std::size_t j = 0; j < k; ++j) {
    // The X exponent is read off against the Z partner and vice versa.
    if (symplectic_product(e, frame.logicals[2 * j + 1]))
      cfg.beta.set(2 * j, true);
    if (symplectic_product(e, frame.logicals[2 * j]))
      cfg.beta.set(2 * j + 1, true);
  }
  return cfg;
}

PauliOperator compose_error(const ElsFrame& frame, const ElsConfig& config) {
  const std::size_t m = frame.m(), k = frame.k();
  if (config.alpha.size() != m || config.gamma.size() != m ||
      config.beta.size() != 2 * k)
    throw std::invalid_argument("compose_error: block size mismatch");
  PauliOperator e(frame.n());
  for (std::size_t i = 0; i < m; ++i)
    if (config.alpha.get(i)) e = e * frame.code.stabilizers[i];
  for (std::size_t j = 0; j < 2 * k; ++j)
    if (config.beta.get(j)) e = e * frame.logicals[j];
  for (std::size_t i = 0; i < m; ++i)
    if (config.gamma.get(i)) e = e * frame.pure_errors[i];
  return e;
}

BinaryVector syndrome_of(const ElsFrame& frame, const PauliOperator& e) {
  const std::size_t m = frame.m();
  BinaryVector gamma(m);
  for (std::size_t i = 0; i < m; ++i)
    if (symplectic_product(e, frame.code.stabilizers[i])) gamma.set(i, true);
  return gamma;
}

BinaryVector sector_of(const ElsFrame& frame, const PauliOperator& e) {
  const std::size_t k = frame.k();
  BinaryVector beta(2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    if (symplectic_product(e, frame.logicals[2 * j + 1])) beta.set(2 * j, true);
    if (symplectic_product(e, frame.logicals[2 * j])) beta.set(2 * j + 1, true);
  }
  return beta;
}

}  // namespace gnd
