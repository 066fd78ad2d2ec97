#include <doctest.h>

#include <filesystem>
#include <random>
#include <stdexcept>

#include "gnd/codes.hpp"
#include "gnd/stabilizer_code.hpp"

using namespace gnd;

namespace {

const std::filesystem::path kData = GND_DATA_DIR;

PauliOperator random_pauli(std::size_t n, std::mt19937& gen) {
  std::uniform_int_distribution<int> pick(0, 3);
  PauliOperator p(n);
  for (std::size_t i = 0; i < n; ++i) {
    int t = pick(gen);
    p.x.set(i, t == 1 || t == 3);
    p.z.set(i, t == 2 || t == 3);
  }
  return p;
}

BinaryVector random_bits(std::size_t n, std::mt19937& gen) {
  std::bernoulli_distribution bit(0.5);
  BinaryVector v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, bit(gen));
  return v;
}

BinaryVector unit(std::size_t n, std::size_t i) {
  BinaryVector v(n);
  v.set(i, true);
  return v;
}

void check_frame_relations(const ElsFrame& f) {
  const std::size_t m = f.m(), k = f.k();
  REQUIRE(f.logicals.size() == 2 * k);
  REQUIRE(f.pure_errors.size() == m);

  // stabilizers: mutually commuting, detected only by their own pure error
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      CHECK(symplectic_product(f.code.stabilizers[i], f.code.stabilizers[j]) ==
            0);
      CHECK(symplectic_product(f.pure_errors[i], f.code.stabilizers[j]) ==
            (i == j ? 1 : 0));
    }
    for (const PauliOperator& l : f.logicals)
      CHECK(symplectic_product(l, f.code.stabilizers[i]) == 0);
  }

  // logicals: symplectic pairs, X before Z within each pair
  for (std::size_t a = 0; a < 2 * k; ++a)
    for (std::size_t b = 0; b < 2 * k; ++b) {
      const int expect = (a / 2 == b / 2 && a != b) ? 1 : 0;
      CHECK(symplectic_product(f.logicals[a], f.logicals[b]) == expect);
    }

  // pure errors commute among themselves and with the logicals
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      CHECK(symplectic_product(f.pure_errors[i], f.pure_errors[j]) == 0);
    for (const PauliOperator& l : f.logicals)
      CHECK(symplectic_product(f.pure_errors[i], l) == 0);
  }
}

void check_round_trips(const ElsFrame& f, std::mt19937& gen, int trials) {
  const std::size_t n = f.n(), m = f.m(), k = f.k();
  for (int t = 0; t < trials; ++t) {
    // error -> coordinates -> error
    PauliOperator e = random_pauli(n, gen);
    ElsConfig c = decompose_error(f, e);
    CHECK(c.alpha.size() == m);
    CHECK(c.beta.size() == 2 * k);
    CHECK(c.gamma.size() == m);
    CHECK(compose_error(f, c) == e);
    CHECK(syndrome_of(f, e) == c.gamma);
    CHECK(sector_of(f, e) == c.beta);

    // coordinates -> error -> coordinates
    ElsConfig in{random_bits(m, gen), random_bits(2 * k, gen),
                 random_bits(m, gen)};
    ElsConfig out = decompose_error(f, compose_error(f, in));
    CHECK(out.alpha == in.alpha);
    CHECK(out.beta == in.beta);
    CHECK(out.gamma == in.gamma);
  }
}

}  // namespace

TEST_CASE("frame relations on the distance-3 rotated surface code") {
  ElsFrame f = build_els_frame(rotated_surface_code(3));
  CHECK(f.n() == 9);
  CHECK(f.k() == 1);
  CHECK(f.m() == 8);
  check_frame_relations(f);
  CHECK(validate_frame(f).ok());
  std::mt19937 gen(41);
  check_round_trips(f, gen, 200);
}

TEST_CASE("frame relations on a bivariate bicycle code") {
  ElsFrame f = build_els_frame(load_code_file(kData / "codes/bb18_4_4.qcode"));
  CHECK(f.n() == 18);
  CHECK(f.k() == 4);
  check_frame_relations(f);
  CHECK(validate_frame(f).ok());
  std::mt19937 gen(43);
  check_round_trips(f, gen, 100);
}

TEST_CASE("frame relations on a larger loaded code") {
  ElsFrame f =
      build_els_frame(load_code_file(kData / "codes/bb72_12_6.qcode"));
  CHECK(f.n() == 72);
  CHECK(f.k() == 12);
  check_frame_relations(f);
  std::mt19937 gen(47);
  check_round_trips(f, gen, 25);
}

TEST_CASE("decomposition is multiplicative") {
  ElsFrame f = build_els_frame(rotated_surface_code(3));
  std::mt19937 gen(53);
  for (int t = 0; t < 100; ++t) {
    PauliOperator a = random_pauli(9, gen);
    PauliOperator b = random_pauli(9, gen);
    ElsConfig ca = decompose_error(f, a);
    ElsConfig cb = decompose_error(f, b);
    ElsConfig cab = decompose_error(f, a * b);
    CHECK(cab.alpha == (ca.alpha ^ cb.alpha));
    CHECK(cab.beta == (ca.beta ^ cb.beta));
    CHECK(cab.gamma == (ca.gamma ^ cb.gamma));
  }
}

TEST_CASE("frame elements decompose to unit coordinates") {
  ElsFrame f = build_els_frame(rotated_surface_code(3));
  const std::size_t m = f.m(), k = f.k();
  for (std::size_t i = 0; i < m; ++i) {
    ElsConfig c = decompose_error(f, f.code.stabilizers[i]);
    CHECK(c.alpha == unit(m, i));
    CHECK(c.beta.is_zero());
    CHECK(c.gamma.is_zero());

    ElsConfig ce = decompose_error(f, f.pure_errors[i]);
    CHECK(ce.gamma == unit(m, i));
    CHECK(ce.beta.is_zero());
  }
  for (std::size_t j = 0; j < 2 * k; ++j) {
    ElsConfig c = decompose_error(f, f.logicals[j]);
    CHECK(c.beta == unit(2 * k, j));
    CHECK(c.gamma.is_zero());
    CHECK(c.alpha.is_zero());
  }
}

TEST_CASE("identity decomposes to zero and stabilizers are degenerate") {
  ElsFrame f = build_els_frame(rotated_surface_code(3));
  ElsConfig c = decompose_error(f, PauliOperator::identity(9));
  CHECK(c.alpha.is_zero());
  CHECK(c.beta.is_zero());
  CHECK(c.gamma.is_zero());

  // every alpha with fixed (beta, gamma) gives an error with the same
  // syndrome and the same logical effect: exhaustive over 2^m
  std::mt19937 gen(59);
  const std::size_t m = f.m();
  BinaryVector beta = random_bits(2, gen);
  BinaryVector gamma = random_bits(m, gen);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a) {
    BinaryVector alpha(m);
    for (std::size_t i = 0; i < m; ++i) alpha.set(i, (a >> i) & 1);
    PauliOperator e = compose_error(f, {alpha, beta, gamma});
    CHECK(syndrome_of(f, e) == gamma);
    CHECK(sector_of(f, e) == beta);
  }
}

TEST_CASE("frame construction is deterministic") {
  StabilizerCode code = rotated_surface_code(5);
  ElsFrame a = build_els_frame(code);
  ElsFrame b = build_els_frame(code);
  CHECK(a.logicals == b.logicals);
  CHECK(a.pure_errors == b.pure_errors);
}

TEST_CASE("invalid codes are rejected") {
  StabilizerCode bad;
  bad.n = 2;
  bad.k = 1;
  bad.stabilizers = {PauliOperator::from_string("XI")};
  bad.stabilizers.push_back(PauliOperator::from_string("ZI"));  // anticommutes
  bad.k = 0;
  CHECK_FALSE(validate_code(bad).ok());
  CHECK_THROWS_AS(build_els_frame(bad), std::invalid_argument);

  StabilizerCode dep;  // dependent generators
  dep.n = 2;
  dep.k = 0;
  dep.stabilizers = {PauliOperator::from_string("XX"),
                     PauliOperator::from_string("XX")};
  CHECK_FALSE(validate_code(dep).ok());

  StabilizerCode wrong_k = rotated_surface_code(3);
  wrong_k.k = 2;
  CHECK_FALSE(validate_code(wrong_k).ok());
}
