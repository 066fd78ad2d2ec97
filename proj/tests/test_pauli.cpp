#include <doctest.h>

#include <random>
#include <stdexcept>

#include "gnd/pauli.hpp"

using namespace gnd;

namespace {

PauliOperator random_pauli(std::size_t n, std::mt19937& gen) {
  static const char* kLetters = "IXZY";
  std::uniform_int_distribution<int> pick(0, 3);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(kLetters[pick(gen)]);
  return PauliOperator::from_string(s);
}

}  // namespace

TEST_CASE("letter string round trip") {
  PauliOperator p = PauliOperator::from_string("IXZYXI");
  CHECK(p.num_qubits() == 6);
  CHECK(p.to_string() == "IXZYXI");
  CHECK(p.x.to_string() == "010110");
  CHECK(p.z.to_string() == "001100");
  CHECK(PauliOperator::from_string("ixzy").to_string() == "IXZY");
  CHECK_THROWS_AS(PauliOperator::from_string("IXQ"), std::invalid_argument);
}

TEST_CASE("identity behaves as the unit of the product") {
  std::mt19937 gen(3);
  PauliOperator id = PauliOperator::identity(11);
  CHECK(id.is_identity());
  for (int t = 0; t < 20; ++t) {
    PauliOperator p = random_pauli(11, gen);
    CHECK(id * p == p);
    CHECK(p * id == p);
    CHECK((p * p).is_identity());  // phase-free involution
  }
}

TEST_CASE("product XORs the symplectic components") {
  std::mt19937 gen(9);
  for (int t = 0; t < 30; ++t) {
    PauliOperator a = random_pauli(14, gen);
    PauliOperator b = random_pauli(14, gen);
    PauliOperator c = a * b;
    CHECK(c.x == (a.x ^ b.x));
    CHECK(c.z == (a.z ^ b.z));
    CHECK(a * b == b * a);  // phase-free product is abelian
  }
}

TEST_CASE("single qubit commutation table") {
  PauliOperator x = PauliOperator::from_string("X");
  PauliOperator z = PauliOperator::from_string("Z");
  PauliOperator y = PauliOperator::from_string("Y");
  PauliOperator i = PauliOperator::from_string("I");
  CHECK(symplectic_product(x, z) == 1);
  CHECK(symplectic_product(x, y) == 1);
  CHECK(symplectic_product(z, y) == 1);
  CHECK(symplectic_product(x, x) == 0);
  CHECK(symplectic_product(i, x) == 0);
  CHECK(symplectic_product(i, z) == 0);
}

TEST_CASE("symplectic product is symmetric and bilinear") {
  std::mt19937 gen(21);
  for (int t = 0; t < 40; ++t) {
    PauliOperator a = random_pauli(10, gen);
    PauliOperator b = random_pauli(10, gen);
    PauliOperator c = random_pauli(10, gen);
    CHECK(symplectic_product(a, b) == symplectic_product(b, a));
    CHECK(symplectic_product(a * b, c) ==
          (symplectic_product(a, c) ^ symplectic_product(b, c)));
  }
}

TEST_CASE("weight counts non-identity qubits") {
  CHECK(pauli_weight(PauliOperator::from_string("IIII")) == 0);
  CHECK(pauli_weight(PauliOperator::from_string("XIZI")) == 2);
  CHECK(pauli_weight(PauliOperator::from_string("YYYY")) == 4);
  CHECK(pauli_weight(PauliOperator::from_string("XYZ")) == 3);
}

TEST_CASE("symplectic row round trip") {
  std::mt19937 gen(33);
  for (int t = 0; t < 30; ++t) {
    PauliOperator p = random_pauli(13, gen);
    BinaryVector row = symplectic_row(p);
    CHECK(row.size() == 26);
    for (std::size_t i = 0; i < 13; ++i) {
      CHECK(row.get(i) == p.x.get(i));
      CHECK(row.get(13 + i) == p.z.get(i));
    }
    CHECK(pauli_from_symplectic_row(row) == p);
  }
  CHECK_THROWS_AS(pauli_from_symplectic_row(BinaryVector(7)),
                  std::invalid_argument);
}
