#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "gnd/codes.hpp"
#include "gnd/error.hpp"

using namespace gnd;

namespace {

const std::filesystem::path kData = GND_DATA_DIR;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("rotated surface code family parameters") {
  for (std::size_t d : {std::size_t{3}, std::size_t{5}, std::size_t{7}}) {
    StabilizerCode code = rotated_surface_code(d);
    CHECK(code.n == d * d);
    CHECK(code.k == 1);
    CHECK(code.num_checks() == d * d - 1);
    CHECK(validate_code(code).ok());
    CHECK(is_css(code));
    for (const PauliOperator& g : code.stabilizers) {
      const std::size_t w = pauli_weight(g);
      CHECK((w == 2 || w == 4));  // bulk plaquettes and boundary halves
    }
  }
  CHECK_THROWS_AS(rotated_surface_code(4), std::invalid_argument);
  CHECK_THROWS_AS(rotated_surface_code(1), std::invalid_argument);
}

TEST_CASE("rotated surface code distance") {
  CHECK(brute_distance(rotated_surface_code(3), 3) == 3);
  CHECK(brute_distance(rotated_surface_code(3), 2) == std::nullopt);
  // CSS sector distances agree for this symmetric layout
  CHECK(brute_distance(rotated_surface_code(3), 3, PauliFilter::XOnly) == 3);
  CHECK(brute_distance(rotated_surface_code(3), 3, PauliFilter::ZOnly) == 3);
}

TEST_CASE("bivariate bicycle construction") {
  // A = 1 + y + x, B = 1 + y + x^2 y on a 3x3 torus: [[18, 4, 4]]
  StabilizerCode bb = bb_code(3, 3, {{0, 0}, {0, 1}, {1, 0}},
                              {{0, 0}, {0, 1}, {2, 1}});
  CHECK(bb.n == 18);
  CHECK(bb.k == 4);
  CHECK(validate_code(bb).ok());
  CHECK(is_css(bb));
  CHECK(brute_distance(bb, 4) == 4);

  // commutation is structural: Hx Hz^T = AB + BA = 0 over GF(2)
  for (const PauliOperator& a : bb.stabilizers)
    for (const PauliOperator& b : bb.stabilizers)
      CHECK(symplectic_product(a, b) == 0);

  // exponents live on the torus, so reduction mod (l, m) changes nothing
  StabilizerCode wrapped = bb_code(3, 3, {{0, 0}, {0, 4}, {4, 3}},
                                   {{0, 0}, {0, 4}, {2, 4}});
  CHECK(wrapped.n == bb.n);
  CHECK(wrapped.k == bb.k);
  CHECK(wrapped.stabilizers == bb.stabilizers);

  CHECK_THROWS_AS(bb_code(0, 3, {{0, 0}}, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(bb_code(3, 3, {}, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("larger bicycle instance matches its bundled file") {
  StabilizerCode built = bb_code(6, 6, {{3, 0}, {0, 1}, {0, 2}},
                                 {{0, 3}, {1, 0}, {2, 0}});
  CHECK(built.n == 72);
  CHECK(built.k == 12);
  StabilizerCode loaded = load_code_file(kData / "codes/bb72_12_6.qcode");
  CHECK(loaded.stabilizers == built.stabilizers);
  CHECK(loaded.n == built.n);
  CHECK(loaded.k == built.k);
  CHECK(loaded.claimed_distance == 6);
}

TEST_CASE("css code wrapper checks its inputs") {
  BinaryMatrix hx(1, 4), hz(1, 4);
  for (std::size_t c = 0; c < 4; ++c) hx.set(0, c, true);  // XXXX
  hz.set(0, 0, true);
  hz.set(0, 1, true);  // ZZII, orthogonal to XXXX
  StabilizerCode ok = css_code(hx, hz, "toy");
  CHECK(ok.n == 4);
  CHECK(ok.k == 2);
  CHECK(ok.name == "toy");

  BinaryMatrix bad_hz(1, 4);
  bad_hz.set(0, 0, true);  // ZIII anticommutes with XXXX
  CHECK_THROWS_AS(css_code(hx, bad_hz, "bad"), std::invalid_argument);

  // Redundant parity checks are collapsed to an independent generator list,
  // not rejected: bicycle-code check matrices are rank deficient by nature.
  BinaryMatrix dup(2, 4);
  for (std::size_t c = 0; c < 4; ++c) {
    dup.set(0, c, true);
    dup.set(1, c, true);
  }
  StabilizerCode collapsed = css_code(dup, hz, "dup");
  CHECK(collapsed.num_checks() == ok.num_checks());
  CHECK(collapsed.k == ok.k);
  CHECK(collapsed.stabilizers == ok.stabilizers);
}

TEST_CASE("removing stabilizers raises k and keeps a valid frame") {
  StabilizerCode base = rotated_surface_code(5);
  StabilizerCode punched = remove_stabilizers(base, {2, 10, 17});
  CHECK(punched.n == base.n);
  CHECK(punched.k == base.k + 3);
  CHECK(punched.num_checks() == base.num_checks() - 3);
  CHECK(validate_code(punched).ok());
  CHECK(validate_frame(build_els_frame(punched)).ok());

  CHECK_THROWS_AS(remove_stabilizers(base, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(remove_stabilizers(base, {base.num_checks()}),
                  std::invalid_argument);
}

TEST_CASE("bundled defect code matches its construction rule") {
  StabilizerCode loaded = load_code_file(kData / "codes/dsc7_k4.qcode");
  StabilizerCode rebuilt =
      remove_stabilizers(rotated_surface_code(7), {5, 7, 9});
  CHECK(loaded.n == 49);
  CHECK(loaded.k == 4);
  CHECK(loaded.stabilizers == rebuilt.stabilizers);
  // each removed weight-4 plaquette becomes a weight-4 logical
  CHECK(brute_distance(loaded, 4, PauliFilter::ZOnly) == 4);
}

TEST_CASE("brute distance on edge cases") {
  StabilizerCode trivial;  // no stabilizers: any single qubit flip is logical
  trivial.n = 1;
  trivial.k = 1;
  CHECK(brute_distance(trivial, 1) == 1);

  // [[2,1]] with S = {XX}: XI commutes with XX and is not a stabilizer
  StabilizerCode two;
  two.n = 2;
  two.k = 1;
  two.stabilizers = {PauliOperator::from_string("XX")};
  CHECK(brute_distance(two, 2) == 1);
}

TEST_CASE("qcode text round trip") {
  for (const char* name :
       {"rsc3", "rsc5", "bb18_4_4", "gb30_6_4", "bb72_12_6", "dsc7_k4"}) {
    auto path = kData / "codes" / (std::string(name) + ".qcode");
    StabilizerCode code = load_code_file(path);
    StabilizerCode again = parse_code(serialize_code(code), code.name);
    CHECK(again.stabilizers == code.stabilizers);
    CHECK(again.n == code.n);
    CHECK(again.k == code.k);
    CHECK(again.claimed_distance == code.claimed_distance);
    CHECK(again.name == code.name);
    CHECK(code_fingerprint(again) == code_fingerprint(code));
  }
}

TEST_CASE("qcode parser reports malformed input with line numbers") {
  CHECK_THROWS_AS(parse_code("qcode v2\nn 1 k 1\nS\n"), ParseError);
  try {
    parse_code("qcode v1\nn 2 k 1\nS\n01\n");  // row too short (needs 2n)
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  // n/k inconsistent with the generator count
  CHECK_THROWS_AS(parse_code("qcode v1\nn 2 k 0\nS\n1000\n"), ParseError);
}

TEST_CASE("loading an inconsistent code file fails validation") {
  auto path = temp_file("gnd_bad_code.qcode");
  {
    std::ofstream out(path);
    // XI and ZI anticommute: not a stabilizer group
    out << "qcode v1\nn 2 k 0\nS\n1000\n0010\n";
  }
  CHECK_THROWS(load_code_file(path));
  std::filesystem::remove(path);
}

TEST_CASE("save and load through a file") {
  StabilizerCode code = rotated_surface_code(3);
  code.name = "round trip probe";
  auto path = temp_file("gnd_roundtrip.qcode");
  save_code_file(code, path);
  StabilizerCode loaded = load_code_file(path);
  CHECK(loaded.stabilizers == code.stabilizers);
  CHECK(loaded.n == code.n);
  CHECK(loaded.k == code.k);
  // files are named by their stem; the original name survives only as a
  // comment
  CHECK(loaded.name == "gnd_roundtrip");
  std::filesystem::remove(path);
}

TEST_CASE("fingerprint ignores the name but not the generators") {
  StabilizerCode a = rotated_surface_code(3);
  StabilizerCode b = a;
  b.name = "other";
  CHECK(code_fingerprint(a) == code_fingerprint(b));
  StabilizerCode c = remove_stabilizers(a, {0});
  CHECK(code_fingerprint(a) != code_fingerprint(c));
}
