#pragma once

// Code families and the qcode file format.

#include <filesystem>
#include <optional>
#include <vector>

#include "gnd/stabilizer_code.hpp"

namespace gnd {

// Rotated surface code on a d x d qubit grid, parameters [[d^2, 1, d]].
// Requires odd d >= 3. Stabilizers are listed plaquette-row-major.
StabilizerCode rotated_surface_code(std::size_t d);

// One term x^x_exp y^y_exp of a bivariate polynomial over the group ring of
// Z_l x Z_m.
struct BbTerm {
  std::size_t x_exp = 0;
  std::size_t y_exp = 0;
};

// Bivariate bicycle code on l*m data-qubit pairs: Hx = [A | B] and
// Hz = [B^T | A^T], where A and B are sums of cyclic-shift matrices
// x = S_l (x) I_m and y = I_l (x) S_m given by the term lists. n = 2*l*m;
// k is whatever the GF(2) ranks leave (computed, not assumed).
StabilizerCode bb_code(std::size_t l, std::size_t m,
                       const std::vector<BbTerm>& a_terms,
                       const std::vector<BbTerm>& b_terms);

// CSS code from explicit parity-check matrices (Hx rows -> X generators,
// Hz rows -> Z generators). Throws if Hx Hz^T != 0 or a matrix is rank
// deficient.
StabilizerCode css_code(const BinaryMatrix& hx, const BinaryMatrix& hz,
                        std::string name);

// Drops the listed generators (indices into code.stabilizers, duplicates
// rejected). Each dropped generator raises k by one.
StabilizerCode remove_stabilizers(const StabilizerCode& code,
                                  std::vector<std::size_t> indices);

enum class PauliFilter { Any, XOnly, ZOnly };

// Minimum weight of a non-trivial logical operator, by exhaustive search
// over operators of weight <= max_weight. Returns nullopt if none is found
// within the budget (distance > max_weight). With XOnly/ZOnly the search is
// restricted to pure X / pure Z operators (the X / Z distance of a CSS
// code).
std::optional<std::size_t> brute_distance(const StabilizerCode& code,
                                          std::size_t max_weight,
                                          PauliFilter filter = PauliFilter::Any);

// True when every generator is pure X or pure Z.
bool is_css(const StabilizerCode& code);

// --- qcode text format -----------------------------------------------------
//
//   qcode v1
//   n <n> k <k> [d <d>]
//   name <text to end of line>        (optional)
//   S
//   <m lines of 2n '0'/'1' chars>     (symplectic rows, x half then z half)
//
// CSS codes may instead carry two blocks "Hx" / "Hz" whose rows are n bits
// wide; rows of Hx become X generators and rows of Hz become Z generators.
// '#' starts a comment; blank lines are ignored.

StabilizerCode parse_code(std::string_view text, std::string name = "");
std::string serialize_code(const StabilizerCode& code);

StabilizerCode load_code_file(const std::filesystem::path& path);
void save_code_file(const StabilizerCode& code,
                    const std::filesystem::path& path);

// FNV-1a hash of the canonical serialization; used to tie checkpoints to
// the code they were trained on.
std::uint64_t code_fingerprint(const StabilizerCode& code);

}  // namespace gnd
