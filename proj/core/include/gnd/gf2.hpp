#pragma once

// Bit-packed GF(2) linear algebra. Vectors and matrices store 64 bits per
// word; all arithmetic is word-wise XOR/AND plus popcount.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gnd {

class BinaryVector {
public:
  BinaryVector() = default;
  explicit BinaryVector(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  // Parses a string of '0'/'1' characters; throws std::invalid_argument on
  // anything else.
  static BinaryVector from_string(std::string_view bits);

  std::size_t size() const { return size_; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  // XOR-accumulate; dimensions must match.
  BinaryVector& operator^=(const BinaryVector& o);

  // Parity of the AND of two vectors (the GF(2) inner product).
  bool dot(const BinaryVector& o) const;

  std::size_t popcount() const;
  bool is_zero() const;

  bool operator==(const BinaryVector&) const = default;

  std::string to_string() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

BinaryVector operator^(BinaryVector a, const BinaryVector& b);

struct BinaryVectorHash {
  std::size_t operator()(const BinaryVector& v) const;
};

// Dense bit matrix with row-major word storage. Rows are padded to whole
// words so row operations are pure word loops.
class BinaryMatrix {
public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64),
        words_(rows * stride_, 0) {}

  static BinaryMatrix from_rows(const std::vector<BinaryVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (words_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    if (v)
      words_[r * stride_ + (c >> 6)] |= mask;
    else
      words_[r * stride_ + (c >> 6)] &= ~mask;
  }

  BinaryVector row(std::size_t r) const;
  void set_row(std::size_t r, const BinaryVector& v);

  // dst ^= src, as a word loop.
  void xor_row_into(std::size_t src, std::size_t dst);
  void swap_rows(std::size_t a, std::size_t b);

  std::span<const std::uint64_t> row_words(std::size_t r) const {
    return {words_.data() + r * stride_, stride_};
  }

  bool operator==(const BinaryMatrix&) const = default;

private:
  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<std::uint64_t> words_;
};

struct RowReduction {
  BinaryMatrix reduced;             // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
  std::size_t rank = 0;
};

// Gaussian elimination to reduced row echelon form. Pivot choice is the
// lowest-index nonzero column, then the lowest-index candidate row, so the
// result is a deterministic function of the input.
RowReduction gf2_row_reduce(const BinaryMatrix& m);

std::size_t gf2_rank(const BinaryMatrix& m);

// One solution of m x = b, or nullopt if inconsistent. Free variables are
// set to zero.
std::optional<BinaryVector> gf2_solve(const BinaryMatrix& m,
                                      const BinaryVector& b);

// Basis of the null space {x : m x = 0}, one vector per free column of the
// RREF, in ascending free-column order.
std::vector<BinaryVector> gf2_kernel_basis(const BinaryMatrix& m);

// c = a b over GF(2).
BinaryMatrix gf2_matmul(const BinaryMatrix& a, const BinaryMatrix& b);

// y = m x.
BinaryVector gf2_matvec(const BinaryMatrix& m, const BinaryVector& x);

}  // namespace gnd
