#include "gnd/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace gnd {

namespace {

void check_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": size mismatch (" +
                                std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
}

}  // namespace

BinaryVector BinaryVector::from_string(std::string_view bits) {
  BinaryVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i, true);
    else if (bits[i] != '0')
      throw std::invalid_argument("BinaryVector::from_string: bad character '" +
                                  std::string(1, bits[i]) + "'");
  }
  return v;
}

BinaryVector& BinaryVector::operator^=(const BinaryVector& o) {
  check_same_size(size_, o.size_, "BinaryVector::operator^=");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  return *this;
}

bool BinaryVector::dot(const BinaryVector& o) const {
  check_same_size(size_, o.size_, "BinaryVector::dot");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w)
    acc ^= words_[w] & o.words_[w];
  return std::popcount(acc) & 1u;
}

std::size_t BinaryVector::popcount() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

bool BinaryVector::is_zero() const {
  for (std::uint64_t w : words_)
    if (w) return false;
  return true;
}

std::string BinaryVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BinaryVector operator^(BinaryVector a, const BinaryVector& b) {
  a ^= b;
  return a;
}

std::size_t BinaryVectorHash::operator()(const BinaryVector& v) const {
  // FNV-1a over the words plus the length.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  mix(v.size());
  for (std::uint64_t w : v.words()) mix(w);
  return static_cast<std::size_t>(h);
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<BinaryVector>& rows) {
  if (rows.empty()) return BinaryMatrix();
  BinaryMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

BinaryVector BinaryMatrix::row(std::size_t r) const {
  BinaryVector v(cols_);
  auto dst = v.words();
  for (std::size_t w = 0; w < stride_; ++w) dst[w] = words_[r * stride_ + w];
  return v;
}

void BinaryMatrix::set_row(std::size_t r, const BinaryVector& v) {
  check_same_size(cols_, v.size(), "BinaryMatrix::set_row");
  auto src = v.words();
  for (std::size_t w = 0; w < stride_; ++w) words_[r * stride_ + w] = src[w];
}

void BinaryMatrix::xor_row_into(std::size_t src, std::size_t dst) {
  const std::uint64_t* s = words_.data() + src * stride_;
  std::uint64_t* d = words_.data() + dst * stride_;
  for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void BinaryMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::uint64_t* pa = words_.data() + a * stride_;
  std::uint64_t* pb = words_.data() + b * stride_;
  for (std::size_t w = 0; w < stride_; ++w) std::swap(pa[w], pb[w]);
}

RowReduction gf2_row_reduce(const BinaryMatrix& m) {
  RowReduction out;
  out.reduced = m;
  BinaryMatrix& a = out.reduced;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a.get(i, c)) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    a.swap_rows(r, pivot);
    for (std::size_t i = 0; i < rows; ++i)
      if (i != r && a.get(i, c)) a.xor_row_into(r, i);
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

std::size_t gf2_rank(const BinaryMatrix& m) { return gf2_row_reduce(m).rank; }

std::optional<BinaryVector> gf2_solve(const BinaryMatrix& m,
                                      const BinaryVector& b) {
  check_same_size(m.rows(), b.size(), "gf2_solve");
  // Reduce the augmented matrix [m | b].
  BinaryMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BinaryVector row(m.cols() + 1);
    BinaryVector mr = m.row(r);
    for (std::size_t w = 0; w < mr.words().size(); ++w)
      row.words()[w] = mr.words()[w];
    row.set(m.cols(), b.get(r));
    aug.set_row(r, row);
  }
  RowReduction rr = gf2_row_reduce(aug);
  BinaryVector x(m.cols());
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
    if (rr.pivots[i] == m.cols()) return std::nullopt;  // row 0...0 | 1
    x.set(rr.pivots[i], rr.reduced.get(i, m.cols()));
  }
  return x;
}

std::vector<BinaryVector> gf2_kernel_basis(const BinaryMatrix& m) {
  RowReduction rr = gf2_row_reduce(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : rr.pivots) is_pivot[c] = true;
  std::vector<BinaryVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    BinaryVector v(cols);
    v.set(free, true);
    // Back-substitute: pivot variable of row i equals the free column entry.
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
      if (rr.reduced.get(i, free)) v.set(rr.pivots[i], true);
    basis.push_back(std::move(v));
  }
  return basis;
}

BinaryMatrix gf2_matmul(const BinaryMatrix& a, const BinaryMatrix& b) {
  check_same_size(a.cols(), b.rows(), "gf2_matmul");
  BinaryMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BinaryVector acc(b.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a.get(i, j)) continue;
      auto src = b.row_words(j);
      auto dst = acc.words();
      for (std::size_t w = 0; w < src.size(); ++w) dst[w] ^= src[w];
    }
    c.set_row(i, acc);
  }
  return c;
}

BinaryVector gf2_matvec(const BinaryMatrix& m, const BinaryVector& x) {
  check_same_size(m.cols(), x.size(), "gf2_matvec");
  BinaryVector y(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row_words(r);
    auto xs = x.words();
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < row.size(); ++w) acc ^= row[w] & xs[w];
    y.set(r, std::popcount(acc) & 1u);
  }
  return y;
}

}  // namespace gnd
