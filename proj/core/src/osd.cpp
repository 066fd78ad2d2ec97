#include "gnd/osd.hpp"

#include <algorithm>
#include <numeric>

#include "gnd/error.hpp"

namespace gnd {

BinaryVector osd_postprocess(const BinaryMatrix& h,
                             const BinaryVector& syndrome,
                             const std::vector<double>& reliability_llr,
                             OsdMode mode, std::size_t sweep_depth) {
  const std::size_t rows = h.rows(), cols = h.cols();
  if (syndrome.size() != rows)
    throw std::invalid_argument("osd_postprocess: syndrome length mismatch");
  if (reliability_llr.size() != cols)
    throw std::invalid_argument("osd_postprocess: reliability length mismatch");

  // Most-likely-in-error first (lowest LLR); index breaks ties.
  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (reliability_llr[a] != reliability_llr[b])
      return reliability_llr[a] < reliability_llr[b];
    return a < b;
  });

  // RREF of the permuted system [H_perm | s].
  BinaryMatrix aug(rows, cols + 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c)
      if (h.get(r, order[c])) aug.set(r, c, true);
    if (syndrome.get(r)) aug.set(r, cols, true);
  }
  RowReduction rr = gf2_row_reduce(aug);
  for (std::size_t i = 0; i < rr.pivots.size(); ++i)
    if (rr.pivots[i] == cols)
      throw ContractViolation(
          "osd_postprocess: syndrome outside the column space of H");

  const std::size_t rank = rr.pivots.size();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : rr.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;  // in permuted (reliability) order
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  // Base solution: free variables zero, pivot variable of row r = s_r.
  // Flipping free column f xors the pivot pattern with column f of the RREF.
  std::vector<std::uint8_t> base(rank);
  for (std::size_t r = 0; r < rank; ++r)
    base[r] = rr.reduced.get(r, cols) ? 1 : 0;

  auto assemble = [&](const std::vector<std::size_t>& flips) {
    BinaryVector e(cols);
    std::vector<std::uint8_t> piv = base;
    for (std::size_t f : flips) {
      e.set(order[f], true);
      for (std::size_t r = 0; r < rank; ++r)
        if (rr.reduced.get(r, f)) piv[r] ^= 1;
    }
    for (std::size_t r = 0; r < rank; ++r)
      if (piv[r]) e.set(order[rr.pivots[r]], true);
    return e;
  };
  // Candidate cost: sum of LLRs over asserted bits; the most probable
  // pattern under independent priors minimizes this.
  auto score = [&](const BinaryVector& e) {
    double s = 0;
    for (std::size_t v = 0; v < cols; ++v)
      if (e.get(v)) s += reliability_llr[v];
    return s;
  };

  BinaryVector best = assemble({});
  double best_score = score(best);
  if (mode == OsdMode::CombinationSweep && !free_cols.empty()) {
    const std::size_t lambda = std::min(sweep_depth, free_cols.size());
    auto consider = [&](const std::vector<std::size_t>& flips) {
      BinaryVector e = assemble(flips);
      const double s = score(e);
      if (s < best_score) {  // strict: earlier candidates win ties
        best_score = s;
        best = std::move(e);
      }
    };
    for (std::size_t i = 0; i < lambda; ++i) consider({free_cols[i]});
    for (std::size_t i = 0; i < lambda; ++i)
      for (std::size_t j = i + 1; j < lambda; ++j)
        consider({free_cols[i], free_cols[j]});
  }

  if (gf2_matvec(h, best) != syndrome)
    throw ContractViolation("osd_postprocess: produced estimate misses the "
                            "syndrome (internal error)");
  return best;
}

}  // namespace gnd
