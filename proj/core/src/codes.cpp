#include "gnd/codes.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace gnd {

StabilizerCode rotated_surface_code(std::size_t d) {
  if (d < 3 || d % 2 == 0)
    throw std::invalid_argument("rotated_surface_code: d must be odd and >= 3");
  const std::size_t n = d * d;
  StabilizerCode code;
  code.n = n;
  code.k = 1;
  code.name = "rsc" + std::to_string(d);
  code.claimed_distance = d;

  // Plaquette grid positions (pr, pc) in [0, d] x [0, d]. A plaquette touches
  // the up-to-four data qubits at (pr-1..pr, pc-1..pc). Interior plaquettes
  // alternate X/Z in a checkerboard; boundary rows keep only X plaquettes and
  // boundary columns only Z plaquettes, every other position.
  auto x_type = [](std::size_t pr, std::size_t pc) { return (pr + pc) % 2 == 0; };
  for (std::size_t pr = 0; pr <= d; ++pr) {
    for (std::size_t pc = 0; pc <= d; ++pc) {
      const bool top = pr == 0, bottom = pr == d;
      const bool left = pc == 0, right = pc == d;
      bool keep;
      if ((top || bottom) && (left || right))
        keep = false;  // corners touch a single qubit
      else if (top || bottom)
        keep = pc >= 1 && pc <= d - 1 && x_type(pr, pc);
      else if (left || right)
        keep = pr >= 1 && pr <= d - 1 && !x_type(pr, pc);
      else
        keep = true;
      if (!keep) continue;

      PauliOperator g(n);
      for (std::size_t dr = 0; dr < 2; ++dr) {
        for (std::size_t dc = 0; dc < 2; ++dc) {
          if (pr + dr == 0 || pc + dc == 0) continue;
          const std::size_t r = pr + dr - 1, c = pc + dc - 1;
          if (r >= d || c >= d) continue;
          const std::size_t q = r * d + c;
          if (x_type(pr, pc))
            g.x.set(q, true);
          else
            g.z.set(q, true);
        }
      }
      code.stabilizers.push_back(std::move(g));
    }
  }
  if (code.stabilizers.size() != n - 1)
    throw std::logic_error("rotated_surface_code: generator count off");
  return code;
}

namespace {

std::size_t leading_bit(const BinaryVector& v) {
  auto w = v.words();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w[i]));
  return v.size();
}

// Greedily keeps rows that increase the GF(2) rank, in input order; used to
// turn redundant CSS parity checks into an independent generator list.
std::vector<std::size_t> independent_rows(const BinaryMatrix& h) {
  std::vector<std::size_t> keep;
  std::map<std::size_t, BinaryVector> by_lead;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    BinaryVector v = h.row(r);
    while (!v.is_zero()) {
      auto it = by_lead.find(leading_bit(v));
      if (it == by_lead.end()) {
        by_lead.emplace(leading_bit(v), std::move(v));
        keep.push_back(r);
        break;
      }
      v ^= it->second;
    }
  }
  return keep;
}

}  // namespace

StabilizerCode css_code(const BinaryMatrix& hx, const BinaryMatrix& hz,
                        std::string name) {
  if (hx.cols() != hz.cols())
    throw std::invalid_argument("css_code: Hx and Hz column counts differ");
  const std::size_t n = hx.cols();
  // Commutation: every X row must overlap every Z row evenly.
  for (std::size_t i = 0; i < hx.rows(); ++i) {
    BinaryVector xi = hx.row(i);
    for (std::size_t j = 0; j < hz.rows(); ++j)
      if (xi.dot(hz.row(j)))
        throw std::invalid_argument("css_code: Hx row " + std::to_string(i) +
                                    " anticommutes with Hz row " +
                                    std::to_string(j));
  }
  StabilizerCode code;
  code.n = n;
  code.name = std::move(name);
  BinaryVector zeros(n);
  for (std::size_t r : independent_rows(hx))
    code.stabilizers.emplace_back(hx.row(r), zeros);
  for (std::size_t r : independent_rows(hz))
    code.stabilizers.emplace_back(zeros, hz.row(r));
  if (code.stabilizers.size() > n)
    throw std::invalid_argument("css_code: more independent checks than qubits");
  code.k = n - code.stabilizers.size();
  return code;
}

StabilizerCode bb_code(std::size_t l, std::size_t m,
                       const std::vector<BbTerm>& a_terms,
                       const std::vector<BbTerm>& b_terms) {
  if (l == 0 || m == 0)
    throw std::invalid_argument("bb_code: l and m must be positive");
  if (a_terms.empty() || b_terms.empty())
    throw std::invalid_argument("bb_code: empty polynomial");
  const std::size_t lm = l * m;

  // Block matrix of the polynomial: row (i,j) has a one at column
  // (i+a mod l, j+b mod m) for each term x^a y^b. Repeated terms cancel.
  auto poly_matrix = [&](const std::vector<BbTerm>& terms) {
    BinaryMatrix p(lm, lm);
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (const BbTerm& t : terms) {
          const std::size_t c = ((i + t.x_exp) % l) * m + (j + t.y_exp) % m;
          p.set(i * m + j, c, !p.get(i * m + j, c));
        }
    return p;
  };
  BinaryMatrix a = poly_matrix(a_terms);
  BinaryMatrix b = poly_matrix(b_terms);

  // Hx = [A | B], Hz = [B^T | A^T] over the 2*l*m data qubits.
  BinaryMatrix hx(lm, 2 * lm), hz(lm, 2 * lm);
  for (std::size_t r = 0; r < lm; ++r)
    for (std::size_t c = 0; c < lm; ++c) {
      if (a.get(r, c)) {
        hx.set(r, c, true);
        hz.set(c, lm + r, true);
      }
      if (b.get(r, c)) {
        hx.set(r, lm + c, true);
        hz.set(c, r, true);
      }
    }
  std::string name = "bb" + std::to_string(l) + "x" + std::to_string(m);
  return css_code(hx, hz, std::move(name));
}

StabilizerCode remove_stabilizers(const StabilizerCode& code,
                                  std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw std::invalid_argument("remove_stabilizers: duplicate index");
  if (!indices.empty() && indices.back() >= code.stabilizers.size())
    throw std::invalid_argument("remove_stabilizers: index " +
                                std::to_string(indices.back()) +
                                " out of range");
  StabilizerCode out = code;
  for (auto it = indices.rbegin(); it != indices.rend(); ++it)
    out.stabilizers.erase(out.stabilizers.begin() +
                          static_cast<std::ptrdiff_t>(*it));
  out.k = out.n - out.stabilizers.size();
  out.claimed_distance.reset();
  if (!indices.empty()) out.name += "-defect" + std::to_string(indices.size());
  return out;
}

bool is_css(const StabilizerCode& code) {
  for (const auto& g : code.stabilizers)
    if (!g.x.is_zero() && !g.z.is_zero()) return false;
  return true;
}

std::optional<std::size_t> brute_distance(const StabilizerCode& code,
                                          std::size_t max_weight,
                                          PauliFilter filter) {
  ElsFrame frame = build_els_frame(code);
  const std::size_t n = code.n;
  if (max_weight > n) max_weight = n;

  auto is_logical = [&frame](const PauliOperator& p) {
    return syndrome_of(frame, p).is_zero() && !sector_of(frame, p).is_zero();
  };

  for (std::size_t w = 1; w <= max_weight; ++w) {
    // All supports of size w, lexicographic.
    std::vector<std::size_t> support(w);
    for (std::size_t i = 0; i < w; ++i) support[i] = i;
    while (true) {
      if (filter == PauliFilter::Any) {
        // Base-3 odometer over letters {X, Y, Z} on the support.
        std::vector<int> letter(w, 0);
        while (true) {
          PauliOperator p(n);
          for (std::size_t i = 0; i < w; ++i) {
            if (letter[i] != 2) p.x.set(support[i], true);  // X or Y
            if (letter[i] != 0) p.z.set(support[i], true);  // Y or Z
          }
          if (is_logical(p)) return w;
          std::size_t pos = 0;
          while (pos < w && letter[pos] == 2) letter[pos++] = 0;
          if (pos == w) break;
          ++letter[pos];
        }
      } else {
        PauliOperator p(n);
        for (std::size_t i = 0; i < w; ++i) {
          if (filter == PauliFilter::XOnly)
            p.x.set(support[i], true);
          else
            p.z.set(support[i], true);
        }
        if (is_logical(p)) return w;
      }
      // next combination
      std::size_t i = w;
      while (i > 0 && support[i - 1] == n - w + (i - 1)) --i;
      if (i == 0) break;
      ++support[i - 1];
      for (std::size_t j = i; j < w; ++j) support[j] = support[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace gnd
