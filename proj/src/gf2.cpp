#include "hfg/gf2.hpp"

#include <algorithm>
#include <stdexcept>

namespace hfg {

void BitMatrix::swap_rows(int a, int b) {
  if (a == b) return;
  std::swap_ranges(row(a), row(a) + wpr_, row(b));
}

void BitMatrix::xor_row(int dst, int src) {
  uint64_t* d = row(dst);
  const uint64_t* s = row(src);
  for (int w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

namespace {

// Gauss-Jordan elimination. Returns pivot columns in order. If `full`, rows
// above the pivot are cleared too (reduced echelon form).
template <bool Parallel>
std::vector<int> eliminate(BitMatrix& m, int ncols, bool full) {
  std::vector<int> pivots;
  int r = 0;
  const int nrows = m.rows();
  for (int c = 0; c < ncols && r < nrows; ++c) {
    int p = -1;
    for (int i = r; i < nrows; ++i)
      if (m.get(i, c)) {
        p = i;
        break;
      }
    if (p < 0) continue;
    m.swap_rows(r, p);
    const int lo = full ? 0 : r + 1;
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static) if (nrows - lo >= 256)
      for (int i = lo; i < nrows; ++i)
        if (i != r && m.get(i, c)) m.xor_row(i, r);
    } else {
      for (int i = lo; i < nrows; ++i)
        if (i != r && m.get(i, c)) m.xor_row(i, r);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <bool Parallel>
std::optional<std::vector<uint8_t>> solve_impl(const BitMatrix& a, const std::vector<uint8_t>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("rhs length mismatch");
  const int n = a.cols();
  BitMatrix aug(a.rows(), n + 1);
  for (int i = 0; i < a.rows(); ++i) {
    std::copy(a.row(i), a.row(i) + a.words_per_row(), aug.row(i));
    if (b[i]) aug.set(i, n, true);
  }
  auto piv = eliminate<Parallel>(aug, n, true);
  for (int i = static_cast<int>(piv.size()); i < aug.rows(); ++i)
    if (aug.get(i, n)) return std::nullopt;
  std::vector<uint8_t> x(n, 0);
  for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug.get(static_cast<int>(k), n);
  return x;
}

}  // namespace

namespace serial {
int rank(BitMatrix m) { return static_cast<int>(eliminate<false>(m, m.cols(), false).size()); }
std::optional<std::vector<uint8_t>> solve(const BitMatrix& a, const std::vector<uint8_t>& b) {
  return solve_impl<false>(a, b);
}
}  // namespace serial

namespace omp {
int rank(BitMatrix m) { return static_cast<int>(eliminate<true>(m, m.cols(), false).size()); }
std::optional<std::vector<uint8_t>> solve(const BitMatrix& a, const std::vector<uint8_t>& b) {
  return solve_impl<true>(a, b);
}
}  // namespace omp

}  // namespace hfg
