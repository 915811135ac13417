#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace hfg {

// Dense matrix over F2, rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols) : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(size_t(rows) * wpr_) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int words_per_row() const { return wpr_; }
  bool get(int i, int j) const { return (row(i)[j >> 6] >> (j & 63)) & 1u; }
  void set(int i, int j, bool v) {
    uint64_t bit = uint64_t(1) << (j & 63);
    if (v)
      row(i)[j >> 6] |= bit;
    else
      row(i)[j >> 6] &= ~bit;
  }
  void flip(int i, int j) { row(i)[j >> 6] ^= uint64_t(1) << (j & 63); }
  uint64_t* row(int i) { return bits_.data() + size_t(i) * wpr_; }
  const uint64_t* row(int i) const { return bits_.data() + size_t(i) * wpr_; }
  void swap_rows(int a, int b);
  void xor_row(int dst, int src);

 private:
  int rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<uint64_t> bits_;
};

// Solutions of A x = b, free variables set to zero. Both kernels perform the
// same pivot sequence, so results are bit-identical.
namespace serial {
int rank(BitMatrix m);
std::optional<std::vector<uint8_t>> solve(const BitMatrix& a, const std::vector<uint8_t>& b);
}  // namespace serial
namespace omp {
int rank(BitMatrix m);
std::optional<std::vector<uint8_t>> solve(const BitMatrix& a, const std::vector<uint8_t>& b);
}  // namespace omp

inline int gf2_rank(BitMatrix m) { return omp::rank(std::move(m)); }
inline std::optional<std::vector<uint8_t>> gf2_solve(const BitMatrix& a, const std::vector<uint8_t>& b) {
  return omp::solve(a, b);
}

}  // namespace hfg
