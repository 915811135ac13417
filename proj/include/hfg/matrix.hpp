#pragma once

#include <vector>

#include "hfg/poly.hpp"

namespace hfg {

// Dense matrix of polynomials. Entry (i, j) is the coefficient of target
// generator i in the image of source generator j.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}
  static PolyMatrix identity(int n);
  static PolyMatrix scalar(int n, const Poly& p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Poly& at(int i, int j) { return data_[size_t(i) * cols_ + j]; }
  const Poly& at(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

  bool is_zero() const;
  bool operator==(const PolyMatrix& o) const;
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }
  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix& operator+=(const PolyMatrix& o);

  PolyMatrix truncated(const Truncation& t) const;
  PolyMatrix map_entries(Poly (*f)(const Poly&)) const;
  PolyMatrix derivative(int var) const;
  PolyMatrix substitute(const std::vector<int>& target) const;
  PolyMatrix at_zero() const;
  PolyMatrix coefficient(int var, int n) const;
  int degree_in(int var) const;
  PolyMatrix times(const Poly& p, const Truncation& t) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Poly> data_;
};

// a * b with truncation applied to every product. The OpenMP kernel and the
// serial reference must agree exactly.
namespace serial {
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, const Truncation& t);
}
namespace omp {
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, const Truncation& t);
}

inline PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, const Truncation& t) {
  return omp::multiply(a, b, t);
}

}  // namespace hfg
