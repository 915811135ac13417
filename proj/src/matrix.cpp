#include "hfg/matrix.hpp"

#include <stdexcept>

namespace hfg {

PolyMatrix PolyMatrix::identity(int n) { return scalar(n, Poly::one()); }

PolyMatrix PolyMatrix::scalar(int n, const Poly& p) {
  PolyMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = p;
  return m;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  PolyMatrix r = *this;
  r += o;
  return r;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in sum");
  for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

PolyMatrix PolyMatrix::truncated(const Truncation& t) const {
  if (!t.active()) return *this;
  PolyMatrix r = *this;
  for (auto& p : r.data_) p = p.truncated(t);
  return r;
}

PolyMatrix PolyMatrix::map_entries(Poly (*f)(const Poly&)) const {
  PolyMatrix r(rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = f(data_[k]);
  return r;
}

PolyMatrix PolyMatrix::derivative(int var) const {
  PolyMatrix r(rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k].derivative(var);
  return r;
}

PolyMatrix PolyMatrix::substitute(const std::vector<int>& target) const {
  PolyMatrix r(rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k].substitute(target);
  return r;
}

PolyMatrix PolyMatrix::at_zero() const {
  PolyMatrix r(rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k].at_zero();
  return r;
}

PolyMatrix PolyMatrix::coefficient(int var, int n) const {
  PolyMatrix r(rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k].coefficient(var, n);
  return r;
}

int PolyMatrix::degree_in(int var) const {
  int d = -1;
  for (const auto& p : data_) d = std::max(d, p.degree_in(var));
  return d;
}

PolyMatrix PolyMatrix::times(const Poly& p, const Truncation& t) const {
  PolyMatrix r(rows_, cols_);
  for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k].mul(p, t);
  return r;
}

namespace {
void check_shapes(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in product");
}

// one output row; shared by both kernels so they differ only in scheduling
void multiply_row(const PolyMatrix& a, const PolyMatrix& b, const Truncation& t, int i, PolyMatrix& out) {
  for (int k = 0; k < a.cols(); ++k) {
    const Poly& aik = a.at(i, k);
    if (aik.is_zero()) continue;
    for (int j = 0; j < b.cols(); ++j) {
      const Poly& bkj = b.at(k, j);
      if (bkj.is_zero()) continue;
      out.at(i, j) += aik.mul(bkj, t);
    }
  }
}
}  // namespace

namespace serial {
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, const Truncation& t) {
  check_shapes(a, b);
  PolyMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) multiply_row(a, b, t, i, out);
  return out;
}
}  // namespace serial

namespace omp {
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, const Truncation& t) {
  check_shapes(a, b);
  PolyMatrix out(a.rows(), b.cols());
  const int n = a.rows();
  // small products are not worth the fork
#pragma omp parallel for schedule(dynamic, 4) if (n >= 32)
  for (int i = 0; i < n; ++i) multiply_row(a, b, t, i, out);
  return out;
}
}  // namespace omp

}  // namespace hfg
