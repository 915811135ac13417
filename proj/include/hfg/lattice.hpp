#pragma once

#include <boost/rational.hpp>
#include <optional>
#include <vector>

namespace hfg {

using IntMat = std::vector<std::vector<long long>>;  // row-major
using IntVec = std::vector<long long>;
using Rational = boost::rational<long long>;

long long checked_add(long long a, long long b);
long long checked_mul(long long a, long long b);

// U * A * V = diag(s_0, ..., s_{r-1}, 0, ...), U and V unimodular.
struct SmithForm {
  int rank = 0;
  IntMat U, V;
  IntVec diag;  // nonzero invariant factors, length rank
  int rows = 0, cols = 0;
};

SmithForm smith_normal_form(const IntMat& A);

// Integer solution of A x = b using a precomputed Smith form.
std::optional<IntVec> solve_integer(const SmithForm& s, const IntVec& b);
// Columns of the returned matrix span the integer kernel of A (as vectors).
std::vector<IntVec> integer_kernel(const SmithForm& s);

// Column echelon form of a lattice basis: pivots[k] is the first nonzero
// coordinate of basis[k], strictly increasing, and basis[j] vanishes on all
// coordinates before pivots[j]. Spans the same lattice.
struct EchelonBasis {
  std::vector<IntVec> basis;
  std::vector<int> pivots;
};
EchelonBasis echelon_lattice(std::vector<IntVec> vectors, int dim);

IntVec mat_vec(const IntMat& A, const IntVec& x);

// Fourier-Motzkin: feasibility of { x in Q^n : A x >= b }. On success returns
// a rational point.
std::optional<std::vector<Rational>> fourier_motzkin(const IntMat& A, const IntVec& b, int n);

}  // namespace hfg
