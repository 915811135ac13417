#include "hfg/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hfg {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}

namespace {

IntMat identity(int n) {
  IntMat m(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// row_dst -= q * row_src
void row_op(IntMat& M, int dst, int src, long long q) {
  for (size_t j = 0; j < M[dst].size(); ++j) M[dst][j] = checked_add(M[dst][j], -checked_mul(q, M[src][j]));
}

void col_op(IntMat& M, int dst, int src, long long q) {
  for (auto& row : M) row[dst] = checked_add(row[dst], -checked_mul(q, row[src]));
}

void swap_cols(IntMat& M, int a, int b) {
  for (auto& row : M) std::swap(row[a], row[b]);
}

}  // namespace

SmithForm smith_normal_form(const IntMat& A) {
  SmithForm s;
  s.rows = static_cast<int>(A.size());
  s.cols = s.rows ? static_cast<int>(A[0].size()) : 0;
  const int m = s.rows, n = s.cols;
  IntMat S = A;
  s.U = identity(m);
  s.V = identity(n);
  int t = 0;
  for (; t < std::min(m, n); ++t) {
    while (true) {
      // smallest nonzero entry in the trailing block becomes the pivot
      int pi = -1, pj = -1;
      long long best = 0;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j)
          if (S[i][j] != 0 && (pi < 0 || std::llabs(S[i][j]) < best)) {
            best = std::llabs(S[i][j]);
            pi = i;
            pj = j;
          }
      if (pi < 0) goto done;
      std::swap(S[t], S[pi]);
      std::swap(s.U[t], s.U[pi]);
      swap_cols(S, t, pj);
      swap_cols(s.V, t, pj);
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (S[i][t] == 0) continue;
        long long q = S[i][t] / S[t][t];
        row_op(S, i, t, q);
        row_op(s.U, i, t, q);
        if (S[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (S[t][j] == 0) continue;
        long long q = S[t][j] / S[t][t];
        col_op(S, j, t, q);
        col_op(s.V, j, t, q);
        if (S[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
    s.diag.push_back(S[t][t]);
  }
done:
  s.rank = t;
  return s;
}

IntVec mat_vec(const IntMat& A, const IntVec& x) {
  IntVec r(A.size(), 0);
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j)
      if (A[i][j] && x[j]) r[i] = checked_add(r[i], checked_mul(A[i][j], x[j]));
  return r;
}

std::optional<IntVec> solve_integer(const SmithForm& s, const IntVec& b) {
  IntVec ub = mat_vec(s.U, b);
  IntVec y(s.cols, 0);
  for (int i = 0; i < s.rows; ++i) {
    if (i < s.rank) {
      if (ub[i] % s.diag[i] != 0) return std::nullopt;
      y[i] = ub[i] / s.diag[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return mat_vec(s.V, y);
}

std::vector<IntVec> integer_kernel(const SmithForm& s) {
  std::vector<IntVec> out;
  for (int j = s.rank; j < s.cols; ++j) {
    IntVec v(s.cols);
    for (int i = 0; i < s.cols; ++i) v[i] = s.V[i][j];
    out.push_back(v);
  }
  return out;
}

EchelonBasis echelon_lattice(std::vector<IntVec> vecs, int dim) {
  EchelonBasis out;
  size_t cur = 0;
  for (int p = 0; p < dim && cur < vecs.size(); ++p) {
    while (true) {
      // gcd elimination among the remaining vectors at coordinate p
      size_t best = vecs.size();
      int nonzero = 0;
      for (size_t k = cur; k < vecs.size(); ++k)
        if (vecs[k][p] != 0) {
          ++nonzero;
          if (best == vecs.size() || std::llabs(vecs[k][p]) < std::llabs(vecs[best][p])) best = k;
        }
      if (nonzero == 0) break;
      if (nonzero == 1) {
        std::swap(vecs[cur], vecs[best]);
        if (vecs[cur][p] < 0)
          for (auto& x : vecs[cur]) x = -x;
        out.pivots.push_back(p);
        ++cur;
        break;
      }
      for (size_t k = cur; k < vecs.size(); ++k) {
        if (k == best || vecs[k][p] == 0) continue;
        long long q = vecs[k][p] / vecs[best][p];
        for (int i = 0; i < dim; ++i) vecs[k][i] = checked_add(vecs[k][i], -checked_mul(q, vecs[best][i]));
      }
    }
  }
  vecs.resize(cur);
  out.basis = std::move(vecs);
  return out;
}

namespace {

struct Row {
  std::vector<long long> a;
  long long b;
  bool operator<(const Row& o) const { return a != o.a ? a < o.a : b < o.b; }
  bool operator==(const Row& o) const { return a == o.a && b == o.b; }
};

void normalize(Row& r) {
  long long g = std::llabs(r.b);
  for (auto x : r.a) g = std::gcd(g, std::llabs(x));
  if (g > 1) {
    for (auto& x : r.a) x /= g;
    r.b /= g;
  }
}

}  // namespace

std::optional<std::vector<Rational>> fourier_motzkin(const IntMat& A, const IntVec& b, int n) {
  std::vector<std::vector<Row>> stages;
  std::vector<Row> sys;
  for (size_t i = 0; i < A.size(); ++i) sys.push_back({A[i], b[i]});
  for (int v = n - 1; v >= 0; --v) {
    stages.push_back(sys);
    std::vector<Row> pos, neg, next;
    for (auto& r : sys) {
      if (r.a[v] > 0)
        pos.push_back(r);
      else if (r.a[v] < 0)
        neg.push_back(r);
      else
        next.push_back(r);
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        long long cp = -q.a[v], cq = p.a[v];
        Row r{std::vector<long long>(n, 0), 0};
        for (int i = 0; i < n; ++i) r.a[i] = checked_add(checked_mul(cp, p.a[i]), checked_mul(cq, q.a[i]));
        r.b = checked_add(checked_mul(cp, p.b), checked_mul(cq, q.b));
        r.a[v] = 0;
        normalize(r);
        next.push_back(r);
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    sys = std::move(next);
  }
  for (const auto& r : sys)
    if (r.b > 0) return std::nullopt;
  // back substitution, one variable at a time
  std::vector<Rational> x(n, Rational(0));
  for (int v = 0; v < n; ++v) {
    const auto& st = stages[n - 1 - v];
    std::optional<Rational> lo, hi;
    for (const auto& r : st) {
      bool later = false;
      for (int i = v + 1; i < n; ++i)
        if (r.a[i] != 0) later = true;
      if (later || r.a[v] == 0) continue;
      Rational rest(r.b);
      for (int i = 0; i < v; ++i) rest -= Rational(r.a[i]) * x[i];
      Rational bound = rest / Rational(r.a[v]);
      if (r.a[v] > 0)
        lo = lo ? std::max(*lo, bound) : bound;
      else
        hi = hi ? std::min(*hi, bound) : bound;
    }
    if (lo)
      x[v] = *lo;
    else if (hi)
      x[v] = std::min(*hi, Rational(0));
    else
      x[v] = 0;
  }
  return x;
}

}  // namespace hfg
