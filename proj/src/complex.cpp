#include "hfg/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hfg {

void ColoredComplex::validate() const {
  if (!ring) throw std::invalid_argument("complex without ring");
  if (d.rows() != size() || d.cols() != size()) throw std::invalid_argument("differential shape mismatch");
  if (!spinc.empty()) {
    if (spinc.size() != gens.size()) throw std::invalid_argument("spinc tags do not cover generators");
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (!d.at(i, j).is_zero() && spinc[i] != spinc[j])
          throw std::invalid_argument("differential mixes spinc classes");
  }
  for (const auto& [w, col] : colors) ring->require(col);
}

ComplexPtr make_complex(ColoredComplex c) {
  c.validate();
  return std::make_shared<const ColoredComplex>(std::move(c));
}

bool same_module(const ColoredComplex& a, const ColoredComplex& b) {
  if (&a == &b) return true;
  return *a.ring == *b.ring && a.trunc == b.trunc && a.gens == b.gens;
}

ModuleMap make_map(ComplexPtr src, ComplexPtr tgt, PolyMatrix m) {
  if (m.rows() != tgt->size() || m.cols() != src->size()) throw std::invalid_argument("map shape mismatch");
  if (*src->ring != *tgt->ring) throw std::invalid_argument("mismatched color sets");
  PolyMatrix mt = m.truncated(tgt->trunc);
  return {std::move(src), std::move(tgt), std::move(mt)};
}

ModuleMap identity_map(ComplexPtr c) { return make_map(c, c, PolyMatrix::identity(c->size())); }

ModuleMap scalar_map(ComplexPtr c, const Poly& p) { return make_map(c, c, PolyMatrix::scalar(c->size(), p)); }

ModuleMap zero_map(ComplexPtr src, ComplexPtr tgt) {
  int r = tgt->size(), k = src->size();
  return make_map(std::move(src), std::move(tgt), PolyMatrix(r, k));
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (*f.tgt->ring != *g.src->ring) throw std::invalid_argument("mismatched color sets");
  if (!same_module(*f.tgt, *g.src)) throw std::invalid_argument("composition of incompatible maps");
  return {f.src, g.tgt, multiply(g.m, f.m, g.tgt->trunc)};
}

ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) {
  if (!same_module(*a.src, *b.src) || !same_module(*a.tgt, *b.tgt))
    throw std::invalid_argument("sum of maps with different source/target");
  return {a.src, a.tgt, a.m + b.m};
}

ModuleMap compose_all(const std::vector<ModuleMap>& maps) {
  if (maps.empty()) throw std::invalid_argument("empty composition");
  ModuleMap acc = maps.front();
  for (size_t i = 1; i < maps.size(); ++i) acc = compose(maps[i], acc);
  return acc;
}

bool operator==(const ModuleMap& a, const ModuleMap& b) {
  return same_module(*a.src, *b.src) && same_module(*a.tgt, *b.tgt) && a.m == b.m;
}

bool d_squared_check(const ColoredComplex& c) { return multiply(c.d, c.d, c.trunc).is_zero(); }

PolyMatrix chain_defect(const ModuleMap& f) {
  const Truncation& t = f.tgt->trunc;
  return multiply(f.tgt->d, f.m, t) + multiply(f.m, f.src->d, t);
}

bool is_chain_map(const ModuleMap& f) { return chain_defect(f).is_zero(); }

int uncolored_variable(const ColoredComplex& c, const std::string& w) {
  if (c.colors.empty()) return c.ring->require(w);
  auto it = c.colors.find(w);
  if (it == c.colors.end()) throw InputError("unknown basepoint '" + w + "'");
  for (const auto& [other, col] : c.colors)
    if (other != w && col == it->second)
      throw InputError("basepoint '" + w + "' shares color '" + col + "' with '" + other + "'");
  return c.ring->require(it->second);
}

ModuleMap formal_phi(ComplexPtr c, const std::string& w) {
  int v = uncolored_variable(*c, w);
  return make_map(c, c, c->d.derivative(v));
}

ModuleMap phi_square_witness(ComplexPtr c, const std::string& w) {
  int v = uncolored_variable(*c, w);
  PolyMatrix h(c->size(), c->size());
  for (int i = 0; i < c->size(); ++i)
    for (int j = 0; j < c->size(); ++j) {
      std::vector<Monomial> ms;
      for (const auto& m : c->d.at(i, j).terms()) {
        int n = m.e[v];
        // C(n,2) is odd exactly when n = 2,3 mod 4
        if (n >= 2 && (n % 4 == 2 || n % 4 == 3)) {
          Monomial r = m;
          r.e[v] = static_cast<uint8_t>(n - 2);
          ms.push_back(r);
        }
      }
      h.at(i, j) = Poly::from_terms(std::move(ms));
    }
  return make_map(c, c, h);
}

bool phi_is_dD_plus_Dd(const ColoredComplex& c, const std::string& w, int max_degree) {
  int v = uncolored_variable(c, w);
  const int n = c.size();
  PolyMatrix phi = c.d.derivative(v);
  auto basis = monomial_basis(c.ring->size(), Truncation::total(max_degree));
  for (int j = 0; j < n; ++j)
    for (const auto& mono : basis) {
      Poly m = Poly::monomial(mono);
      Poly dm = m.derivative(v);
      for (int i = 0; i < n; ++i) {
        // d(D(m x_j)) + D(d(m x_j)) against phi(m x_j), coefficient of x_i
        Poly lhs = c.d.at(i, j) * dm;
        lhs += (c.d.at(i, j) * m).derivative(v);
        if (lhs != phi.at(i, j) * m) return false;
      }
    }
  return true;
}

ColoredComplex recolor(const ColoredComplex& c, const std::map<std::string, std::string>& var_map) {
  std::vector<std::string> names;
  std::vector<int> target;
  for (const auto& old : c.ring->names()) {
    auto it = var_map.find(old);
    std::string nn = it == var_map.end() ? old : it->second;
    auto pos = std::find(names.begin(), names.end(), nn);
    if (pos == names.end()) {
      names.push_back(nn);
      target.push_back(static_cast<int>(names.size()) - 1);
    } else {
      target.push_back(static_cast<int>(pos - names.begin()));
    }
  }
  ColoredComplex r = c;
  r.ring = make_ring(names);
  r.d = c.d.substitute(target).truncated(c.trunc);
  for (auto& [w, col] : r.colors) {
    auto it = var_map.find(col);
    if (it != var_map.end()) col = it->second;
  }
  return r;
}

ColoredComplex with_truncation(const ColoredComplex& c, const Truncation& t) {
  ColoredComplex r = c;
  r.trunc = t;
  r.d = c.d.truncated(t);
  return r;
}

ColoredComplex extend_ring(const ColoredComplex& c, const std::vector<std::string>& extra_vars) {
  std::vector<std::string> names = c.ring->names();
  for (const auto& v : extra_vars)
    if (std::find(names.begin(), names.end(), v) == names.end()) names.push_back(v);
  ColoredComplex r = c;
  r.ring = make_ring(names);
  return r;
}

PolyMatrix lift_to_ring(const PolyMatrix& m, const Ring& from, const Ring& to) {
  std::vector<int> target(from.size());
  for (int i = 0; i < from.size(); ++i) target[i] = to.require(from.name(i));
  return m.substitute(target);
}

namespace {

int monomial_index(const std::vector<Monomial>& basis, const Monomial& m) {
  auto it = std::lower_bound(basis.begin(), basis.end(), m);
  if (it == basis.end() || *it != m) return -1;
  return static_cast<int>(it - basis.begin());
}

void check_homotopy_inputs(const ModuleMap& f, const ModuleMap& g) {
  if (!same_module(*f.src, *g.src) || !same_module(*f.tgt, *g.tgt))
    throw std::invalid_argument("homotopy between maps with different source/target");
  if (!f.src->trunc.active() || !f.tgt->trunc.active())
    throw std::invalid_argument("homotopy search needs a truncation");
  if (f.src->trunc != f.tgt->trunc) throw std::invalid_argument("source and target truncations differ");
}

}  // namespace

BitMatrix underlying_matrix(const ColoredComplex& src, const ColoredComplex& tgt, const PolyMatrix& m) {
  auto basis = monomial_basis(src.ring->size(), src.trunc);
  const int M = static_cast<int>(basis.size());
  BitMatrix out(tgt.size() * M, src.size() * M);
  for (int j = 0; j < src.size(); ++j)
    for (int a = 0; a < M; ++a)
      for (int i = 0; i < tgt.size(); ++i) {
        const Poly& e = m.at(i, j);
        if (e.is_zero()) continue;
        for (const auto& t : e.terms()) {
          Monomial prod = t * basis[a];
          if (!tgt.trunc.keeps(prod)) continue;
          out.flip(i * M + monomial_index(basis, prod), j * M + a);
        }
      }
  return out;
}

HomotopyResult find_homotopy(const ModuleMap& f, const ModuleMap& g, HomotopyMode mode) {
  check_homotopy_inputs(f, g);
  const ColoredComplex& S = *f.src;
  const ColoredComplex& T = *f.tgt;
  const Truncation& tr = T.trunc;
  PolyMatrix rhs = (f.m + g.m).truncated(tr);
  HomotopyResult res;
  res.mode = mode;
  auto basis = monomial_basis(T.ring->size(), tr);
  const int M = static_cast<int>(basis.size());
  const int gs = S.size(), gt = T.size();

  if (mode == HomotopyMode::Equivariant) {
    // unknown (k, l, m): coefficient of monomial m in H(k, l), k in T, l in S
    const int nu = gt * gs * M, ne = gt * gs * M;
    res.unknowns = nu;
    res.equations = ne;
    BitMatrix A(ne, nu);
    std::vector<uint8_t> b(ne, 0);
    for (int i = 0; i < gt; ++i)
      for (int j = 0; j < gs; ++j)
        for (const auto& t : rhs.at(i, j).terms()) b[(i * gs + j) * M + monomial_index(basis, t)] ^= 1;
    for (int k = 0; k < gt; ++k)
      for (int l = 0; l < gs; ++l)
        for (int a = 0; a < M; ++a) {
          int u = (k * gs + l) * M + a;
          // contributes d_T(i,k) * H(k,l) to entry (i,l)
          for (int i = 0; i < gt; ++i)
            for (const auto& t : T.d.at(i, k).terms()) {
              Monomial p = t * basis[a];
              if (tr.keeps(p)) A.flip((i * gs + l) * M + monomial_index(basis, p), u);
            }
          // contributes H(k,l) * d_S(l,j) to entry (k,j)
          for (int j = 0; j < gs; ++j)
            for (const auto& t : S.d.at(l, j).terms()) {
              Monomial p = t * basis[a];
              if (tr.keeps(p)) A.flip((k * gs + j) * M + monomial_index(basis, p), u);
            }
        }
    auto sol = gf2_solve(A, b);
    if (!sol) return res;
    PolyMatrix H(gt, gs);
    for (int k = 0; k < gt; ++k)
      for (int l = 0; l < gs; ++l) {
        std::vector<Monomial> ms;
        for (int a = 0; a < M; ++a)
          if ((*sol)[(k * gs + l) * M + a]) ms.push_back(basis[a]);
        H.at(k, l) = Poly::from_terms(std::move(ms));
      }
    res.found = true;
    res.equivariant = H;
    return res;
  }

  // linear mode: H is any F2-linear map between the truncated spaces
  BitMatrix Ds = underlying_matrix(S, S, S.d);
  BitMatrix Dt = underlying_matrix(T, T, T.d);
  BitMatrix F = underlying_matrix(S, T, rhs);
  const int Vs = gs * M, Vt = gt * M;
  const long long nu = 1LL * Vt * Vs;
  if (nu > 40000) throw std::invalid_argument("linear homotopy search too large (" + std::to_string(nu) + " unknowns)");
  res.unknowns = res.equations = static_cast<int>(nu);
  std::vector<std::vector<int>> dt_row(Vt), ds_col(Vs);
  for (int a = 0; a < Vt; ++a)
    for (int c = 0; c < Vt; ++c)
      if (Dt.get(a, c)) dt_row[a].push_back(c);
  for (int c = 0; c < Vs; ++c)
    for (int b = 0; b < Vs; ++b)
      if (Ds.get(c, b)) ds_col[b].push_back(c);
  BitMatrix A(static_cast<int>(nu), static_cast<int>(nu));
  std::vector<uint8_t> rhsv(nu, 0);
  for (int a = 0; a < Vt; ++a)
    for (int b = 0; b < Vs; ++b) {
      int row = a * Vs + b;
      rhsv[row] = F.get(a, b);
      for (int c : dt_row[a]) A.flip(row, c * Vs + b);
      for (int c : ds_col[b]) A.flip(row, a * Vs + c);
    }
  auto sol = gf2_solve(A, rhsv);
  if (!sol) return res;
  BitMatrix H(Vt, Vs);
  for (int a = 0; a < Vt; ++a)
    for (int b = 0; b < Vs; ++b)
      if ((*sol)[a * Vs + b]) H.set(a, b, true);
  res.found = true;
  res.linear = H;
  return res;
}

std::map<std::string, int> truncated_homology(const ColoredComplex& c, HomologyFlavor flavor) {
  std::map<std::string, std::vector<int>> classes;
  for (int i = 0; i < c.size(); ++i) classes[c.spinc.empty() ? "*" : c.spinc[i]].push_back(i);
  std::map<std::string, int> out;
  for (const auto& [tag, idx] : classes) {
    const int n = static_cast<int>(idx.size());
    if (flavor == HomologyFlavor::Hat) {
      BitMatrix m(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (c.d.at(idx[a], idx[b]).has_constant()) m.set(a, b, true);
      out[tag] = n - 2 * gf2_rank(m);
    } else {
      if (!c.trunc.active()) throw std::invalid_argument("minus_truncated homology needs a truncation");
      ColoredComplex sub;
      sub.ring = c.ring;
      sub.trunc = c.trunc;
      sub.d = PolyMatrix(n, n);
      for (int a = 0; a < n; ++a) {
        sub.gens.push_back(c.gens[idx[a]]);
        for (int b = 0; b < n; ++b) sub.d.at(a, b) = c.d.at(idx[a], idx[b]);
      }
      BitMatrix m = underlying_matrix(sub, sub, sub.d);
      out[tag] = m.rows() - 2 * gf2_rank(m);
    }
  }
  return out;
}

std::string format_matrix(const ColoredComplex& src, const ColoredComplex& tgt, const PolyMatrix& m) {
  std::ostringstream os;
  for (int j = 0; j < src.size(); ++j) {
    os << src.gens[j] << " ->";
    bool any = false;
    for (int i = 0; i < tgt.size(); ++i) {
      const Poly& p = m.at(i, j);
      if (p.is_zero()) continue;
      os << (any ? " + " : " ");
      any = true;
      if (p.is_one())
        os << tgt.gens[i];
      else if (p.terms().size() == 1)
        os << p.to_string(*tgt.ring) << "*" << tgt.gens[i];
      else
        os << "(" << p.to_string(*tgt.ring) << ")*" << tgt.gens[i];
    }
    if (!any) os << " 0";
    os << "\n";
  }
  return os.str();
}

}  // namespace hfg
