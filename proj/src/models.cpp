#include "hfg/models.hpp"

#include <algorithm>

namespace hfg {

std::map<std::string, std::string> basepoint_table(const ColoredComplex& c) {
  if (!c.colors.empty()) return c.colors;
  std::map<std::string, std::string> t;
  for (const auto& v : c.ring->names()) t[v] = v;
  return t;
}

Stabilized free_stabilize(ComplexPtr c, const std::string& w, const std::string& partner, const std::string& color) {
  auto table = basepoint_table(*c);
  if (table.count(w)) throw InputError("basepoint '" + w + "' is already present");
  auto pit = table.find(partner);
  if (pit == table.end()) throw InputError("unknown partner basepoint '" + partner + "'");
  const std::string col = color.empty() ? w : color;

  ColoredComplex base = extend_ring(*c, {col});
  base.d = lift_to_ring(c->d, *c->ring, *base.ring);
  base.colors = table;

  const Ring& R = *base.ring;
  Poly term = Poly::var(R.require(col)) + Poly::var(R.require(pit->second));
  term = term.truncated(base.trunc);

  ColoredComplex s;
  s.ring = base.ring;
  s.trunc = base.trunc;
  s.colors = table;
  s.colors[w] = col;
  const int n = base.size();
  for (int b = 0; b < n; ++b) {
    s.gens.push_back(base.gens[b] + "|" + w + "+");
    s.gens.push_back(base.gens[b] + "|" + w + "-");
    if (!base.spinc.empty()) {
      s.spinc.push_back(base.spinc[b]);
      s.spinc.push_back(base.spinc[b]);
    }
  }
  s.d = PolyMatrix(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      s.d.at(2 * i, 2 * j) = base.d.at(i, j);
      s.d.at(2 * i + 1, 2 * j + 1) = base.d.at(i, j);
    }
  for (int b = 0; b < n; ++b) s.d.at(2 * b, 2 * b + 1) += term;

  Stabilized out;
  out.base = make_complex(std::move(base));
  out.stab = make_complex(std::move(s));
  out.rec = {w, partner, 0};
  return out;
}

ModuleMap s_plus(const Stabilized& s) {
  const int n = s.base->size();
  PolyMatrix m(2 * n, n);
  for (int b = 0; b < n; ++b) m.at(2 * b, b) = Poly::one();
  return make_map(s.base, s.stab, m);
}

ModuleMap s_minus(const Stabilized& s) {
  const int n = s.base->size();
  PolyMatrix m(n, 2 * n);
  for (int b = 0; b < n; ++b) m.at(b, 2 * b + 1) = Poly::one();
  return make_map(s.stab, s.base, m);
}

ModuleMap model_edge(const Stabilized& s) {
  const int n = s.base->size();
  const auto& table = s.stab->colors;
  Poly up = Poly::var(s.stab->ring->require(table.at(s.rec.partner))).truncated(s.stab->trunc);
  PolyMatrix m(2 * n, 2 * n);
  for (int b = 0; b < n; ++b) {
    m.at(2 * b + 1, 2 * b) = Poly::one();
    m.at(2 * b, 2 * b + 1) = up;
  }
  return make_map(s.stab, s.stab, m);
}

ModuleMap swap_factors(ComplexPtr first_w1, ComplexPtr first_w2) {
  const int n = first_w1->size();
  if (n != first_w2->size() || n % 4 != 0) throw std::invalid_argument("swap_factors needs two double stabilizations");
  PolyMatrix m(n, n);
  for (int b = 0; b < n / 4; ++b)
    for (int s1 = 0; s1 < 2; ++s1)
      for (int s2 = 0; s2 < 2; ++s2) m.at(4 * b + 2 * s2 + s1, 4 * b + 2 * s1 + s2) = Poly::one();
  return make_map(first_w1, first_w2, m);
}

namespace {

// c0 with variable z renamed to target, over the ring `names`.
ColoredComplex split_copy(const ColoredComplex& c0, const std::string& z, const std::string& target,
                          const RingPtr& ring) {
  ColoredComplex r = recolor(c0, {{z, target}});
  r.d = lift_to_ring(r.d, *r.ring, *ring);
  r.ring = ring;
  r.colors.clear();
  for (const auto& [bp, col] : basepoint_table(c0)) {
    if (col == z) continue;
    r.colors[bp] = col;
  }
  r.colors[target] = target;
  return r;
}

}  // namespace

Transition model_transition(ComplexPtr c0, const std::string& z, const std::string& w, const std::string& wp,
                            const Truncation& out) {
  // L needs d one degree past the truncation, so the base must be exact
  if (c0->trunc.active()) throw InputError("model_transition needs an untruncated base complex");
  if (!d_squared_check(*c0)) throw InputError("base complex fails d^2 = 0");
  const int zi = c0->ring->require(z);
  std::vector<std::string> names;
  for (const auto& v : c0->ring->names())
    if (v != z) names.push_back(v);
  for (const auto& v : {w, wp}) {
    if (std::find(names.begin(), names.end(), v) != names.end())
      throw InputError("basepoint '" + v + "' is already present");
    names.push_back(v);
  }
  RingPtr ring = make_ring(names);
  auto to_wp = make_complex(with_truncation(split_copy(*c0, z, wp, ring), out));
  auto to_w = make_complex(with_truncation(split_copy(*c0, z, w, ring), out));
  auto s1 = free_stabilize(to_wp, w, wp);
  auto s2 = free_stabilize(to_w, wp, w);

  Transition t;
  t.h1 = s1.stab;
  t.h1_5 = make_complex(*s1.stab);
  t.h2 = s2.stab;

  // d^n as matrices over the common ring
  const Truncation& tr = out;
  const int n = c0->size();
  const int top = c0->d.degree_in(zi);
  std::vector<int> target(c0->ring->size());
  for (int i = 0; i < c0->ring->size(); ++i) target[i] = i == zi ? ring->require(w) : ring->require(c0->ring->name(i));
  const int iw = ring->require(w), iwp = ring->require(wp);
  PolyMatrix L(n, n);
  for (int k = 1; k <= top; ++k) {
    // the z-coefficient has no z left, so the substitution is only a reindexing
    PolyMatrix dk = c0->d.coefficient(zi, k).substitute(target);
    Poly weight;
    for (int i = 0; i < k; ++i) weight += Poly::var(iw, i) * Poly::var(iwp, k - 1 - i);
    L += dk.times(weight, tr);
  }
  L = L.truncated(tr);
  t.lower_left = L;

  PolyMatrix phi(2 * n, 2 * n);
  for (int b = 0; b < n; ++b) {
    phi.at(2 * b, 2 * b) = Poly::one();
    phi.at(2 * b + 1, 2 * b + 1) = Poly::one();
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) phi.at(2 * i + 1, 2 * j) = L.at(i, j);
  t.phi = make_map(t.h1, t.h2, phi);
  return t;
}

namespace {

Poly random_poly(std::mt19937_64& rng, int nvars, int max_degree, int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> var(0, nvars - 1);
  std::vector<Monomial> ms;
  int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    Monomial m;
    int d = deg(rng);
    for (int i = 0; i < d; ++i) ++m.e[var(rng)];
    ms.push_back(m);
  }
  return Poly::from_terms(std::move(ms));
}

}  // namespace

ComplexPtr random_complex(std::mt19937_64& rng, RingPtr ring, const Truncation& t, const RandomComplexOptions& opt) {
  if (ring->size() == 0) throw InputError("random_complex needs at least one variable");
  const int n = 2 * opt.pairs + opt.free_gens;
  PolyMatrix D(n, n);
  for (int k = 0; k < opt.pairs; ++k) {
    Poly T;
    while (T.is_zero()) T = random_poly(rng, ring->size(), opt.max_degree, 2);
    D.at(2 * k + 1, 2 * k) = T;
  }
  // shuffle the positions so pairs are not adjacent in the final basis
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  PolyMatrix P(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) P.at(perm[i], perm[j]) = D.at(i, j);

  std::bernoulli_distribution keep(opt.density);
  PolyMatrix N(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (keep(rng)) N.at(i, j) = random_poly(rng, ring->size(), opt.max_degree, 2);
  PolyMatrix Q = PolyMatrix::identity(n) + N;
  PolyMatrix Qinv = PolyMatrix::identity(n), Nk = PolyMatrix::identity(n);
  // N is nilpotent, so the inverse is exact; d^2 = 0 then holds before the
  // truncation is applied
  for (int k = 1; k < n; ++k) {
    Nk = multiply(Nk, N, Truncation::none());
    Qinv += Nk;
  }
  ColoredComplex c;
  c.ring = ring;
  c.trunc = t;
  for (int i = 0; i < n; ++i) c.gens.push_back("g" + std::to_string(i));
  c.d = multiply(multiply(Q, P, Truncation::none()), Qinv, Truncation::none()).truncated(t);
  return make_complex(std::move(c));
}

}  // namespace hfg
