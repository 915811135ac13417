#include "hfg/disk.hpp"

#include <algorithm>

namespace hfg {

namespace {

struct Enumerator {
  const DomainSpace& s;
  std::vector<int> ub;
  std::vector<int> coef;  // 4 * mu per unit of each region
  long long target;
  int cap;
  int R, K;
  std::vector<std::vector<int>> ready;  // regions fixed once basis vector k is chosen
  std::vector<int> last;                // last basis index touching each region
  DomainList out;

  Enumerator(const DomainSpace& s_, std::vector<int> ub_, std::vector<int> coef_, int mu, int cap_)
      : s(s_), ub(std::move(ub_)), coef(std::move(coef_)), target(4LL * mu), cap(cap_) {
    R = static_cast<int>(s.particular.size());
    K = static_cast<int>(s.kernel.size());
    last.assign(R, -1);
    for (int k = 0; k < K; ++k)
      for (int r = s.pivots[k]; r < R; ++r) last[r] = k;
    ready.assign(K + 1, {});
    for (int r = 0; r < R; ++r) ready[last[r] + 1].push_back(r);
  }

  bool in_range(const Domain& cur, int r) const { return cur[r] >= 0 && cur[r] <= ub[r]; }

  // bounds on 4*mu over all completions of the current partial choice
  bool mu_feasible(const Domain& cur, int fixed_through) const {
    long long lo = 0, hi = 0;
    for (int r = 0; r < R; ++r) {
      if (last[r] <= fixed_through) {
        lo += coef[r] * cur[r];
        hi += coef[r] * cur[r];
      } else {
        long long a = 0, b = static_cast<long long>(coef[r]) * ub[r];
        lo += std::min(a, b);
        hi += std::max(a, b);
      }
    }
    return lo <= target && target <= hi;
  }

  void leaf(const Domain& cur) {
    long long m = 0;
    for (int r = 0; r < R; ++r) m += coef[r] * cur[r];
    if (m != target) return;
    for (int r = 0; r < R; ++r)
      if (cur[r] == cap && ub[r] == cap) out.inconclusive = true;
    out.domains.push_back(cur);
  }

  void rec(int k, Domain& cur) {
    if (k == K) {
      leaf(cur);
      return;
    }
    const auto& v = s.kernel[k];
    const int p = s.pivots[k];
    const long long piv = v[p];  // positive
    auto floor_div = [](long long a, long long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    long long cmin = -floor_div(cur[p], piv);  // ceil(-cur/piv)
    long long cmax = floor_div(ub[p] - cur[p], piv);
    for (long long c = cmin; c <= cmax; ++c) {
      Domain next = cur;
      if (c != 0)
        for (int r = p; r < R; ++r) next[r] += c * v[r];
      bool ok = true;
      for (int r : ready[k + 1])
        if (!in_range(next, r)) {
          ok = false;
          break;
        }
      if (!ok || !mu_feasible(next, k)) continue;
      rec(k + 1, next);
    }
  }
};

std::vector<int> upper_bounds(const HeegaardDiagram& h, const EnumOptions& opt) {
  std::vector<int> ub(h.nregions(), opt.cap);
  if (opt.hat)
    for (const auto& b : h.basepoints) ub[b.region] = 0;
  return ub;
}

}  // namespace

DomainList positive_domains(const HeegaardDiagram& h, const DomainSystem& sys, const Generator& x, const Generator& y,
                            int mu, const EnumOptions& opt) {
  if (opt.cap < 1) throw InputError("enumeration cap must be at least 1");
  auto s = domain_space(h, sys, x, y);
  if (!s) return {};
  Enumerator e(*s, upper_bounds(h, opt), maslov4_coefficients(h, x, y), mu, opt.cap);
  Domain cur = s->particular;
  for (int r : e.ready[0])
    if (!e.in_range(cur, r)) return {};
  if (!e.mu_feasible(cur, -1)) return {};
  e.rec(0, cur);
  std::sort(e.out.domains.begin(), e.out.domains.end());
  return e.out;
}

std::string to_string(DiskClass c) {
  switch (c) {
    case DiskClass::EmptyBigon:
      return "empty-bigon";
    case DiskClass::EmptyRectangle:
      return "empty-rectangle";
    case DiskClass::Other:
      return "other";
  }
  return "?";
}

DiskClass classify(const HeegaardDiagram& h, const Domain& D, const Generator& x, const Generator& y) {
  for (auto v : D)
    if (v < 0) throw InputError("classify needs a nonnegative domain");
  auto mu = maslov_index(h, D, x, y);
  if (!mu || *mu != 1) throw InputError("classify needs a domain of Maslov index 1");
  int moved = 0;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) ++moved;
  for (auto v : D)
    if (v > 1) return DiskClass::Other;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] != y[i]) continue;
    for (int r : h.crossings[x[i]].q)
      if (D[r] != 0) return DiskClass::Other;
  }
  int e4 = euler4(h, D);
  if (moved == 1 && e4 == 2) return DiskClass::EmptyBigon;
  if (moved == 2 && e4 == 0) return DiskClass::EmptyRectangle;
  return DiskClass::Other;
}

namespace {

std::vector<Disk> disks_from(const HeegaardDiagram& h, const DomainSystem& sys, const std::vector<Generator>& gens,
                             int src, const EnumOptions& opt, bool& inconclusive) {
  std::vector<Disk> out;
  for (int t = 0; t < static_cast<int>(gens.size()); ++t) {
    auto list = positive_domains(h, sys, gens[src], gens[t], 1, opt);
    if (list.inconclusive) inconclusive = true;
    for (auto& D : list.domains) {
      DiskClass c = classify(h, D, gens[src], gens[t]);
      out.push_back({src, t, std::move(D), c});
    }
  }
  return out;
}

}  // namespace

namespace serial {
DiskTable disk_table(const HeegaardDiagram& h, const EnumOptions& opt) {
  DiskTable t;
  t.gens = enumerate_generators(h);
  auto sys = domain_system(h);
  for (int s = 0; s < static_cast<int>(t.gens.size()); ++s) {
    bool inc = false;
    auto part = disks_from(h, sys, t.gens, s, opt, inc);
    t.inconclusive = t.inconclusive || inc;
    t.disks.insert(t.disks.end(), part.begin(), part.end());
  }
  return t;
}
}  // namespace serial

namespace omp {
DiskTable disk_table(const HeegaardDiagram& h, const EnumOptions& opt) {
  DiskTable t;
  t.gens = enumerate_generators(h);
  auto sys = domain_system(h);
  const int n = static_cast<int>(t.gens.size());
  std::vector<std::vector<Disk>> parts(n);
  std::vector<char> inc(n, 0);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < n; ++s) {
    bool f = false;
    parts[s] = disks_from(h, sys, t.gens, s, opt, f);
    inc[s] = f;
  }
  // merge in source order so the table is independent of scheduling
  for (int s = 0; s < n; ++s) {
    t.inconclusive = t.inconclusive || inc[s];
    t.disks.insert(t.disks.end(), parts[s].begin(), parts[s].end());
  }
  return t;
}
}  // namespace omp

DiagramComplex compute_complex(const HeegaardDiagram& h, Flavor flavor, const EnumOptions& opt, const Truncation& t,
                               bool assume_zero) {
  validate(h);
  DiagramComplex dc;
  dc.h = h;
  dc.flavor = flavor;
  dc.assume_zero = assume_zero;
  EnumOptions o = opt;
  o.hat = flavor == Flavor::Hat;
  dc.table = disk_table(h, o);
  for (const auto& d : dc.table.disks)
    if (d.cls == DiskClass::Other) dc.others.push_back(d);

  ColoredComplex c;
  c.ring = make_ring(h.colors());
  c.trunc = t;
  for (const auto& x : dc.table.gens) c.gens.push_back(generator_name(h, x));
  auto part = spinc_partition(h, dc.table.gens);
  for (int k : part.cls) c.spinc.push_back(part.labels[k]);
  for (const auto& b : h.basepoints) c.colors[b.id] = b.color;
  c.d = PolyMatrix(c.size(), c.size());
  dc.complex = make_complex(c);
  auto d = weighted_count(dc, [](const Disk&) { return 1LL; });
  c.d = d.m;
  dc.complex = make_complex(c);
  return dc;
}

Poly basepoint_variable(const DiagramComplex& dc, const std::string& w) {
  const auto& b = dc.h.basepoints.at(dc.h.require_basepoint(w));
  return Poly::var(dc.complex->ring->require(b.color));
}

Poly disk_monomial(const DiagramComplex& dc, const Domain& D) {
  Monomial m;
  const Ring& ring = *dc.complex->ring;
  for (const auto& b : dc.h.basepoints) {
    int v = ring.require(b.color);
    int e = m.e[v] + static_cast<int>(D[b.region]);
    if (e > 255) throw std::overflow_error("monomial exponent overflow");
    m.e[v] = static_cast<uint8_t>(e);
  }
  return Poly::monomial(m);
}

ModuleMap weighted_count(const DiagramComplex& dc, const std::function<long long(const Disk&)>& weight) {
  const int n = dc.complex->size();
  std::vector<std::vector<Monomial>> terms(size_t(n) * n);
  for (const auto& d : dc.table.disks) {
    if (d.cls == DiskClass::Other) continue;
    long long w = weight(d);
    if (w % 2 == 0) continue;
    terms[size_t(d.tgt) * n + d.src].push_back(disk_monomial(dc, d.D).terms()[0]);
  }
  PolyMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Poly::from_terms(std::move(terms[size_t(i) * n + j]));
  return make_map(dc.complex, dc.complex, m);
}

long long path_weight(const PathSpec& p, const Domain& D) {
  long long a = 0;
  for (const auto& s : p.steps) a += s.sign * (D[s.after] - D[s.before]);
  return a;
}

ModuleMap rel_homology(const DiagramComplex& dc, const PathSpec& p) {
  return weighted_count(dc, [&](const Disk& d) { return path_weight(p, d.D); });
}

ModuleMap commutator_homotopy(const DiagramComplex& dc, const PathSpec& l1, const PathSpec& l2) {
  return weighted_count(dc, [&](const Disk& d) { return path_weight(l1, d.D) * path_weight(l2, d.D); });
}

ModuleMap square_homotopy(const DiagramComplex& dc, const PathSpec& l) {
  return weighted_count(dc, [&](const Disk& d) {
    long long a = path_weight(l, d.D);
    return a * (a + 1) / 2;
  });
}

ModuleMap corner_homotopy(const DiagramComplex& dc, int crossing) {
  const int n = dc.complex->size();
  PolyMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& x = dc.table.gens[i];
    if (std::find(x.begin(), x.end(), crossing) != x.end()) m.at(i, i) = Poly::one();
  }
  return make_map(dc.complex, dc.complex, m);
}

}  // namespace hfg
