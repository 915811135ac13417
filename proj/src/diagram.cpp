#include "hfg/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace hfg {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

}  // namespace

int HeegaardDiagram::region_index(const std::string& id) const {
  for (int i = 0; i < nregions(); ++i)
    if (regions[i].id == id) return i;
  return -1;
}

int HeegaardDiagram::require_region(const std::string& id) const {
  int i = region_index(id);
  if (i < 0) throw InputError("unknown region '" + id + "'");
  return i;
}

int HeegaardDiagram::basepoint_index(const std::string& id) const {
  for (size_t i = 0; i < basepoints.size(); ++i)
    if (basepoints[i].id == id) return static_cast<int>(i);
  return -1;
}

int HeegaardDiagram::require_basepoint(const std::string& id) const {
  int i = basepoint_index(id);
  if (i < 0) throw InputError("unknown basepoint '" + id + "'");
  return i;
}

const PathSpec& HeegaardDiagram::require_path(const std::string& id) const {
  for (const auto& p : paths)
    if (p.id == id) return p;
  throw InputError("unknown path '" + id + "'");
}

std::vector<std::string> HeegaardDiagram::colors() const {
  std::vector<std::string> out;
  for (const auto& b : basepoints)
    if (std::find(out.begin(), out.end(), b.color) == out.end()) out.push_back(b.color);
  return out;
}

std::vector<int> region_euler4(const HeegaardDiagram& h) {
  std::vector<int> e(h.nregions());
  for (int r = 0; r < h.nregions(); ++r) e[r] = 4 * h.regions[r].chi;
  for (const auto& c : h.crossings) {
    std::set<int> present(c.q.begin(), c.q.end());
    for (int r : present) {
      std::array<bool, 4> occ{};
      for (int k = 0; k < 4; ++k) occ[k] = c.q[k] == r;
      if (occ[0] && occ[1] && occ[2] && occ[3])
        throw InputError("region '" + h.regions[r].id + "' fills all four quadrants at crossing '" + c.id + "'");
      for (int k = 0; k < 4; ++k) {
        if (!occ[k] || occ[(k + 3) % 4]) continue;
        int len = 0;
        while (occ[(k + len) % 4]) ++len;
        e[r] += len - 2;
      }
    }
  }
  return e;
}

int euler4(const HeegaardDiagram& h, const Domain& D) {
  auto e = region_euler4(h);
  long long s = 0;
  for (int r = 0; r < h.nregions(); ++r) s = checked_add(s, checked_mul(e[r], D[r]));
  return static_cast<int>(s);
}

Rational euler_measure(const HeegaardDiagram& h, const Domain& D) { return Rational(euler4(h, D), 4); }

void validate(const HeegaardDiagram& h) {
  if (h.d < 0) throw InputError("negative number of curves");
  if (h.regions.empty()) throw InputError("diagram has no regions");
  std::set<std::string> ids;
  for (const auto& r : h.regions)
    if (!ids.insert(r.id).second) throw InputError("duplicate region id '" + r.id + "'");
  std::vector<int> alpha_seen(h.d, 0), beta_seen(h.d, 0);
  ids.clear();
  for (const auto& c : h.crossings) {
    if (!ids.insert(c.id).second) throw InputError("duplicate crossing id '" + c.id + "'");
    if (c.alpha < 0 || c.alpha >= h.d || c.beta < 0 || c.beta >= h.d)
      throw InputError("crossing '" + c.id + "' uses a curve index out of range");
    for (int r : c.q)
      if (r < 0 || r >= h.nregions()) throw InputError("crossing '" + c.id + "' names an unknown region");
    alpha_seen[c.alpha] = beta_seen[c.beta] = 1;
  }
  for (int i = 0; i < h.d; ++i) {
    if (!alpha_seen[i]) throw InputError("alpha curve " + std::to_string(i) + " has no crossings");
    if (!beta_seen[i]) throw InputError("beta curve " + std::to_string(i) + " has no crossings");
  }
  ids.clear();
  for (const auto& b : h.basepoints) {
    if (!ids.insert(b.id).second) throw InputError("duplicate basepoint id '" + b.id + "'");
    if (b.region < 0 || b.region >= h.nregions()) throw InputError("basepoint '" + b.id + "' in unknown region");
    if (b.color.empty()) throw InputError("basepoint '" + b.id + "' has no color");
  }
  auto e = region_euler4(h);

  // connected components of the surface, with the curves they carry
  UnionFind uf(h.nregions());
  std::vector<int> alpha_first(h.d, -1), beta_first(h.d, -1);
  for (const auto& c : h.crossings) {
    for (int k = 1; k < 4; ++k) uf.unite(c.q[0], c.q[k]);
    if (alpha_first[c.alpha] >= 0) uf.unite(alpha_first[c.alpha], c.q[0]);
    alpha_first[c.alpha] = c.q[0];
    if (beta_first[c.beta] >= 0) uf.unite(beta_first[c.beta], c.q[0]);
    beta_first[c.beta] = c.q[0];
  }
  std::map<int, std::array<long long, 4>> comp;  // alphas, betas, basepoints, euler4
  for (int r = 0; r < h.nregions(); ++r) comp[uf.find(r)][3] += e[r];
  for (int i = 0; i < h.d; ++i) {
    comp[uf.find(alpha_first[i])][0]++;
    comp[uf.find(beta_first[i])][1]++;
  }
  for (const auto& b : h.basepoints) comp[uf.find(b.region)][2]++;
  for (const auto& [root, c] : comp) {
    const std::string where = "component of region '" + h.regions[root].id + "'";
    if (c[2] == 0) throw InputError("no basepoint in the " + where);
    if (c[0] != c[1]) throw InputError("alpha and beta counts differ in the " + where);
    long long g = c[0] - c[2] + 1;
    if (g < 0) throw InputError("negative genus in the " + where);
    if (c[3] != 4 * (2 - 2 * g))
      throw InputError("Euler measure of the " + where + " is not 2-2g with g=" + std::to_string(g));
  }

  // paths: each step crosses its alpha curve between adjacent regions, and
  // consecutive steps stay within one component of the alpha complement
  UnionFind ua(h.nregions());
  for (const auto& c : h.crossings) {
    ua.unite(c.q[0], c.q[1]);
    ua.unite(c.q[2], c.q[3]);
  }
  for (const auto& p : h.paths) {
    int from = h.basepoints.at(h.require_basepoint(p.from)).region;
    int to = h.basepoints.at(h.require_basepoint(p.to)).region;
    int cur = from;
    for (const auto& s : p.steps) {
      if (s.alpha < 0 || s.alpha >= h.d) throw InputError("path '" + p.id + "' crosses an unknown alpha curve");
      if (s.sign != 1 && s.sign != -1) throw InputError("path '" + p.id + "' has a sign other than +1/-1");
      bool adjacent = false;
      for (const auto& c : h.crossings) {
        if (c.alpha != s.alpha) continue;
        for (auto [u, v] : {std::pair{1, 2}, std::pair{3, 0}})
          if ((c.q[u] == s.before && c.q[v] == s.after) || (c.q[v] == s.before && c.q[u] == s.after)) adjacent = true;
      }
      if (!adjacent)
        throw InputError("path '" + p.id + "' step does not cross alpha " + std::to_string(s.alpha) + " between '" +
                         h.regions[s.before].id + "' and '" + h.regions[s.after].id + "'");
      if (ua.find(cur) != ua.find(s.before))
        throw InputError("path '" + p.id + "' jumps across an alpha curve without recording it");
      cur = s.after;
    }
    if (ua.find(cur) != ua.find(to)) throw InputError("path '" + p.id + "' does not reach its endpoint");
  }
}

std::vector<Generator> enumerate_generators(const HeegaardDiagram& h) {
  std::vector<std::vector<int>> by_alpha(h.d);
  for (int c = 0; c < h.ncrossings(); ++c) by_alpha[h.crossings[c].alpha].push_back(c);
  std::vector<Generator> out;
  Generator cur(h.d);
  std::vector<char> beta_used(h.d, 0);
  auto rec = [&](auto&& self, int a) -> void {
    if (a == h.d) {
      out.push_back(cur);
      return;
    }
    for (int c : by_alpha[a]) {
      int b = h.crossings[c].beta;
      if (beta_used[b]) continue;
      beta_used[b] = 1;
      cur[a] = c;
      self(self, a + 1);
      beta_used[b] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

std::string generator_name(const HeegaardDiagram& h, const Generator& x) {
  std::string s = "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += h.crossings[x[i]].id;
  }
  return s + ")";
}

IntMat vertex_matrix(const HeegaardDiagram& h) {
  IntMat M(h.ncrossings(), IntVec(h.nregions(), 0));
  for (int p = 0; p < h.ncrossings(); ++p) {
    const auto& q = h.crossings[p].q;
    M[p][q[0]] += 1;
    M[p][q[2]] += 1;
    M[p][q[1]] -= 1;
    M[p][q[3]] -= 1;
  }
  return M;
}

IntVec vertex_rhs(const HeegaardDiagram& h, const Generator& x, const Generator& y) {
  IntVec b(h.ncrossings(), 0);
  for (int p : x) b[p] += 1;
  for (int p : y) b[p] -= 1;
  return b;
}

bool satisfies_vertex_relations(const HeegaardDiagram& h, const Domain& D, const Generator& x, const Generator& y) {
  return mat_vec(vertex_matrix(h), D) == vertex_rhs(h, x, y);
}

DomainSystem domain_system(const HeegaardDiagram& h) {
  DomainSystem s;
  s.M = vertex_matrix(h);
  if (s.M.empty()) {
    // no crossings: every domain satisfies the (empty) relations
    s.snf.rows = 0;
    s.snf.cols = h.nregions();
    s.snf.V.assign(h.nregions(), IntVec(h.nregions(), 0));
    for (int i = 0; i < h.nregions(); ++i) s.snf.V[i][i] = 1;
  } else {
    s.snf = smith_normal_form(s.M);
  }
  s.kernel = echelon_lattice(integer_kernel(s.snf), h.nregions());
  return s;
}

std::optional<DomainSpace> domain_space(const HeegaardDiagram& h, const DomainSystem& sys, const Generator& x,
                                        const Generator& y) {
  auto p = solve_integer(sys.snf, vertex_rhs(h, x, y));
  if (!p) return std::nullopt;
  return DomainSpace{*p, sys.kernel.basis, sys.kernel.pivots};
}

std::optional<DomainSpace> domain_space(const HeegaardDiagram& h, const Generator& x, const Generator& y) {
  return domain_space(h, domain_system(h), x, y);
}

int corner4(const HeegaardDiagram& h, const Domain& D, const Generator& x) {
  long long s = 0;
  for (int p : x)
    for (int r : h.crossings[p].q) s = checked_add(s, D[r]);
  return static_cast<int>(s);
}

std::vector<int> maslov4_coefficients(const HeegaardDiagram& h, const Generator& x, const Generator& y) {
  auto coef = region_euler4(h);
  for (int p : x)
    for (int r : h.crossings[p].q) coef[r] += 1;
  for (int p : y)
    for (int r : h.crossings[p].q) coef[r] += 1;
  return coef;
}

std::optional<int> maslov_index(const HeegaardDiagram& h, const Domain& D, const Generator& x, const Generator& y) {
  if (!satisfies_vertex_relations(h, D, x, y)) throw InputError("domain violates the vertex relations");
  long long m4 = euler4(h, D) + corner4(h, D, x) + corner4(h, D, y);
  if (m4 % 4 != 0) return std::nullopt;
  return static_cast<int>(m4 / 4);
}

std::vector<int> basepoint_multiplicities(const HeegaardDiagram& h, const Domain& D) {
  std::vector<int> n;
  for (const auto& b : h.basepoints) n.push_back(static_cast<int>(D[b.region]));
  return n;
}

EchelonBasis periodic_lattice(const HeegaardDiagram& h, const DomainSystem& sys) {
  const auto& K = sys.kernel.basis;
  const int k = static_cast<int>(K.size());
  if (k == 0) return {};
  IntMat C(h.basepoints.size(), IntVec(k, 0));
  for (size_t w = 0; w < h.basepoints.size(); ++w)
    for (int j = 0; j < k; ++j) C[w][j] = K[j][h.basepoints[w].region];
  std::vector<IntVec> combos;
  if (C.empty()) {
    for (int j = 0; j < k; ++j) {
      IntVec e(k, 0);
      e[j] = 1;
      combos.push_back(e);
    }
  } else {
    combos = integer_kernel(smith_normal_form(C));
  }
  std::vector<IntVec> P;
  for (const auto& c : combos) {
    IntVec v(h.nregions(), 0);
    for (int j = 0; j < k; ++j)
      for (int r = 0; r < h.nregions(); ++r) v[r] = checked_add(v[r], checked_mul(c[j], K[j][r]));
    P.push_back(v);
  }
  return echelon_lattice(P, h.nregions());
}

EchelonBasis periodic_lattice(const HeegaardDiagram& h) { return periodic_lattice(h, domain_system(h)); }

bool is_periodic(const HeegaardDiagram& h, const Domain& P) {
  for (auto x : mat_vec(vertex_matrix(h), P))
    if (x != 0) return false;
  for (int n : basepoint_multiplicities(h, P))
    if (n != 0) return false;
  return true;
}

int c1_pairing(const HeegaardDiagram& h, const Domain& P, const Generator& x) {
  if (!is_periodic(h, P)) throw InputError("domain is not periodic");
  auto mu = maslov_index(h, P, x, x);
  if (!mu) throw InputError("periodic domain with non-integral Maslov index");
  return *mu;
}

SpincPartition spinc_partition(const HeegaardDiagram& h, const std::vector<Generator>& gens) {
  SpincPartition out;
  auto sys = domain_system(h);
  for (size_t i = 0; i < gens.size(); ++i) {
    int found = -1;
    for (size_t c = 0; c < out.representative.size() && found < 0; ++c)
      if (solve_integer(sys.snf, vertex_rhs(h, gens[i], gens[out.representative[c]]))) found = static_cast<int>(c);
    if (found < 0) {
      found = static_cast<int>(out.representative.size());
      out.representative.push_back(static_cast<int>(i));
      out.labels.push_back("s" + std::to_string(found));
    }
    out.cls.push_back(found);
  }
  return out;
}

WeakAdmissibility check_weak_admissibility(const HeegaardDiagram& h) {
  auto L = periodic_lattice(h);
  const int m = static_cast<int>(L.basis.size());
  if (m == 0) return {};
  const int R = h.nregions();
  // exists rational c with sum_k c_k P_k >= 0 regionwise and total >= 1?
  IntMat A;
  IntVec b;
  IntVec total(m, 0);
  for (int r = 0; r < R; ++r) {
    IntVec row(m);
    for (int k = 0; k < m; ++k) {
      row[k] = L.basis[k][r];
      total[k] += row[k];
    }
    A.push_back(row);
    b.push_back(0);
  }
  A.push_back(total);
  b.push_back(1);
  auto sol = fourier_motzkin(A, b, m);
  if (!sol) return {};
  long long den = 1;
  for (const auto& q : *sol) den = lcm_ll(den, q.denominator());
  Domain P(R, 0);
  for (int k = 0; k < m; ++k) {
    long long c = (*sol)[k].numerator() * (den / (*sol)[k].denominator());
    for (int r = 0; r < R; ++r) P[r] = checked_add(P[r], checked_mul(c, L.basis[k][r]));
  }
  long long g = 0;
  for (auto v : P) g = std::gcd(g, std::llabs(v));
  if (g > 1)
    for (auto& v : P) v /= g;
  return {false, P};
}

StrongAdmissibility check_strong_admissibility(const HeegaardDiagram& h, const Generator& rep, int bound) {
  auto L = periodic_lattice(h);
  const int m = static_cast<int>(L.basis.size());
  if (m == 0) return {StrongStatus::Verified, {}, "no periodic domains"};
  std::vector<long long> pair(m);
  bool all_zero = true;
  for (int k = 0; k < m; ++k) {
    pair[k] = c1_pairing(h, L.basis[k], rep);
    if (pair[k] != 0) all_zero = false;
  }
  if (all_zero) {
    // every periodic domain pairs to 0, so the condition is a positive entry
    auto weak = check_weak_admissibility(h);
    if (weak.admissible) return {StrongStatus::Verified, {}, "pairing vanishes and the diagram is weakly admissible"};
    return {StrongStatus::FailedWitness, weak.witness, "nonnegative periodic domain with pairing 0"};
  }
  const int R = h.nregions();
  double points = std::pow(2.0 * bound + 1, m);
  if (points > 5e6) return {StrongStatus::Inconclusive, {}, "coefficient box too large to enumerate"};
  std::vector<long long> c(m, -bound);
  while (true) {
    bool nonzero = std::any_of(c.begin(), c.end(), [](long long v) { return v != 0; });
    if (nonzero) {
      long long pr = 0;
      Domain P(R, 0);
      for (int k = 0; k < m; ++k) {
        pr += c[k] * pair[k];
        for (int r = 0; r < R; ++r) P[r] += c[k] * L.basis[k][r];
      }
      if (pr >= 0) {
        long long N = pr / 2;
        if (*std::max_element(P.begin(), P.end()) <= N)
          return {StrongStatus::FailedWitness, P, "pairing 2N with no multiplicity above N"};
      }
    }
    int k = 0;
    while (k < m && c[k] == bound) c[k++] = -bound;
    if (k == m) break;
    ++c[k];
  }
  return {StrongStatus::Inconclusive, {}, "no violation up to coefficient bound " + std::to_string(bound)};
}

HeegaardDiagram from_grid(int n, const std::vector<int>& o) {
  if (n < 2) throw InputError("grid size must be at least 2");
  if (static_cast<int>(o.size()) != n) throw InputError("O positions must list one column per row");
  std::vector<int> seen(n, 0);
  for (int c : o) {
    if (c < 0 || c >= n || seen[c]) throw InputError("O positions are not a permutation");
    seen[c] = 1;
  }
  HeegaardDiagram h;
  h.d = n;
  auto sq = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h.regions.push_back({"s" + std::to_string(i) + "_" + std::to_string(j), 1});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      h.crossings.push_back({"c" + std::to_string(i) + "_" + std::to_string(j), i, j,
                             {sq(i, j), sq(i, j - 1), sq(i - 1, j - 1), sq(i - 1, j)}});
  for (int i = 0; i < n; ++i) h.basepoints.push_back({"O" + std::to_string(i), sq(i, o[i]), "O" + std::to_string(i)});
  return h;
}

PathSpec grid_path(const HeegaardDiagram& grid, const std::vector<int>& o, int i, int j, const std::string& id) {
  const int n = grid.d;
  PathSpec p{id, "O" + std::to_string(i), "O" + std::to_string(j), {}};
  const int c = o[i];
  for (int r = i; r != j; r = (r + 1) % n) {
    int r1 = (r + 1) % n;
    p.steps.push_back({r1, r * n + c, r1 * n + c, 1});
  }
  return p;
}

PathSpec grid_vertical_loop(const HeegaardDiagram& grid, const std::vector<int>&, int base, int c,
                            const std::string& id) {
  const int n = grid.d;
  PathSpec p{id, "O" + std::to_string(base), "O" + std::to_string(base), {}};
  for (int k = 0; k < n; ++k) {
    int r = (base + k) % n, r1 = (r + 1) % n;
    p.steps.push_back({r1, r * n + c, r1 * n + c, 1});
  }
  return p;
}

PathSpec grid_horizontal_loop(const HeegaardDiagram&, int base, const std::string& id) {
  return {id, "O" + std::to_string(base), "O" + std::to_string(base), {}};
}

HeegaardDiagram stabilize_diagram(const HeegaardDiagram& h, const std::string& region, const std::string& w,
                                  const std::string& color) {
  if (h.basepoint_index(w) >= 0) throw InputError("basepoint '" + w + "' already present");
  HeegaardDiagram s = h;
  int r = s.require_region(region);
  s.regions[r].chi -= 1;
  int L = s.nregions(), Ba = L + 1, Bb = L + 2;
  s.regions.push_back({"L_" + w, 1});
  s.regions.push_back({"Ba_" + w, 1});
  s.regions.push_back({"Bb_" + w, 1});
  int k = s.d++;
  s.crossings.push_back({"tp_" + w, k, k, {Ba, L, Bb, r}});
  s.crossings.push_back({"tm_" + w, k, k, {L, Ba, r, Bb}});
  s.basepoints.push_back({w, L, color.empty() ? w : color});
  return s;
}

HeegaardDiagram empty_s3_diagram(const std::string& w) {
  HeegaardDiagram h;
  h.regions.push_back({"O", 2});
  h.basepoints.push_back({w, 0, w});
  return h;
}

HeegaardDiagram s2_model(const std::string& w, const std::string& wp) {
  return stabilize_diagram(empty_s3_diagram(wp), "O", w);
}

HeegaardDiagram s1s2_diagram(bool basepoint_in_bigon) {
  HeegaardDiagram h;
  h.d = 1;
  h.regions = {{"B1", 1}, {"B2", 1}, {"A", 0}};
  h.crossings.push_back({"p", 0, 0, {0, 2, 1, 2}});
  h.crossings.push_back({"q", 0, 0, {2, 0, 2, 1}});
  h.basepoints.push_back({"w", basepoint_in_bigon ? 0 : 2, "w"});
  return h;
}

}  // namespace hfg
