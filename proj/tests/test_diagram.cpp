#include <random>

#include "doctest.h"
#include "hfg/diagram.hpp"
#include "hfg/hfd_io.hpp"

using namespace hfg;

namespace {

Domain region_domain(const HeegaardDiagram& h, std::initializer_list<const char*> ids) {
  Domain D(h.nregions(), 0);
  for (auto id : ids) D[h.require_region(id)] += 1;
  return D;
}

int crossing(const HeegaardDiagram& h, const std::string& id) {
  for (int i = 0; i < h.ncrossings(); ++i)
    if (h.crossings[i].id == id) return i;
  FAIL("no crossing " << id);
  return -1;
}

// grid generator from a permutation: alpha i meets beta perm[i]
Generator grid_gen(int n, const std::vector<int>& perm) {
  Generator x(n);
  for (int i = 0; i < n; ++i) x[i] = i * n + perm[i];
  return x;
}

// rows [r0, r1) x cols [c0, c1) of an n x n grid, no wrapping
Domain rectangle(int n, int r0, int r1, int c0, int c1) {
  Domain D(n * n, 0);
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j) D[i * n + j] = 1;
  return D;
}

bool in_lattice_coset(const Domain& D, const DomainSpace& s) {
  Domain diff = D;
  for (size_t r = 0; r < D.size(); ++r) diff[r] -= s.particular[r];
  if (s.kernel.empty()) return std::all_of(diff.begin(), diff.end(), [](long long v) { return v == 0; });
  IntMat M(D.size(), IntVec(s.kernel.size()));
  for (size_t j = 0; j < s.kernel.size(); ++j)
    for (size_t r = 0; r < D.size(); ++r) M[r][j] = s.kernel[j][r];
  return solve_integer(smith_normal_form(M), diff).has_value();
}

HeegaardDiagram disjoint_union(const HeegaardDiagram& a, const HeegaardDiagram& b) {
  HeegaardDiagram u = a;
  int roff = a.nregions();
  for (auto r : b.regions) u.regions.push_back({"b." + r.id, r.chi});
  for (auto c : b.crossings) {
    for (auto& q : c.q) q += roff;
    u.crossings.push_back({"b." + c.id, c.alpha + a.d, c.beta + a.d, c.q});
  }
  for (auto p : b.basepoints) u.basepoints.push_back({"b." + p.id, p.region + roff, "b." + p.color});
  u.d = a.d + b.d;
  return u;
}

}  // namespace

TEST_CASE("Euler measure from corner runs") {
  auto g = from_grid(3, {0, 1, 2});
  auto e = region_euler4(g);
  for (int v : e) CHECK(v == 0);  // every grid square: 1 - 4/4
  CHECK(euler_measure(g, Domain(9, 1)) == Rational(0));
  auto s2 = s2_model();
  CHECK(euler_measure(s2, region_domain(s2, {"Ba_w"})) == Rational(1, 2));
  CHECK(euler_measure(s2, Domain(4, 1)) == Rational(2));
  auto t = s1s2_diagram();
  CHECK(euler_measure(t, region_domain(t, {"A"})) == Rational(-1));
  CHECK(euler_measure(t, Domain(3, 1)) == Rational(0));
  HeegaardDiagram bad = t;
  bad.crossings[0].q = {2, 2, 2, 2};
  CHECK_THROWS_AS(region_euler4(bad), InputError);
}

TEST_CASE("validation accepts the standard diagrams and names violations") {
  CHECK_NOTHROW(validate(from_grid(2, {0, 1})));
  CHECK_NOTHROW(validate(from_grid(4, {3, 1, 0, 2})));
  CHECK_NOTHROW(validate(s2_model()));
  CHECK_NOTHROW(validate(s1s2_diagram()));
  CHECK_NOTHROW(validate(empty_s3_diagram("w")));
  CHECK_THROWS_AS(from_grid(3, {0, 0, 1}), InputError);
  CHECK_THROWS_AS(from_grid(1, {0}), InputError);
  auto h = s1s2_diagram();
  h.regions[2].chi = 1;
  CHECK_THROWS_WITH_AS(validate(h), doctest::Contains("Euler measure"), InputError);
  h = s1s2_diagram();
  h.basepoints.clear();
  CHECK_THROWS_WITH_AS(validate(h), doctest::Contains("no basepoint"), InputError);
  h = s1s2_diagram();
  h.d = 2;
  CHECK_THROWS_WITH_AS(validate(h), doctest::Contains("no crossings"), InputError);
}

TEST_CASE("generator enumeration") {
  CHECK(enumerate_generators(empty_s3_diagram("w")).size() == 1);
  CHECK(enumerate_generators(from_grid(2, {0, 1})).size() == 2);
  CHECK(enumerate_generators(from_grid(3, {0, 1, 2})).size() == 6);
  CHECK(enumerate_generators(from_grid(4, {0, 1, 2, 3})).size() == 24);
  auto s2 = s2_model();
  auto gens = enumerate_generators(s2);
  REQUIRE(gens.size() == 2);
  CHECK(generator_name(s2, gens[0]) == "(tp_w)");
  CHECK(generator_name(s2, gens[1]) == "(tm_w)");
  // stabilization doubles generators, old-major with theta+ first
  auto g2 = from_grid(2, {0, 1});
  auto st = stabilize_diagram(g2, "s0_1", "v");
  auto old = enumerate_generators(g2);
  auto neu = enumerate_generators(st);
  REQUIRE(neu.size() == 2 * old.size());
  for (size_t i = 0; i < old.size(); ++i)
    for (int s = 0; s < 2; ++s) {
      Generator expect = old[i];
      expect.push_back(crossing(st, s == 0 ? "tp_v" : "tm_v"));
      CHECK(neu[2 * i + s] == expect);
    }
}

TEST_CASE("domain spaces") {
  auto g = from_grid(3, {0, 1, 2});
  auto sys = domain_system(g);
  auto x = grid_gen(3, {0, 1, 2});
  auto same = domain_space(g, sys, x, x);
  REQUIRE(same);
  for (auto v : same->particular) CHECK(v == 0);
  // rows and columns are in the homogeneous kernel
  for (int i = 0; i < 3; ++i) {
    CHECK(in_lattice_coset(rectangle(3, i, i + 1, 0, 3), *same));
    CHECK(in_lattice_coset(rectangle(3, 0, 3, i, i + 1), *same));
  }
  // transposition of rows 0, 1: the rectangle rows [0,1) cols [0,1) connects
  auto y = grid_gen(3, {1, 0, 2});
  auto s = domain_space(g, sys, x, y);
  REQUIRE(s);
  Domain R = rectangle(3, 0, 1, 0, 1);
  CHECK(satisfies_vertex_relations(g, R, x, y));
  CHECK(in_lattice_coset(R, *s));
  CHECK(maslov_index(g, R, x, y) == 1);

  auto s2 = s2_model();
  auto gens = enumerate_generators(s2);
  auto tp = gens[0], tm = gens[1];
  auto sp = domain_space(s2, tp, tm);
  REQUIRE(sp);
  CHECK(in_lattice_coset(region_domain(s2, {"Ba_w"}), *sp));
  CHECK(in_lattice_coset(region_domain(s2, {"Bb_w"}), *sp));
  // four regions, one independent vertex relation
  CHECK(sp->kernel.size() == 3);
  for (const auto& D : sp->kernel) CHECK(satisfies_vertex_relations(s2, D, tp, tp));
}

TEST_CASE("Maslov index examples") {
  auto s2 = s2_model();
  auto gens = enumerate_generators(s2);
  auto tp = gens[0], tm = gens[1];
  CHECK(maslov_index(s2, region_domain(s2, {"Ba_w"}), tp, tm) == 1);
  CHECK(maslov_index(s2, region_domain(s2, {"Bb_w"}), tp, tm) == 1);
  CHECK(maslov_index(s2, region_domain(s2, {"L_w"}), tm, tp) == 1);
  CHECK(maslov_index(s2, region_domain(s2, {"O"}), tm, tp) == 1);
  // alpha-complement component containing w: index 2 n_w = 2
  auto Aw = region_domain(s2, {"Ba_w", "L_w"});
  CHECK(maslov_index(s2, Aw, tp, tp) == 2);
  CHECK(maslov_index(s2, Aw, tm, tm) == 2);
  CHECK_THROWS_AS(maslov_index(s2, region_domain(s2, {"Ba_w"}), tp, tp), InputError);
}

TEST_CASE("Maslov index is additive under concatenation") {
  std::mt19937_64 rng(21);
  for (int n : {3, 4}) {
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 0);
    auto g = from_grid(n, o);
    auto sys = domain_system(g);
    auto gens = enumerate_generators(g);
    auto random_domain = [&](const Generator& a, const Generator& b) {
      auto s = domain_space(g, sys, a, b);
      REQUIRE(s);
      Domain D = s->particular;
      for (const auto& k : s->kernel) {
        long long c = static_cast<long long>(rng() % 5) - 2;
        for (size_t r = 0; r < D.size(); ++r) D[r] += c * k[r];
      }
      return D;
    };
    for (int trial = 0; trial < 40; ++trial) {
      auto& x = gens[rng() % gens.size()];
      auto& y = gens[rng() % gens.size()];
      auto& z = gens[rng() % gens.size()];
      Domain D1 = random_domain(x, y), D2 = random_domain(y, z);
      Domain D = D1;
      for (size_t r = 0; r < D.size(); ++r) D[r] += D2[r];
      CHECK(satisfies_vertex_relations(g, D, x, z));
      auto m1 = maslov_index(g, D1, x, y), m2 = maslov_index(g, D2, y, z), m = maslov_index(g, D, x, z);
      REQUIRE((m1 && m2 && m));
      CHECK(*m == *m1 + *m2);
    }
  }
}

TEST_CASE("periodic lattices and the Chern pairing") {
  for (int n : {2, 3, 4}) {
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 0);
    auto g = from_grid(n, o);
    auto L = periodic_lattice(g);
    CHECK(L.basis.size() == size_t(n - 1));
    auto x = enumerate_generators(g)[0];
    for (const auto& P : L.basis) {
      CHECK(is_periodic(g, P));
      CHECK(c1_pairing(g, P, x) == 0);
    }
  }
  auto t = s1s2_diagram();
  auto L = periodic_lattice(t);
  REQUIRE(L.basis.size() == 1);
  Domain P = L.basis[0];
  CHECK(P[t.require_region("A")] == 0);
  CHECK(P[t.require_region("B1")] == -P[t.require_region("B2")]);
  CHECK(std::llabs(P[0]) == 1);
  auto gens = enumerate_generators(t);
  REQUIRE(gens.size() == 2);
  CHECK(c1_pairing(t, P, gens[0]) == c1_pairing(t, P, gens[1]));
  CHECK(c1_pairing(t, P, gens[0]) % 2 == 0);
  CHECK_THROWS_AS(c1_pairing(t, region_domain(t, {"A"}), gens[0]), InputError);
}

TEST_CASE("Spin^c partitions") {
  auto g = from_grid(3, {2, 0, 1});
  auto part = spinc_partition(g, enumerate_generators(g));
  CHECK(part.labels.size() == 1);
  auto t = s1s2_diagram();
  CHECK(spinc_partition(t, enumerate_generators(t)).labels.size() == 1);
  auto u = disjoint_union(s2_model(), s2_model());
  validate(u);
  auto ug = enumerate_generators(u);
  CHECK(ug.size() == 4);
  CHECK(spinc_partition(u, ug).labels.size() == 1);
}

TEST_CASE("weak admissibility") {
  for (int n : {2, 3, 4}) {
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 0);
    CHECK(check_weak_admissibility(from_grid(n, o)).admissible);
    std::reverse(o.begin(), o.end());
    CHECK(check_weak_admissibility(from_grid(n, o)).admissible);
  }
  CHECK(check_weak_admissibility(s1s2_diagram()).admissible);
  CHECK(check_weak_admissibility(s2_model()).admissible);
  auto bad = s1s2_diagram(true);
  auto r = check_weak_admissibility(bad);
  REQUIRE_FALSE(r.admissible);
  CHECK(is_periodic(bad, r.witness));
  CHECK(r.witness == Domain{0, 2, 1});  // A + 2 B2
  // stabilization preserves the answer in both directions
  CHECK(check_weak_admissibility(stabilize_diagram(from_grid(3, {0, 1, 2}), "s1_1", "v")).admissible);
  CHECK_FALSE(check_weak_admissibility(stabilize_diagram(bad, "A", "v")).admissible);
  CHECK_FALSE(check_weak_admissibility(stabilize_diagram(bad, "B2", "v")).admissible);
}

TEST_CASE("strong admissibility") {
  auto t = s1s2_diagram();
  auto gens = enumerate_generators(t);
  auto r = check_strong_admissibility(t, gens[0], 8);
  CHECK(r.status == StrongStatus::Verified);
  auto bad = s1s2_diagram(true);
  // the pairing is nonzero there (2 on A + 2 B2) and every multiple has a
  // large enough entry, so the bounded search cannot conclude
  auto rb = check_strong_admissibility(bad, enumerate_generators(bad)[0], 8);
  CHECK(rb.status == StrongStatus::Inconclusive);
  auto g = from_grid(3, {0, 1, 2});
  CHECK(check_strong_admissibility(g, enumerate_generators(g)[0], 8).status == StrongStatus::Verified);
}

TEST_CASE("stabilized diagram structure") {
  auto s2 = s2_model();
  validate(s2);
  CHECK(s2.d == 1);
  CHECK(s2.nregions() == 4);
  CHECK(s2.regions[s2.require_region("O")].chi == 1);
  auto g = from_grid(2, {1, 0});
  auto st = stabilize_diagram(g, "s1_0", "v");
  validate(st);
  auto gens = enumerate_generators(st);
  auto tp = crossing(st, "tp_v"), tm = crossing(st, "tm_v");
  auto x = gens[0];
  REQUIRE(x.back() == tp);
  auto y = x;
  y.back() = tm;
  CHECK(maslov_index(st, region_domain(st, {"Ba_v"}), x, y) == 1);
  CHECK(maslov_index(st, region_domain(st, {"Bb_v"}), x, y) == 1);
  CHECK_THROWS_AS(stabilize_diagram(st, "s0_0", "v"), InputError);
}

TEST_CASE("hfd round trip and parse errors") {
  auto g = from_grid(3, {1, 2, 0});
  g.paths.push_back(grid_path(g, {1, 2, 0}, 0, 2, "lam"));
  g.paths.push_back(grid_vertical_loop(g, {1, 2, 0}, 0, 1, "gam"));
  validate(g);
  std::string text = write_hfd(g);
  auto back = parse_hfd_string(text);
  CHECK(write_hfd(back) == text);
  validate(back);
  CHECK(back.require_path("lam").steps.size() == 2);

  CHECK_THROWS_WITH_AS(parse_hfd_string("[regions]\nR chi=2\n"), doctest::Contains("[diagram]"), InputError);
  CHECK_THROWS_WITH_AS(parse_hfd_string("[diagram] alpha=1 beta=1\n[crossings]\np a=0 b=0 q=A,B,C\n"),
                       doctest::Contains("four quadrants"), InputError);
  CHECK_THROWS_WITH_AS(parse_hfd_string("[diagram] alpha=0 beta=0\n[regions]\nO chi=2\n[basepoints]\nw region=Q\n"),
                       doctest::Contains("unknown region"), InputError);
  auto e = parse_hfd_string("# comment\n[diagram] alpha=0 beta=0\n[regions]\nO chi=2 # sphere\n[basepoints]\nw region=O\n");
  CHECK_NOTHROW(validate(e));
  CHECK(e.basepoints[0].color == "w");
  // a path that crosses alpha without recording it
  auto bad = g;
  bad.paths[0].steps.erase(bad.paths[0].steps.begin());
  CHECK_THROWS_AS(validate(bad), InputError);
}
