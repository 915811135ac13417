#include <numeric>

#include "doctest.h"
#include "hfg/disk.hpp"

using namespace hfg;

namespace {

std::vector<int> diagonal(int n) {
  std::vector<int> o(n);
  std::iota(o.begin(), o.end(), 0);
  return o;
}

PolyMatrix dA_plus_Ad(const DiagramComplex& dc, const ModuleMap& a) {
  const auto& t = dc.complex->trunc;
  return multiply(dc.complex->d, a.m, t) + multiply(a.m, dc.complex->d, t);
}

PolyMatrix mul(const DiagramComplex& dc, const PolyMatrix& a, const PolyMatrix& b) {
  return multiply(a, b, dc.complex->trunc);
}

PathSpec concat(const PathSpec& first, const PathSpec& second, const std::string& id) {
  PathSpec p{id, first.from, second.to, first.steps};
  p.steps.insert(p.steps.end(), second.steps.begin(), second.steps.end());
  return p;
}

// same path, with every recorded crossing moved one column to the right
PathSpec shifted_right(const HeegaardDiagram& g, const PathSpec& p) {
  const int n = g.d;
  PathSpec q = p;
  q.id += "'";
  for (auto& s : q.steps) {
    s.before = (s.before / n) * n + (s.before % n + 1) % n;
    s.after = (s.after / n) * n + (s.after % n + 1) % n;
  }
  return q;
}

std::vector<std::string> endpoints(const PathSpec& p) {
  if (p.is_loop()) return {};
  return {p.from, p.to};
}

}  // namespace

TEST_CASE("positive domains on the sphere model") {
  auto s2 = s2_model();
  auto sys = domain_system(s2);
  auto gens = enumerate_generators(s2);
  auto tp = gens[0], tm = gens[1];
  auto down = positive_domains(s2, sys, tp, tm, 1, {});
  auto up = positive_domains(s2, sys, tm, tp, 1, {});
  REQUIRE(down.domains.size() == 2);
  REQUIRE(up.domains.size() == 2);
  for (const auto& D : down.domains) {
    CHECK(classify(s2, D, tp, tm) == DiskClass::EmptyBigon);
    for (int n : basepoint_multiplicities(s2, D)) CHECK(n == 0);
  }
  for (const auto& D : up.domains) CHECK(classify(s2, D, tm, tp) == DiskClass::EmptyBigon);
  CHECK_FALSE(down.inconclusive);
  // bigon plus the alpha-complement component through w has index 3
  Domain big(4, 0);
  big[s2.require_region("Ba_w")] = 2;
  big[s2.require_region("L_w")] = 1;
  CHECK(maslov_index(s2, big, tp, tm) == 3);
  CHECK_THROWS_AS(classify(s2, big, tp, tm), InputError);
}

TEST_CASE("positive domains on small grids") {
  auto g = from_grid(2, {0, 1});
  auto sys = domain_system(g);
  auto gens = enumerate_generators(g);
  REQUIRE(gens.size() == 2);
  CHECK(positive_domains(g, sys, gens[0], gens[1], 1, {}).domains.size() == 2);
  CHECK(positive_domains(g, sys, gens[1], gens[0], 1, {}).domains.size() == 2);
  for (int n : {2, 3}) {
    auto h = from_grid(n, diagonal(n));
    auto hs = domain_system(h);
    for (const auto& x : enumerate_generators(h)) CHECK(positive_domains(h, hs, x, x, 1, {}).domains.empty());
  }
  // a rectangle with a generator point inside has index 3 and is rejected
  auto g3 = from_grid(3, diagonal(3));
  Generator x = {0 * 3 + 0, 1 * 3 + 1, 2 * 3 + 2};
  Generator y = {0 * 3 + 2, 1 * 3 + 1, 2 * 3 + 0};
  Domain R(9, 0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) R[i * 3 + j] = 1;
  CHECK(maslov_index(g3, R, x, y) == 3);
  CHECK_THROWS_AS(classify(g3, R, x, y), InputError);
}

TEST_CASE("sphere model differential") {
  auto dc = compute_complex(s2_model(), Flavor::Minus);
  CHECK(dc.combinatorial());
  CHECK(dc.table.disks.size() == 4);
  const auto& c = *dc.complex;
  Poly uw = Poly::var(c.ring->require("w")), uwp = Poly::var(c.ring->require("wp"));
  CHECK(c.d.at(0, 1) == uw + uwp);  // d(theta-) = (U_w + U_wp) theta+
  CHECK(c.d.at(1, 0).is_zero());     // the two bigons to theta- cancel
  CHECK(c.d.at(0, 0).is_zero());
  CHECK(c.d.at(1, 1).is_zero());
  auto hat = compute_complex(s2_model(), Flavor::Hat);
  CHECK(truncated_homology(*hat.complex, HomologyFlavor::Hat).at("s0") == 2);
}

TEST_CASE("grid differentials") {
  auto g2 = compute_complex(from_grid(2, {0, 1}), Flavor::Minus);
  const auto& c2 = *g2.complex;
  Poly u0 = Poly::var(c2.ring->require("O0")), u1 = Poly::var(c2.ring->require("O1"));
  // generator 0 is (c0_0, c1_1): its rectangles contain O0 and O1
  CHECK(c2.d.at(1, 0) == u0 + u1);
  CHECK(c2.d.at(0, 1).is_zero());
  for (int n : {2, 3, 4}) {
    auto dc = compute_complex(from_grid(n, diagonal(n)), Flavor::Minus);
    CHECK(dc.combinatorial());
    CHECK_FALSE(dc.table.inconclusive);
    CHECK(d_squared_check(*dc.complex));
    auto hat = compute_complex(from_grid(n, diagonal(n)), Flavor::Hat);
    CHECK(d_squared_check(*hat.complex));
    CHECK(truncated_homology(*hat.complex, HomologyFlavor::Hat).at("s0") == (1 << (n - 1)));
  }
  auto odd = compute_complex(from_grid(4, {2, 0, 3, 1}), Flavor::Minus);
  CHECK(odd.combinatorial());
  CHECK(d_squared_check(*odd.complex));
}

TEST_CASE("serial and OpenMP disk tables agree") {
  for (auto o : std::vector<std::vector<int>>{{0, 1, 2}, {1, 3, 0, 2}}) {
    auto g = from_grid(static_cast<int>(o.size()), o);
    auto a = serial::disk_table(g, {});
    auto b = omp::disk_table(g, {});
    REQUIRE(a.disks.size() == b.disks.size());
    for (size_t i = 0; i < a.disks.size(); ++i) {
      CHECK(a.disks[i].src == b.disks[i].src);
      CHECK(a.disks[i].tgt == b.disks[i].tgt);
      CHECK(a.disks[i].D == b.disks[i].D);
    }
  }
}

TEST_CASE("relative homology relation on grids") {
  for (int n : {2, 3}) {
    auto o = diagonal(n);
    auto g = from_grid(n, o);
    auto dc = compute_complex(g, Flavor::Minus);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        auto lam = grid_path(g, o, i, j, "l");
        auto A = rel_homology(dc, lam);
        Poly u = basepoint_variable(dc, lam.from) + basepoint_variable(dc, lam.to);
        CHECK(dA_plus_Ad(dc, A) == PolyMatrix::scalar(dc.complex->size(), u));
        CHECK(is_chain_map(formal_phi(dc.complex, "O" + std::to_string(i))));
      }
    // loops crossing no alpha curve act by zero; vertical loops are chain maps
    CHECK(rel_homology(dc, grid_horizontal_loop(g, 0, "h")).m.is_zero());
    for (int c = 0; c < n; ++c) CHECK(is_chain_map(rel_homology(dc, grid_vertical_loop(g, o, 0, c, "v"))));
  }
}

TEST_CASE("concatenation additivity") {
  auto o = diagonal(3);
  auto g = from_grid(3, o);
  auto dc = compute_complex(g, Flavor::Minus);
  auto l01 = grid_path(g, o, 0, 1, "a"), l12 = grid_path(g, o, 1, 2, "b");
  auto l = concat(l01, l12, "ab");
  CHECK(rel_homology(dc, l) == rel_homology(dc, l01) + rel_homology(dc, l12));
  auto v0 = grid_vertical_loop(g, o, 0, 0, "v0"), v1 = grid_vertical_loop(g, o, 0, 1, "v1");
  CHECK(rel_homology(dc, concat(v0, v1, "v01")) == rel_homology(dc, v0) + rel_homology(dc, v1));
}

TEST_CASE("commutator homotopy on 3x3 grids") {
  for (auto o : std::vector<std::vector<int>>{{0, 1, 2}, {2, 0, 1}}) {
    auto g = from_grid(3, o);
    auto dc = compute_complex(g, Flavor::Minus);
    std::vector<std::pair<PathSpec, PathSpec>> pairs = {
        {grid_path(g, o, 0, 1, "a"), grid_vertical_loop(g, o, 2, 1, "b")},  // no shared endpoint
        {grid_path(g, o, 0, 1, "a"), grid_path(g, o, 1, 2, "b")},           // one
        {grid_path(g, o, 0, 2, "a"), grid_path(g, o, 2, 1, "b")},           // one
        {grid_path(g, o, 0, 1, "a"), grid_path(g, o, 1, 0, "b")},           // two
        {grid_path(g, o, 2, 0, "a"), grid_path(g, o, 2, 0, "b")},           // two, same path
    };
    for (const auto& [l1, l2] : pairs) {
      auto A1 = rel_homology(dc, l1), A2 = rel_homology(dc, l2);
      auto H = commutator_homotopy(dc, l1, l2);
      PolyMatrix lhs = mul(dc, A1.m, A2.m) + mul(dc, A2.m, A1.m) + dA_plus_Ad(dc, H);
      Poly u;
      for (const auto& w : endpoints(l1)) {
        auto e2 = endpoints(l2);
        if (std::find(e2.begin(), e2.end(), w) != e2.end()) u += basepoint_variable(dc, w);
      }
      CHECK(lhs == PolyMatrix::scalar(dc.complex->size(), u));
    }
  }
}

TEST_CASE("square homotopy on 3x3 grids") {
  for (auto o : std::vector<std::vector<int>>{{0, 1, 2}, {1, 2, 0}}) {
    auto g = from_grid(3, o);
    auto dc = compute_complex(g, Flavor::Minus);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        auto lam = grid_path(g, o, i, j, "l");
        auto A = rel_homology(dc, lam);
        auto H = square_homotopy(dc, lam);
        PolyMatrix lhs = mul(dc, A.m, A.m) + dA_plus_Ad(dc, H);
        // with upward crossings counted +1, the selected endpoint is the end
        CHECK(lhs == PolyMatrix::scalar(dc.complex->size(), basepoint_variable(dc, lam.to)));
        // the opposite orientation selects the other endpoint
        auto rev = lam;
        for (auto& st : rev.steps) st.sign = -st.sign;
        auto Hr = square_homotopy(dc, rev);
        CHECK(mul(dc, A.m, A.m) + dA_plus_Ad(dc, Hr) ==
              PolyMatrix::scalar(dc.complex->size(), basepoint_variable(dc, lam.from)));
      }
  }
}

TEST_CASE("path moves change A by the corner homotopy") {
  auto o = diagonal(3);
  auto g = from_grid(3, o);
  auto dc = compute_complex(g, Flavor::Minus);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      auto lam = grid_path(g, o, i, j, "l");
      auto moved = shifted_right(g, lam);
      HeegaardDiagram check = g;
      check.paths = {lam, moved};
      CHECK_NOTHROW(validate(check));
      // each shifted step sweeps across the crossing alpha_{r+1} cap beta_{c+1}
      PolyMatrix H(dc.complex->size(), dc.complex->size());
      for (const auto& s : lam.steps) {
        int c = s.before % 3;
        H += corner_homotopy(dc, s.alpha * 3 + (c + 1) % 3).m;
      }
      auto diff = rel_homology(dc, lam) + rel_homology(dc, moved);
      CHECK(diff.m == multiply(dc.complex->d, H, {}) + multiply(H, dc.complex->d, {}));
      // recrossing an alpha curve and coming back changes nothing
      PathSpec back = lam;
      const auto s0 = lam.steps[0];
      back.steps.insert(back.steps.begin(), {s0, {s0.alpha, s0.after, s0.before, -1}});
      check.paths = {back};
      CHECK_NOTHROW(validate(check));
      CHECK(rel_homology(dc, back) == rel_homology(dc, lam));
    }
}
