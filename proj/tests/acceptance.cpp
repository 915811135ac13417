// One line per acceptance criterion. Tolerances are pinned below; every
// identity is checked as an exact matrix equality unless noted.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "catalog.hpp"
#include "hfg/disk.hpp"
#include "hfg/models.hpp"

using namespace hfg;

namespace {

constexpr double kGrid4Seconds = 5.0;
constexpr double kTransitionSeconds = 1.0;
constexpr int kTransitionInstances = 20;
constexpr int kTransitionDegree = 6;
constexpr int kActionN = 4;
constexpr int kDecompositions = 3;
constexpr int kStrongBound = 8;
constexpr int kModelN = 6;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<int> diagonal(int n) {
  std::vector<int> o(n);
  std::iota(o.begin(), o.end(), 0);
  return o;
}

PolyMatrix defect(const DiagramComplex& dc, const PolyMatrix& a) {
  const auto& t = dc.complex->trunc;
  return multiply(dc.complex->d, a, t) + multiply(a, dc.complex->d, t);
}

PathSpec concat(const PathSpec& first, const PathSpec& second, const std::string& id) {
  PathSpec p{id, first.from, second.to, first.steps};
  p.steps.insert(p.steps.end(), second.steps.begin(), second.steps.end());
  return p;
}

// Every path of the test catalog on a grid: column paths between all pairs,
// vertical loops, the horizontal loop and the concatenated loops at O0.
std::vector<PathSpec> path_catalog(const HeegaardDiagram& g, const std::vector<int>& o) {
  const int n = g.d;
  std::vector<PathSpec> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out.push_back(grid_path(g, o, i, j, "p" + std::to_string(i) + std::to_string(j)));
  for (int c = 0; c < n; ++c) out.push_back(grid_vertical_loop(g, o, 0, c, "v" + std::to_string(c)));
  out.push_back(grid_horizontal_loop(g, 0, "h"));
  for (int j = 1; j < n; ++j)
    out.push_back(concat(grid_path(g, o, 0, j, "a"), grid_path(g, o, j, 0, "b"), "g" + std::to_string(j)));
  return out;
}

Outcome grid_differentials() {
  Outcome r;
  for (int n : {2, 3, 4}) {
    auto t0 = std::chrono::steady_clock::now();
    auto h = from_grid(n, diagonal(n));
    auto dc = compute_complex(h, Flavor::Minus);
    auto hat = compute_complex(h, Flavor::Hat);
    int rank = 0;
    for (const auto& [cls, k] : truncated_homology(*hat.complex, HomologyFlavor::Hat)) rank += k;
    double secs = seconds_since(t0);
    const std::string tag = std::to_string(n) + "x" + std::to_string(n);
    r.require(dc.combinatorial() && !dc.table.inconclusive, tag + " combinatorial");
    r.require(d_squared_check(*dc.complex), tag + " d^2 = 0");
    r.require(rank == 1 << (n - 1), tag + " hat rank " + std::to_string(rank));
    if (n == 4) r.require(secs < kGrid4Seconds, "4x4 runtime");
    std::ostringstream os;
    os << tag << ": " << dc.complex->size() << " gens, hat rank " << rank << ", " << secs << " s";
    r.note(os.str());
  }
  return r;
}

Outcome sphere_model() {
  Outcome r;
  auto dc = compute_complex(s2_model("w", "wp"), Flavor::Minus);
  const auto& c = *dc.complex;
  int bigons = 0;
  for (const auto& d : dc.table.disks)
    if (d.cls == DiskClass::EmptyBigon) ++bigons;
  r.require(dc.table.disks.size() == 4, "four positive index-one domains");
  r.require(bigons == 4, "all empty bigons");
  const Poly T = Poly::var(c.ring->require("w")) + Poly::var(c.ring->require("wp"));
  bool one_way = (c.d.at(0, 1) == T && c.d.at(1, 0).is_zero()) || (c.d.at(1, 0) == T && c.d.at(0, 1).is_zero());
  r.require(c.size() == 2 && one_way && c.d.at(0, 0).is_zero() && c.d.at(1, 1).is_zero(), "differential shape");
  r.note(std::to_string(dc.table.disks.size()) + " domains, " + std::to_string(bigons) + " empty bigons");
  return r;
}

Outcome relative_homology() {
  Outcome r;
  int checked = 0;
  for (int n : {2, 3, 4}) {
    auto o = diagonal(n);
    auto g = from_grid(n, o);
    auto dc = compute_complex(g, Flavor::Minus);
    for (const auto& p : path_catalog(g, o)) {
      auto a = rel_homology(dc, p);
      Poly u = basepoint_variable(dc, p.from) + basepoint_variable(dc, p.to);
      r.require(defect(dc, a.m) == PolyMatrix::scalar(dc.complex->size(), u), p.id + " on " + std::to_string(n));
      ++checked;
    }
  }
  r.note(std::to_string(checked) + " path operators on 2x2, 3x3, 4x4");
  return r;
}

std::vector<std::string> endpoints(const PathSpec& p) {
  if (p.is_loop()) return {};
  return {p.from, p.to};
}

Outcome commutators() {
  Outcome r;
  std::set<int> shared_counts;
  for (auto o : std::vector<std::vector<int>>{{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}) {
    auto g = from_grid(3, o);
    auto dc = compute_complex(g, Flavor::Minus);
    std::vector<std::pair<PathSpec, PathSpec>> pairs = {
        {grid_path(g, o, 0, 1, "a"), grid_vertical_loop(g, o, 2, 1, "b")},
        {grid_path(g, o, 0, 1, "a"), grid_path(g, o, 1, 2, "b")},
        {grid_path(g, o, 0, 2, "a"), grid_path(g, o, 2, 1, "b")},
        {grid_path(g, o, 0, 1, "a"), grid_path(g, o, 1, 0, "b")},
        {grid_path(g, o, 2, 0, "a"), grid_path(g, o, 2, 0, "b")},
    };
    for (const auto& [l1, l2] : pairs) {
      auto a1 = rel_homology(dc, l1).m, a2 = rel_homology(dc, l2).m;
      auto h = commutator_homotopy(dc, l1, l2).m;
      const auto& t = dc.complex->trunc;
      PolyMatrix lhs = multiply(a1, a2, t) + multiply(a2, a1, t) + defect(dc, h);
      Poly u;
      int shared = 0;
      auto e2 = endpoints(l2);
      for (const auto& w : endpoints(l1))
        if (std::find(e2.begin(), e2.end(), w) != e2.end()) {
          u += basepoint_variable(dc, w);
          ++shared;
        }
      shared_counts.insert(shared);
      r.require(lhs == PolyMatrix::scalar(dc.complex->size(), u), l1.id + l2.id);
    }
  }
  r.require(shared_counts == std::set<int>{0, 1, 2}, "pairs with 0, 1 and 2 shared endpoints");
  r.note("15 pairs on three 3x3 grids, shared endpoints 0, 1, 2");
  return r;
}

Outcome squares() {
  Outcome r;
  int checked = 0;
  for (auto o : std::vector<std::vector<int>>{{0, 1, 2}, {1, 2, 0}}) {
    auto g = from_grid(3, o);
    auto dc = compute_complex(g, Flavor::Minus);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        auto lam = grid_path(g, o, i, j, "l");
        auto a = rel_homology(dc, lam).m;
        auto h = square_homotopy(dc, lam).m;
        PolyMatrix lhs = multiply(a, a, dc.complex->trunc) + defect(dc, h);
        // upward crossings count +1, which selects the end basepoint
        r.require(lhs == PolyMatrix::scalar(dc.complex->size(), basepoint_variable(dc, lam.to)), lam.id);
        ++checked;
      }
  }
  r.note(std::to_string(checked) + " paths");
  return r;
}

ComplexPtr point_complex(const std::vector<std::string>& vars, const Truncation& t) {
  ColoredComplex c;
  c.ring = make_ring(vars);
  c.trunc = t;
  c.gens = {"x"};
  c.d = PolyMatrix(1, 1);
  return make_complex(std::move(c));
}

Outcome operator_models() {
  Outcome r;
  std::mt19937_64 rng(6);
  const Truncation t = Truncation::total(kModelN);
  std::vector<ComplexPtr> bases{point_complex({"z"}, t)};
  for (int i = 0; i < 20; ++i) bases.push_back(random_complex(rng, make_ring({"z", "a"}), t));
  for (const auto& c : bases) {
    auto s = free_stabilize(c, "w", "z");
    const ColoredComplex& S = *s.stab;
    const int n = S.size();
    auto sp = s_plus(s), sm = s_minus(s), a = model_edge(s);
    const Poly uw = Poly::var(S.ring->require("w")), uz = Poly::var(S.ring->require("z"));
    r.require(chain_defect(a) == PolyMatrix::scalar(n, uw + uz).truncated(t), "A d + d A");
    r.require(compose(sm, compose(a, sp)).m == PolyMatrix::identity(c->size()), "S- A S+ = 1");
    r.require(compose(a, a).m == PolyMatrix::scalar(n, uz).truncated(t), "A^2 = U_w'");
    r.require(compose(sp, sm) == formal_phi(s.stab, "w"), "S+ S- = Phi_w");
    r.require(is_chain_map(sp) && is_chain_map(sm), "S+, S- chain maps");
  }
  r.note(std::to_string(bases.size()) + " bases at N=" + std::to_string(kModelN));
  return r;
}

Outcome transitions() {
  Outcome r;
  std::mt19937_64 rng(7);
  double worst = 0;
  for (int i = 0; i < kTransitionInstances; ++i) {
    RandomComplexOptions opt;
    opt.pairs = 2 + i % 3;
    opt.max_degree = 3;
    auto c0 = random_complex(rng, make_ring({"z"}), Truncation::none(), opt);
    auto t0 = std::chrono::steady_clock::now();
    auto tr = model_transition(c0, "z", "w", "wp", Truncation::total(kTransitionDegree));
    r.require(d_squared_check(*c0) && d_squared_check(*tr.h1) && d_squared_check(*tr.h2), "d^2 = 0");
    r.require(is_chain_map(tr.phi), "instance " + std::to_string(i) + " chain map");
    double secs = seconds_since(t0);
    worst = std::max(worst, secs);
    r.require(secs < kTransitionSeconds, "instance runtime");
  }
  std::ostringstream os;
  os << kTransitionInstances << " instances, slowest " << worst << " s";
  r.note(os.str());
  return r;
}

Outcome phi_calculus() {
  Outcome r;
  std::vector<std::pair<ComplexPtr, std::string>> cases;
  for (int n : {2, 3, 4}) {
    auto dc = compute_complex(from_grid(n, diagonal(n)), Flavor::Minus);
    for (int i = 0; i < n; ++i) cases.push_back({dc.complex, "O" + std::to_string(i)});
  }
  cases.push_back({compute_complex(s2_model("w", "wp"), Flavor::Minus).complex, "w"});
  std::mt19937_64 rng(8);
  for (int i = 0; i < 5; ++i) {
    auto c0 = random_complex(rng, make_ring({"z", "a"}), Truncation::none());
    cases.push_back({c0, "z"});
    cases.push_back({free_stabilize(c0, "w", "z").stab, "w"});
  }
  for (const auto& [c, w] : cases) {
    auto phi = formal_phi(c, w);
    r.require(is_chain_map(phi), "Phi_w d + d Phi_w = 0");
    r.require(phi_is_dD_plus_Dd(*c, w, 4), "Phi_w = d D + D d");
    r.require((compose(phi, phi).m + chain_defect(phi_square_witness(c, w))).is_zero(), "binomial witness");
  }
  auto s = free_stabilize(point_complex({"z"}, Truncation::total(4)), "w", "z");
  auto h = find_homotopy(formal_phi(s.stab, "w"), zero_map(s.stab, s.stab), HomotopyMode::Equivariant);
  r.require(!h.found, "no equivariant null-homotopy at N=4");
  r.note(std::to_string(cases.size()) + " complexes; equivariant solver: " + std::to_string(h.unknowns) +
         " unknowns, no solution");
  return r;
}

Outcome graph_actions() {
  Outcome r;
  auto model = model_context({"w0"}, Truncation::total(kActionN));
  auto grid = testdata::grid_context(3, 0, Truncation::total(kActionN));
  std::set<int> kinds;
  int exact = 0, homotopy = 0;
  auto tally = [&](Agreement a, const std::string& what) {
    r.require(a != Agreement::Differ, what);
    (a == Agreement::Exact ? exact : homotopy)++;
  };
  for (const auto& name : testdata::catalog_names()) {
    for (int base = 0; base < 2; ++base) {
      const ActionContext& ctx = base ? grid.ctx : model;
      auto g = base ? testdata::on_grid(testdata::flow(name)) : testdata::flow(name);
      auto decs = random_decompositions(g, 17, kDecompositions);
      auto ref = graph_action(decs[0].d, ctx);
      r.require(is_chain_map(ref), name + " chain map");
      for (size_t i = 1; i < decs.size(); ++i) tally(compare_maps(ref, graph_action(decs[i].d, ctx)), name);
      // every move applicable along a random walk, one at a time
      std::mt19937_64 rng(99);
      auto d = decs[0].d;
      for (int step = 0; step < 4; ++step) {
        auto moves = applicable_moves(d);
        for (const auto& m : moves) {
          kinds.insert(m.kind);
          tally(compare_maps(ref, graph_action(apply_move(d, m).d, ctx)), name + " " + m.describe());
        }
        d = apply_move(d, moves[rng() % moves.size()]).d;
      }
    }
  }
  r.require(kinds.size() == 6, "all six move kinds exercised");
  r.note(std::to_string(testdata::catalog_names().size()) + " graphs on model and 3x3 grid bases at N=" +
         std::to_string(kActionN) + ": " + std::to_string(exact) + " exact, " + std::to_string(homotopy) +
         " homotopy, move kinds " + std::to_string(kinds.size()));
  return r;
}

Outcome cyclic() {
  Outcome r;
  auto ctx = model_context({"w0"}, Truncation::total(kModelN));
  for (int n = 2; n <= 4; ++n) {
    auto c = cyclic_invariance_check(ctx, n);
    r.require(c.ok(), "n=" + std::to_string(n));
    r.note("n=" + std::to_string(n) + " " + to_string(c.level));
  }
  return r;
}

Outcome loops() {
  Outcome r;
  int count = 0;
  for (int shift = 0; shift < 2; ++shift) {
    auto grid = testdata::grid_context(3, shift, Truncation::none());
    for (int j = 1; j < 3; ++j) {
      const auto& ag = grid.ctx.paths.at("g" + std::to_string(j)).a;
      r.require(!ag.is_zero(), "loop acts nontrivially");
      auto p = pi1_two_charts(grid.dc.complex, "O0", ag, Truncation::total(kActionN));
      r.require(p.bm1_identity, "BM(lambda1) = 1");
      r.require(p.level != Agreement::Differ, "composite ~ 1 + Phi_w A_gamma");
      r.note("loop " + std::to_string(++count) + " " + to_string(p.level));
    }
  }
  auto s = free_stabilize(point_complex({"z"}, Truncation::total(kActionN)), "w", "z");
  r.require(basepoint_moving(s, model_edge(s)).m == PolyMatrix::identity(1), "model BM = Id");
  r.require(count >= 3, "at least three loops");
  r.note("model BM = Id exact");
  return r;
}

Outcome admissibility() {
  Outcome r;
  int grids = 0;
  for (int n : {2, 3, 4}) {
    auto o = diagonal(n);
    do {
      r.require(check_weak_admissibility(from_grid(n, o)).admissible, "grid weakly admissible");
      ++grids;
    } while (std::next_permutation(o.begin(), o.end()));
  }
  auto bad = s1s2_diagram(true);
  auto w = check_weak_admissibility(bad);
  r.require(!w.admissible && is_periodic(bad, w.witness), "non-admissible example has a periodic witness");
  std::string witness;
  for (int k = 0; k < bad.nregions(); ++k)
    if (w.witness[k]) witness += " " + bad.regions[k].id + "=" + std::to_string(w.witness[k]);
  auto t = s1s2_diagram(false);
  auto s = check_strong_admissibility(t, enumerate_generators(t)[0], kStrongBound);
  r.require(s.status == StrongStatus::Verified, "strong admissibility of S1xS2 at B=8");
  r.note(std::to_string(grids) + " grids weakly admissible; witness" + witness + "; strong: " + s.reason);
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"grid differentials", grid_differentials},
      {"sphere model complex", sphere_model},
      {"relative homology relation", relative_homology},
      {"commutator homotopy", commutators},
      {"square homotopy", squares},
      {"operator model identities", operator_models},
      {"transition map", transitions},
      {"Phi_w calculus", phi_calculus},
      {"graph action well-defined", graph_actions},
      {"cyclic reordering", cyclic},
      {"loop action", loops},
      {"admissibility", admissibility},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %2zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
