#include "hfg/report.hpp"

#include <algorithm>
#include <random>

#include "hfg/disk.hpp"
#include "hfg/models.hpp"

namespace hfg {

std::string status_string(Agreement a) {
  switch (a) {
    case Agreement::Exact: return "exact";
    case Agreement::Homotopy: return "homotopy";
    default: return "fail";
  }
}

namespace {

CheckResult exact_if(const std::string& name, const std::string& anchor, bool ok, std::string detail = "") {
  return {name, anchor, ok ? Agreement::Exact : Agreement::Differ, std::move(detail)};
}

ComplexPtr point_complex(const std::vector<std::string>& vars, const Truncation& t) {
  ColoredComplex c;
  c.ring = make_ring(vars);
  c.trunc = t;
  c.gens = {"x"};
  c.d = PolyMatrix(1, 1);
  return make_complex(std::move(c));
}

CheckResult sphere_model() {
  auto dc = compute_complex(s2_model("w", "wp"), Flavor::Minus);
  int bigons = 0;
  for (const auto& disk : dc.table.disks)
    if (disk.cls == DiskClass::EmptyBigon) ++bigons;
  const auto& d = dc.complex->d;
  const Ring& R = *dc.complex->ring;
  const Poly T = Poly::var(R.require("w")) + Poly::var(R.require("wp"));
  bool shape = dc.complex->size() == 2 && d.at(0, 0).is_zero() && d.at(1, 1).is_zero() &&
               ((d.at(0, 1) == T && d.at(1, 0).is_zero()) || (d.at(1, 0) == T && d.at(0, 1).is_zero()));
  bool ok = dc.table.disks.size() == 4 && bigons == 4 && shape && dc.combinatorial();
  return exact_if("sphere model differential", "two-generator model, four bigons", ok,
                  std::to_string(dc.table.disks.size()) + " index-one domains, " + std::to_string(bigons) +
                      " empty bigons");
}

std::vector<CheckResult> stabilization_identities(std::mt19937_64& rng, const SuiteOptions& opt) {
  auto ring = make_ring({"z", "a"});
  bool chain = true, edge = true, unit = true, square = true, phi = true;
  for (int trial = 0; trial < opt.random_bases; ++trial) {
    auto c = random_complex(rng, ring, opt.t);
    auto s = free_stabilize(c, "w", "z");
    const ColoredComplex& S = *s.stab;
    const int n = S.size();
    auto sp = s_plus(s), sm = s_minus(s), a = model_edge(s);
    const Poly uw = Poly::var(S.ring->require("w")), uz = Poly::var(S.ring->require("z"));
    chain = chain && d_squared_check(S) && is_chain_map(sp) && is_chain_map(sm);
    edge = edge && chain_defect(a) == PolyMatrix::scalar(n, (uw + uz).truncated(opt.t));
    unit = unit && compose(sm, compose(a, sp)).m == PolyMatrix::identity(c->size());
    square = square && compose(a, a).m == PolyMatrix::scalar(n, uz).truncated(opt.t);
    phi = phi && compose(sp, sm) == formal_phi(s.stab, "w");
  }
  const std::string k = "over " + std::to_string(opt.random_bases) + " random bases";
  return {exact_if("S+ and S- are chain maps", "free stabilization maps", chain, k),
          exact_if("A d + d A = U_w + U_w'", "model path operator", edge, k),
          exact_if("S- A S+ = 1", "model path operator", unit, k),
          exact_if("A^2 = U_w'", "model path operator", square, k),
          exact_if("S+ S- = Phi_w", "stabilization and Phi_w", phi, k)};
}

CheckResult transitions(std::mt19937_64& rng, const SuiteOptions& opt) {
  bool ok = true;
  for (int trial = 0; trial < opt.random_bases; ++trial) {
    RandomComplexOptions ro;
    ro.pairs = 2 + trial % 3;
    ro.max_degree = 3;
    auto c0 = random_complex(rng, make_ring({"z"}), Truncation::none(), ro);
    auto tr = model_transition(c0, "z", "w", "wp", opt.t);
    ok = ok && is_chain_map(tr.phi) && d_squared_check(*tr.h1) && d_squared_check(*tr.h2);
  }
  return exact_if("transition map is a chain map", "transition matrix (1, 0; L, 1)", ok,
                  std::to_string(opt.random_bases) + " random bases");
}

std::vector<CheckResult> phi_calculus(std::mt19937_64& rng, const SuiteOptions& opt) {
  bool chain = true, witness = true, square = true;
  for (int trial = 0; trial < opt.random_bases; ++trial) {
    auto c0 = random_complex(rng, make_ring({"z", "a"}), Truncation::none());
    auto s = free_stabilize(c0, "w", "z");
    for (auto c : {s.stab, c0}) {
      const std::string w = c == s.stab ? "w" : "z";
      auto phi = formal_phi(c, w);
      chain = chain && is_chain_map(phi);
      witness = witness && phi_is_dD_plus_Dd(*c, w, 4);
      square = square && (compose(phi, phi).m + chain_defect(phi_square_witness(c, w))).is_zero();
    }
  }
  auto s = free_stabilize(point_complex({"z"}, Truncation::total(4)), "w", "z");
  auto h = find_homotopy(formal_phi(s.stab, "w"), zero_map(s.stab, s.stab), HomotopyMode::Equivariant);
  return {exact_if("Phi_w is a chain map", "formal derivative of d", chain),
          exact_if("Phi_w = d D + D d", "non-equivariant witness", witness),
          exact_if("Phi_w^2 = d H + H d", "binomial witness", square),
          exact_if("no equivariant null-homotopy of Phi_w", "once-stabilized model at N=4", !h.found,
                   std::to_string(h.unknowns) + " unknowns, " + std::to_string(h.equations) + " equations")};
}

CheckResult model_basepoint_moving(const SuiteOptions& opt) {
  auto s = free_stabilize(point_complex({"z"}, opt.t), "w", "z");
  bool ok = basepoint_moving(s, model_edge(s)).m == PolyMatrix::identity(1);
  return exact_if("model basepoint moving is the identity", "S- A S+ on the model", ok);
}

const char* kY =
    "[vertices]\na h=0 in\nv h=1/2\nb h=1 out\nc h=1 out\n[edges]\ne1 a-v\ne2 v-b crit=(max@4/5,min@7/10)\n"
    "e3 v-c\n[ribbon]\nv: e1,e2,e3\n";

std::vector<CheckResult> graph_relations(const SuiteOptions& opt) {
  auto ctx = model_context({"w0"}, opt.t);
  std::vector<CheckResult> out;
  for (int n = 2; n <= 4; ++n) out.push_back(cyclic_invariance_check(ctx, n));
  out.push_back(thirds_check(ctx));
  auto y = parse_flow_string(kY);
  for (auto r : trivial_strand_checks(y, ctx)) out.push_back(r);
  auto decs = random_decompositions(y, opt.seed, 4);
  auto ref = graph_action(decs[0].d, ctx);
  Agreement worst = is_chain_map(ref) ? Agreement::Exact : Agreement::Differ;
  // Exact < Homotopy < Differ
  for (size_t i = 1; i < decs.size(); ++i) worst = std::max(worst, compare_maps(ref, graph_action(decs[i].d, ctx)));
  out.push_back({"graph action independent of the decomposition", "Y graph, 4 decompositions", worst, ""});
  return out;
}

}  // namespace

std::vector<CheckResult> model_suite(const SuiteOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<CheckResult> out;
  out.push_back(sphere_model());
  for (auto& r : stabilization_identities(rng, opt)) out.push_back(std::move(r));
  out.push_back(transitions(rng, opt));
  for (auto& r : phi_calculus(rng, opt)) out.push_back(std::move(r));
  out.push_back(model_basepoint_moving(opt));
  for (auto& r : graph_relations(opt)) out.push_back(std::move(r));
  return out;
}

}  // namespace hfg
