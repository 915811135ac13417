#pragma once

#include <map>
#include <string>
#include <vector>

#include "hfg/disk.hpp"
#include "hfg/flow.hpp"
#include "hfg/models.hpp"

namespace hfg {

// A relative homology operator on the base complex between two of its
// basepoints (equal for loops).
struct PathOperator {
  std::string from, to;
  PolyMatrix a;
};

struct ActionContext {
  ComplexPtr base;
  std::map<std::string, PathOperator> paths;  // route token "@id" -> operator
};

// One generator over the extra basepoints; every extra after the first is
// freely stabilized with the first as partner.
ActionContext model_context(const std::vector<std::string>& extras, const Truncation& t);
// Base complex from a diagram, with the given paths realized by their
// relative homology maps. The diagram complex should be untruncated; the
// context is truncated by t.
ActionContext diagram_context(const DiagramComplex& dc, const std::vector<PathSpec>& paths, const Truncation& t);

// A_{back * out} = A_out + A_back, a loop at out.from through out.to.
PathOperator concatenated_loop(const DiagramComplex& dc, const PathSpec& out, const PathSpec& back);

// Stabilization tower over a context. Every tower vertex is a free
// stabilization whose partner is its root basepoint and whose color is the
// root's color, so d = d_base (x) 1 on every layer. The generator of layer S
// with base index b and minus-set M has index b * 2^|S| + bits, the first
// vertex of S in tower order being the most significant bit.
class Tower {
 public:
  Tower(const ActionContext& ctx, std::vector<std::string> vertices, std::vector<std::string> roots);

  const ActionContext& context() const { return *ctx_; }
  const std::vector<std::string>& vertices() const { return names_; }
  int id(const std::string& v) const;  // -1 for roots and unknown names
  bool is_root(const std::string& v) const;
  const std::string& root(int v) const { return roots_.at(v); }
  // Layer with the given vertices present, in tower order.
  ComplexPtr layer(std::vector<std::string> present) const;
  std::vector<std::string> sorted(std::vector<std::string> present) const;

 private:
  const ActionContext* ctx_;
  std::vector<std::string> names_, roots_;
  std::map<std::string, int> index_;
  mutable std::map<std::vector<int>, ComplexPtr> layers_;
};

// One factor of an operator word on the tower.
struct Step {
  enum Kind { Plus, Minus, Hop, Path, Route } kind = Hop;
  std::string a, b;   // Plus/Minus: a; Hop: endpoints; Path: a = path id; Route: endpoints
  std::string route;  // Route: the declared hop list
};

Step plus_step(const std::string& v);
Step minus_step(const std::string& v);
Step hop_step(const std::string& a, const std::string& b);

// The word applied left to right, as a map between layers. Columns are
// independent; the OpenMP kernel and the serial reference agree exactly.
namespace serial {
ModuleMap evaluate(const Tower& t, const std::vector<std::string>& present, const std::vector<Step>& word);
}
namespace omp {
ModuleMap evaluate(const Tower& t, const std::vector<std::string>& present, const std::vector<Step>& word);
}
inline ModuleMap evaluate(const Tower& t, const std::vector<std::string>& present, const std::vector<Step>& word) {
  return omp::evaluate(t, present, word);
}

// Tower order for a decomposition: graph vertices in declaration order, then
// level points by first appearance (reversed when asked, for order checks).
Tower decomposition_tower(const CerfDecomposition& d, const ActionContext& ctx, bool reverse_level_points = false);
std::vector<Step> elementary_word(const CerfDecomposition& d, int piece);
ModuleMap elementary_action(const Tower& t, const CerfDecomposition& d, int piece,
                            const std::vector<std::string>& present);
// C_{V0} -> C_{V1}.
ModuleMap graph_action(const CerfDecomposition& d, const ActionContext& ctx, bool reverse_level_points = false);

enum class Agreement { Exact, Homotopy, Differ };
std::string to_string(Agreement a);
// Exact equality first, then an equivariant homotopy in the maps' truncation.
// The matrices are compared on f's complexes.
Agreement compare_maps(const ModuleMap& f, const ModuleMap& g);

struct CheckResult {
  std::string name;
  std::string anchor;
  Agreement level = Agreement::Differ;
  std::string detail;
  bool ok() const { return level != Agreement::Differ; }
};

// S-_v E_{sigma(n)} ... E_{sigma(1)} S+_v over all cyclic rotations, E_i the
// edge from v to u_i.
CheckResult cyclic_invariance_check(const ActionContext& ctx, int n);
// An edge a-d cut into thirds at b, c: all six orders of the three pieces
// agree, and agree with the uncut edge.
CheckResult thirds_check(const ActionContext& ctx);

// Variants of g used by the trivial strand identities.
FlowGraph subdivide_edge(const FlowGraph& g, int edge, const std::string& vertex);  // A_{G0} = A_G
FlowGraph add_incoming_strand(const FlowGraph& g, int to_vertex, const std::string& v);   // A_{G'} S+_v = A_G
FlowGraph add_outgoing_strand(const FlowGraph& g, int from_vertex, const std::string& v);  // S-_v A_{G''} = A_G
std::vector<CheckResult> trivial_strand_checks(const FlowGraph& g, const ActionContext& ctx);

// A Phi_w + Phi_w A = 1, with w the stabilization basepoint of s. Exact,
// else with the witness d A' + A' d (A' = dA/dU_w), else by the solver.
CheckResult phi_commutator_check(const Stabilized& s, const ModuleMap& a);

// S-_w A S+_w'.
ModuleMap basepoint_moving(const Stabilized& s, const ModuleMap& a);
// 1 + Phi_w A_gamma.
ModuleMap pi1_action(ComplexPtr c, const std::string& w, const PolyMatrix& a_gamma);

// Loop gamma at basepoint z of c0 split as lambda2 * lambda1 through a new
// basepoint w'. BM(lambda1) runs through the two charts H1, H2 of the
// transition map, BM(lambda2) adds A_gamma in H2. After identifying w' with
// w the composite is compared with 1 + Phi_w A_gamma.
struct Pi1Result {
  ModuleMap bm1, bm2;        // over the split ring
  ModuleMap composite;       // over c0's ring, truncated
  ModuleMap expected;        // 1 + Phi_w A_gamma
  bool bm1_identity = false;
  bool composite_is_1_plus_a_phi = false;  // composite = 1 + A_gamma Phi_w exactly
  Agreement level = Agreement::Differ;     // composite vs expected
};
Pi1Result pi1_two_charts(ComplexPtr c0, const std::string& z, const PolyMatrix& a_gamma, const Truncation& t);

}  // namespace hfg
