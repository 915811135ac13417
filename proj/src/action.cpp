#include "hfg/action.hpp"

#include <algorithm>
#include <set>

#include "text.hpp"

namespace hfg {

ActionContext model_context(const std::vector<std::string>& extras, const Truncation& t) {
  if (extras.empty()) throw InputError("model context needs at least one basepoint");
  ColoredComplex c;
  c.ring = make_ring({extras[0]});
  c.trunc = t;
  c.gens = {"x"};
  c.d = PolyMatrix(1, 1);
  c.colors[extras[0]] = extras[0];
  ComplexPtr base = make_complex(std::move(c));
  for (size_t i = 1; i < extras.size(); ++i) base = free_stabilize(base, extras[i], extras[0]).stab;
  ActionContext ctx;
  ctx.base = base;
  return ctx;
}

ActionContext diagram_context(const DiagramComplex& dc, const std::vector<PathSpec>& paths, const Truncation& t) {
  ActionContext ctx;
  ctx.base = make_complex(with_truncation(*dc.complex, t));
  for (const auto& p : paths) {
    if (ctx.paths.count(p.id)) throw InputError("duplicate path '" + p.id + "'");
    ctx.paths[p.id] = PathOperator{p.from, p.to, rel_homology(dc, p).m.truncated(t)};
  }
  return ctx;
}

PathOperator concatenated_loop(const DiagramComplex& dc, const PathSpec& out, const PathSpec& back) {
  if (out.to != back.from || back.to != out.from)
    throw InputError("paths '" + out.id + "' and '" + back.id + "' do not form a loop");
  return PathOperator{out.from, out.from, rel_homology(dc, out).m + rel_homology(dc, back).m};
}

Tower::Tower(const ActionContext& ctx, std::vector<std::string> vertices, std::vector<std::string> roots)
    : ctx_(&ctx), names_(std::move(vertices)), roots_(std::move(roots)) {
  if (names_.size() != roots_.size()) throw std::invalid_argument("one root per tower vertex");
  auto table = basepoint_table(*ctx.base);
  for (size_t i = 0; i < names_.size(); ++i) {
    if (table.count(names_[i])) throw InputError("tower vertex '" + names_[i] + "' is a basepoint of the base");
    if (!table.count(roots_[i])) throw InputError("root '" + roots_[i] + "' is not a basepoint of the base complex");
    if (!index_.emplace(names_[i], static_cast<int>(i)).second)
      throw InputError("duplicate tower vertex '" + names_[i] + "'");
  }
}

int Tower::id(const std::string& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}

bool Tower::is_root(const std::string& v) const { return basepoint_table(*ctx_->base).count(v) > 0; }

std::vector<std::string> Tower::sorted(std::vector<std::string> present) const {
  for (const auto& v : present)
    if (id(v) < 0) throw InputError("'" + v + "' is not a tower vertex");
  std::sort(present.begin(), present.end(), [&](const auto& a, const auto& b) { return id(a) < id(b); });
  return present;
}

ComplexPtr Tower::layer(std::vector<std::string> present) const {
  present = sorted(std::move(present));
  std::vector<int> key;
  for (const auto& v : present) key.push_back(id(v));
  auto it = layers_.find(key);
  if (it != layers_.end()) return it->second;
  const ColoredComplex& base = *ctx_->base;
  const int k = static_cast<int>(present.size());
  const int n = base.size();
  if (k > 20) throw InputError("tower layer too large");
  const int w = 1 << k;
  ColoredComplex c;
  c.ring = base.ring;
  c.trunc = base.trunc;
  c.colors = basepoint_table(base);
  for (const auto& v : present) c.colors[v] = c.colors.at(roots_[id(v)]);
  for (int b = 0; b < n; ++b)
    for (int bits = 0; bits < w; ++bits) {
      std::string g = base.gens[b];
      for (int p = 0; p < k; ++p) g += "|" + present[p] + ((bits >> (k - 1 - p)) & 1 ? "-" : "+");
      c.gens.push_back(g);
      if (!base.spinc.empty()) c.spinc.push_back(base.spinc[b]);
    }
  c.d = PolyMatrix(n * w, n * w);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (base.d.at(i, j).is_zero()) continue;
      for (int bits = 0; bits < w; ++bits) c.d.at(i * w + bits, j * w + bits) = base.d.at(i, j);
    }
  auto out = make_complex(std::move(c));
  layers_[key] = out;
  return out;
}

Step plus_step(const std::string& v) { return Step{Step::Plus, v, "", ""}; }
Step minus_step(const std::string& v) { return Step{Step::Minus, v, "", ""}; }
Step hop_step(const std::string& a, const std::string& b) { return Step{Step::Hop, a, b, ""}; }

namespace {

using Key = std::pair<int, std::vector<int>>;  // base generator, minus-set

struct Chain {
  std::vector<int> present;  // tower ids, sorted
  std::map<Key, Poly> terms;

  void add(const Key& k, const Poly& p) {
    if (p.is_zero()) return;
    auto& slot = terms[k];
    slot += p;
    if (slot.is_zero()) terms.erase(k);
  }
  void add(const Chain& o) {
    for (const auto& [k, p] : o.terms) add(k, p);
  }
};

std::vector<int> with(std::vector<int> s, int v) {
  s.insert(std::lower_bound(s.begin(), s.end(), v), v);
  return s;
}

std::vector<int> without(std::vector<int> s, int v) {
  s.erase(std::lower_bound(s.begin(), s.end(), v));
  return s;
}

bool has(const std::vector<int>& s, int v) { return std::binary_search(s.begin(), s.end(), v); }

class Engine {
 public:
  explicit Engine(const Tower& t) : t_(t), trunc_(t.context().base->trunc) {
    auto table = basepoint_table(*t.context().base);
    const Ring& R = *t.context().base->ring;
    for (size_t v = 0; v < t.vertices().size(); ++v)
      u_.push_back(Poly::var(R.require(table.at(t.root(static_cast<int>(v))))).truncated(trunc_));
  }

  Chain apply(const Chain& c, const Step& s) const {
    switch (s.kind) {
      case Step::Plus: {
        int v = vertex(s.a);
        if (has(c.present, v)) throw InputError("S+ at '" + s.a + "', which is already present");
        Chain r = c;
        r.present = with(c.present, v);
        return r;
      }
      case Step::Minus: {
        int v = vertex(s.a);
        if (!has(c.present, v)) throw InputError("S- at '" + s.a + "', which is not present");
        Chain r;
        r.present = without(c.present, v);
        for (const auto& [k, p] : c.terms)
          if (has(k.second, v)) r.add({k.first, without(k.second, v)}, p);
        return r;
      }
      case Step::Hop: {
        Chain r = hop(c, s.a);
        r.add(hop(c, s.b));
        return r;
      }
      case Step::Path:
        return path(c, s.a);
      case Step::Route:
        return route(c, s);
    }
    return c;
  }

 private:
  int vertex(const std::string& v) const {
    int i = t_.id(v);
    if (i < 0) throw InputError("'" + v + "' is not a tower vertex");
    return i;
  }

  // h_v plus U times the s_j with j after v on the same root; zero at a root
  Chain hop(const Chain& c, const std::string& name) const {
    Chain r;
    r.present = c.present;
    if (t_.id(name) < 0) {
      if (!t_.is_root(name)) throw InputError("unknown hop endpoint '" + name + "'");
      return r;
    }
    const int v = t_.id(name);
    if (!has(c.present, v)) throw InputError("hop at '" + name + "', which is not present");
    const Poly& U = u_[v];
    std::vector<int> later;
    for (int j : c.present)
      if (j > v && t_.root(j) == t_.root(v)) later.push_back(j);
    for (const auto& [k, p] : c.terms) {
      if (has(k.second, v)) r.add({k.first, without(k.second, v)}, p.mul(U, trunc_));
      else r.add({k.first, with(k.second, v)}, p);
      for (int j : later)
        if (has(k.second, j)) r.add({k.first, without(k.second, j)}, p.mul(U, trunc_));
    }
    return r;
  }

  // A (x) 1 plus the correction on vertices whose root is exactly one endpoint
  Chain path(const Chain& c, const std::string& id) const {
    const auto& paths = t_.context().paths;
    auto it = paths.find(id);
    if (it == paths.end()) throw InputError("unknown path '@" + id + "'");
    const PathOperator& op = it->second;
    Chain r;
    r.present = c.present;
    std::vector<int> flip;
    for (int j : c.present)
      if ((t_.root(j) == op.from) != (t_.root(j) == op.to)) flip.push_back(j);
    const int n = op.a.rows();
    for (const auto& [k, p] : c.terms) {
      for (int i = 0; i < n; ++i) {
        const Poly& e = op.a.at(i, k.first);
        if (!e.is_zero()) r.add({i, k.second}, p.mul(e, trunc_));
      }
      for (int j : flip)
        if (has(k.second, j)) r.add({k.first, without(k.second, j)}, p.mul(u_[j], trunc_));
    }
    return r;
  }

  Chain route(const Chain& c, const Step& s) const {
    std::vector<std::string> tok = text::split(s.route, '>');
    if (tok.size() == 1 && !tok[0].empty() && tok[0][0] == '@') {
      const std::string root = t_.root(vertex(s.a));
      tok = {s.a, root, tok[0], root, s.b};
    }
    if (tok.size() < 2 || tok.front().empty() || tok.front()[0] == '@' || tok.back()[0] == '@')
      throw InputError("route '" + s.route + "' must start and end at vertices");
    tok.front() = s.a;
    tok.back() = s.b;
    Chain r;
    r.present = c.present;
    std::string prev;
    for (size_t i = 0; i < tok.size(); ++i) {
      if (tok[i].empty()) throw InputError("empty hop in route '" + s.route + "'");
      if (tok[i][0] == '@') {
        const std::string id = tok[i].substr(1);
        auto it = t_.context().paths.find(id);
        if (it == t_.context().paths.end()) throw InputError("unknown path '@" + id + "'");
        const std::string next = i + 1 < tok.size() ? tok[i + 1] : "";
        const auto& op = it->second;
        bool fits = (prev == op.from && next == op.to) || (prev == op.to && next == op.from);
        if (!fits) throw InputError("path '@" + id + "' does not join '" + prev + "' and '" + next + "'");
        r.add(path(c, id));
        continue;
      }
      if (!prev.empty() && prev != tok[i]) {
        r.add(hop(c, prev));
        r.add(hop(c, tok[i]));
      }
      prev = tok[i];
    }
    return r;
  }

  const Tower& t_;
  Truncation trunc_;
  std::vector<Poly> u_;
};

std::vector<int> ids_of(const Tower& t, const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const auto& v : names) {
    int i = t.id(v);
    if (i < 0) throw InputError("'" + v + "' is not a tower vertex");
    out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw InputError("repeated vertex in a layer");
  return out;
}

std::vector<std::string> names_of(const Tower& t, const std::vector<int>& ids) {
  std::vector<std::string> out;
  for (int i : ids) out.push_back(t.vertices()[i]);
  return out;
}

ModuleMap evaluate_columns(const Tower& t, const std::vector<std::string>& present, const std::vector<Step>& word,
                           bool parallel) {
  const std::vector<int> start = ids_of(t, present);
  std::vector<int> end = start;
  for (const auto& s : word) {
    if (s.kind == Step::Plus) end = with(end, t.id(s.a));
    if (s.kind == Step::Minus) {
      int v = t.id(s.a);
      if (v >= 0 && has(end, v)) end = without(end, v);
    }
  }
  auto src = t.layer(names_of(t, start));
  Engine eng(t);
  const int n = t.context().base->size();
  const int k = static_cast<int>(start.size());
  const int w = 1 << k;
  const int kt = static_cast<int>(end.size());
  const int wt = 1 << kt;
  std::vector<Chain> cols(static_cast<size_t>(n) * w);
  std::vector<std::string> errors(cols.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int col = 0; col < n * w; ++col) {
    const int b = col / w, bits = col % w;
    Chain c;
    c.present = start;
    std::vector<int> minus;
    for (int p = 0; p < k; ++p)
      if ((bits >> (k - 1 - p)) & 1) minus.push_back(start[p]);
    c.terms[{b, minus}] = Poly::one();
    try {
      for (const auto& s : word) c = eng.apply(c, s);
    } catch (const InputError& e) {
      errors[col] = e.what();
    }
    cols[col] = std::move(c);
  }
  for (const auto& e : errors)
    if (!e.empty()) throw InputError(e);
  auto tgt = t.layer(names_of(t, end));
  PolyMatrix m(n * wt, n * w);
  for (int col = 0; col < n * w; ++col) {
    if (cols[col].present != end) throw std::logic_error("layer bookkeeping mismatch");
    for (const auto& [key, p] : cols[col].terms) {
      int bits = 0;
      for (int q = 0; q < kt; ++q)
        if (has(key.second, end[q])) bits |= 1 << (kt - 1 - q);
      m.at(key.first * wt + bits, col) += p;
    }
  }
  return make_map(src, tgt, m);
}

}  // namespace

namespace serial {
ModuleMap evaluate(const Tower& t, const std::vector<std::string>& present, const std::vector<Step>& word) {
  return evaluate_columns(t, present, word, false);
}
}  // namespace serial

namespace omp {
ModuleMap evaluate(const Tower& t, const std::vector<std::string>& present, const std::vector<Step>& word) {
  return evaluate_columns(t, present, word, true);
}
}  // namespace omp

namespace {

std::string level_point_edge(const std::string& point) { return point.substr(0, point.find(':')); }

}  // namespace

Tower decomposition_tower(const CerfDecomposition& d, const ActionContext& ctx, bool reverse_level_points) {
  const FlowGraph& g = d.g;
  std::vector<std::string> names, roots;
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    names.push_back(g.vertices[v].id);
    roots.push_back(g.root_of(static_cast<int>(v)));
  }
  std::vector<std::string> points;
  std::set<std::string> seen(names.begin(), names.end());
  for (const auto& p : d.pieces)
    for (const auto* side : {&p.bottom, &p.top})
      for (const auto& n : *side)
        if (seen.insert(n).second) points.push_back(n);
  if (reverse_level_points) std::reverse(points.begin(), points.end());
  for (const auto& n : points) {
    int e = g.edge_index(level_point_edge(n));
    names.push_back(n);
    roots.push_back(g.root_of(g.edges.at(e).v1));
  }
  return Tower(ctx, names, roots);
}

std::vector<Step> elementary_word(const CerfDecomposition& d, int piece) {
  const Piece& p = d.pieces.at(piece);
  std::vector<Step> word;
  for (const auto& v : p.top) word.push_back(plus_step(v));
  if (!p.middle.empty()) word.push_back(plus_step(p.middle));
  auto edge_step = [&](const PieceEdge& pe) {
    if (!pe.route) return hop_step(pe.a, pe.b);
    const FlowEdge& fe = d.g.edges[pe.edge];
    const std::string& v1 = d.g.vertices[fe.v1].id;
    Step s{Step::Route, pe.a == v1 ? pe.a : pe.b, pe.a == v1 ? pe.b : pe.a, fe.route};
    return s;
  };
  std::set<int> mid(p.at_middle.begin(), p.at_middle.end());
  for (size_t i = 0; i < p.edges.size(); ++i)
    if (!mid.count(static_cast<int>(i))) word.push_back(edge_step(p.edges[i]));
  for (int i : p.at_middle) word.push_back(edge_step(p.edges[i]));
  for (const auto& v : p.bottom) word.push_back(minus_step(v));
  if (!p.middle.empty()) word.push_back(minus_step(p.middle));
  return word;
}

ModuleMap elementary_action(const Tower& t, const CerfDecomposition& d, int piece,
                            const std::vector<std::string>& present) {
  return evaluate(t, present, elementary_word(d, piece));
}

namespace {

std::vector<std::string> vertex_ids(const FlowGraph& g, const std::vector<int>& vs) {
  std::vector<std::string> out;
  for (int v : vs) out.push_back(g.vertices[v].id);
  return out;
}

std::vector<Step> graph_word(const CerfDecomposition& d) {
  std::vector<Step> word;
  for (size_t i = 0; i < d.pieces.size(); ++i) {
    auto w = elementary_word(d, static_cast<int>(i));
    word.insert(word.end(), w.begin(), w.end());
  }
  return word;
}

}  // namespace

ModuleMap graph_action(const CerfDecomposition& d, const ActionContext& ctx, bool reverse_level_points) {
  Tower t = decomposition_tower(d, ctx, reverse_level_points);
  return evaluate(t, vertex_ids(d.g, d.g.in_vertices()), graph_word(d));
}

std::string to_string(Agreement a) {
  switch (a) {
    case Agreement::Exact:
      return "exact";
    case Agreement::Homotopy:
      return "homotopy";
    case Agreement::Differ:
      return "fail";
  }
  return "?";
}

Agreement compare_maps(const ModuleMap& f, const ModuleMap& g) {
  if (f.m.rows() != g.m.rows() || f.m.cols() != g.m.cols()) return Agreement::Differ;
  if (f.m == g.m) return Agreement::Exact;
  if (!f.src->trunc.active()) return Agreement::Differ;
  try {
    auto r = find_homotopy(f, make_map(f.src, f.tgt, g.m), HomotopyMode::Equivariant);
    return r.found ? Agreement::Homotopy : Agreement::Differ;
  } catch (const InputError&) {
    return Agreement::Differ;
  }
}

namespace {

std::string first_root(const ActionContext& ctx) {
  auto table = basepoint_table(*ctx.base);
  const std::string& col = ctx.base->ring->name(0);
  for (const auto& [bp, c] : table)
    if (c == col && bp == col) return bp;
  for (const auto& [bp, c] : table)
    if (c == col) return bp;
  throw InputError("base complex has no basepoint");
}

Agreement worst(Agreement a, Agreement b) { return std::max(a, b); }

}  // namespace

CheckResult cyclic_invariance_check(const ActionContext& ctx, int n) {
  if (n < 1) throw InputError("cyclic check needs at least one edge");
  const std::string r = first_root(ctx);
  std::vector<std::string> names, roots, us;
  for (int i = 1; i <= n; ++i) {
    us.push_back("u" + std::to_string(i));
    names.push_back(us.back());
  }
  names.push_back("v");
  roots.assign(names.size(), r);
  Tower t(ctx, names, roots);
  auto word = [&](const std::vector<int>& order) {
    std::vector<Step> w{plus_step("v")};
    for (int i : order) w.push_back(hop_step("v", us[i]));
    w.push_back(minus_step("v"));
    return w;
  };
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  const ModuleMap ref = evaluate(t, us, word(order));
  CheckResult res{"cyclic reordering n=" + std::to_string(n), "cyclic reordering at a vertex", Agreement::Exact, ""};
  for (int rot = 1; rot < n; ++rot) {
    std::rotate(order.begin(), order.begin() + 1, order.end());
    res.level = worst(res.level, compare_maps(ref, evaluate(t, us, word(order))));
  }
  // outside the lemma: how many orders agree at all
  std::sort(order.begin(), order.end());
  int agree = 0, total = 0;
  do {
    ++total;
    if (evaluate(t, us, word(order)).m == ref.m) ++agree;
  } while (std::next_permutation(order.begin(), order.end()));
  res.detail = std::to_string(n) + " rotations; " + std::to_string(agree) + " of " + std::to_string(total) +
               " orders agree exactly";
  return res;
}

CheckResult thirds_check(const ActionContext& ctx) {
  const std::string r = first_root(ctx);
  Tower t(ctx, {"a", "b", "c", "d"}, {r, r, r, r});
  const std::vector<Step> pieces{hop_step("a", "b"), hop_step("b", "c"), hop_step("c", "d")};
  const ModuleMap whole = evaluate(t, {"a", "d"}, {hop_step("a", "d")});
  CheckResult res{"thirds", "edge cut into thirds", Agreement::Exact, ""};
  std::vector<int> sigma{0, 1, 2};
  int count = 0;
  do {
    std::vector<Step> w{plus_step("b"), plus_step("c")};
    for (int i : sigma) w.push_back(pieces[i]);
    w.push_back(minus_step("b"));
    w.push_back(minus_step("c"));
    res.level = worst(res.level, compare_maps(whole, evaluate(t, {"a", "d"}, w)));
    ++count;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  res.detail = std::to_string(count) + " orders compared with the uncut edge";
  return res;
}

namespace {

std::vector<Rational> singular_heights(const FlowGraph& g) {
  std::vector<Rational> hs;
  for (const auto& v : g.vertices)
    if (v.role == VertexRole::Interior) hs.push_back(v.h);
  for (const auto& e : g.edges)
    for (const auto& c : e.crit) hs.push_back(c.h);
  std::sort(hs.begin(), hs.end());
  return hs;
}

// midpoint of the widest gap between lo and hi avoiding singular heights
Rational free_height(const FlowGraph& g, Rational lo, Rational hi) {
  if (hi < lo) std::swap(lo, hi);
  std::vector<Rational> pts{lo};
  for (const auto& h : singular_heights(g))
    if (lo < h && h < hi) pts.push_back(h);
  pts.push_back(hi);
  Rational best = (pts[0] + pts[1]) / 2, width = pts[1] - pts[0];
  for (size_t i = 1; i + 1 < pts.size(); ++i)
    if (pts[i + 1] - pts[i] > width) {
      width = pts[i + 1] - pts[i];
      best = (pts[i] + pts[i + 1]) / 2;
    }
  return best;
}

std::string fresh_edge_id(const FlowGraph& g, const std::string& stem) {
  std::string id = stem;
  for (int k = 2; g.edge_index(id) >= 0; ++k) id = stem + std::to_string(k);
  return id;
}

}  // namespace

FlowGraph subdivide_edge(const FlowGraph& g, int e, const std::string& vertex) {
  if (g.vertex_index(vertex) >= 0) throw InputError("vertex '" + vertex + "' already exists");
  FlowGraph r = g;
  const FlowEdge old = g.edges.at(e);
  auto p = g.profile(e);
  FlowVertex m{vertex, free_height(g, p[0], p[1]), VertexRole::Interior};
  const int mi = static_cast<int>(r.vertices.size());
  r.vertices.push_back(m);
  FlowEdge first{old.id, old.v1, mi, {}, ""};
  FlowEdge second{fresh_edge_id(g, old.id + "b"), mi, old.v2, old.crit, ""};
  if (!old.route.empty()) {
    first.route = old.route;
    if (old.route[0] != '@') {
      auto hops = text::split(old.route, '>');
      hops.back() = vertex;
      std::string s;
      for (size_t i = 0; i < hops.size(); ++i) s += (i ? ">" : "") + hops[i];
      first.route = s;
    }
  }
  r.edges[e] = first;
  const int ei = static_cast<int>(r.edges.size());
  r.edges.push_back(second);
  if (auto it = r.ribbon.find(old.v2); it != r.ribbon.end())
    std::replace(it->second.begin(), it->second.end(), e, ei);
  r.ribbon[mi] = {e, ei};
  validate(r);
  return r;
}

FlowGraph add_incoming_strand(const FlowGraph& g, int to_vertex, const std::string& v) {
  if (g.vertex_index(v) >= 0) throw InputError("vertex '" + v + "' already exists");
  if (g.vertices.at(to_vertex).role != VertexRole::Interior) throw InputError("strand must end at an interior vertex");
  FlowGraph r = g;
  const int vi = static_cast<int>(r.vertices.size());
  r.vertices.push_back({v, Rational(0), VertexRole::In});
  const int ei = static_cast<int>(r.edges.size());
  r.edges.push_back({fresh_edge_id(g, "s_" + v), vi, to_vertex, {}, ""});
  if (auto it = r.ribbon.find(to_vertex); it != r.ribbon.end()) it->second.push_back(ei);
  validate(r);
  return r;
}

FlowGraph add_outgoing_strand(const FlowGraph& g, int from_vertex, const std::string& v) {
  if (g.vertex_index(v) >= 0) throw InputError("vertex '" + v + "' already exists");
  if (g.vertices.at(from_vertex).role != VertexRole::Interior)
    throw InputError("strand must start at an interior vertex");
  FlowGraph r = g;
  const int vi = static_cast<int>(r.vertices.size());
  r.vertices.push_back({v, Rational(1), VertexRole::Out});
  const int ei = static_cast<int>(r.edges.size());
  r.edges.push_back({fresh_edge_id(g, "s_" + v), from_vertex, vi, {}, ""});
  if (auto it = r.ribbon.find(from_vertex); it != r.ribbon.end()) it->second.push_back(ei);
  validate(r);
  return r;
}

std::vector<CheckResult> trivial_strand_checks(const FlowGraph& g0, const ActionContext& ctx) {
  std::vector<CheckResult> out;
  const auto A = graph_action(cerf_decompose(g0), ctx);
  const auto V0 = vertex_ids(g0, g0.in_vertices());

  auto sub = subdivide_edge(g0, 0, "m_sub");
  out.push_back({"subdivided edge", "trivial strands: subdivision", compare_maps(A, graph_action(cerf_decompose(sub), ctx)),
                 "edge " + g0.edges[0].id});

  // strands need an interior vertex to attach to
  FlowGraph g = g0;
  int x = -1;
  for (size_t v = 0; v < g.vertices.size() && x < 0; ++v)
    if (g.vertices[v].role == VertexRole::Interior) x = static_cast<int>(v);
  if (x < 0) {
    g = sub;
    x = g.vertex_index("m_sub");
  }
  {
    auto gp = add_incoming_strand(g, x, "v_new");
    auto d = cerf_decompose(gp);
    Tower t = decomposition_tower(d, ctx);
    std::vector<Step> w{plus_step("v_new")};
    auto rest = graph_word(d);
    w.insert(w.end(), rest.begin(), rest.end());
    out.push_back({"incoming strand", "trivial strands: new incoming vertex", compare_maps(A, evaluate(t, V0, w)),
                   "strand into " + g.vertices[x].id});
  }
  {
    auto gpp = add_outgoing_strand(g, x, "v_new");
    auto d = cerf_decompose(gpp);
    Tower t = decomposition_tower(d, ctx);
    auto w = graph_word(d);
    w.push_back(minus_step("v_new"));
    out.push_back({"outgoing strand", "trivial strands: new outgoing vertex", compare_maps(A, evaluate(t, V0, w)),
                   "strand out of " + g.vertices[x].id});
  }
  return out;
}

CheckResult phi_commutator_check(const Stabilized& s, const ModuleMap& a) {
  const auto& c = s.stab;
  const Truncation& tr = c->trunc;
  const ModuleMap phi = formal_phi(c, s.rec.w);
  PolyMatrix defect = (multiply(a.m, phi.m, tr) + multiply(phi.m, a.m, tr) + PolyMatrix::identity(c->size())).truncated(tr);
  CheckResult res{"phi commutator", "A Phi_w + Phi_w A homotopic to 1", Agreement::Exact, ""};
  if (defect.is_zero()) {
    res.detail = "exact";
    return res;
  }
  const int wi = c->ring->require(c->colors.at(s.rec.w));
  const ModuleMap witness = make_map(c, c, a.m.derivative(wi));
  if (chain_defect(witness) == defect) {
    res.level = Agreement::Homotopy;
    res.detail = "witness dA/dU_w";
    return res;
  }
  res.level = compare_maps(make_map(c, c, defect), zero_map(c, c));
  res.detail = "solver";
  return res;
}

ModuleMap basepoint_moving(const Stabilized& s, const ModuleMap& a) {
  return compose(s_minus(s), compose(a, s_plus(s)));
}

ModuleMap pi1_action(ComplexPtr c, const std::string& w, const PolyMatrix& a_gamma) {
  return identity_map(c) + compose(formal_phi(c, w), make_map(c, c, a_gamma));
}

Pi1Result pi1_two_charts(ComplexPtr c0, const std::string& z, const PolyMatrix& a_gamma, const Truncation& t) {
  const std::string zvar = basepoint_table(*c0).at(z);
  const std::string w = zvar, wp = zvar + "'";
  Transition tr = model_transition(c0, zvar, w, wp, t);
  const Ring& R = *tr.h2->ring;
  const int n = c0->size();
  PolyMatrix sp(2 * n, n), sm(n, 2 * n), edge(2 * n, 2 * n), lifted(2 * n, 2 * n);
  const PolyMatrix ag = lift_to_ring(a_gamma, *c0->ring, R).truncated(t);
  // chart H2 is stabilized at w' with partner w
  const Poly uw = Poly::var(R.require(w)).truncated(t);
  for (int b = 0; b < n; ++b) {
    sp.at(2 * b, b) = Poly::one();
    sm.at(b, 2 * b + 1) = Poly::one();
    edge.at(2 * b + 1, 2 * b) = Poly::one();
    edge.at(2 * b, 2 * b + 1) = uw;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int s = 0; s < 2; ++s) lifted.at(2 * i + s, 2 * j + s) = ag.at(i, j);
  const PolyMatrix& psi = tr.phi.m;  // its own inverse
  auto mul = [&](const PolyMatrix& x, const PolyMatrix& y) { return multiply(x, y, t); };
  const PolyMatrix bm1 = mul(sm, mul(psi, mul(edge, sp)));
  const PolyMatrix bm2 = mul(sm, mul(edge + lifted, mul(psi, sp)));

  auto base_over = [&](const std::string& to) {
    ColoredComplex c = recolor(*c0, {{zvar, to}});
    c.d = lift_to_ring(c.d, *c.ring, R).truncated(t);
    c.ring = tr.h2->ring;
    c.trunc = t;
    c.colors.clear();
    return make_complex(std::move(c));
  };
  auto on_w = base_over(w), on_wp = base_over(wp);
  Pi1Result res;
  res.bm1 = make_map(on_w, on_wp, bm1);
  res.bm2 = make_map(on_wp, on_w, bm2);
  res.bm1_identity = bm1 == PolyMatrix::identity(n);

  std::vector<int> back(R.size());
  for (int i = 0; i < R.size(); ++i) back[i] = c0->ring->require(R.name(i) == wp ? zvar : R.name(i));
  const PolyMatrix comp = mul(bm2, bm1).substitute(back).truncated(t);
  auto c0t = make_complex(with_truncation(*c0, t));
  res.composite = make_map(c0t, c0t, comp);
  res.expected = pi1_action(c0t, z, a_gamma.truncated(t));
  const ModuleMap phi = formal_phi(c0t, z);
  res.composite_is_1_plus_a_phi =
      comp == (PolyMatrix::identity(n) + multiply(a_gamma.truncated(t), phi.m, t)).truncated(t);
  res.level = compare_maps(res.composite, res.expected);
  return res;
}

}  // namespace hfg
