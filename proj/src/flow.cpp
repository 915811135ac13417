#include "hfg/flow.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "text.hpp"

namespace hfg {

using text::LineError;
using text::split;
using text::trim;

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
  auto bad = [&]() -> Rational { throw InputError("bad rational '" + s + "' (expected p or p/q)"); };
  auto parse_int = [&](const std::string& t) -> long long {
    if (t.empty()) bad();
    size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(t, &pos);
    } catch (const std::logic_error&) {
      bad();
    }
    if (pos != t.size()) bad();
    return v;
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s));
  long long q = parse_int(s.substr(slash + 1));
  if (q == 0) bad();
  return Rational(parse_int(s.substr(0, slash)), q);
}

int FlowGraph::vertex_index(const std::string& id) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return static_cast<int>(i);
  return -1;
}

int FlowGraph::require_vertex(const std::string& id) const {
  int v = vertex_index(id);
  if (v < 0) throw InputError("unknown vertex '" + id + "'");
  return v;
}

int FlowGraph::edge_index(const std::string& id) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return static_cast<int>(i);
  return -1;
}

std::vector<int> FlowGraph::incident(int v) const {
  auto it = ribbon.find(v);
  if (it != ribbon.end()) return it->second;
  std::vector<int> out;
  for (size_t e = 0; e < edges.size(); ++e)
    if (edges[e].v1 == v || edges[e].v2 == v) out.push_back(static_cast<int>(e));
  return out;
}

std::vector<int> FlowGraph::in_vertices() const {
  std::vector<int> out;
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].role == VertexRole::In) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> FlowGraph::out_vertices() const {
  std::vector<int> out;
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].role == VertexRole::Out) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<Rational> FlowGraph::profile(int e) const {
  const auto& ed = edges.at(e);
  std::vector<Rational> p{vertices[ed.v1].h};
  for (const auto& c : ed.crit) p.push_back(c.h);
  p.push_back(vertices[ed.v2].h);
  return p;
}

std::vector<int> FlowGraph::component_of_vertices() const {
  std::vector<int> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : edges) parent[find(e.v1)] = find(e.v2);
  std::vector<int> comp(vertices.size());
  for (size_t i = 0; i < vertices.size(); ++i) comp[i] = find(static_cast<int>(i));
  return comp;
}

std::string FlowGraph::root_of(int v) const {
  auto comp = component_of_vertices();
  for (const auto& [vid, root] : colors) {
    int u = vertex_index(vid);
    if (u >= 0 && comp[u] == comp[v]) return root;
  }
  if (extras.size() == 1) return extras[0];
  throw InputError("component of '" + vertices.at(v).id + "' has no root basepoint");
}

namespace {

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (std::isspace(static_cast<unsigned char>(ch)) || std::string("-><@:,=()#").find(ch) != std::string::npos)
      return false;
  return true;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

}  // namespace

FlowGraph parse_flow(std::istream& in) {
  FlowGraph g;
  std::string section;
  std::string raw;
  int lineno = 0;
  bool saw_extra = false;
  std::vector<std::pair<int, std::string>> ribbon_lines;
  while (std::getline(in, raw)) {
    ++lineno;
    LineError le{lineno};
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') le.fail("unterminated section header");
      section = line.substr(1, line.size() - 2);
      if (section != "vertices" && section != "edges" && section != "ribbon" && section != "colors" &&
          section != "extra")
        le.fail("unknown section [" + section + "]");
      if (section == "extra") saw_extra = true;
      continue;
    }
    if (section.empty()) le.fail("content before any section");
    if (section == "vertices") {
      auto w = words(line);
      FlowVertex v;
      v.id = w[0];
      bool have_h = false;
      for (size_t i = 1; i < w.size(); ++i) {
        if (w[i].rfind("h=", 0) == 0) {
          try {
            v.h = parse_rational(w[i].substr(2));
          } catch (const InputError& e) {
            le.fail(e.what());
          }
          have_h = true;
        } else if (w[i] == "in") {
          v.role = VertexRole::In;
        } else if (w[i] == "out") {
          v.role = VertexRole::Out;
        } else {
          le.fail("unexpected token '" + w[i] + "'");
        }
      }
      if (!have_h) le.fail("missing 'h='");
      g.vertices.push_back(v);
    } else if (section == "edges") {
      auto w = words(line);
      if (w.size() < 2) le.fail("expected '<id> <v1>-<v2>'");
      FlowEdge e;
      e.id = w[0];
      auto dash = w[1].find('-');
      if (dash == std::string::npos) le.fail("expected '<v1>-<v2>' in '" + w[1] + "'");
      int a = g.vertex_index(w[1].substr(0, dash)), b = g.vertex_index(w[1].substr(dash + 1));
      if (a < 0 || b < 0) le.fail("edge '" + e.id + "' names an unknown vertex");
      e.v1 = a;
      e.v2 = b;
      for (size_t i = 2; i < w.size(); ++i) {
        if (w[i].rfind("crit=", 0) == 0) {
          std::string body = w[i].substr(5);
          if (body.size() < 2 || body.front() != '(' || body.back() != ')') le.fail("crit must be '(...)'");
          body = body.substr(1, body.size() - 2);
          if (!trim(body).empty())
            for (const auto& item : split(body, ',')) {
              auto at = item.find('@');
              if (at == std::string::npos) le.fail("critical point '" + item + "' needs max@h or min@h");
              std::string kind = item.substr(0, at);
              if (kind != "max" && kind != "min") le.fail("critical point kind must be max or min");
              CritPoint c;
              c.max = kind == "max";
              try {
                c.h = parse_rational(item.substr(at + 1));
              } catch (const InputError& ex) {
                le.fail(ex.what());
              }
              e.crit.push_back(c);
            }
        } else if (w[i].rfind("route=", 0) == 0) {
          e.route = w[i].substr(6);
        } else {
          le.fail("unexpected token '" + w[i] + "'");
        }
      }
      g.edges.push_back(e);
    } else if (section == "ribbon") {
      ribbon_lines.push_back({lineno, line});
    } else if (section == "colors") {
      auto eq = line.find('=');
      if (eq == std::string::npos) le.fail("expected '<vertex>=<root>'");
      g.colors[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    } else if (section == "extra") {
      for (auto& item : split(line, ','))
        for (auto& w : words(item)) g.extras.push_back(w);
    }
  }
  for (const auto& [ln, line] : ribbon_lines) {
    LineError le{ln};
    auto colon = line.find(':');
    if (colon == std::string::npos) le.fail("expected '<vertex>: <edges>'");
    int v = g.vertex_index(trim(line.substr(0, colon)));
    if (v < 0) le.fail("ribbon names an unknown vertex");
    std::vector<int> order;
    for (const auto& id : split(line.substr(colon + 1), ',')) {
      int e = g.edge_index(id);
      if (e < 0) le.fail("ribbon names an unknown edge '" + id + "'");
      order.push_back(e);
    }
    g.ribbon[v] = order;
  }
  if (!saw_extra) g.extras = {"w0"};
  return g;
}

FlowGraph parse_flow_string(const std::string& s) {
  std::istringstream in(s);
  return parse_flow(in);
}

FlowGraph read_flow_file(const std::string& path) {
  if (path == "-") return parse_flow(std::cin);
  std::ifstream f(path);
  if (!f) throw InputError("cannot open '" + path + "'");
  return parse_flow(f);
}

std::string write_flow(const FlowGraph& g) {
  std::ostringstream o;
  o << "[vertices]\n";
  for (const auto& v : g.vertices) {
    o << v.id << " h=" << format_rational(v.h);
    if (v.role == VertexRole::In) o << " in";
    if (v.role == VertexRole::Out) o << " out";
    o << "\n";
  }
  o << "[edges]\n";
  for (const auto& e : g.edges) {
    o << e.id << " " << g.vertices[e.v1].id << "-" << g.vertices[e.v2].id;
    if (!e.crit.empty()) {
      o << " crit=(";
      for (size_t i = 0; i < e.crit.size(); ++i)
        o << (i ? "," : "") << (e.crit[i].max ? "max@" : "min@") << format_rational(e.crit[i].h);
      o << ")";
    }
    if (!e.route.empty()) o << " route=" << e.route;
    o << "\n";
  }
  if (!g.ribbon.empty()) {
    o << "[ribbon]\n";
    for (const auto& [v, es] : g.ribbon) {
      o << g.vertices[v].id << ":";
      for (size_t i = 0; i < es.size(); ++i) o << (i ? "," : " ") << g.edges[es[i]].id;
      o << "\n";
    }
  }
  if (!g.colors.empty()) {
    o << "[colors]\n";
    for (const auto& [v, r] : g.colors) o << v << "=" << r << "\n";
  }
  o << "[extra]\n";
  for (size_t i = 0; i < g.extras.size(); ++i) o << (i ? "," : "") << g.extras[i];
  o << "\n";
  return o.str();
}

namespace {

struct Event {
  enum Kind { Vertex, Max, Min } kind;
  int vertex = -1;  // Vertex
  int edge = -1;    // Max/Min
  int crit = -1;
  Rational h;
};

std::vector<Event> events(const FlowGraph& g) {
  std::vector<Event> ev;
  for (size_t v = 0; v < g.vertices.size(); ++v)
    if (g.vertices[v].role == VertexRole::Interior)
      ev.push_back({Event::Vertex, static_cast<int>(v), -1, -1, g.vertices[v].h});
  for (size_t e = 0; e < g.edges.size(); ++e)
    for (size_t c = 0; c < g.edges[e].crit.size(); ++c)
      ev.push_back({g.edges[e].crit[c].max ? Event::Max : Event::Min, -1, static_cast<int>(e), static_cast<int>(c),
                    g.edges[e].crit[c].h});
  std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.h < b.h; });
  return ev;
}

std::string event_name(const FlowGraph& g, const Event& e) {
  if (e.kind == Event::Vertex) return "vertex '" + g.vertices[e.vertex].id + "'";
  return std::string(e.kind == Event::Max ? "maximum" : "minimum") + " of edge '" + g.edges[e.edge].id + "'";
}

}  // namespace

void validate(const FlowGraph& g) {
  std::set<std::string> ids;
  for (const auto& v : g.vertices) {
    if (!valid_id(v.id)) throw InputError("bad vertex id '" + v.id + "'");
    if (!ids.insert(v.id).second) throw InputError("duplicate vertex '" + v.id + "'");
  }
  std::set<std::string> eids;
  for (const auto& e : g.edges) {
    if (!valid_id(e.id)) throw InputError("bad edge id '" + e.id + "'");
    if (!eids.insert(e.id).second) throw InputError("duplicate edge '" + e.id + "'");
    if (e.v1 == e.v2) throw InputError("edge '" + e.id + "' is a self-edge (subdivide it first)");
  }
  std::vector<int> valence(g.vertices.size(), 0);
  for (const auto& e : g.edges) {
    ++valence[e.v1];
    ++valence[e.v2];
  }
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& v = g.vertices[i];
    if (valence[i] == 0) throw InputError("vertex '" + v.id + "' is isolated");
    switch (v.role) {
      case VertexRole::In:
        if (v.h != Rational(0)) throw InputError("incoming vertex '" + v.id + "' must sit at height 0");
        if (valence[i] != 1) throw InputError("incoming vertex '" + v.id + "' must have valence one");
        break;
      case VertexRole::Out:
        if (v.h != Rational(1)) throw InputError("outgoing vertex '" + v.id + "' must sit at height 1");
        if (valence[i] != 1) throw InputError("outgoing vertex '" + v.id + "' must have valence one");
        break;
      case VertexRole::Interior:
        if (v.h <= Rational(0) || v.h >= Rational(1)) throw InputError("interior vertex '" + v.id + "' must have height in (0,1)");
        break;
    }
  }
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto p = g.profile(static_cast<int>(e));
    const auto& ed = g.edges[e];
    for (size_t i = 0; i + 1 < p.size(); ++i)
      if (p[i] == p[i + 1]) throw InputError("edge '" + ed.id + "' has a flat segment");
    for (size_t c = 0; c < ed.crit.size(); ++c) {
      const Rational& h = ed.crit[c].h;
      if (h <= Rational(0) || h >= Rational(1)) throw InputError("critical point of edge '" + ed.id + "' must have height in (0,1)");
      bool above = h > p[c] && h > p[c + 2];
      bool below = h < p[c] && h < p[c + 2];
      if (ed.crit[c].max && !above) throw InputError("maximum of edge '" + ed.id + "' is not above its neighbours");
      if (!ed.crit[c].max && !below) throw InputError("minimum of edge '" + ed.id + "' is not below its neighbours");
    }
  }
  auto ev = events(g);
  for (size_t i = 0; i + 1 < ev.size(); ++i)
    if (ev[i].h == ev[i + 1].h)
      throw InputError("coincident singular heights: " + event_name(g, ev[i]) + " and " + event_name(g, ev[i + 1]) +
                       " at " + format_rational(ev[i].h));
  for (const auto& [v, es] : g.ribbon) {
    std::vector<int> want;
    for (size_t e = 0; e < g.edges.size(); ++e)
      if (g.edges[e].v1 == v || g.edges[e].v2 == v) want.push_back(static_cast<int>(e));
    std::vector<int> got = es;
    std::sort(got.begin(), got.end());
    if (got != want) throw InputError("ribbon at '" + g.vertices[v].id + "' is not an ordering of its edges");
  }
  if (g.extras.empty()) throw InputError("level sets would be empty: no extra basepoints");
  std::set<std::string> ex;
  for (const auto& w : g.extras) {
    if (!valid_id(w)) throw InputError("bad basepoint id '" + w + "'");
    if (!ex.insert(w).second) throw InputError("duplicate extra basepoint '" + w + "'");
    if (ids.count(w)) throw InputError("extra basepoint '" + w + "' is also a vertex");
  }
  auto comp = g.component_of_vertices();
  std::map<int, std::string> root;
  for (const auto& [vid, r] : g.colors) {
    int v = g.vertex_index(vid);
    if (v < 0) throw InputError("colors name an unknown vertex '" + vid + "'");
    if (!ex.count(r)) throw InputError("root '" + r + "' is not an extra basepoint");
    auto [it, fresh] = root.emplace(comp[v], r);
    if (!fresh && it->second != r) throw InputError("component of '" + vid + "' has two roots");
  }
  for (size_t v = 0; v < g.vertices.size(); ++v) g.root_of(static_cast<int>(v));
  for (const auto& e : g.edges) {
    if (e.route.empty() || (e.route[0] == '@' && e.route.find('>') == std::string::npos)) continue;
    auto hops = split(e.route, '>');
    if (hops.size() < 2 || hops.front() != g.vertices[e.v1].id || hops.back() != g.vertices[e.v2].id)
      throw InputError("route of edge '" + e.id + "' must run from '" + g.vertices[e.v1].id + "' to '" +
                       g.vertices[e.v2].id + "'");
  }
}

bool same_graph(const FlowGraph& a, const FlowGraph& b) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
  for (size_t i = 0; i < a.vertices.size(); ++i)
    if (a.vertices[i].id != b.vertices[i].id || a.vertices[i].role != b.vertices[i].role) return false;
  for (size_t i = 0; i < a.edges.size(); ++i)
    if (a.edges[i].id != b.edges[i].id || a.edges[i].v1 != b.edges[i].v1 || a.edges[i].v2 != b.edges[i].v2 ||
        a.edges[i].route != b.edges[i].route)
      return false;
  return a.ribbon == b.ribbon && a.colors == b.colors && a.extras == b.extras;
}

FlowGraph concatenate(const FlowGraph& g1, const FlowGraph& g2) {
  validate(g1);
  validate(g2);
  std::vector<std::string> outs, ins;
  for (int v : g1.out_vertices()) outs.push_back(g1.vertices[v].id);
  for (int v : g2.in_vertices()) ins.push_back(g2.vertices[v].id);
  if (std::set<std::string>(outs.begin(), outs.end()) != std::set<std::string>(ins.begin(), ins.end()))
    throw InputError("outgoing vertices of the first graph must match incoming vertices of the second");
  if (g1.extras != g2.extras) throw InputError("concatenated graphs must share their extra basepoints");
  const Rational third(1, 3);
  const int m = static_cast<int>(outs.size());
  FlowGraph g;
  g.extras = g1.extras;
  std::map<std::string, int> glued;
  for (const auto& v : g1.vertices) {
    FlowVertex nv = v;
    nv.h = v.h * third;
    if (v.role == VertexRole::Out) {
      int k = static_cast<int>(std::find(outs.begin(), outs.end(), v.id) - outs.begin()) + 1;
      nv.role = VertexRole::Interior;
      nv.h = third + Rational(k, 3 * (m + 1));
      glued[v.id] = static_cast<int>(g.vertices.size());
    }
    g.vertices.push_back(nv);
  }
  std::vector<int> map2(g2.vertices.size());
  for (size_t i = 0; i < g2.vertices.size(); ++i) {
    const auto& v = g2.vertices[i];
    if (v.role == VertexRole::In) {
      map2[i] = glued.at(v.id);
      continue;
    }
    if (g.vertex_index(v.id) >= 0) throw InputError("vertex '" + v.id + "' occurs in both graphs");
    FlowVertex nv = v;
    nv.h = 2 * third + v.h * third;
    map2[i] = static_cast<int>(g.vertices.size());
    g.vertices.push_back(nv);
  }
  for (const auto& e : g1.edges) {
    FlowEdge ne = e;
    for (auto& c : ne.crit) c.h *= third;
    g.edges.push_back(ne);
  }
  const int off = static_cast<int>(g1.edges.size());
  for (const auto& e : g2.edges) {
    if (g.edge_index(e.id) >= 0) throw InputError("edge '" + e.id + "' occurs in both graphs");
    FlowEdge ne = e;
    ne.v1 = map2[e.v1];
    ne.v2 = map2[e.v2];
    for (auto& c : ne.crit) c.h = 2 * third + c.h * third;
    g.edges.push_back(ne);
  }
  g.ribbon = g1.ribbon;
  for (const auto& [v, es] : g2.ribbon) {
    std::vector<int> shifted;
    for (int e : es) shifted.push_back(e + off);
    g.ribbon[map2[v]] = shifted;
  }
  for (const auto& [id, v] : glued) {
    std::vector<int> order;
    for (int e : g.incident(v))
      if (e < off) order.push_back(e);
    for (int e : g.incident(v))
      if (e >= off) order.push_back(e);
    g.ribbon[v] = order;
  }
  g.colors = g1.colors;
  for (const auto& [v, r] : g2.colors) g.colors[v] = r;
  validate(g);
  return g;
}

std::string to_string(PieceKind k) {
  switch (k) {
    case PieceKind::Type1:
      return "type1";
    case PieceKind::Type2:
      return "type2";
    case PieceKind::Type3i:
      return "type3i";
    case PieceKind::Type3ii:
      return "type3ii";
  }
  return "?";
}

std::vector<std::string> Piece::vertex_names() const {
  std::vector<std::string> out = bottom;
  out.insert(out.end(), top.begin(), top.end());
  if (!middle.empty()) out.push_back(middle);
  return out;
}

namespace {

// name of the point where segment s of edge e meets level L
std::string point_name(const FlowGraph& g, int e, int s, const Rational& L) {
  auto p = g.profile(e);
  if (L == Rational(0) || L == Rational(1)) {
    if (s == 0 && p[0] == L) return g.vertices[g.edges[e].v1].id;
    if (s + 2 == static_cast<int>(p.size()) && p.back() == L) return g.vertices[g.edges[e].v2].id;
    throw std::logic_error("segment does not end at the boundary level");
  }
  return g.edges[e].id + ":" + std::to_string(s) + "@" + format_rational(L);
}

std::vector<std::string> level_points(const FlowGraph& g, const Rational& L) {
  std::vector<std::string> out;
  if (L == Rational(0)) {
    for (int v : g.in_vertices()) out.push_back(g.vertices[v].id);
    return out;
  }
  if (L == Rational(1)) {
    for (int v : g.out_vertices()) out.push_back(g.vertices[v].id);
    return out;
  }
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto p = g.profile(static_cast<int>(e));
    for (size_t s = 0; s + 1 < p.size(); ++s) {
      Rational lo = std::min(p[s], p[s + 1]), hi = std::max(p[s], p[s + 1]);
      if (lo < L && L < hi) out.push_back(point_name(g, static_cast<int>(e), static_cast<int>(s), L));
    }
  }
  return out;
}

PieceEdge make_edge(const FlowGraph& g, int e, int s, std::string a, std::string b) {
  PieceEdge pe{std::move(a), std::move(b), e, s, false};
  const auto& ed = g.edges[e];
  const std::string& v1 = g.vertices[ed.v1].id;
  pe.route = !ed.route.empty() && s == 0 && (pe.a == v1 || pe.b == v1);
  return pe;
}

Piece build_piece(const FlowGraph& g, const Rational& A, const Rational& B, const std::vector<Event>& inside) {
  if (inside.size() > 1)
    throw InputError("slice (" + format_rational(A) + ", " + format_rational(B) + ") is not elementary: " +
                     event_name(g, inside[0]) + " and " + event_name(g, inside[1]));
  Piece pc;
  pc.lo = A;
  pc.hi = B;
  pc.bottom = level_points(g, A);
  pc.top = level_points(g, B);
  int loose = 0;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto p = g.profile(static_cast<int>(e));
    for (size_t s = 0; s + 1 < p.size(); ++s) {
      Rational lo = std::min(p[s], p[s + 1]), hi = std::max(p[s], p[s + 1]);
      if (!(lo < B && hi > A)) continue;
      if (lo <= A && hi >= B) {
        int ei = static_cast<int>(e), si = static_cast<int>(s);
        pc.edges.push_back(make_edge(g, ei, si, point_name(g, ei, si, A), point_name(g, ei, si, B)));
      } else {
        ++loose;
      }
    }
  }
  if (inside.empty()) {
    if (loose) throw std::logic_error("segment ends inside an empty slice");
    pc.kind = PieceKind::Type1;
    return pc;
  }
  const Event& ev = inside[0];
  int touched = 0;
  if (ev.kind == Event::Vertex) {
    pc.kind = PieceKind::Type2;
    const int v = ev.vertex;
    pc.middle = g.vertices[v].id;
    for (int e : g.incident(v)) {
      auto p = g.profile(e);
      const auto& ed = g.edges[e];
      int s = ed.v1 == v ? 0 : static_cast<int>(p.size()) - 2;
      Rational other = ed.v1 == v ? p[1] : p[p.size() - 2];
      std::string far = point_name(g, e, s, other > ev.h ? B : A);
      pc.at_middle.push_back(static_cast<int>(pc.edges.size()));
      pc.edges.push_back(make_edge(g, e, s, pc.middle, far));
      ++touched;
    }
  } else {
    const int e = ev.edge, c = ev.crit;
    pc.kind = ev.kind == Event::Max ? PieceKind::Type3i : PieceKind::Type3ii;
    const Rational& L = ev.kind == Event::Max ? A : B;
    pc.edges.push_back(make_edge(g, e, c, point_name(g, e, c, L), point_name(g, e, c + 1, L)));
    // the cap/cup is one piece edge made of two segments; the route sits on
    // segment 0 only if v1 is an endpoint, which a cap/cup never has
    touched = 2;
  }
  if (touched != loose) throw std::logic_error("slice bookkeeping mismatch");
  return pc;
}

void check_levels(const FlowGraph& g, const std::vector<Rational>& levels) {
  if (levels.size() < 2 || levels.front() != Rational(0) || levels.back() != Rational(1))
    throw InputError("levels must start at 0 and end at 1");
  for (size_t i = 0; i + 1 < levels.size(); ++i)
    if (!(levels[i] < levels[i + 1])) throw InputError("levels must be strictly increasing");
  for (const auto& ev : events(g))
    if (std::binary_search(levels.begin(), levels.end(), ev.h))
      throw InputError("level " + format_rational(ev.h) + " passes through " + event_name(g, ev));
}

}  // namespace

CerfDecomposition decompose(const FlowGraph& g, std::vector<Rational> levels) {
  validate(g);
  check_levels(g, levels);
  CerfDecomposition d;
  d.g = g;
  d.levels = std::move(levels);
  auto ev = events(g);
  for (size_t i = 0; i + 1 < d.levels.size(); ++i) {
    std::vector<Event> inside;
    for (const auto& e : ev)
      if (d.levels[i] < e.h && e.h < d.levels[i + 1]) inside.push_back(e);
    d.pieces.push_back(build_piece(g, d.levels[i], d.levels[i + 1], inside));
  }
  return d;
}

CerfDecomposition cerf_decompose(const FlowGraph& g) {
  validate(g);
  std::vector<Rational> pts{Rational(0)};
  for (const auto& e : events(g)) pts.push_back(e.h);
  pts.push_back(Rational(1));
  std::vector<Rational> levels{Rational(0)};
  if (pts.size() > 2)
    for (size_t i = 0; i + 1 < pts.size(); ++i) levels.push_back((pts[i] + pts[i + 1]) / 2);
  levels.push_back(Rational(1));
  return decompose(g, levels);
}

bool same_decomposition(const CerfDecomposition& a, const CerfDecomposition& b) {
  if (!same_graph(a.g, b.g) || a.levels != b.levels) return false;
  for (size_t i = 0; i < a.g.vertices.size(); ++i)
    if (a.g.vertices[i].h != b.g.vertices[i].h) return false;
  for (size_t e = 0; e < a.g.edges.size(); ++e) {
    const auto &ca = a.g.edges[e].crit, &cb = b.g.edges[e].crit;
    if (ca.size() != cb.size()) return false;
    for (size_t c = 0; c < ca.size(); ++c)
      if (ca[c].max != cb[c].max || ca[c].h != cb[c].h) return false;
  }
  return true;
}

std::string Move::describe() const {
  std::ostringstream o;
  o << "move" << kind;
  switch (kind) {
    case 1:
      o << (forward ? " insert level " : " remove level ") << format_rational(a);
      break;
    case 2:
      if (forward)
        o << " birth on " << edge << " segment " << index << " at " << format_rational(a) << "<"
          << format_rational(b) << "<" << format_rational(c);
      else
        o << " death on " << edge << " critical points " << index << "," << index + 1 << " level "
          << format_rational(b);
      break;
    case 3:
      o << (forward ? " absorb critical point of " : " emit critical point of ") << edge << " at end " << index;
      if (!forward) o << " height " << format_rational(a);
      break;
    default:
      o << " swap " << format_rational(a) << " and " << format_rational(b);
  }
  return o.str();
}

namespace {

[[noreturn]] void inapplicable(const Move& m, const std::string& why) {
  throw InputError(m.describe() + " is not applicable: " + why);
}

// index i with levels[i] < h < levels[i+1]
int gap_of(const std::vector<Rational>& levels, const Rational& h) {
  for (size_t i = 0; i + 1 < levels.size(); ++i)
    if (levels[i] < h && h < levels[i + 1]) return static_cast<int>(i);
  return -1;
}

int singulars_in(const FlowGraph& g, const Rational& lo, const Rational& hi) {
  int n = 0;
  for (const auto& e : events(g))
    if (lo < e.h && e.h < hi) ++n;
  return n;
}

bool is_singular(const FlowGraph& g, const Rational& h) {
  for (const auto& e : events(g))
    if (e.h == h) return true;
  return false;
}

int require_edge(const FlowGraph& g, const Move& m) {
  int e = g.edge_index(m.edge);
  if (e < 0) inapplicable(m, "unknown edge");
  return e;
}

bool adjacent(const FlowGraph& g, int u, int v) {
  for (const auto& e : g.edges)
    if ((e.v1 == u && e.v2 == v) || (e.v1 == v && e.v2 == u)) return true;
  return false;
}

}  // namespace

MoveResult apply_move(const CerfDecomposition& d, const Move& m) {
  FlowGraph g = d.g;
  std::vector<Rational> levels = d.levels;
  Move inv = m;
  inv.forward = !m.forward;
  switch (m.kind) {
    case 1: {
      if (m.forward) {
        if (m.a <= Rational(0) || m.a >= Rational(1)) inapplicable(m, "level outside (0,1)");
        if (std::binary_search(levels.begin(), levels.end(), m.a)) inapplicable(m, "level already present");
        if (is_singular(g, m.a)) inapplicable(m, "level passes through a singular height");
        levels.insert(std::upper_bound(levels.begin(), levels.end(), m.a), m.a);
      } else {
        auto it = std::find(levels.begin(), levels.end(), m.a);
        if (it == levels.end() || it == levels.begin() || it + 1 == levels.end())
          inapplicable(m, "not an interior level");
        if (singulars_in(g, *(it - 1), *(it + 1)) > 1) inapplicable(m, "merged slice would not be elementary");
        levels.erase(it);
      }
      break;
    }
    case 2: {
      int e = require_edge(g, m);
      auto& ed = g.edges[e];
      if (m.forward) {
        auto p = g.profile(e);
        if (m.index < 0 || m.index + 1 >= static_cast<int>(p.size())) inapplicable(m, "no such segment");
        if (!(m.a < m.b && m.b < m.c)) inapplicable(m, "heights must increase");
        int k = gap_of(levels, m.b);
        if (k < 0 || gap_of(levels, m.a) != k || gap_of(levels, m.c) != k)
          inapplicable(m, "heights must lie in one slice");
        if (singulars_in(g, levels[k], levels[k + 1]) != 0) inapplicable(m, "slice is not trivial");
        Rational lo = std::min(p[m.index], p[m.index + 1]), hi = std::max(p[m.index], p[m.index + 1]);
        if (!(lo <= levels[k] && hi >= levels[k + 1])) inapplicable(m, "segment does not cross the slice");
        bool rising = p[m.index] < p[m.index + 1];
        std::vector<CritPoint> pair = rising ? std::vector<CritPoint>{{true, m.c}, {false, m.a}}
                                             : std::vector<CritPoint>{{false, m.a}, {true, m.c}};
        ed.crit.insert(ed.crit.begin() + m.index, pair.begin(), pair.end());
        levels.insert(levels.begin() + k + 1, m.b);
        inv.a = inv.c = Rational(0);
      } else {
        if (m.index < 0 || m.index + 1 >= static_cast<int>(ed.crit.size())) inapplicable(m, "no such pair");
        auto it = std::find(levels.begin(), levels.end(), m.b);
        if (it == levels.end() || it == levels.begin() || it + 1 == levels.end())
          inapplicable(m, "not an interior level");
        Rational h1 = ed.crit[m.index].h, h2 = ed.crit[m.index + 1].h;
        Rational lo = std::min(h1, h2), hi = std::max(h1, h2);
        if (!(*(it - 1) < lo && lo < m.b && m.b < hi && hi < *(it + 1)))
          inapplicable(m, "the pair is not split by that level");
        if (singulars_in(g, *(it - 1), *(it + 1)) != 2) inapplicable(m, "other singular heights in the way");
        ed.crit.erase(ed.crit.begin() + m.index, ed.crit.begin() + m.index + 2);
        levels.erase(it);
        inv.a = lo;
        inv.c = hi;
      }
      break;
    }
    case 3: {
      int e = require_edge(g, m);
      auto& ed = g.edges[e];
      if (m.index != 0 && m.index != 1) inapplicable(m, "end must be 0 or 1");
      int v = m.index == 0 ? ed.v1 : ed.v2;
      if (g.vertices[v].role != VertexRole::Interior) inapplicable(m, "end vertex is not interior");
      const Rational hv = g.vertices[v].h;
      if (m.forward) {
        if (ed.crit.empty()) inapplicable(m, "edge has no critical point");
        const CritPoint c = m.index == 0 ? ed.crit.front() : ed.crit.back();
        if (singulars_in(g, std::min(hv, c.h), std::max(hv, c.h)) != 0)
          inapplicable(m, "singular heights between vertex and critical point");
        if (m.index == 0) ed.crit.erase(ed.crit.begin());
        else ed.crit.pop_back();
        inv.a = c.h;
      } else {
        auto p = g.profile(e);
        Rational next = m.index == 0 ? p[1] : p[p.size() - 2];
        bool make_max = next < hv;
        if (make_max ? !(m.a > hv) : !(m.a < hv)) inapplicable(m, "critical point on the wrong side");
        if (std::binary_search(levels.begin(), levels.end(), m.a)) inapplicable(m, "height is a level");
        if (singulars_in(g, std::min(hv, m.a), std::max(hv, m.a)) != 0 || is_singular(g, m.a))
          inapplicable(m, "singular heights between vertex and new critical point");
        int k = gap_of(levels, m.a);
        if (k < 0 || singulars_in(g, levels[k], levels[k + 1]) != 0) inapplicable(m, "slice is not trivial");
        CritPoint c{make_max, m.a};
        if (m.index == 0) ed.crit.insert(ed.crit.begin(), c);
        else ed.crit.push_back(c);
        inv.a = Rational(0);
      }
      break;
    }
    case 4:
    case 5:
    case 6: {
      inv.forward = true;
      auto ev = events(g);
      const Event *x = nullptr, *y = nullptr;
      for (const auto& e : ev) {
        if (e.h == m.a) x = &e;
        if (e.h == m.b) y = &e;
      }
      if (!x || !y || !(m.a < m.b)) inapplicable(m, "heights must name two singular points, lower first");
      if (singulars_in(g, m.a, m.b) != 0) inapplicable(m, "singular points are not consecutive");
      int nv = (x->kind == Event::Vertex) + (y->kind == Event::Vertex);
      int want = m.kind == 4 ? 0 : m.kind == 5 ? 1 : 2;
      if (nv != want) inapplicable(m, "wrong kinds of singular points for this move");
      if (m.kind == 4) {
        const auto &e1 = g.edges[x->edge], &e2 = g.edges[y->edge];
        if (x->edge == y->edge || e1.v1 == e2.v1 || e1.v1 == e2.v2 || e1.v2 == e2.v1 || e1.v2 == e2.v2)
          inapplicable(m, "the critical edges share a vertex");
      } else if (m.kind == 5) {
        const Event& c = x->kind == Event::Vertex ? *y : *x;
        const Event& v = x->kind == Event::Vertex ? *x : *y;
        if (g.edges[c.edge].v1 == v.vertex || g.edges[c.edge].v2 == v.vertex)
          inapplicable(m, "the critical edge ends at the vertex");
      } else if (adjacent(g, x->vertex, y->vertex)) {
        inapplicable(m, "the vertices are joined by an edge");
      }
      auto set_h = [&](const Event& e, const Rational& h) {
        if (e.kind == Event::Vertex) g.vertices[e.vertex].h = h;
        else g.edges[e.edge].crit[e.crit].h = h;
      };
      Event xe = *x, ye = *y;
      set_h(xe, m.b);
      set_h(ye, m.a);
      break;
    }
    default:
      inapplicable(m, "unknown move kind");
  }
  MoveResult r;
  try {
    r.d = decompose(g, levels);
  } catch (const InputError& e) {
    inapplicable(m, e.what());
  }
  r.inverse = inv;
  return r;
}

std::vector<Move> applicable_moves(const CerfDecomposition& d) {
  std::vector<Move> cand;
  const auto& g = d.g;
  const auto& L = d.levels;
  auto ev = events(g);
  for (size_t k = 0; k + 1 < L.size(); ++k) {
    std::vector<Rational> sing;
    for (const auto& e : ev)
      if (L[k] < e.h && e.h < L[k + 1]) sing.push_back(e.h);
    if (sing.empty()) {
      cand.push_back({1, true, "", 0, (L[k] + L[k + 1]) / 2, 0, 0});
      Rational w = L[k + 1] - L[k];
      for (size_t e = 0; e < g.edges.size(); ++e) {
        auto p = g.profile(static_cast<int>(e));
        for (size_t s = 0; s + 1 < p.size(); ++s)
          cand.push_back({2, true, g.edges[e].id, static_cast<int>(s), L[k] + w / 4, L[k] + w / 2, L[k] + 3 * w / 4});
      }
    } else {
      cand.push_back({1, true, "", 0, (L[k] + sing[0]) / 2, 0, 0});
      cand.push_back({1, true, "", 0, (sing[0] + L[k + 1]) / 2, 0, 0});
    }
  }
  for (size_t i = 1; i + 1 < L.size(); ++i) {
    cand.push_back({1, false, "", 0, L[i], 0, 0});
    for (size_t e = 0; e < g.edges.size(); ++e)
      for (size_t c = 0; c + 1 < g.edges[e].crit.size(); ++c)
        cand.push_back({2, false, g.edges[e].id, static_cast<int>(c), 0, L[i], 0});
  }
  for (size_t e = 0; e < g.edges.size(); ++e)
    for (int end = 0; end < 2; ++end) {
      const auto& ed = g.edges[e];
      int v = end == 0 ? ed.v1 : ed.v2;
      if (g.vertices[v].role != VertexRole::Interior) continue;
      cand.push_back({3, true, ed.id, end, 0, 0, 0});
      // emit into the neighbouring slice on the side the edge does not leave by
      int k = gap_of(L, g.vertices[v].h);
      auto p = g.profile(static_cast<int>(e));
      Rational next = end == 0 ? p[1] : p[p.size() - 2];
      int k2 = next < g.vertices[v].h ? k + 1 : k - 1;
      if (k2 >= 0 && k2 + 1 < static_cast<int>(L.size()))
        cand.push_back({3, false, ed.id, end, (L[k2] + L[k2 + 1]) / 2, 0, 0});
    }
  for (size_t i = 0; i + 1 < ev.size(); ++i)
    for (int kind = 4; kind <= 6; ++kind) cand.push_back({kind, true, "", 0, ev[i].h, ev[i + 1].h, 0});
  std::vector<Move> out;
  for (const auto& m : cand) {
    try {
      apply_move(d, m);
      out.push_back(m);
    } catch (const InputError&) {
    }
  }
  return out;
}

std::vector<RandomDecomposition> random_decompositions(const FlowGraph& g, uint64_t seed, int k, int word_length) {
  std::mt19937_64 rng(seed);
  auto canon = cerf_decompose(g);
  std::vector<RandomDecomposition> out;
  if (k <= 0) return out;
  out.push_back({canon, {}});
  for (int i = 1; i < k; ++i) {
    RandomDecomposition r{canon, {}};
    for (int step = 0; step < word_length; ++step) {
      auto moves = applicable_moves(r.d);
      if (moves.empty()) break;
      const Move& m = moves[rng() % moves.size()];
      r.d = apply_move(r.d, m).d;
      r.word.push_back(m);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hfg
