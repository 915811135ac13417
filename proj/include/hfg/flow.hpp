#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hfg/lattice.hpp"
#include "hfg/poly.hpp"

namespace hfg {

enum class VertexRole { Interior, In, Out };

struct FlowVertex {
  std::string id;
  Rational h;
  VertexRole role = VertexRole::Interior;
};

struct CritPoint {
  bool max = true;
  Rational h;
};

struct FlowEdge {
  std::string id;
  int v1 = 0, v2 = 0;
  std::vector<CritPoint> crit;  // in order along the edge from v1 to v2
  std::string route;            // hop list "a>w0>@gamma>w0>b", a bare "@gamma", or empty
};

struct FlowGraph {
  std::vector<FlowVertex> vertices;
  std::vector<FlowEdge> edges;
  std::map<int, std::vector<int>> ribbon;      // vertex -> incident edges, absolute order
  std::map<std::string, std::string> colors;   // any vertex of a component -> its root basepoint
  std::vector<std::string> extras;             // root basepoints present at every level

  int vertex_index(const std::string& id) const;  // -1 if absent
  int require_vertex(const std::string& id) const;
  int edge_index(const std::string& id) const;
  std::vector<int> incident(int v) const;  // ribbon order when given, else declaration order
  std::vector<int> in_vertices() const;
  std::vector<int> out_vertices() const;
  // Heights along the edge: h(v1), critical heights, h(v2).
  std::vector<Rational> profile(int e) const;
  std::vector<int> component_of_vertices() const;
  std::string root_of(int v) const;
};

// .flow text format.
FlowGraph parse_flow(std::istream& in);
FlowGraph parse_flow_string(const std::string& text);
FlowGraph read_flow_file(const std::string& path);
std::string write_flow(const FlowGraph& g);
std::string format_rational(const Rational& r);
Rational parse_rational(const std::string& s);

// Throws InputError naming the first violated invariant.
void validate(const FlowGraph& g);
// Same vertices, edges, roles, ribbon and colors; heights may differ.
bool same_graph(const FlowGraph& a, const FlowGraph& b);

// G2 stacked on G1, gluing out-vertices of G1 to in-vertices of G2 with the
// same ids; glued vertices become interior vertices of valence 2.
FlowGraph concatenate(const FlowGraph& g1, const FlowGraph& g2);

enum class PieceKind { Type1, Type2, Type3i, Type3ii };
std::string to_string(PieceKind k);

struct PieceEdge {
  std::string a, b;  // endpoint names (graph vertices or level points)
  int edge = 0;      // flow edge
  int seg = 0;       // monotone segment of that edge
  bool route = false;  // carries the edge's declared route
};

struct Piece {
  PieceKind kind = PieceKind::Type1;
  Rational lo, hi;
  std::vector<std::string> bottom, top;
  std::string middle;              // Type2 only
  std::vector<PieceEdge> edges;
  std::vector<int> at_middle;      // Type2: indices into edges, ribbon order
  std::vector<std::string> vertex_names() const;
};

struct CerfDecomposition {
  FlowGraph g;  // the height function this decomposition uses
  std::vector<Rational> levels;
  std::vector<Piece> pieces;
};

// Pieces between consecutive levels; throws if a slice is not elementary.
CerfDecomposition decompose(const FlowGraph& g, std::vector<Rational> levels);
// Levels at 0, 1 and halfway between consecutive singular heights (and 0, 1).
CerfDecomposition cerf_decompose(const FlowGraph& g);
bool same_decomposition(const CerfDecomposition& a, const CerfDecomposition& b);

// Moves 1-6. forward: insert a level (1), birth (2), critical point into a
// vertex (3); swaps (4-6) are their own inverses.
struct Move {
  int kind = 1;
  bool forward = true;
  std::string edge;
  int index = 0;  // segment (birth), first critical index (death), edge end (move 3)
  Rational a, b, c;
  std::string describe() const;
};

struct MoveResult {
  CerfDecomposition d;
  Move inverse;
};

MoveResult apply_move(const CerfDecomposition& d, const Move& m);
std::vector<Move> applicable_moves(const CerfDecomposition& d);

struct RandomDecomposition {
  CerfDecomposition d;
  std::vector<Move> word;  // applied to the canonical decomposition
};

// k decompositions; the first is canonical, the rest follow random words.
std::vector<RandomDecomposition> random_decompositions(const FlowGraph& g, uint64_t seed, int k, int word_length = 6);

}  // namespace hfg
