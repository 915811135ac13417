#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hfg/gf2.hpp"
#include "hfg/matrix.hpp"

namespace hfg {

struct ColoredComplex {
  RingPtr ring;
  Truncation trunc;
  std::vector<std::string> gens;
  std::vector<std::string> spinc;  // empty, or one class label per generator
  PolyMatrix d;                    // d.at(i, j): coefficient of gens[i] in d(gens[j])
  std::map<std::string, std::string> colors;  // basepoint -> ring variable; optional

  int size() const { return static_cast<int>(gens.size()); }
  void validate() const;
};
using ComplexPtr = std::shared_ptr<const ColoredComplex>;

ComplexPtr make_complex(ColoredComplex c);
bool same_module(const ColoredComplex& a, const ColoredComplex& b);

struct ModuleMap {
  ComplexPtr src, tgt;
  PolyMatrix m;
};

ModuleMap make_map(ComplexPtr src, ComplexPtr tgt, PolyMatrix m);
ModuleMap identity_map(ComplexPtr c);
ModuleMap scalar_map(ComplexPtr c, const Poly& p);
ModuleMap zero_map(ComplexPtr src, ComplexPtr tgt);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f
ModuleMap operator+(const ModuleMap& a, const ModuleMap& b);
ModuleMap compose_all(const std::vector<ModuleMap>& maps);   // maps applied left to right
bool operator==(const ModuleMap& a, const ModuleMap& b);

bool d_squared_check(const ColoredComplex& c);
// d f + f d
PolyMatrix chain_defect(const ModuleMap& f);
bool is_chain_map(const ModuleMap& f);

// Ring variable of basepoint w (or w read as a variable when the complex
// carries no basepoint table). Throws if w shares its color.
int uncolored_variable(const ColoredComplex& c, const std::string& w);

ModuleMap formal_phi(ComplexPtr c, const std::string& w);
// H = sum_{n>=2} C(n,2) d^n U_w^{n-2}, so that phi^2 = dH + Hd.
ModuleMap phi_square_witness(ComplexPtr c, const std::string& w);
// Checks phi = d D + D d on every chain m*x with m a monomial of total degree
// < max_degree, D the entrywise U_w-derivative (not equivariant).
bool phi_is_dD_plus_Dd(const ColoredComplex& c, const std::string& w, int max_degree);

// Recolor: each ring variable is renamed via var_map (unlisted keep their
// name); variables mapped to the same name are identified.
ColoredComplex recolor(const ColoredComplex& c, const std::map<std::string, std::string>& var_map);
ColoredComplex with_truncation(const ColoredComplex& c, const Truncation& t);
// Same generators/differential, larger ring (appends missing variables).
ColoredComplex extend_ring(const ColoredComplex& c, const std::vector<std::string>& extra_vars);
PolyMatrix lift_to_ring(const PolyMatrix& m, const Ring& from, const Ring& to);

enum class HomotopyMode { Equivariant, Linear };

struct HomotopyResult {
  bool found = false;
  HomotopyMode mode = HomotopyMode::Equivariant;
  PolyMatrix equivariant;  // set in equivariant mode
  BitMatrix linear;        // set in linear mode, on the truncated underlying space
  int unknowns = 0;
  int equations = 0;
};

// Solves dH + Hd = f + g exactly over F2 in the truncated ring.
HomotopyResult find_homotopy(const ModuleMap& f, const ModuleMap& g, HomotopyMode mode);

// F2-linear matrix of an equivariant map on the truncated underlying space
// (basis: generator-major, then monomial basis order).
BitMatrix underlying_matrix(const ColoredComplex& src, const ColoredComplex& tgt, const PolyMatrix& m);

enum class HomologyFlavor { Hat, MinusTruncated };
// rank per spinc tag ("*" when untagged)
std::map<std::string, int> truncated_homology(const ColoredComplex& c, HomologyFlavor flavor);

std::string format_matrix(const ColoredComplex& src, const ColoredComplex& tgt, const PolyMatrix& m);

}  // namespace hfg
