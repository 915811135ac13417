#pragma once

#include <random>
#include <string>

#include "hfg/complex.hpp"

namespace hfg {

// One free stabilization factor: w is the new basepoint, partner an existing one.
struct StabRecord {
  std::string w, partner;
  int factor = 0;  // position of the factor in the tensor tower, 0 = first added
};

struct Stabilized {
  ComplexPtr base;  // the input complex over the enlarged ring
  ComplexPtr stab;  // generators x|w+ and x|w- interleaved: index 2b + s
  StabRecord rec;
};

// Basepoint table of c, with every ring variable standing for itself when c
// has none.
std::map<std::string, std::string> basepoint_table(const ColoredComplex& c);

// d(x|w+) = (dx)|w+, d(x|w-) = (dx)|w- + (U_w + U_w')x|w+. The new basepoint
// gets its own variable unless color names an existing one.
Stabilized free_stabilize(ComplexPtr c, const std::string& w, const std::string& partner,
                          const std::string& color = "");

ModuleMap s_plus(const Stabilized& s);   // x -> x|w+
ModuleMap s_minus(const Stabilized& s);  // x|w- -> x, x|w+ -> 0
// x|w+ -> x|w-, x|w- -> U_partner x|w+
ModuleMap model_edge(const Stabilized& s);

// The permutation matrix from stabilizing at (w1 then w2) to (w2 then w1).
ModuleMap swap_factors(ComplexPtr first_w1, ComplexPtr first_w2);

struct Transition {
  ComplexPtr h1, h1_5, h2;  // base with z -> wp (h1, h1_5) or z -> w (h2), stabilized
  ModuleMap phi;            // h1 -> h2, block (1, 0; L, 1)
  PolyMatrix lower_left;    // L = sum U_w^i U_wp^j d^{i+j+1}
};

// Splits basepoint z of c0 into w and wp. The common ring is the ring of c0
// without z, followed by w and wp. c0 must be untruncated; the outputs are
// truncated by t.
Transition model_transition(ComplexPtr c0, const std::string& z, const std::string& w, const std::string& wp,
                            const Truncation& t);

struct RandomComplexOptions {
  int pairs = 3;         // acyclic-looking pairs x -> T y
  int free_gens = 1;     // generators with zero differential
  int max_degree = 2;    // degree bound for T and for the conjugating entries
  double density = 0.5;  // probability that an entry above the diagonal is nonzero
};

// Direct sum of x_k -> T_k y_k and free generators, conjugated by a random
// unipotent upper triangular Q with inverse sum N^k.
ComplexPtr random_complex(std::mt19937_64& rng, RingPtr ring, const Truncation& t, const RandomComplexOptions& opt = {});

}  // namespace hfg
