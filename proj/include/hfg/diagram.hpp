#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hfg/lattice.hpp"
#include "hfg/poly.hpp"

namespace hfg {

struct Region {
  std::string id;
  int chi = 1;
};

// Quadrants listed counterclockwise; q[0] and q[2] are the alpha-beta
// quadrants entering m^{ab}, q[1] and q[3] enter m^{ba}.
struct Crossing {
  std::string id;
  int alpha = 0, beta = 0;
  std::array<int, 4> q{};
};

struct Basepoint {
  std::string id;
  int region = 0;
  std::string color;
};

// One transverse crossing of an alpha curve by a path or loop.
struct PathStep {
  int alpha = 0;
  int before = 0, after = 0;  // region indices
  int sign = 1;
};

struct PathSpec {
  std::string id;
  std::string from, to;  // basepoint ids; equal for loops
  std::vector<PathStep> steps;
  bool is_loop() const { return from == to; }
};

struct HeegaardDiagram {
  int d = 0;
  std::vector<Region> regions;
  std::vector<Crossing> crossings;
  std::vector<Basepoint> basepoints;
  std::vector<PathSpec> paths;

  int nregions() const { return static_cast<int>(regions.size()); }
  int ncrossings() const { return static_cast<int>(crossings.size()); }
  int region_index(const std::string& id) const;  // -1 if absent
  int require_region(const std::string& id) const;
  int basepoint_index(const std::string& id) const;
  int require_basepoint(const std::string& id) const;
  const PathSpec& require_path(const std::string& id) const;
  // distinct colors in order of first appearance
  std::vector<std::string> colors() const;
};

// Throws InputError naming the violated invariant.
void validate(const HeegaardDiagram& h);

using Domain = IntVec;  // multiplicity per region
using Generator = std::vector<int>;  // crossing index for alpha 0..d-1

// Euler measure of each region, in quarter units (4 e(R)).
std::vector<int> region_euler4(const HeegaardDiagram& h);
int euler4(const HeegaardDiagram& h, const Domain& D);
Rational euler_measure(const HeegaardDiagram& h, const Domain& D);

std::vector<Generator> enumerate_generators(const HeegaardDiagram& h);
std::string generator_name(const HeegaardDiagram& h, const Generator& x);

// Row per crossing: m^{ab} - m^{ba} as a linear form on domains.
IntMat vertex_matrix(const HeegaardDiagram& h);
IntVec vertex_rhs(const HeegaardDiagram& h, const Generator& x, const Generator& y);
bool satisfies_vertex_relations(const HeegaardDiagram& h, const Domain& D, const Generator& x, const Generator& y);

// Cached Smith form of the vertex matrix and an echelon basis of its kernel.
struct DomainSystem {
  IntMat M;
  SmithForm snf;
  EchelonBasis kernel;
};
DomainSystem domain_system(const HeegaardDiagram& h);

struct DomainSpace {
  Domain particular;
  std::vector<Domain> kernel;
  std::vector<int> pivots;
};
// nullopt when pi_2(x, y) is empty.
std::optional<DomainSpace> domain_space(const HeegaardDiagram& h, const DomainSystem& sys, const Generator& x,
                                        const Generator& y);
std::optional<DomainSpace> domain_space(const HeegaardDiagram& h, const Generator& x, const Generator& y);

// 4 * (n_x(D)) summed over the points of x: each point counts the sum of its
// four quadrant multiplicities.
int corner4(const HeegaardDiagram& h, const Domain& D, const Generator& x);
// Per-region linear coefficients of 4*mu for domains from x to y.
std::vector<int> maslov4_coefficients(const HeegaardDiagram& h, const Generator& x, const Generator& y);
// nullopt when the quarter-integer sum is not an integer. Throws InputError
// if D violates the vertex relations for (x, y).
std::optional<int> maslov_index(const HeegaardDiagram& h, const Domain& D, const Generator& x, const Generator& y);

std::vector<int> basepoint_multiplicities(const HeegaardDiagram& h, const Domain& D);

// Lattice of periodic domains (vertex kernel with every n_w = 0), echelon basis.
EchelonBasis periodic_lattice(const HeegaardDiagram& h, const DomainSystem& sys);
EchelonBasis periodic_lattice(const HeegaardDiagram& h);
bool is_periodic(const HeegaardDiagram& h, const Domain& P);
// <c1(s), H(P)> computed as mu(P) at the representative x. Throws if P is
// not periodic.
int c1_pairing(const HeegaardDiagram& h, const Domain& P, const Generator& x);

struct SpincPartition {
  std::vector<int> cls;  // class index per generator
  std::vector<std::string> labels;
  std::vector<int> representative;  // generator index per class
};
SpincPartition spinc_partition(const HeegaardDiagram& h, const std::vector<Generator>& gens);

struct WeakAdmissibility {
  bool admissible = true;
  Domain witness;  // nonzero nonnegative periodic domain when not admissible
};
WeakAdmissibility check_weak_admissibility(const HeegaardDiagram& h);

enum class StrongStatus { Verified, FailedWitness, Inconclusive };
struct StrongAdmissibility {
  StrongStatus status = StrongStatus::Inconclusive;
  Domain witness;
  std::string reason;
};
StrongAdmissibility check_strong_admissibility(const HeegaardDiagram& h, const Generator& rep, int bound = 8);

// Torus grid with n alpha rows, n beta columns and basepoint O<i> in the
// square (i, o[i]).
HeegaardDiagram from_grid(int n, const std::vector<int>& o);
// Vertical path in column o[i] from O<i> up to row j, then sideways to O<j>.
PathSpec grid_path(const HeegaardDiagram& grid, const std::vector<int>& o, int i, int j, const std::string& id);
// Loop based at O<base> winding once vertically around column c.
PathSpec grid_vertical_loop(const HeegaardDiagram& grid, const std::vector<int>& o, int base, int c,
                            const std::string& id);
// Loop based at O<base> that crosses no alpha curve.
PathSpec grid_horizontal_loop(const HeegaardDiagram& grid, int base, const std::string& id);

// Inserts a new alpha/beta pair meeting at theta+ and theta- inside region r,
// with the new basepoint w in the lens.
HeegaardDiagram stabilize_diagram(const HeegaardDiagram& h, const std::string& region, const std::string& w,
                                  const std::string& color = "");
HeegaardDiagram empty_s3_diagram(const std::string& w);
// (S^2, alpha0, beta0, w, w'): the stabilization of the empty diagram.
HeegaardDiagram s2_model(const std::string& w = "w", const std::string& wp = "wp");
// Genus one diagram of S^1 x S^2 with |alpha cap beta| = 2; basepoint in the
// annulus, or in a bigon for the non-admissible variant.
HeegaardDiagram s1s2_diagram(bool basepoint_in_bigon = false);

}  // namespace hfg
