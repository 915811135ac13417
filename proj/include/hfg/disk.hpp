#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hfg/complex.hpp"
#include "hfg/diagram.hpp"

namespace hfg {

struct EnumOptions {
  int cap = 3;       // per-region multiplicity bound
  bool hat = false;  // forbid every basepoint region
};

struct DomainList {
  std::vector<Domain> domains;
  bool inconclusive = false;  // some solution sits on the cap
};

// All D >= 0 from x to y with the given Maslov index, multiplicities <= cap.
DomainList positive_domains(const HeegaardDiagram& h, const DomainSystem& sys, const Generator& x, const Generator& y,
                            int mu, const EnumOptions& opt);

enum class DiskClass { EmptyBigon, EmptyRectangle, Other };
std::string to_string(DiskClass c);
// Throws InputError unless D is a nonnegative domain of index 1 from x to y.
DiskClass classify(const HeegaardDiagram& h, const Domain& D, const Generator& x, const Generator& y);

struct Disk {
  int src = 0, tgt = 0;  // generator indices
  Domain D;
  DiskClass cls = DiskClass::Other;
};

struct DiskTable {
  std::vector<Generator> gens;
  std::vector<Disk> disks;  // ordered by (src, tgt, enumeration order)
  bool inconclusive = false;
};

// Index-1 positive domains between every ordered pair of generators.
namespace serial {
DiskTable disk_table(const HeegaardDiagram& h, const EnumOptions& opt);
}
namespace omp {
DiskTable disk_table(const HeegaardDiagram& h, const EnumOptions& opt);
}
inline DiskTable disk_table(const HeegaardDiagram& h, const EnumOptions& opt) { return omp::disk_table(h, opt); }

enum class Flavor { Hat, Minus };

struct DiagramComplex {
  HeegaardDiagram h;
  Flavor flavor = Flavor::Minus;
  DiskTable table;
  ComplexPtr complex;
  std::vector<Disk> others;   // index-1 domains that are not empty bigons/rectangles
  bool assume_zero = false;   // others counted as 0: output is unsound
  bool combinatorial() const { return others.empty(); }
};

// Builds the complex from forced counts. Others are listed; their counts are
// only replaced by 0 when assume_zero is set.
DiagramComplex compute_complex(const HeegaardDiagram& h, Flavor flavor, const EnumOptions& opt = {},
                               const Truncation& t = Truncation::none(), bool assume_zero = false);

// U-monomial of a disk: product of U_{color(w)}^{n_w(D)}.
Poly disk_monomial(const DiagramComplex& dc, const Domain& D);
// Sum over disks of weight(disk) mod 2 times the disk monomial, as a map.
ModuleMap weighted_count(const DiagramComplex& dc, const std::function<long long(const Disk&)>& weight);

// a(lambda, D) = sum over steps of sign * (D[after] - D[before]).
long long path_weight(const PathSpec& p, const Domain& D);
ModuleMap rel_homology(const DiagramComplex& dc, const PathSpec& p);
// H_{l1 l2}: weight a(l1) a(l2).
ModuleMap commutator_homotopy(const DiagramComplex& dc, const PathSpec& l1, const PathSpec& l2);
// H_l: weight a(l)(a(l)+1)/2.
ModuleMap square_homotopy(const DiagramComplex& dc, const PathSpec& l);
// H_p(z) = z if z contains the crossing p, else 0.
ModuleMap corner_homotopy(const DiagramComplex& dc, int crossing);

Poly basepoint_variable(const DiagramComplex& dc, const std::string& w);

}  // namespace hfg
