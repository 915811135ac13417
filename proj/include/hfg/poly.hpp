#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hfg {

// Thrown for malformed user input (bad files, bad flags, violated invariants).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kMaxVars = 16;

struct Monomial {
  std::array<uint8_t, kMaxVars> e{};

  int degree() const;
  bool is_one() const;
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }
  bool operator<(const Monomial& o) const { return e < o.e; }
  Monomial operator*(const Monomial& o) const;
};

// Variables of a polynomial ring F2[U_c1, ..., U_ck]; one variable per color.
class Ring {
 public:
  Ring() = default;
  explicit Ring(std::vector<std::string> vars);

  int size() const { return static_cast<int>(vars_.size()); }
  const std::string& name(int i) const { return vars_.at(i); }
  const std::vector<std::string>& names() const { return vars_; }
  int index(const std::string& v) const;  // -1 if absent
  int require(const std::string& v) const;
  bool operator==(const Ring& o) const { return vars_ == o.vars_; }
  bool operator!=(const Ring& o) const { return vars_ != o.vars_; }

 private:
  std::vector<std::string> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;
RingPtr make_ring(std::vector<std::string> vars);

// Quotient by a monomial ideal: total degree >= N, or some exponent >= N.
struct Truncation {
  enum class Kind { None, TotalDegree, PerVariable };
  Kind kind = Kind::None;
  int N = 0;

  static Truncation none() { return {}; }
  static Truncation total(int n) { return {Kind::TotalDegree, n}; }
  static Truncation per_variable(int n) { return {Kind::PerVariable, n}; }

  bool active() const { return kind != Kind::None; }
  bool keeps(const Monomial& m) const;
  bool operator==(const Truncation& o) const { return kind == o.kind && N == o.N; }
  bool operator!=(const Truncation& o) const { return !(*this == o); }
  std::string describe() const;
};

// All monomials in nvars variables surviving a (finite) truncation, sorted.
std::vector<Monomial> monomial_basis(int nvars, const Truncation& t);

class Poly {
 public:
  Poly() = default;
  static Poly one();
  static Poly monomial(const Monomial& m);
  static Poly var(int i, int power = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].is_one(); }
  const std::vector<Monomial>& terms() const { return terms_; }
  int max_degree() const;
  bool has_constant() const;

  Poly& operator+=(const Poly& o);
  Poly operator+(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return terms_ != o.terms_; }
  bool operator<(const Poly& o) const { return terms_ < o.terms_; }

  Poly mul(const Poly& o, const Truncation& t) const;
  Poly truncated(const Truncation& t) const;
  // d/dU_i, exponent n contributes n*U^{n-1} reduced mod 2.
  Poly derivative(int var) const;
  // Coefficient of U_var^n, as a polynomial in the remaining variables.
  Poly coefficient(int var, int n) const;
  int degree_in(int var) const;
  // Rename variables: result exponent of target[i] receives exponent of i.
  Poly substitute(const std::vector<int>& target) const;
  // Set every variable to zero.
  Poly at_zero() const;

  std::string to_string(const Ring& r) const;

  // Builds from an arbitrary list, cancelling pairs (characteristic 2).
  static Poly from_terms(std::vector<Monomial> ms);

 private:
  std::vector<Monomial> terms_;
};

// Parses "U_a^2*U_b + 1 + U_c" style strings (variables by ring name).
Poly parse_poly(const std::string& s, const Ring& r);

}  // namespace hfg
