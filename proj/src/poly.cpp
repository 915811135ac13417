#include "hfg/poly.hpp"

#include <algorithm>
#include <sstream>

namespace hfg {

int Monomial::degree() const {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

bool Monomial::is_one() const {
  for (auto x : e)
    if (x) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    int s = e[i] + o.e[i];
    if (s > 255) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = static_cast<uint8_t>(s);
  }
  return r;
}

Ring::Ring(std::vector<std::string> vars) : vars_(std::move(vars)) {
  if (size() > kMaxVars) throw InputError("too many ring variables (max 16)");
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < i; ++j)
      if (vars_[i] == vars_[j]) throw InputError("duplicate color '" + vars_[i] + "'");
}

int Ring::index(const std::string& v) const {
  for (int i = 0; i < size(); ++i)
    if (vars_[i] == v) return i;
  return -1;
}

int Ring::require(const std::string& v) const {
  int i = index(v);
  if (i < 0) throw InputError("unknown color '" + v + "'");
  return i;
}

RingPtr make_ring(std::vector<std::string> vars) {
  return std::make_shared<const Ring>(std::move(vars));
}

bool Truncation::keeps(const Monomial& m) const {
  switch (kind) {
    case Kind::None:
      return true;
    case Kind::TotalDegree:
      return m.degree() < N;
    case Kind::PerVariable:
      for (auto x : m.e)
        if (x >= N) return false;
      return true;
  }
  return true;
}

std::string Truncation::describe() const {
  switch (kind) {
    case Kind::None:
      return "none";
    case Kind::TotalDegree:
      return "deg<" + std::to_string(N);
    case Kind::PerVariable:
      return "exp<" + std::to_string(N);
  }
  return "?";
}

std::vector<Monomial> monomial_basis(int nvars, const Truncation& t) {
  if (!t.active()) throw std::invalid_argument("monomial basis needs a truncation");
  std::vector<Monomial> out;
  Monomial cur;
  // depth-first over exponent vectors, pruning as soon as the ideal is hit
  auto rec = [&](auto&& self, int v) -> void {
    if (v == nvars) {
      out.push_back(cur);
      return;
    }
    for (int k = 0;; ++k) {
      cur.e[v] = static_cast<uint8_t>(k);
      if (!t.keeps(cur)) break;
      self(self, v + 1);
    }
    cur.e[v] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Poly Poly::one() { return monomial(Monomial{}); }

Poly Poly::monomial(const Monomial& m) {
  Poly p;
  p.terms_.push_back(m);
  return p;
}

Poly Poly::var(int i, int power) {
  if (i < 0 || i >= kMaxVars) throw std::out_of_range("variable index");
  Monomial m;
  m.e[i] = static_cast<uint8_t>(power);
  return monomial(m);
}

Poly Poly::from_terms(std::vector<Monomial> ms) {
  std::sort(ms.begin(), ms.end());
  Poly p;
  p.terms_.reserve(ms.size());
  for (size_t i = 0; i < ms.size();) {
    size_t j = i;
    while (j < ms.size() && ms[j] == ms[i]) ++j;
    if ((j - i) % 2 == 1) p.terms_.push_back(ms[i]);
    i = j;
  }
  return p;
}

int Poly::max_degree() const {
  int d = -1;
  for (const auto& m : terms_) d = std::max(d, m.degree());
  return d;
}

bool Poly::has_constant() const {
  return !terms_.empty() && terms_.front().is_one();
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  std::vector<Monomial> r;
  r.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.cbegin();
  auto b = o.terms_.cbegin();
  while (a != terms_.cend() && b != o.terms_.cend()) {
    if (*a < *b) {
      r.push_back(*a++);
    } else if (*b < *a) {
      r.push_back(*b++);
    } else {
      ++a;
      ++b;
    }
  }
  r.insert(r.end(), a, terms_.cend());
  r.insert(r.end(), b, o.terms_.cend());
  terms_ = std::move(r);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator*(const Poly& o) const { return mul(o, Truncation::none()); }

Poly Poly::mul(const Poly& o, const Truncation& t) const {
  if (terms_.empty() || o.terms_.empty()) return {};
  if (o.is_one()) return truncated(t);
  if (is_one()) return o.truncated(t);
  std::vector<Monomial> ms;
  ms.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      Monomial m = a * b;
      if (t.keeps(m)) ms.push_back(m);
    }
  return from_terms(std::move(ms));
}

Poly Poly::truncated(const Truncation& t) const {
  if (!t.active()) return *this;
  Poly r;
  for (const auto& m : terms_)
    if (t.keeps(m)) r.terms_.push_back(m);
  return r;
}

Poly Poly::derivative(int var) const {
  std::vector<Monomial> ms;
  for (const auto& m : terms_) {
    if (m.e[var] % 2 == 1) {
      Monomial d = m;
      d.e[var] -= 1;
      ms.push_back(d);
    }
  }
  return from_terms(std::move(ms));
}

Poly Poly::coefficient(int var, int n) const {
  std::vector<Monomial> ms;
  for (const auto& m : terms_) {
    if (m.e[var] == n) {
      Monomial d = m;
      d.e[var] = 0;
      ms.push_back(d);
    }
  }
  return from_terms(std::move(ms));
}

int Poly::degree_in(int var) const {
  int d = -1;
  for (const auto& m : terms_) d = std::max(d, static_cast<int>(m.e[var]));
  return d;
}

Poly Poly::substitute(const std::vector<int>& target) const {
  std::vector<Monomial> ms;
  ms.reserve(terms_.size());
  for (const auto& m : terms_) {
    Monomial r;
    for (size_t i = 0; i < target.size(); ++i) {
      if (!m.e[i]) continue;
      int s = r.e[target[i]] + m.e[i];
      if (s > 255) throw std::overflow_error("monomial exponent overflow");
      r.e[target[i]] = static_cast<uint8_t>(s);
    }
    ms.push_back(r);
  }
  return from_terms(std::move(ms));
}

Poly Poly::at_zero() const { return has_constant() ? one() : Poly{}; }

std::string Poly::to_string(const Ring& r) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& m : terms_) {
    if (!first) os << " + ";
    first = false;
    if (m.is_one()) {
      os << "1";
      continue;
    }
    bool f2 = true;
    for (int i = 0; i < r.size(); ++i) {
      if (!m.e[i]) continue;
      if (!f2) os << "*";
      f2 = false;
      os << "U_" << r.name(i);
      if (m.e[i] > 1) os << "^" << int(m.e[i]);
    }
  }
  return os.str();
}

namespace {
std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}
}  // namespace

Poly parse_poly(const std::string& s, const Ring& r) {
  std::vector<Monomial> ms;
  std::stringstream ss(s);
  std::string term;
  while (std::getline(ss, term, '+')) {
    term = trim(term);
    if (term.empty()) throw InputError("empty term in polynomial '" + s + "'");
    if (term == "0") continue;
    Monomial m;
    std::stringstream ts(term);
    std::string factor;
    while (std::getline(ts, factor, '*')) {
      factor = trim(factor);
      if (factor == "1") continue;
      if (factor.rfind("U_", 0) != 0) throw InputError("bad factor '" + factor + "'");
      std::string name = factor.substr(2);
      int pw = 1;
      auto caret = name.find('^');
      if (caret != std::string::npos) {
        pw = std::stoi(name.substr(caret + 1));
        name = name.substr(0, caret);
      }
      int v = r.require(name);
      m.e[v] = static_cast<uint8_t>(m.e[v] + pw);
    }
    ms.push_back(m);
  }
  return Poly::from_terms(std::move(ms));
}

}  // namespace hfg
