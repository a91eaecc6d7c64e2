// Sparse multivariate polynomials over double coefficients.
//
// An Exponent is a fixed-length vector of nonnegative integers; a Polynomial
// maps exponents to nonzero coefficients. Every container in the library
// that needs a deterministic order uses the graded order defined by
// GradedLess: total degree first, then the exponent with the larger leading
// entry comes first (so x1 < x2 < x3 within a degree).
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tssos {

class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::size_t nvars) : e_(nvars, 0) {}
  Exponent(std::initializer_list<int> entries) : e_(entries) {}
  explicit Exponent(std::vector<int> entries) : e_(std::move(entries)) {}

  static Exponent unit(std::size_t nvars, std::size_t var, int power = 1) {
    Exponent e(nvars);
    e.e_[var] = power;
    return e;
  }

  std::size_t size() const { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  int& operator[](std::size_t i) { return e_[i]; }
  std::span<const int> entries() const { return e_; }

  int degree() const {
    int d = 0;
    for (int v : e_) d += v;
    return d;
  }
  bool is_zero() const { return degree() == 0; }
  bool is_even() const {
    for (int v : e_)
      if (v % 2 != 0) return false;
    return true;
  }

  Exponent operator+(const Exponent& o) const {
    Exponent r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
  }
  Exponent doubled() const {
    Exponent r(*this);
    for (int& v : r.e_) v *= 2;
    return r;
  }
  // Exact half; callers must check is_even() first.
  Exponent halved() const {
    Exponent r(*this);
    for (int& v : r.e_) v /= 2;
    return r;
  }

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  std::vector<int> e_;
};

struct GradedLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] > b[i];
    return false;
  }
};

struct ExponentHash {
  std::size_t operator()(const Exponent& e) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : e.entries()) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Componentwise parity of an exponent.
struct SignType {
  std::vector<std::uint8_t> bits;
  bool is_even() const {
    for (auto b : bits)
      if (b) return false;
    return true;
  }
  friend bool operator==(const SignType&, const SignType&) = default;
  friend auto operator<=>(const SignType&, const SignType&) = default;
};

SignType sign_type(const Exponent& a);
SignType operator^(const SignType& a, const SignType& b);

class Polynomial {
 public:
  using TermMap = std::map<Exponent, double, GradedLess>;

  // Coefficients smaller than this in magnitude are dropped after arithmetic.
  static constexpr double kDropTolerance = 1e-14;

  explicit Polynomial(std::size_t nvars = 1) : nvars_(nvars) {}
  Polynomial(std::size_t nvars, TermMap terms);

  static Polynomial constant(std::size_t nvars, double c);
  static Polynomial variable(std::size_t nvars, std::size_t var);
  static Polynomial monomial(const Exponent& e, double c = 1.0);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  double coefficient(const Exponent& e) const;

  // Adds c to the coefficient of e, dropping the term if it cancels.
  void add_term(const Exponent& e, double c);

  double evaluate(std::span<const double> x) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double s) const;
  Polynomial operator-() const { return *this * -1.0; }
  Polynomial& operator+=(const Polynomial& o);
  Polynomial pow(unsigned k) const;

  // Text form accepted by parse_polynomial; coefficients printed with
  // enough digits to round-trip exactly.
  std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void check_nvars(const Polynomial& o) const;

  std::size_t nvars_;
  TermMap terms_;
};

inline Polynomial operator*(double s, const Polynomial& p) { return p * s; }
inline Polynomial operator+(const Polynomial& p, double c) {
  return p + Polynomial::constant(p.nvars(), c);
}
inline Polynomial operator+(double c, const Polynomial& p) { return p + c; }
inline Polynomial operator-(const Polynomial& p, double c) { return p + (-c); }
inline Polynomial operator-(double c, const Polynomial& p) {
  return Polynomial::constant(p.nvars(), c) - p;
}

std::vector<Exponent> support(const Polynomial& f);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar: terms separated by + or -, each an optional real coefficient
// followed by *-separated factors x<i> or x<i>^<k> (1-based i). Whitespace is
// ignored.
Polynomial parse_polynomial(std::string_view text, std::size_t nvars);

// Largest variable index referenced in text, 0 if none.
std::size_t max_variable_index(std::string_view text);

// minimize objective subject to constraints[j] >= 0.
struct PopProblem {
  Polynomial objective;
  std::vector<Polynomial> constraints;

  std::size_t nvars() const { return objective.nvars(); }
  bool unconstrained() const { return constraints.empty(); }
  // Throws std::invalid_argument when the polynomials disagree on nvars.
  void validate() const;
  // max(ceil(deg f / 2), ceil(deg g_j / 2))
  int min_relaxation_order() const;
  // Componentwise feasibility, g_j(x) >= -tol for all j.
  bool feasible(std::span<const double> x, double tol = 0.0) const;
};

inline int half_degree(const Polynomial& p) { return (p.degree() + 1) / 2; }

}  // namespace tssos
