#include "tssos/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace tssos {

SignType sign_type(const Exponent& a) {
  SignType s;
  s.bits.reserve(a.size());
  for (int v : a.entries()) s.bits.push_back(static_cast<std::uint8_t>(v & 1));
  return s;
}

SignType operator^(const SignType& a, const SignType& b) {
  if (a.bits.size() != b.bits.size())
    throw std::invalid_argument("sign types of different length");
  SignType r = a;
  for (std::size_t i = 0; i < r.bits.size(); ++i) r.bits[i] ^= b.bits[i];
  return r;
}

Polynomial::Polynomial(std::size_t nvars, TermMap terms) : nvars_(nvars) {
  for (auto& [e, c] : terms) {
    if (e.size() != nvars) throw std::invalid_argument("exponent length does not match nvars");
    if (c != 0.0) terms_.emplace(e, c);
  }
}

Polynomial Polynomial::constant(std::size_t nvars, double c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t var) {
  if (var >= nvars) throw std::out_of_range("variable index out of range");
  Polynomial p(nvars);
  p.add_term(Exponent::unit(nvars, var), 1.0);
  return p;
}

Polynomial Polynomial::monomial(const Exponent& e, double c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
  return d;
}

double Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Exponent& e, double c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent length does not match nvars");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (std::abs(it->second) < kDropTolerance) terms_.erase(it);
  } else if (std::abs(c) < kDropTolerance) {
    terms_.erase(it);
  }
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (x.size() != nvars_) throw std::invalid_argument("evaluation point has wrong length");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    sum += t;
  }
  return sum;
}

void Polynomial::check_nvars(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials have different nvars");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_nvars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r(*this);
  r += o;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(double s) const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.add_term(e, c * s);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_nvars(o);
  Polynomial r(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(nvars_, 1.0);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  char buf[64];
  for (const auto& [e, c] : terms_) {
    double mag = std::abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    bool need_coef = e.is_zero() || mag != 1.0;
    if (need_coef) {
      std::snprintf(buf, sizeof buf, "%.17g", mag);
      out += buf;
    }
    bool wrote_factor = need_coef;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote_factor) out += "*";
      out += "x" + std::to_string(i + 1);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
      wrote_factor = true;
    }
  }
  return out;
}

std::vector<Exponent> support(const Polynomial& f) {
  std::vector<Exponent> s;
  s.reserve(f.num_terms());
  for (const auto& [e, c] : f.terms()) s.push_back(e);
  return s;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars) : s_(text), nvars_(nvars) {}

  Polynomial run() {
    Polynomial p(nvars_);
    skip_ws();
    if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      double sign = 1.0;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      first = false;
      auto [e, c] = term();
      p.add_term(e, sign * c);
    }
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at_number() const {
    return pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.');
  }

  double number() {
    std::string buf(s_.substr(pos_));
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str()) throw ParseError("expected number", pos_);
    pos_ += static_cast<std::size_t>(end - buf.c_str());
    return v;
  }

  unsigned long integer() {
    std::size_t start = pos_;
    unsigned long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(s_[pos_] - '0');
      if (v > 1000000) throw ParseError("integer too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected integer", pos_);
    return v;
  }

  void factor(Exponent& e) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != 'x') throw ParseError("expected variable", pos_);
    std::size_t var_pos = pos_;
    ++pos_;
    unsigned long idx = integer();
    if (idx < 1 || idx > nvars_)
      throw ParseError("variable index x" + std::to_string(idx) + " out of range 1.." +
                           std::to_string(nvars_),
                       var_pos);
    skip_ws();
    int power = 1;
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip_ws();
      power = static_cast<int>(integer());
    }
    e[idx - 1] += power;
  }

  std::pair<Exponent, double> term() {
    skip_ws();
    Exponent e(nvars_);
    double c = 1.0;
    if (at_number()) {
      c = number();
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        factor(e);
      } else {
        return {e, c};
      }
    } else {
      factor(e);
    }
    while (true) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        factor(e);
      } else {
        break;
      }
    }
    return {e, c};
  }

  std::string_view s_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  if (nvars == 0) throw std::invalid_argument("nvars must be positive");
  return Parser(text, nvars).run();
}

std::size_t max_variable_index(std::string_view text) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'x') continue;
    std::size_t j = i + 1, v = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      v = v * 10 + static_cast<std::size_t>(text[j] - '0');
      ++j;
    }
    best = std::max(best, v);
  }
  return best;
}

void PopProblem::validate() const {
  for (const auto& g : constraints)
    if (g.nvars() != objective.nvars())
      throw std::invalid_argument("constraint and objective disagree on the number of variables");
}

int PopProblem::min_relaxation_order() const {
  int d = half_degree(objective);
  for (const auto& g : constraints) d = std::max(d, half_degree(g));
  return d;
}

bool PopProblem::feasible(std::span<const double> x, double tol) const {
  for (const auto& g : constraints)
    if (g.evaluate(x) < -tol) return false;
  return true;
}

}  // namespace tssos
