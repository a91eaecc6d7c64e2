#include "tssos/generators.hpp"

#include <algorithm>
#include <stdexcept>

#include "tssos/basis.hpp"

namespace tssos {

namespace {

const std::pair<Family, const char*> kFamilies[] = {
    {Family::kRandpoly1, "randpoly1"},
    {Family::kRandpoly2, "randpoly2"},
    {Family::kBroydenBanded, "broyden_banded"},
    {Family::kBroydenTridiagonal, "broyden_tridiagonal"},
    {Family::kGenRosenbrock, "gen_rosenbrock"},
    {Family::kModGenRosenbrock, "mod_gen_rosenbrock"},
    {Family::kModChainedSingular, "mod_chained_singular"},
};

const std::pair<ConstraintSet, const char*> kConstraintSets[] = {
    {ConstraintSet::kNone, "none"},
    {ConstraintSet::kUnitBall, "unit_ball"},
    {ConstraintSet::kUnitHypercube, "unit_hypercube"},
};

// x_i with 1-based i.
Polynomial x(std::size_t n, std::size_t i) { return Polynomial::variable(n, i - 1); }

Polynomial cross_squares(std::size_t n) {
  Polynomial out(n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      Exponent e(n);
      e[i - 1] = 2;
      e[j - 1] = 2;
      out.add_term(e, 1.0);
    }
  return out;
}

void require_n(std::size_t n, std::size_t min, const char* family) {
  if (n < min)
    throw std::invalid_argument(std::string(family) + " needs n >= " + std::to_string(min));
}

}  // namespace

Family parse_family(const std::string& s) {
  for (auto [f, name] : kFamilies)
    if (s == name) return f;
  throw std::invalid_argument("unknown benchmark family '" + s + "'");
}

std::string to_string(Family f) {
  for (auto [g, name] : kFamilies)
    if (g == f) return name;
  return "?";
}

ConstraintSet parse_constraint_set(const std::string& s) {
  for (auto [c, name] : kConstraintSets)
    if (s == name) return c;
  throw std::invalid_argument("unknown constraint set '" + s + "' (expected none|unit_ball|unit_hypercube)");
}

std::string to_string(ConstraintSet c) {
  for (auto [d, name] : kConstraintSets)
    if (d == c) return name;
  return "?";
}

Polynomial randpoly1(std::size_t n, int degree, std::size_t t, double p, std::uint64_t seed) {
  require_n(n, 1, "randpoly1");
  if (degree < 2 || degree % 2 != 0) throw std::invalid_argument("randpoly1 needs an even degree >= 2");
  if (t < 1) throw std::invalid_argument("randpoly1 needs t >= 1");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("randpoly1 needs 0 < p <= 1");
  Rng rng(seed);
  std::vector<Polynomial> parts(t, Polynomial(n));
  for (const auto& e : standard_basis(n, degree / 2)) {
    if (rng.uniform(0.0, 1.0) >= p) continue;
    std::size_t i = rng.index(t);
    parts[i].add_term(e, rng.uniform(-1.0, 1.0));
  }
  Polynomial f(n);
  for (const auto& q : parts) f += q * q;
  return f;
}

Polynomial randpoly2(std::size_t n, int degree, std::size_t s, std::uint64_t seed) {
  require_n(n, 1, "randpoly2");
  if (degree < 2 || degree % 2 != 0) throw std::invalid_argument("randpoly2 needs an even degree >= 2");
  if (s < n + 1) throw std::invalid_argument("randpoly2 needs s >= n + 1");
  Rng rng(seed);
  Polynomial f = Polynomial::constant(n, rng.uniform(0.0, 1.0));
  for (std::size_t i = 0; i < n; ++i) f.add_term(Exponent::unit(n, i, degree), rng.uniform(0.0, 1.0));
  std::vector<Exponent> pool = standard_basis(n, degree - 1).monomials();
  pool.erase(pool.begin());  // the zero exponent comes first in graded order
  const std::size_t extra = std::min(s - n - 1, pool.size());
  for (std::size_t j = 0; j < extra; ++j) {
    std::size_t pick = j + rng.index(pool.size() - j);
    std::swap(pool[j], pool[pick]);
    f.add_term(pool[j], rng.uniform(-1.0, 1.0));
  }
  return f;
}

Polynomial broyden_banded(std::size_t n) {
  require_n(n, 1, "broyden_banded");
  Polynomial f(n);
  for (std::size_t i = 1; i <= n; ++i) {
    Polynomial r = x(n, i) * (2.0 + 5.0 * x(n, i) * x(n, i)) + 1.0;
    const std::size_t lo = i > 5 ? i - 5 : 1, hi = std::min(n, i + 1);
    for (std::size_t j = lo; j <= hi; ++j)
      if (j != i) r = r - (1.0 + x(n, j)) * x(n, j);
    f += r * r;
  }
  return f;
}

Polynomial broyden_tridiagonal(std::size_t n) {
  require_n(n, 2, "broyden_tridiagonal");
  auto core = [&](std::size_t i) { return (3.0 - 2.0 * x(n, i)) * x(n, i) + 1.0; };
  Polynomial f(n);
  Polynomial first = core(1) - 2.0 * x(n, 2);
  f += first * first;
  for (std::size_t i = 2; i <= n - 1; ++i) {
    Polynomial r = core(i) - x(n, i - 1) - 2.0 * x(n, i + 1);
    f += r * r;
  }
  Polynomial last = core(n) - x(n, n - 1);
  f += last * last;
  return f;
}

Polynomial gen_rosenbrock(std::size_t n) {
  require_n(n, 2, "gen_rosenbrock");
  Polynomial f = Polynomial::constant(n, 1.0);
  for (std::size_t i = 2; i <= n; ++i) {
    Polynomial a = x(n, i) - x(n, i - 1) * x(n, i - 1);
    Polynomial b = 1.0 - x(n, i);
    f += 100.0 * a * a + b * b;
  }
  return f;
}

Polynomial mod_gen_rosenbrock(std::size_t n) { return gen_rosenbrock(n) + cross_squares(n); }

Polynomial mod_chained_singular(std::size_t n) {
  require_n(n, 4, "mod_chained_singular");
  if (n % 2 != 0) throw std::invalid_argument("mod_chained_singular needs an even n");
  Polynomial f(n);
  for (std::size_t i = 1; i + 3 <= n; i += 2) {
    Polynomial a = x(n, i) + 10.0 * x(n, i + 1);
    Polynomial b = x(n, i + 2) - x(n, i + 3);
    Polynomial c = x(n, i + 1) - 2.0 * x(n, i + 2);
    Polynomial d = x(n, i) - 10.0 * x(n, i + 3);
    f += a * a + 5.0 * b * b + c.pow(4) + 10.0 * d.pow(4);
  }
  return f + cross_squares(n);
}

std::vector<Polynomial> constraint_polynomials(ConstraintSet c, std::size_t n) {
  std::vector<Polynomial> out;
  if (c == ConstraintSet::kUnitBall) {
    Polynomial g = Polynomial::constant(n, 1.0);
    for (std::size_t i = 1; i <= n; ++i) g = g - x(n, i) * x(n, i);
    out.push_back(g);
  } else if (c == ConstraintSet::kUnitHypercube) {
    for (std::size_t i = 1; i <= n; ++i) out.push_back(1.0 - x(n, i) * x(n, i));
  }
  return out;
}

PopProblem generate(Family family, const FamilyParams& prm, ConstraintSet constraints) {
  PopProblem pop;
  switch (family) {
    case Family::kRandpoly1: pop.objective = randpoly1(prm.n, prm.degree, prm.t, prm.p, prm.seed); break;
    case Family::kRandpoly2: pop.objective = randpoly2(prm.n, prm.degree, prm.s, prm.seed); break;
    case Family::kBroydenBanded: pop.objective = broyden_banded(prm.n); break;
    case Family::kBroydenTridiagonal: pop.objective = broyden_tridiagonal(prm.n); break;
    case Family::kGenRosenbrock: pop.objective = gen_rosenbrock(prm.n); break;
    case Family::kModGenRosenbrock: pop.objective = mod_gen_rosenbrock(prm.n); break;
    case Family::kModChainedSingular: pop.objective = mod_chained_singular(prm.n); break;
  }
  pop.constraints = constraint_polynomials(constraints, prm.n);
  return pop;
}

}  // namespace tssos
