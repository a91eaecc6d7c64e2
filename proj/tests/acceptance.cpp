// Acceptance suite: one PASS/FAIL line per criterion, exit code 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "support.hpp"
#include "tssos/assembly.hpp"
#include "tssos/generators.hpp"
#include "tssos/pipeline.hpp"
#include "tssos/sdpa.hpp"
#include "tssos/solver.hpp"

using namespace tssos;
using testsupport::Gen;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects the failed checks of one criterion.
struct Check {
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s = %.9g (want %.9g +- %.1e)", what.c_str(), got, want, tol);
    expect(std::abs(got - want) <= tol, buf);
  }
  void optimal(SolverStatus s, const std::string& what) {
    expect(s == SolverStatus::kOptimal, what + " status " + to_string(s));
  }
};

struct Bound {
  double value = 0.0;
  SolverStatus status = SolverStatus::kNumerical;
};

Bound solve_bound(const BlockSdp& sdp) {
  SolverSolution s = solve(sdp);
  return {relaxation_bound(sdp, s), s.status};
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Polynomial ball(std::size_t n) { return constraint_polynomials(ConstraintSet::kUnitBall, n)[0]; }

RelaxationOptions sparse_opts(std::size_t k, int order = 0, SdpSide side = SdpSide::kSos) {
  RelaxationOptions o;
  o.sparse_order = k;
  o.order = order;
  o.side = side;
  return o;
}

RelaxationOptions dense_opts(int order = 0, SdpSide side = SdpSide::kSos) {
  RelaxationOptions o = sparse_opts(1, order, side);
  o.dense = true;
  return o;
}

PopProblem unconstrained(const Polynomial& f) {
  PopProblem p;
  p.objective = f;
  return p;
}

// The 20 quadratics shared by criteria 3, 11 and 12.
std::vector<testsupport::Quadratic> quadratics() {
  Gen g(303);
  std::vector<testsupport::Quadratic> out;
  for (int i = 0; i < 20; ++i) out.push_back(testsupport::random_quadratic(2 + g.below(9), g));
  return out;
}

PopProblem rosenbrock_ball() { return generate(Family::kGenRosenbrock, {10}, ConstraintSet::kUnitBall); }
PopProblem tridiagonal_ball() { return generate(Family::kBroydenTridiagonal, {10}, ConstraintSet::kUnitBall); }

// ---------------------------------------------------------------------------

Check example_reproduction() {
  Check c;
  auto t0 = Clock::now();
  PopProblem pop = unconstrained(testsupport::example33());
  RelaxationOptions o = sparse_opts(3);
  o.basis = BasisChoice::kNewton;
  PipelineResult r = run_relaxation(pop, o);
  RelaxationOptions d = dense_opts();
  d.basis = BasisChoice::kNewton;
  PipelineResult dense = run_relaxation(pop, d);
  const double t = seconds_since(t0);
  c.expect(!r.orders.empty() && !dense.orders.empty(), "no result");
  if (!c.failures.empty()) return c;
  c.optimal(r.orders[0].status, "k=1");
  c.optimal(dense.orders[0].status, "dense");
  c.near(r.orders[0].bound, -0.00355, 1e-3, "lambda_1");
  c.near(dense.orders[0].bound, 0.0, 1e-5, "dense bound");
  c.expect(r.stabilized_at == 1, "stabilized at k=" + std::to_string(r.stabilized_at));
  c.expect(t < 5.0, fmt("runtime %.2fs", t));
  c.detail = fmt("lambda_1 %.7f, dense %.2e, stabilized at k=1, %.2fs", r.orders[0].bound, dense.orders[0].bound, t);
  return c;
}

Check generate_basis_golden() {
  Check c;
  ExponentSet a{Exponent{0}, Exponent{1}, Exponent{8}};
  auto chain = generate_basis(a, standard_basis(1, 4));
  auto uni = [](std::initializer_list<int> d) {
    std::vector<Exponent> m;
    for (int v : d) m.push_back(Exponent{v});
    return MonomialBasis(1, m);
  };
  c.expect(chain.size() >= 2, "chain too short");
  if (chain.size() >= 2) {
    c.expect(chain[0] == uni({0, 1, 4}), "B_1 differs");
    c.expect(chain[1] == uni({0, 1, 2, 4}), "B_2 differs");
  }
  c.detail = "B_1 = {1, x, x^4}, B_2 = {1, x, x^2, x^4}";
  return c;
}

Check quadratic_exactness() {
  Check c;
  double worst = 0.0;
  int i = 0;
  for (const auto& q : quadratics()) {
    PopProblem pop = unconstrained(q.f);
    PipelineResult s = run_relaxation(pop, sparse_opts(1));
    PipelineResult d = run_relaxation(pop, dense_opts());
    const std::string tag = "quadratic " + std::to_string(i++);
    c.optimal(s.orders[0].status, tag + " sparse");
    c.optimal(d.orders[0].status, tag + " dense");
    const double diff = std::abs(s.orders[0].bound - d.orders[0].bound);
    worst = std::max(worst, diff);
    c.expect(diff <= 1e-6, tag + fmt(": |lambda_1 - lambda_sos| = %.2e", diff));
  }
  c.detail = fmt("20 quadratics, max |lambda_1 - lambda_sos| = %.2e", worst);
  return c;
}

Check monotonicity() {
  Check c;
  constexpr double kSlack = 2e-6;
  // The slack is absolute; bounds reach |lambda| ~ 1e3, so solve to 1e-10 relative.
  auto tight = [](RelaxationOptions o) {
    o.solver.tol_gap = 1e-10;
    o.solver.tol_feas = 1e-10;
    return o;
  };
  Gen g(404);
  int chains = 0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 2 + g.below(3);
    const int deg = (i % 2 == 0) ? 4 : 6;
    const std::size_t s = n + 1 + 3 + g.below(6);
    Polynomial f = randpoly2(n, deg, s, 1000 + static_cast<std::uint64_t>(i));
    const std::string tag = "instance " + std::to_string(i);

    // lambda_1 <= lambda_2 <= ... <= lambda_sos
    PopProblem pop = unconstrained(f);
    PipelineResult sp = run_relaxation(pop, tight(sparse_opts(4)));
    PipelineResult dn = run_relaxation(pop, tight(dense_opts()));
    std::vector<double> seq;
    for (const auto& o : sp.orders) {
      c.optimal(o.status, tag + " k=" + std::to_string(o.k));
      seq.push_back(o.bound);
    }
    c.optimal(dn.orders[0].status, tag + " dense");
    seq.push_back(dn.orders[0].bound);
    for (std::size_t k = 1; k < seq.size(); ++k)
      c.expect(seq[k - 1] <= seq[k] + kSlack, tag + fmt(": step %g decreases %.9g -> %.9g", double(k), seq[k - 1], seq[k]));
    ++chains;

    // Unit ball, d_hat in {d, d + 1}: nondecreasing in k and in d_hat.
    PopProblem cp = pop;
    cp.constraints.push_back(ball(n));
    const int d = deg / 2;
    std::map<int, std::vector<double>> by_order;
    for (int dh = d; dh <= d + 1; ++dh) {
      PipelineResult r = run_relaxation(cp, tight(sparse_opts(3, dh)));
      for (const auto& o : r.orders) {
        c.optimal(o.status, tag + fmt(" ball d_hat=%g k=%g", dh, double(o.k)));
        by_order[dh].push_back(o.bound);
      }
      auto& v = by_order[dh];
      for (std::size_t k = 1; k < v.size(); ++k)
        c.expect(v[k - 1] <= v[k] + kSlack, tag + fmt(": ball d_hat=%g k=%g decreases", dh, double(k + 1)));
      ++chains;
    }
    // Compare d_hat levels at equal k; a stabilized sequence keeps its last value.
    const auto& lo = by_order[d];
    const auto& hi = by_order[d + 1];
    const std::size_t kmax = std::max(lo.size(), hi.size());
    for (std::size_t k = 0; k < kmax; ++k) {
      const double a = lo[std::min(k, lo.size() - 1)], b = hi[std::min(k, hi.size() - 1)];
      c.expect(a <= b + kSlack, tag + fmt(": k=%g d_hat=%g -> %g decreases", double(k + 1), d, d + 1));
    }
  }
  c.detail = "20 instances, " + std::to_string(chains) + " chains checked";
  return c;
}

Check cost_census() {
  Check c;
  for (std::size_t n = 3; n <= 8; ++n) {
    Polynomial f = testsupport::cost_example(n);
    MonomialGraph g1 = iterate_unconstrained(f, newton_half_basis(f), 1).at(1);
    BlockSdp sdp = assemble_sparse_unconstrained(f, g1);
    std::vector<std::size_t> expect{n + 1};
    expect.insert(expect.end(), n * (n - 1) / 2, 3);
    expect.insert(expect.end(), n, 1);
    c.expect(maximal_cliques(g1).sizes() == expect, "n=" + std::to_string(n) + " clique census differs");
    c.expect(sdp.num_constraints() == 3 * n * (n - 1) / 2 + 2 * n + 1,
             "n=" + std::to_string(n) + " has " + std::to_string(sdp.num_constraints()) + " equalities");
  }
  c.detail = "n = 3..8: cliques {(n+1) x 1, 3 x n(n-1)/2, 1 x n}, 3n(n-1)/2 + 2n + 1 equalities";
  return c;
}

Check sign_types() {
  Check c;
  std::size_t pairs = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (int d = 1; d <= 4; ++d) {
      MonomialBasis b = standard_basis(n, d);
      MonomialGraph g0 = tsp_graph(ExponentSet{}, b);
      std::map<std::vector<std::uint8_t>, std::vector<std::size_t>> classes;
      for (std::size_t i = 0; i < b.size(); ++i) classes[sign_type(b[i]).bits].push_back(i);
      const std::size_t cap = binomial(n + d / 2, d / 2);
      for (const auto& [bits, members] : classes) {
        // Same sign type: pairwise adjacent in G_0, so the class is a clique,
        // and every same-sign-type clique is contained in one class.
        for (std::size_t a = 0; a < members.size(); ++a)
          for (std::size_t e = a + 1; e < members.size(); ++e, ++pairs)
            c.expect(g0.has_edge(members[a], members[e]), "non-adjacent same-sign-type pair");
        c.expect(members.size() <= cap, fmt("n=%g d=%g class of size %g > %g", double(n), d, double(members.size()),
                                            double(cap)));
      }
    }
  c.detail = std::to_string(pairs) + " same-sign-type pairs adjacent; class sizes within C(n + d/2, d/2)";
  return c;
}

Check broyden_banded_check() {
  Check c;
  std::string detail;
  for (std::size_t n : {6u, 7u}) {
    auto t0 = Clock::now();
    PipelineResult r =
        run_relaxation(generate(Family::kBroydenBanded, {n}), [] {
          RelaxationOptions o = sparse_opts(1);
          o.basis = BasisChoice::kStandard;
          return o;
        }());
    const double t = seconds_since(t0);
    const auto& o = r.orders.at(0);
    c.optimal(o.status, "n=" + std::to_string(n));
    c.near(o.bound, 0.0, 1e-4, "n=" + std::to_string(n) + " bound");
    c.expect(o.graphs[0].max_clique <= 20, "n=" + std::to_string(n) + " mc " + std::to_string(o.graphs[0].max_clique));
    c.expect(t < 60.0, fmt("runtime %.1fs", t));
    if (!detail.empty()) detail += "; ";
    detail += fmt("n=%g: bound %.1e mc %g %.2fs", double(n), o.bound, double(o.graphs[0].max_clique), t);
  }
  c.detail = detail;
  return c;
}

Check constrained_named() {
  Check c;
  PipelineResult gr = run_relaxation(rosenbrock_ball(), sparse_opts(1, 2));
  PipelineResult bt = run_relaxation(tridiagonal_ball(), sparse_opts(1, 2));
  const auto& a = gr.orders.at(0);
  const auto& b = bt.orders.at(0);
  c.optimal(a.status, "gen_rosenbrock");
  c.optimal(b.status, "broyden_tridiagonal");
  c.near(a.bound, 8.35, 1e-2, "gen_rosenbrock bound");
  c.expect(a.graphs.size() == 2 && a.graphs[0].max_clique == 11 && a.graphs[1].max_clique == 2,
           "gen_rosenbrock mc differs");
  c.near(b.bound, 5.15, 1e-2, "broyden_tridiagonal bound");
  c.detail = fmt("gen_rosenbrock %.5f mc (%g,%g); broyden_tridiagonal %.5f", a.bound, double(a.graphs[0].max_clique),
                 double(a.graphs[1].max_clique), b.bound);
  return c;
}

Check modified_rosenbrock() {
  Check c;
  BenchSpec spec;
  spec.family = Family::kModGenRosenbrock;
  spec.params.n = 10;
  BenchRow ch = run_pipeline(spec).at(0);
  spec.relax.graph.mode = ExtensionMode::kBlock;
  BenchRow bl = run_pipeline(spec).at(0);
  c.expect(ch.error.empty() && bl.error.empty(), "pipeline error");
  if (!c.failures.empty()) return c;
  c.expect(ch.status[0] == "optimal", "chordal status " + ch.status[0]);
  c.expect(bl.status[0] == "optimal", "block status " + bl.status[0]);
  c.near(ch.opt[0], 8.45, 1e-2, "chordal bound");
  c.near(bl.opt[0], 8.45, 1e-2, "block bound");
  c.expect(ch.mc[0] == 11, "chordal mc " + std::to_string(ch.mc[0]));
  c.expect(bl.mc[0] == 28, "block mc " + std::to_string(bl.mc[0]));
  c.detail = fmt("chordal %.5f mc %g; block %.5f mc %g", ch.opt[0], double(ch.mc[0]), bl.opt[0], double(bl.mc[0]));
  return c;
}

Check dense_equivalence() {
  Check c;
  Gen g(505);
  int complete = 0, partial = 0, tried = 0;
  while (complete + partial < 15 && tried < 200) {
    ++tried;
    const std::size_t n = 1 + g.below(3);
    const int deg = 2 + 2 * static_cast<int>(g.below(2));
    auto pool = testsupport::all_exponents(n, deg);
    Polynomial f(n);
    for (std::size_t i = 0; i < n; ++i) f.add_term(Exponent::unit(n, i, deg), 1.0 + g.real(0, 1));
    const std::size_t terms = 1 + g.below(2 * n + 2);
    for (std::size_t t = 0; t < terms; ++t) f.add_term(pool[g.below(pool.size())], g.real(-1, 1));
    // Alternate between instances that end complete and ones that do not.
    MonomialBasis b = newton_half_basis(f);
    auto seq = iterate_unconstrained(f, b, 8);
    if (!seq.stabilized) continue;
    const MonomialGraph& last = seq.last();
    const bool is_complete = last.num_edges() == b.size() * (b.size() - 1) / 2;
    if (is_complete ? complete >= 8 : partial >= 7) continue;
    (is_complete ? complete : partial)++;

    Bound sparse = solve_bound(assemble_sparse_unconstrained(f, last));
    Bound dense = solve_bound(assemble_dense_unconstrained(f, b));
    const std::string tag = "instance " + std::to_string(complete + partial);
    c.optimal(sparse.status, tag + " sparse");
    c.optimal(dense.status, tag + " dense");
    c.expect(sparse.value <= dense.value + 1e-6, tag + fmt(": sparse %.9g above dense %.9g", sparse.value, dense.value));
    if (is_complete)
      c.expect(std::abs(sparse.value - dense.value) <= 1e-6,
               tag + fmt(": complete graph but |sparse - dense| = %.2e", std::abs(sparse.value - dense.value)));
  }
  c.expect(complete + partial == 15, "could not generate 15 stabilizing instances");
  c.detail = fmt("%g instances (%g complete, %g not)", double(complete + partial), complete, partial);
  return c;
}

Check duality_gap() {
  Check c;
  double worst = 0.0;
  auto compare = [&](const PopProblem& pop, RelaxationOptions o, const std::string& tag) {
    o.side = SdpSide::kSos;
    PipelineResult s = run_relaxation(pop, o);
    o.side = SdpSide::kMoment;
    PipelineResult m = run_relaxation(pop, o);
    for (std::size_t k = 0; k < s.orders.size() && k < m.orders.size(); ++k) {
      c.optimal(s.orders[k].status, tag + " sos");
      c.optimal(m.orders[k].status, tag + " moment");
      const double v = s.orders[k].bound, diff = std::abs(v - m.orders[k].bound);
      worst = std::max(worst, diff / (1.0 + std::abs(v)));
      c.expect(diff <= 1e-6 * (1.0 + std::abs(v)), tag + fmt(": sos %.9g moment %.9g", v, m.orders[k].bound));
    }
  };
  RelaxationOptions newton = sparse_opts(1);
  newton.basis = BasisChoice::kNewton;
  compare(unconstrained(testsupport::example33()), newton, "example k=1");
  RelaxationOptions newton_dense = dense_opts();
  newton_dense.basis = BasisChoice::kNewton;
  compare(unconstrained(testsupport::example33()), newton_dense, "example dense");
  int i = 0;
  for (const auto& q : quadratics()) {
    compare(unconstrained(q.f), sparse_opts(1), "quadratic " + std::to_string(i));
    compare(unconstrained(q.f), dense_opts(), "quadratic " + std::to_string(i++) + " dense");
  }
  compare(rosenbrock_ball(), sparse_opts(1, 2), "gen_rosenbrock");
  compare(tridiagonal_ball(), sparse_opts(1, 2), "broyden_tridiagonal");
  c.detail = fmt("44 problems, max relative gap %.2e", worst);
  return c;
}

Check sdpa_round_trip() {
  Check c;
  double worst = 0.0;
  auto round_trip = [&](const BlockSdp& sdp, const std::string& tag) {
    Bound direct = solve_bound(sdp);
    BlockSdp back = parse_sdpa(format_sdpa(sdp));
    SolverSolution s = solve(back);
    c.optimal(direct.status, tag);
    c.optimal(s.status, tag + " imported");
    const double diff = std::abs(direct.value - s.primal_obj);
    worst = std::max(worst, diff);
    c.expect(diff <= 1e-6, tag + fmt(": in-process %.9g imported %.9g", direct.value, s.primal_obj));
  };
  Polynomial ex = testsupport::example33();
  MonomialBasis nb = newton_half_basis(ex);
  round_trip(assemble_sparse_unconstrained(ex, iterate_unconstrained(ex, nb, 1).at(1)), "example k=1");
  round_trip(assemble_dense_unconstrained(ex, nb), "example dense");
  int i = 0;
  for (const auto& q : quadratics()) {
    MonomialBasis b = standard_basis(q.f.nvars(), 1);
    round_trip(assemble_sparse_unconstrained(q.f, iterate_unconstrained(q.f, b, 1).at(1)),
               "quadratic " + std::to_string(i++));
  }

  BlockSdp toy;
  toy.block_sizes = {1};
  toy.objective = {{0, 0, 0, 2.0}};
  toy.constraints = {{{0, 0, 0, 1.0}}};
  toy.rhs = {3.0};
  std::ifstream f(TSSOS_TEST_DATA "/toy.dat-s", std::ios::binary);
  std::stringstream golden;
  golden << f.rdbuf();
  c.expect(f.good() || f.eof(), "cannot read golden file");
  c.expect(format_sdpa(toy) == golden.str(), "golden toy file differs");
  c.detail = fmt("22 problems, max bound difference %.2e; golden file identical", worst);
  return c;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Check()>> criteria[] = {
      {"example reproduction", example_reproduction},
      {"GenerateBasis golden", generate_basis_golden},
      {"quadratic exactness", quadratic_exactness},
      {"monotonicity suite", monotonicity},
      {"cost example census", cost_census},
      {"sign-type properties", sign_types},
      {"Broyden banded n = 6, 7", broyden_banded_check},
      {"unit-ball Rosenbrock / Broyden tridiagonal", constrained_named},
      {"modified Rosenbrock chordal / block", modified_rosenbrock},
      {"dense-oracle equivalence", dense_equivalence},
      {"no duality gap", duality_gap},
      {"SDPA round trip", sdpa_round_trip},
  };
  int failed = 0, idx = 0;
  for (const auto& [name, run] : criteria) {
    ++idx;
    auto t0 = Clock::now();
    Check c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s  %2d  %-44s %s  [%.2fs]\n", ok ? "PASS" : "FAIL", idx, name, c.detail.c_str(), seconds_since(t0));
    for (const auto& f : c.failures) std::printf("          - %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", idx - failed, idx);
  return failed == 0 ? 0 : 1;
}
