#include "tssos/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <json.hpp>

namespace tssos {

void SolverConfig::validate() const {
  if (!(tol_gap > 0) || !(tol_feas > 0)) throw std::invalid_argument("solver tolerances must be positive");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be positive");
  if (!(step_fraction > 0 && step_fraction < 1)) throw std::invalid_argument("step_fraction must lie in (0,1)");
}

std::string to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::kOptimal: return "optimal";
    case SolverStatus::kInfeasible: return "infeasible";
    case SolverStatus::kUnbounded: return "unbounded";
    case SolverStatus::kMaxIter: return "max_iter";
    case SolverStatus::kNumerical: return "numerical";
  }
  return "numerical";
}

SolverStatus parse_solver_status(const std::string& s) {
  for (auto st : {SolverStatus::kOptimal, SolverStatus::kInfeasible, SolverStatus::kUnbounded,
                  SolverStatus::kMaxIter, SolverStatus::kNumerical})
    if (to_string(st) == s) return st;
  throw std::invalid_argument("unknown solver status '" + s + "'");
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
// The interior-point iteration runs in extended precision: near the optimum
// the Schur matrix entries grow like 1/mu and double rounding alone leaves
// primal residuals that stall the duality gap around 1e-8.
using Real = long double;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Blocks = std::vector<Mat>;

constexpr Real kReg = 16 * std::numeric_limits<Real>::epsilon();

std::vector<MatrixXd> to_double(const Blocks& b) {
  std::vector<MatrixXd> out;
  out.reserve(b.size());
  for (const auto& m : b) out.push_back(m.cast<double>());
  return out;
}

// Per-block view of the constraint matrices.
struct BlockRows {
  std::vector<std::size_t> rows;         // constraint indices, ascending
  std::vector<std::size_t> start;        // entry ranges, size rows+1
  std::vector<SymEntry> entries;
  std::vector<std::ptrdiff_t> slots;     // sparse Schur slots, lower-triangular pair order
};

class Ipm {
 public:
  Ipm(const BlockSdp& p, const SolverConfig& cfg) : p_(p), cfg_(cfg) {
    m_ = p.num_constraints();
    nb_ = p.num_blocks();
    nf_ = p.num_free();
    for (std::size_t s : p.block_sizes) dim_ += s;
    b_ = Vec::Zero(static_cast<Eigen::Index>(m_));
    for (std::size_t i = 0; i < m_; ++i) b_[i] = p.rhs[i];
    cf_ = Vec::Zero(static_cast<Eigen::Index>(nf_));
    for (std::size_t k = 0; k < nf_; ++k) cf_[k] = p.free_objective[k];
    bmat_ = Mat::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(nf_));
    for (std::size_t k = 0; k < nf_; ++k)
      for (auto [r, v] : p.free_columns[k]) bmat_(r, k) += v;
    c_ = zero_blocks();
    scatter(p.objective, 1.0, c_);

    rows_.resize(nb_);
    std::vector<std::vector<std::vector<SymEntry>>> tmp(nb_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& e : p.constraints[i]) {
        auto& br = rows_[e.block];
        if (br.rows.empty() || br.rows.back() != i) {
          br.rows.push_back(i);
          tmp[e.block].emplace_back();
        }
        tmp[e.block].back().push_back(e);
      }
    }
    for (std::size_t b = 0; b < nb_; ++b) {
      auto& br = rows_[b];
      br.start.push_back(0);
      for (auto& list : tmp[b]) {
        br.entries.insert(br.entries.end(), list.begin(), list.end());
        br.start.push_back(br.entries.size());
      }
    }
    setup_schur();
  }

  SolverSolution run();

 private:
  Blocks zero_blocks() const {
    Blocks out;
    out.reserve(nb_);
    for (std::size_t s : p_.block_sizes) out.push_back(Mat::Zero(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)));
    return out;
  }

  static void scatter(const SymMatrix& s, Real w, Blocks& out) {
    for (const auto& e : s) {
      out[e.block](e.row, e.col) += w * e.value;
      if (e.row != e.col) out[e.block](e.col, e.row) += w * e.value;
    }
  }

  // <A_i, K> for every i; K need not be symmetric.
  Vec apply_a(const Blocks& k) const {
    Vec out = Vec::Zero(static_cast<Eigen::Index>(m_));
    for (std::size_t b = 0; b < nb_; ++b) {
      const auto& br = rows_[b];
      for (std::size_t r = 0; r < br.rows.size(); ++r) {
        Real acc = 0.0;
        for (std::size_t t = br.start[r]; t < br.start[r + 1]; ++t) {
          const auto& e = br.entries[t];
          acc += e.row == e.col ? e.value * k[b](e.row, e.row)
                                : e.value * (k[b](e.row, e.col) + k[b](e.col, e.row));
        }
        out[br.rows[r]] += acc;
      }
    }
    return out;
  }

  Blocks apply_at(const Vec& y) const {
    Blocks out = zero_blocks();
    for (std::size_t b = 0; b < nb_; ++b) {
      const auto& br = rows_[b];
      for (std::size_t r = 0; r < br.rows.size(); ++r) {
        const Real yi = y[br.rows[r]];
        if (yi == 0.0) continue;
        for (std::size_t t = br.start[r]; t < br.start[r + 1]; ++t) {
          const auto& e = br.entries[t];
          out[b](e.row, e.col) += yi * e.value;
          if (e.row != e.col) out[b](e.col, e.row) += yi * e.value;
        }
      }
    }
    return out;
  }

  static Real dot(const Blocks& a, const Blocks& b) {
    Real s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].cwiseProduct(b[i]).sum();
    return s;
  }

  static Real fro(const Blocks& a) {
    Real s = 0.0;
    for (const auto& m : a) s += m.squaredNorm();
    return std::sqrt(s);
  }

  void setup_schur();
  bool factor_schur(const Blocks& x, const Blocks& w);
  Vec schur_solve(const Vec& rhs) const;
  void solve_bordered(const Vec& h, const Vec& rf, Vec& dy, Vec& du) const;
  void solve_refined(const Vec& h, const Vec& rf, Vec& dy, Vec& du) const;
  bool direction(const Blocks& x, const Blocks& w, const Blocks& r, const Blocks& rd, const Vec& rp,
                 const Vec& rf, Blocks& dx, Blocks& dz, Vec& dy, Vec& du) const;
  static Real max_step(const Blocks& x, const Blocks& dx, bool& ok);

  const BlockSdp& p_;
  SolverConfig cfg_;
  std::size_t m_ = 0, nb_ = 0, nf_ = 0, dim_ = 0;
  Vec b_, cf_;
  Mat bmat_;
  Blocks c_;
  std::vector<BlockRows> rows_;

  bool dense_ = true;
  Mat mdense_, mraw_dense_;
  Eigen::SparseMatrix<Real> mraw_sparse_;
  Eigen::LDLT<Mat, Eigen::Lower> ldlt_;
  Eigen::SparseMatrix<Real> msparse_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<Real>, Eigen::Lower> sldlt_;
  Mat minv_b_;
  Eigen::LDLT<Mat> free_ldlt_;
};


void Ipm::setup_schur() {
  std::size_t pairs = 0;
  for (const auto& br : rows_) pairs += br.rows.size() * (br.rows.size() + 1) / 2;
  dense_ = m_ <= 1500 || pairs * 4 > m_ * m_;
  if (dense_) return;

  std::vector<Eigen::Triplet<Real>> trip;
  trip.reserve(pairs + m_);
  for (std::size_t i = 0; i < m_; ++i) trip.emplace_back(i, i, 0.0);
  for (const auto& br : rows_)
    for (std::size_t a = 0; a < br.rows.size(); ++a)
      for (std::size_t c = 0; c <= a; ++c) trip.emplace_back(br.rows[a], br.rows[c], 0.0);
  msparse_.resize(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
  msparse_.setFromTriplets(trip.begin(), trip.end());
  msparse_.makeCompressed();
  auto slot_of = [&](std::size_t row, std::size_t col) -> std::ptrdiff_t {
    const int* inner = msparse_.innerIndexPtr();
    const int* outer = msparse_.outerIndexPtr();
    const int* lo = inner + outer[col];
    const int* hi = inner + outer[col + 1];
    const int* it = std::lower_bound(lo, hi, static_cast<int>(row));
    return it - inner;
  };
  for (auto& br : rows_) {
    br.slots.reserve(br.rows.size() * (br.rows.size() + 1) / 2);
    for (std::size_t a = 0; a < br.rows.size(); ++a)
      for (std::size_t c = 0; c <= a; ++c) br.slots.push_back(slot_of(br.rows[a], br.rows[c]));
  }
  sldlt_.analyzePattern(msparse_);
}

// M_ij = tr(A_i X A_j W), accumulated block by block over pairs of entries:
// tr(E_ab X E_cd W) = X(b,c) W(d,a).
bool Ipm::factor_schur(const Blocks& x, const Blocks& w) {
  if (dense_) {
    mdense_.setZero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
  } else {
    std::fill(msparse_.valuePtr(), msparse_.valuePtr() + msparse_.nonZeros(), 0.0);
  }
  Real* vals = dense_ ? nullptr : msparse_.valuePtr();
  for (std::size_t b = 0; b < nb_; ++b) {
    const auto& br = rows_[b];
    const Mat& X = x[b];
    const Mat& W = w[b];
    std::size_t slot = 0;
    for (std::size_t a = 0; a < br.rows.size(); ++a) {
      for (std::size_t c = 0; c <= a; ++c, ++slot) {
        Real acc = 0.0;
        for (std::size_t s = br.start[a]; s < br.start[a + 1]; ++s) {
          const auto& e = br.entries[s];
          const std::size_t p = e.row, q = e.col;
          for (std::size_t t = br.start[c]; t < br.start[c + 1]; ++t) {
            const auto& f = br.entries[t];
            const std::size_t r = f.row, u = f.col;
            Real v;
            if (p == q) {
              v = r == u ? X(p, r) * W(r, p) : X(p, r) * W(u, p) + X(p, u) * W(r, p);
            } else if (r == u) {
              v = X(q, r) * W(r, p) + X(p, r) * W(r, q);
            } else {
              v = X(q, r) * W(u, p) + X(q, u) * W(r, p) + X(p, r) * W(u, q) + X(p, u) * W(r, q);
            }
            acc += e.value * f.value * v;
          }
        }
        if (dense_) {
          mdense_(br.rows[a], br.rows[c]) += acc;
        } else {
          vals[br.slots[slot]] += acc;
        }
      }
    }
  }
  if (dense_) {
    mraw_dense_ = mdense_;
    for (std::size_t i = 0; i < m_; ++i) mdense_(i, i) += kReg * std::max<Real>(1.0, mdense_(i, i));
    ldlt_.compute(mdense_);
    if (ldlt_.info() != Eigen::Success) return false;
  } else {
    mraw_sparse_ = msparse_;
    for (Eigen::Index k = 0; k < msparse_.outerSize(); ++k)
      for (Eigen::SparseMatrix<Real>::InnerIterator it(msparse_, k); it; ++it)
        if (it.row() == it.col()) it.valueRef() += kReg * std::max<Real>(1.0, it.value());
    sldlt_.factorize(msparse_);
    if (sldlt_.info() != Eigen::Success) return false;
  }
  if (nf_ > 0) {
    minv_b_ = Mat(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(nf_));
    for (std::size_t k = 0; k < nf_; ++k) minv_b_.col(k) = schur_solve(bmat_.col(k));
    Mat s = bmat_.transpose() * minv_b_;
    free_ldlt_.compute(s);
    if (free_ldlt_.info() != Eigen::Success) return false;
  }
  return true;
}

Vec Ipm::schur_solve(const Vec& rhs) const {
  if (dense_) return ldlt_.solve(rhs);
  return sldlt_.solve(rhs);
}

void Ipm::solve_bordered(const Vec& h, const Vec& rf, Vec& dy, Vec& du) const {
  Vec minv_h = schur_solve(h);
  if (nf_ > 0) {
    du = free_ldlt_.solve(rf - bmat_.transpose() * minv_h);
    dy = minv_h + minv_b_ * du;
  } else {
    du = Vec();
    dy = minv_h;
  }
}

// Solves M dy - B du = h, B^T dy = rf with the regularized factorization and
// refines against the unregularized M.
void Ipm::solve_refined(const Vec& h, const Vec& rf, Vec& dy, Vec& du) const {
  solve_bordered(h, rf, dy, du);
  Real last = std::numeric_limits<Real>::infinity();
  for (int round = 0; round < 6; ++round) {
    Vec mdy = dense_ ? Vec(mraw_dense_.selfadjointView<Eigen::Lower>() * dy)
                          : Vec(mraw_sparse_.selfadjointView<Eigen::Lower>() * dy);
    Vec r1 = h - mdy;
    Vec r2;
    if (nf_ > 0) {
      r1 += bmat_ * du;
      r2 = rf - bmat_.transpose() * dy;
    }
    const Real size = r1.norm() + (nf_ > 0 ? r2.norm() : 0.0);
    if (size <= kReg * (1.0 + h.norm()) || size > 0.5 * last) break;
    last = size;
    Vec cy, cu;
    solve_bordered(r1, r2, cy, cu);
    dy += cy;
    if (nf_ > 0) du += cu;
  }
}

bool Ipm::direction(const Blocks& x, const Blocks& w, const Blocks& r, const Blocks& rd, const Vec& rp,
                    const Vec& rf, Blocks& dx, Blocks& dz, Vec& dy, Vec& du) const {
  Blocks t(nb_);
  for (std::size_t b = 0; b < nb_; ++b) t[b] = r[b] - x[b] * rd[b] * w[b];
  Vec h = apply_a(t) - rp;
  solve_refined(h, rf, dy, du);
  if (!dy.allFinite()) return false;
  dz = apply_at(dy);
  dx.resize(nb_);
  for (std::size_t b = 0; b < nb_; ++b) {
    dz[b] += rd[b];
    Mat k = r[b] - x[b] * dz[b] * w[b];
    dx[b] = 0.5 * (k + k.transpose());
  }
  return true;
}

Real Ipm::max_step(const Blocks& x, const Blocks& dx, bool& ok) {
  Real alpha = std::numeric_limits<Real>::infinity();
  for (std::size_t b = 0; b < x.size(); ++b) {
    if (x[b].rows() == 0) continue;
    Eigen::LLT<Mat> llt(x[b]);
    if (llt.info() != Eigen::Success) {
      ok = false;
      return 0.0;
    }
    Mat s = llt.matrixL().solve(dx[b]);
    s = llt.matrixL().solve(s.transpose()).transpose();
    s = 0.5 * (s + s.transpose());
    Real lmin = Eigen::SelfAdjointEigenSolver<Mat>(s, Eigen::EigenvaluesOnly).eigenvalues()(0);
    if (lmin < 0) alpha = std::min<Real>(alpha, -1.0 / lmin);
  }
  return alpha;
}

SolverSolution Ipm::run() {
  SolverSolution sol;
  const Real norm_b = b_.norm(), norm_c = fro(c_), norm_cf = cf_.norm();

  Blocks x = zero_blocks(), z = zero_blocks();
  for (std::size_t b = 0; b < nb_; ++b) {
    const Real s = static_cast<Real>(p_.block_sizes[b]);
    Real xi = std::max<Real>(10.0, std::sqrt(s)), eta = std::max<Real>({10.0, std::sqrt(s), c_[b].norm()});
    const auto& br = rows_[b];
    for (std::size_t r = 0; r < br.rows.size(); ++r) {
      Real na = 0.0;
      for (std::size_t t = br.start[r]; t < br.start[r + 1]; ++t) {
        const auto& e = br.entries[t];
        na += e.value * e.value * (e.row == e.col ? 1.0 : 2.0);
      }
      na = std::sqrt(na);
      xi = std::max<Real>(xi, s * (1.0 + std::abs(b_[br.rows[r]])) / (1.0 + na));
      eta = std::max<Real>(eta, na);
    }
    x[b].diagonal().setConstant(xi);
    z[b].diagonal().setConstant(eta);
  }
  Vec y = Vec::Zero(static_cast<Eigen::Index>(m_));
  Vec u = Vec::Zero(static_cast<Eigen::Index>(nf_));

  auto record = [&](SolverStatus st, int it, Real pobj, Real dobj, const SolverResiduals& res) {
    sol.status = st;
    sol.iters = it;
    sol.primal_obj = pobj;
    sol.dual_obj = dobj;
    sol.residuals = res;
    sol.x = to_double(x);
    sol.z = to_double(z);
    sol.y = y.cast<double>();
    sol.u = u.cast<double>();
  };

  auto fail = [&](const char* why) {
    if (cfg_.verbose) std::fprintf(stderr, "stop: %s\n", why);
    sol.status = SolverStatus::kNumerical;
    return sol;
  };

  bool have_best = false;
  Real best_merit = std::numeric_limits<Real>::infinity();
  int stalls = 0;
  for (int it = 0;; ++it) {
    Vec rp = b_ - apply_a(x) - bmat_ * u;
    Blocks rd = apply_at(y);
    for (std::size_t b = 0; b < nb_; ++b) rd[b] -= c_[b] + z[b];
    Vec rf = cf_ - bmat_.transpose() * y;
    const Real pobj = dot(c_, x) + cf_.dot(u);
    const Real dobj = b_.dot(y);
    SolverResiduals res;
    res.primal = rp.norm() / (1.0 + norm_b);
    res.dual = std::max<Real>(fro(rd) / (1.0 + norm_c), nf_ ? rf.norm() / (1.0 + norm_cf) : 0.0);
    res.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    if (cfg_.verbose)
      std::fprintf(stderr, "it %3d  pobj % .10e  dobj % .10e  pinf %.2e  dinf %.2e  gap %.2e  xz %.2e\n", it,
                   double(pobj), double(dobj), res.primal, res.dual, res.gap, double(dot(x, z)));
    if (!std::isfinite(pobj) || !std::isfinite(dobj)) {
      if (!have_best) record(SolverStatus::kNumerical, it, pobj, dobj, res);
      return fail("non-finite objective");
    }
    const Real merit = std::max<Real>({res.primal, res.dual, res.gap});
    if (merit < best_merit) {
      best_merit = merit;
      have_best = true;
      record(SolverStatus::kNumerical, it, pobj, dobj, res);
    }
    if (res.primal <= cfg_.tol_feas && res.dual <= cfg_.tol_feas && res.gap <= cfg_.tol_gap) {
      record(SolverStatus::kOptimal, it, pobj, dobj, res);
      return sol;
    }
    // Divergence certificates: a dual ray (b^T y -> -inf with A^T y - Z and
    // B^T y bounded) means the equality form is infeasible; a primal ray
    // (objective -> +inf with bounded residual) means it is unbounded.
    if (-dobj > 1e8 * (1.0 + norm_c + norm_cf)) {
      Blocks ray = apply_at(y);
      for (std::size_t b = 0; b < nb_; ++b) ray[b] -= z[b];
      if (fro(ray) / -dobj < 1e-6 && (nf_ == 0 || (bmat_.transpose() * y).norm() / -dobj < 1e-6)) {
        record(SolverStatus::kInfeasible, it, pobj, dobj, res);
        return sol;
      }
    }
    if (pobj > 1e8 * (1.0 + norm_b)) {
      Vec ray = apply_a(x) + bmat_ * u;
      if (ray.norm() / pobj < 1e-6) {
        record(SolverStatus::kUnbounded, it, pobj, dobj, res);
        return sol;
      }
    }
    if (it >= cfg_.max_iters) {
      sol.status = SolverStatus::kMaxIter;
      return sol;
    }

    const Real mu = dot(x, z) / static_cast<Real>(std::max<std::size_t>(dim_, 1));
    Blocks w(nb_);
    for (std::size_t b = 0; b < nb_; ++b) {
      Eigen::LLT<Mat> llt(z[b]);
      if (llt.info() != Eigen::Success) {
        return fail("Z not positive definite");
      }
      w[b] = llt.solve(Mat::Identity(z[b].rows(), z[b].cols()));
      w[b] = 0.5 * (w[b] + w[b].transpose());
    }
    if (!factor_schur(x, w)) {
      return fail("Schur factorization failed");
    }

    Blocks r(nb_), dx, dz;
    Vec dy, du;
    for (std::size_t b = 0; b < nb_; ++b) r[b] = -x[b];
    if (!direction(x, w, r, rd, rp, rf, dx, dz, dy, du)) {
      return fail("predictor solve failed");
    }
    bool ok = true;
    Real ap = std::min<Real>(1.0, max_step(x, dx, ok));
    Real ad = std::min<Real>(1.0, max_step(z, dz, ok));
    if (!ok) {
      return fail("predictor step failed");
    }
    Real mu_aff = 0.0;
    for (std::size_t b = 0; b < nb_; ++b)
      mu_aff += (x[b] + ap * dx[b]).cwiseProduct(z[b] + ad * dz[b]).sum();
    mu_aff /= static_cast<Real>(std::max<std::size_t>(dim_, 1));
    const Real expo = std::max<Real>(1.0, 3.0 * std::min<Real>(ap, ad) * std::min<Real>(ap, ad));
    const Real sigma = std::clamp<Real>(std::pow(std::max<Real>(mu_aff, 0.0) / mu, expo), 0.0, 1.0);

    for (std::size_t b = 0; b < nb_; ++b) r[b] = sigma * mu * w[b] - x[b] - dx[b] * dz[b] * w[b];
    if (!direction(x, w, r, rd, rp, rf, dx, dz, dy, du)) {
      return fail("corrector solve failed");
    }
    ap = std::min<Real>(1.0, cfg_.step_fraction * max_step(x, dx, ok));
    ad = std::min<Real>(1.0, cfg_.step_fraction * max_step(z, dz, ok));
    if (!ok) {
      return fail("corrector step failed");
    }
    if (cfg_.verbose) std::fprintf(stderr, "      sigma %.2e  ap %.3e  ad %.3e\n", double(sigma), double(ap), double(ad));
    if (ap < 1e-10 && ad < 1e-10) {
      if (++stalls >= 3) {
        return fail("stalled");
      }
    } else {
      stalls = 0;
    }
    for (std::size_t b = 0; b < nb_; ++b) {
      x[b] += ap * dx[b];
      z[b] += ad * dz[b];
    }
    if (nf_ > 0) u += ap * du;
    y += ad * dy;
  }
}

// A row  sum_k a_k X[i_k,i_k] = 0  with all a_k of one sign forces those
// diagonals, and hence their rows and columns, to zero. Dropping them keeps
// the problem equivalent but restores an interior for the solver.
struct Presolved {
  BlockSdp sdp;
  std::vector<std::vector<std::size_t>> keep;  // kept indices per original block
  std::vector<std::size_t> block_map;          // original block -> reduced block, npos if gone
  std::vector<std::size_t> row_map;            // original row -> reduced row, npos if gone
  bool infeasible = false;
};

constexpr std::size_t kGone = static_cast<std::size_t>(-1);

std::optional<Presolved> presolve(const BlockSdp& p) {
  const std::size_t nb = p.num_blocks(), m = p.num_constraints();
  std::vector<std::vector<char>> dead(nb);
  for (std::size_t b = 0; b < nb; ++b) dead[b].assign(p.block_sizes[b], 0);
  std::vector<char> has_free(m, 0);
  for (const auto& col : p.free_columns)
    for (auto [i, v] : col)
      if (v != 0.0) has_free[i] = 1;
  auto alive = [&](const SymEntry& e) { return !dead[e.block][e.row] && !dead[e.block][e.col]; };

  bool any = false;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (has_free[i] || p.rhs[i] != 0.0) continue;
      int sign = 0;
      bool eligible = true, live = false;
      for (const auto& e : p.constraints[i]) {
        if (e.value == 0.0 || !alive(e)) continue;
        live = true;
        const int sg = e.value > 0 ? 1 : -1;
        if (e.row != e.col || (sign != 0 && sg != sign)) {
          eligible = false;
          break;
        }
        sign = sg;
      }
      if (!eligible || !live) continue;
      for (const auto& e : p.constraints[i])
        if (e.value != 0.0 && alive(e)) dead[e.block][e.row] = 1;
      changed = any = true;
    }
  }
  if (!any) return std::nullopt;

  Presolved r;
  r.keep.resize(nb);
  r.block_map.assign(nb, kGone);
  std::vector<std::vector<std::size_t>> pos(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    pos[b].assign(p.block_sizes[b], kGone);
    for (std::size_t i = 0; i < p.block_sizes[b]; ++i)
      if (!dead[b][i]) {
        pos[b][i] = r.keep[b].size();
        r.keep[b].push_back(i);
      }
    if (r.keep[b].empty()) continue;
    r.block_map[b] = r.sdp.block_sizes.size();
    r.sdp.block_sizes.push_back(r.keep[b].size());
    if (b < p.labels.size()) r.sdp.labels.push_back(p.labels[b]);
  }
  if (r.sdp.block_sizes.empty()) return std::nullopt;
  if (r.sdp.labels.size() != r.sdp.block_sizes.size()) r.sdp.labels.clear();

  auto remap = [&](const SymMatrix& a) {
    SymMatrix out;
    for (const auto& e : a)
      if (alive(e)) out.push_back({r.block_map[e.block], pos[e.block][e.row], pos[e.block][e.col], e.value});
    return out;
  };
  r.sdp.objective = remap(p.objective);
  r.row_map.assign(m, kGone);
  for (std::size_t i = 0; i < m; ++i) {
    SymMatrix a = remap(p.constraints[i]);
    bool empty = std::all_of(a.begin(), a.end(), [](const SymEntry& e) { return e.value == 0.0; });
    if (empty && !has_free[i]) {
      if (p.rhs[i] != 0.0) r.infeasible = true;
      continue;
    }
    r.row_map[i] = r.sdp.constraints.size();
    r.sdp.constraints.push_back(std::move(a));
    r.sdp.rhs.push_back(p.rhs[i]);
    if (i < p.row_monomials.size()) r.sdp.row_monomials.push_back(p.row_monomials[i]);
  }
  if (r.sdp.row_monomials.size() != r.sdp.constraints.size()) r.sdp.row_monomials.clear();
  for (const auto& col : p.free_columns) {
    std::vector<std::pair<std::size_t, double>> c;
    for (auto [i, v] : col)
      if (r.row_map[i] != kGone) c.emplace_back(r.row_map[i], v);
    r.sdp.free_columns.push_back(std::move(c));
  }
  r.sdp.free_objective = p.free_objective;
  r.sdp.side = p.side;
  return r;
}

void expand(const BlockSdp& p, const Presolved& r, SolverSolution& sol) {
  std::vector<MatrixXd> x(p.num_blocks()), z(p.num_blocks());
  const bool have_blocks = sol.x.size() == r.sdp.num_blocks() && sol.z.size() == r.sdp.num_blocks();
  for (std::size_t b = 0; b < p.num_blocks(); ++b) {
    const auto n = static_cast<Eigen::Index>(p.block_sizes[b]);
    x[b] = MatrixXd::Zero(n, n);
    z[b] = MatrixXd::Zero(n, n);
    const std::size_t rb = r.block_map[b];
    if (rb == kGone || !have_blocks) continue;
    const auto& k = r.keep[b];
    for (std::size_t i = 0; i < k.size(); ++i)
      for (std::size_t j = 0; j < k.size(); ++j) {
        const auto ki = static_cast<Eigen::Index>(k[i]), kj = static_cast<Eigen::Index>(k[j]);
        x[b](ki, kj) = sol.x[rb](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        z[b](ki, kj) = sol.z[rb](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
  }
  VectorXd y = VectorXd::Zero(static_cast<Eigen::Index>(p.num_constraints()));
  if (sol.y.size() == static_cast<Eigen::Index>(r.sdp.num_constraints()))
    for (std::size_t i = 0; i < p.num_constraints(); ++i)
      if (r.row_map[i] != kGone) y[static_cast<Eigen::Index>(i)] = sol.y[static_cast<Eigen::Index>(r.row_map[i])];
  sol.x = std::move(x);
  sol.z = std::move(z);
  sol.y = std::move(y);
}

}  // namespace

SolverSolution solve(const BlockSdp& problem, const SolverConfig& cfg) {
  cfg.validate();
  problem.validate();
  auto pre = presolve(problem);
  if (!pre) return Ipm(problem, cfg).run();
  if (pre->infeasible) {
    SolverSolution sol;
    sol.status = SolverStatus::kInfeasible;
    return sol;
  }
  if (cfg.verbose)
    std::fprintf(stderr, "presolve: %zu -> %zu rows, %zu -> %zu block scalars\n", problem.num_constraints(),
                 pre->sdp.num_constraints(), problem.num_block_scalars(), pre->sdp.num_block_scalars());
  SolverSolution sol = Ipm(pre->sdp, cfg).run();
  expand(problem, *pre, sol);
  return sol;
}

double relaxation_bound(const BlockSdp& problem, const SolverSolution& sol) {
  return problem.side == SdpSide::kMoment ? sol.dual_obj : sol.primal_obj;
}

std::string solution_to_json(const SolverSolution& sol) {
  nlohmann::json j;
  j["status"] = to_string(sol.status);
  j["primal_obj"] = sol.primal_obj;
  j["dual_obj"] = sol.dual_obj;
  j["iters"] = sol.iters;
  j["residuals"] = {{"primal", sol.residuals.primal}, {"dual", sol.residuals.dual}, {"gap", sol.residuals.gap}};
  return j.dump(2);
}

SolverSolution solution_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("solution file is not valid JSON: ") + e.what());
  }
  SolverSolution sol;
  try {
    sol.status = parse_solver_status(j.at("status").get<std::string>());
    sol.primal_obj = j.at("primal_obj").get<double>();
    sol.dual_obj = j.at("dual_obj").get<double>();
    sol.iters = j.value("iters", 0);
    if (j.contains("residuals")) {
      const auto& r = j["residuals"];
      sol.residuals.primal = r.value("primal", 0.0);
      sol.residuals.dual = r.value("dual", 0.0);
      sol.residuals.gap = r.value("gap", 0.0);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("solution file is missing fields: ") + e.what());
  }
  return sol;
}

}  // namespace tssos
