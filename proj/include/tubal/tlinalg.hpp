#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <limits>
#include <vector>

#include "tubal/ops.hpp"

namespace tubal {

namespace detail {

// Deterministic phase convention: rotate each singular pair (u_i, v_i) so
// the first non-negligible entry of u_i is real and nonnegative. Traces
// then reproduce across runs and thread counts.
inline void fix_svd_phases(Eigen::MatrixXcd& u, Eigen::MatrixXcd& v) {
  for (Index c = 0; c < u.cols(); ++c) {
    Index pivot = -1;
    for (Index i = 0; i < u.rows(); ++i) {
      if (std::abs(u(i, c)) > 1e-12) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    Complex phase = std::conj(u(pivot, c)) / std::abs(u(pivot, c));
    u.col(c) *= phase;
    if (c < v.cols()) v.col(c) *= phase;
  }
}

struct SliceSvd {
  Eigen::MatrixXcd u;
  Eigen::VectorXd s;
  Eigen::MatrixXcd v;
};

inline SliceSvd svd_slice(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalFailure("slice SVD did not converge");
  SliceSvd out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  fix_svd_phases(out.u, out.v);
  return out;
}

// Thin Householder QR with the diagonal of W rotated to be real
// nonnegative. Rank deficiency is fine: Q keeps deterministic orthonormal
// columns and the matching diagonal entries of W are zero.
inline void qr_slice(const Eigen::MatrixXcd& m, Eigen::MatrixXcd& q, Eigen::MatrixXcd& w) {
  const Index n = m.rows(), r = m.cols();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, r);
  w = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  for (Index i = 0; i < r; ++i) {
    const double mag = std::abs(w(i, i));
    if (mag > 0.0) {
      Complex phase = std::conj(w(i, i)) / mag;
      w.row(i) *= phase;
      q.col(i) *= std::conj(phase);
    }
  }
}

}  // namespace detail

// --- t-SVD ---------------------------------------------------------------

struct FreqTsvd {
  FreqTensor u, s, v;  // per-slice thin factors, conjugate-symmetric
};

// Slice-wise SVD of a frequency-domain tensor, keeping the top `rank`
// triplets (rank < 0 keeps min(n1,n2)). Only the unique slices are
// factored; the mirrored half follows by conjugation.
inline FreqTsvd tsvd_freq(const FreqTensor& f, Index rank = -1) {
  const Index kmax = std::min(f.n1(), f.n2());
  const Index r = (rank < 0) ? kmax : rank;
  if (r < 1 || r > kmax) throw BadRank("tsvd: rank out of range");
  FreqTsvd out{FreqTensor(f.n1(), r, f.n3()), FreqTensor(r, r, f.n3()),
               FreqTensor(f.n2(), r, f.n3())};
  for (Index k = 0; k < num_unique_slices(f.n3()); ++k) {
    detail::SliceSvd s = detail::svd_slice(f.slice(k));
    out.u.slice(k) = s.u.leftCols(r);
    out.v.slice(k) = s.v.leftCols(r);
    out.s.slice(k).diagonal().real() = s.s.head(r);
  }
  out.u.enforce_conjugate_symmetry();
  out.s.enforce_conjugate_symmetry();
  out.v.enforce_conjugate_symmetry();
  return out;
}

struct TsvdFactors {
  Tensor3 u, s, v;
};

inline TsvdFactors tsvd(const Tensor3& x) {
  FreqTsvd f = tsvd_freq(to_freq(x));
  return {from_freq(f.u), from_freq(f.s), from_freq(f.v)};
}

inline TsvdFactors truncated_tsvd(const Tensor3& x, Index r) {
  if (r < 1 || r > std::min(x.n1(), x.n2())) throw BadRank("truncated_tsvd: rank out of range");
  FreqTsvd f = tsvd_freq(to_freq(x), r);
  return {from_freq(f.u), from_freq(f.s), from_freq(f.v)};
}

// --- t-QR ----------------------------------------------------------------

struct FreqQr {
  FreqTensor q, w;
};

inline FreqQr tqr_freq(const FreqTensor& a) {
  if (a.n1() < a.n2()) throw DimMismatch("tqr: need n >= r");
  FreqQr out{FreqTensor(a.n1(), a.n2(), a.n3()), FreqTensor(a.n2(), a.n2(), a.n3())};
  for (Index k = 0; k < num_unique_slices(a.n3()); ++k)
    detail::qr_slice(a.slice(k), out.q.slice(k), out.w.slice(k));
  out.q.enforce_conjugate_symmetry();
  out.w.enforce_conjugate_symmetry();
  return out;
}

struct TqrFactors {
  Tensor3 q, w;
};

inline TqrFactors tqr(const Tensor3& a) {
  FreqQr f = tqr_freq(to_freq(a));
  return {from_freq(f.q), from_freq(f.w)};
}

// --- rank profile ---------------------------------------------------------

inline constexpr double kRankTol = 1e-9;

struct RankProfile {
  Index tubal_rank = 0;
  std::vector<Index> multi_rank;       // per frequency slice
  Index s_r_m = 0;                     // sum of the multi-rank
  double tol = kRankTol;
  std::vector<double> singular_values; // the s_r_m nonzero values, descending
  double kappa = std::numeric_limits<double>::quiet_NaN();
};

// Numerical rank per frequency slice: singular values above tol * sigma_max
// of the whole block-diagonal matrix count. The condition number divides
// the largest by the smallest counted value.
inline RankProfile rank_profile(const Tensor3& x, double tol = kRankTol) {
  if (tol < 0) throw BadRank("rank_profile: tol must be nonnegative");
  FreqTensor f = to_freq(x);
  const Index n3 = x.n3();
  std::vector<Eigen::VectorXd> values(static_cast<std::size_t>(n3));
  double sigma_max = 0.0;
  for (Index k = 0; k < num_unique_slices(n3); ++k) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f.slice(k));
    values[static_cast<std::size_t>(k)] = svd.singularValues();
    sigma_max = std::max(sigma_max, svd.singularValues()(0));
  }
  for (Index k = num_unique_slices(n3); k < n3; ++k)
    values[static_cast<std::size_t>(k)] = values[static_cast<std::size_t>(n3 - k)];

  RankProfile p;
  p.tol = tol;
  p.multi_rank.resize(static_cast<std::size_t>(n3), 0);
  const double thr = tol * sigma_max;
  for (Index k = 0; k < n3; ++k) {
    Index rk = 0;
    for (Index i = 0; i < values[static_cast<std::size_t>(k)].size(); ++i) {
      const double sv = values[static_cast<std::size_t>(k)](i);
      if (sv > thr) {
        ++rk;
        p.singular_values.push_back(sv);
      }
    }
    p.multi_rank[static_cast<std::size_t>(k)] = rk;
  }
  std::sort(p.singular_values.begin(), p.singular_values.end(), std::greater<>());
  p.tubal_rank = *std::max_element(p.multi_rank.begin(), p.multi_rank.end());
  for (Index rk : p.multi_rank) p.s_r_m += rk;
  if (p.s_r_m > 0) p.kappa = p.singular_values.front() / p.singular_values.back();
  return p;
}

// --- damped preconditioner solve -------------------------------------------

// Largest acceptable Gram condition number before lambda = 0 is refused.
inline const double kGramCondLimit = 1.0 / (100.0 * std::numeric_limits<double>::epsilon());

// g * (m^T * m + lambda I)^{-1}, slice by slice, through a Hermitian
// factorization rather than an explicit inverse.
inline FreqTensor precond_solve_freq(const FreqTensor& g, const FreqTensor& m, double lambda) {
  if (g.n2() != m.n2() || g.n3() != m.n3()) throw DimMismatch("precond_solve: dims disagree");
  if (lambda < 0) throw DimMismatch("precond_solve: lambda must be nonnegative");
  const Index r = m.n2();
  FreqTensor out(g.n1(), r, g.n3());
  for (Index k = 0; k < num_unique_slices(g.n3()); ++k) {
    Eigen::MatrixXcd gram = m.slice(k).adjoint() * m.slice(k);
    if (lambda == 0.0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
      const double emax = eig.eigenvalues().maxCoeff();
      const double emin = eig.eigenvalues().minCoeff();
      if (!(emin > 0.0) || emax > kGramCondLimit * emin)
        throw SingularPreconditioner("precond_solve: slice Gram numerically singular");
    }
    gram.diagonal().array() += lambda;
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
    out.slice(k) = ldlt.solve(g.slice(k).adjoint()).adjoint();
  }
  out.enforce_conjugate_symmetry();
  return out;
}

inline Tensor3 precond_solve(const Tensor3& g, const Tensor3& m, double lambda) {
  return from_freq(precond_solve_freq(to_freq(g), to_freq(m), lambda));
}

// --- f-diagonal square root -------------------------------------------------

inline FreqTensor fdiag_sqrt_freq(const FreqTensor& s) {
  FreqTensor out(s.n1(), s.n2(), s.n3());
  double dmax = 0.0;
  for (Index k = 0; k < num_unique_slices(s.n3()); ++k)
    dmax = std::max(dmax, s.slice(k).diagonal().real().maxCoeff());
  for (Index k = 0; k < num_unique_slices(s.n3()); ++k) {
    auto diag = s.slice(k).diagonal();
    for (Index i = 0; i < diag.size(); ++i) {
      const double d = diag(i).real();
      if (d < -1e-12 * dmax) throw NegativeDiagonal("fdiag_sqrt: negative diagonal entry");
      out.slice(k)(i, i) = std::sqrt(std::max(d, 0.0));
    }
  }
  out.enforce_conjugate_symmetry();
  return out;
}

inline Tensor3 fdiag_sqrt(const Tensor3& s) {
  return from_freq(fdiag_sqrt_freq(to_freq(s)));
}

}  // namespace tubal
