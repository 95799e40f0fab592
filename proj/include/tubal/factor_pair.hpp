#pragma once

#include "tubal/ops.hpp"

namespace tubal {

// Candidate factorization X = L * R^T with the frequency images of both
// factors kept alongside, so solver kernels never re-transform.
struct FactorPair {
  Tensor3 l, r;
  FreqTensor lf, rf;

  Index rank() const { return l.n2(); }
  Index n3() const { return l.n3(); }

  static FactorPair from_spatial(Tensor3 l_in, Tensor3 r_in) {
    if (l_in.n2() != r_in.n2() || l_in.n3() != r_in.n3())
      throw DimMismatch("FactorPair: factor shapes disagree");
    FactorPair p;
    p.lf = to_freq(l_in);
    p.rf = to_freq(r_in);
    p.l = std::move(l_in);
    p.r = std::move(r_in);
    return p;
  }

  static FactorPair from_freq_images(FreqTensor lf_in, FreqTensor rf_in) {
    if (lf_in.n2() != rf_in.n2() || lf_in.n3() != rf_in.n3())
      throw DimMismatch("FactorPair: factor shapes disagree");
    FactorPair p;
    p.l = from_freq(lf_in);
    p.r = from_freq(rf_in);
    p.lf = std::move(lf_in);
    p.rf = std::move(rf_in);
    return p;
  }

  Tensor3 product() const { return from_freq(fmul(lf, rf, Adj::Right)); }
  FreqTensor product_freq() const { return fmul(lf, rf, Adj::Right); }

  // || L^T * L - R^T * R ||_F, the rebalance diagnostic.
  double balance_gap() const {
    FreqTensor gl = fmul(lf, lf, Adj::Left);
    FreqTensor gr = fmul(rf, rf, Adj::Left);
    double s = 0.0;
    for (Index k = 0; k < gl.n3(); ++k) s += (gl.slice(k) - gr.slice(k)).squaredNorm();
    return std::sqrt(s / static_cast<double>(gl.n3()));
  }

  // Smallest Gram eigenvalue over slices of both factors; the quantity that
  // collapses under over-parameterization.
  double min_gram_eigenvalue() const {
    double e = std::numeric_limits<double>::infinity();
    for (const FreqTensor* f : {&lf, &rf}) {
      for (Index k = 0; k < num_unique_slices(f->n3()); ++k) {
        Eigen::MatrixXcd gram = f->slice(k).adjoint() * f->slice(k);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
        e = std::min(e, eig.eigenvalues().minCoeff());
      }
    }
    return e;
  }
};

}  // namespace tubal
