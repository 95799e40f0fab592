#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "tubal/freq.hpp"
#include "tubal/tensor3.hpp"

namespace tubal {

// --- frequency-domain slice products -----------------------------------
//
// All products compute only the unique slices and mirror the rest, so the
// results of chains of operations stay exactly conjugate-symmetric.

enum class Adj { None, Left, Right };

inline FreqTensor fmul(const FreqTensor& a, const FreqTensor& b, Adj adj = Adj::None) {
  if (a.n3() != b.n3()) throw DimMismatch("fmul: n3 mismatch");
  const Index rows = (adj == Adj::Left) ? a.n2() : a.n1();
  const Index inner_a = (adj == Adj::Left) ? a.n1() : a.n2();
  const Index cols = (adj == Adj::Right) ? b.n1() : b.n2();
  const Index inner_b = (adj == Adj::Right) ? b.n2() : b.n1();
  if (inner_a != inner_b) throw DimMismatch("fmul: inner dimension mismatch");
  FreqTensor c(rows, cols, a.n3());
  for (Index k = 0; k < num_unique_slices(a.n3()); ++k) {
    switch (adj) {
      case Adj::None: c.slice(k) = a.slice(k) * b.slice(k); break;
      case Adj::Left: c.slice(k) = a.slice(k).adjoint() * b.slice(k); break;
      case Adj::Right: c.slice(k) = a.slice(k) * b.slice(k).adjoint(); break;
    }
  }
  c.enforce_conjugate_symmetry();
  return c;
}

// --- t-product algebra --------------------------------------------------

inline Tensor3 tprod(const Tensor3& a, const Tensor3& b) {
  if (a.n2() != b.n1() || a.n3() != b.n3()) throw DimMismatch("tprod: incompatible dims");
  return from_freq(fmul(to_freq(a), to_freq(b)));
}

// Conjugate (here: real) tensor transpose: transpose every frontal slice
// and reverse the order of slices 2..n3.
inline Tensor3 ttranspose(const Tensor3& a) {
  Tensor3 t(a.n2(), a.n1(), a.n3());
  t.slice(0) = a.slice(0).transpose();
  for (Index k = 1; k < a.n3(); ++k) t.slice(k) = a.slice(a.n3() - k).transpose();
  return t;
}

inline Tensor3 identity_tensor(Index n, Index n3) {
  if (n < 1 || n3 < 1) throw DimMismatch("identity_tensor: dims must be positive");
  Tensor3 t(n, n, n3);
  t.slice(0) = Eigen::MatrixXd::Identity(n, n);
  return t;
}

inline FreqTensor identity_freq(Index n, Index n3) {
  FreqTensor f(n, n, n3);
  for (Index k = 0; k < n3; ++k) f.slice(k) = Eigen::MatrixXcd::Identity(n, n);
  return f;
}

inline double inner(const Tensor3& a, const Tensor3& b) {
  if (a.dims() != b.dims()) throw DimMismatch("inner: dimension mismatch");
  double s = 0.0;
  for (Index k = 0; k < a.n3(); ++k) s += a.slice(k).cwiseProduct(b.slice(k)).sum();
  return s;
}

inline double fro_norm(const Tensor3& a) { return a.fro_norm(); }

// Largest matrix singular value over the frequency slices; equals the
// spectral norm of the block-circulant matrix of a.
inline double spectral_norm(const Tensor3& a) {
  FreqTensor f = to_freq(a);
  double s = 0.0;
  for (Index k = 0; k < num_unique_slices(a.n3()); ++k) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f.slice(k));
    s = std::max(s, svd.singularValues()(0));
  }
  return s;
}

// Frobenius norm of a tensor given its frequency image (Parseval).
inline double fro_norm_from_freq(const FreqTensor& f) {
  return f.fro_norm() / std::sqrt(static_cast<double>(f.n3()));
}

}  // namespace tubal
