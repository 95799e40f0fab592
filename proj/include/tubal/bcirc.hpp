#pragma once

#include <Eigen/Dense>

#include "tubal/freq.hpp"
#include "tubal/tensor3.hpp"

namespace tubal {

// Materialized block views of a tensor. These are the slow reference path:
// O(n3^2) storage and work, used to cross-check the FFT-domain kernels.

inline Eigen::MatrixXd unfold(const Tensor3& a) {
  Eigen::MatrixXd m(a.n1() * a.n3(), a.n2());
  for (Index k = 0; k < a.n3(); ++k) m.middleRows(k * a.n1(), a.n1()) = a.slice(k);
  return m;
}

inline Tensor3 fold(const Eigen::MatrixXd& m, Dims3 d) {
  if (m.rows() != d.n1 * d.n3 || m.cols() != d.n2) throw DimMismatch("fold: shape mismatch");
  Tensor3 t(d.n1, d.n2, d.n3);
  for (Index k = 0; k < d.n3; ++k) t.slice(k) = m.middleRows(k * d.n1, d.n1);
  return t;
}

inline Eigen::MatrixXd bcirc(const Tensor3& a) {
  const Index n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
  Eigen::MatrixXd m(n1 * n3, n2 * n3);
  for (Index c = 0; c < n3; ++c)
    for (Index r = 0; r < n3; ++r)
      m.block(r * n1, c * n2, n1, n2) = a.slice((r - c + n3) % n3);
  return m;
}

// Block-diagonal matrix of the frequency image, bdiag(fft(a, [], 3)).
inline Eigen::MatrixXcd bdiag(const FreqTensor& f) {
  const Index n1 = f.n1(), n2 = f.n2(), n3 = f.n3();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n1 * n3, n2 * n3);
  for (Index k = 0; k < n3; ++k) m.block(k * n1, k * n2, n1, n2) = f.slice(k);
  return m;
}

// Reference t-product: fold(bcirc(a) * unfold(b)). Independent of the FFT
// path by construction.
inline Tensor3 bcirc_oracle_tprod(const Tensor3& a, const Tensor3& b) {
  if (a.n2() != b.n1() || a.n3() != b.n3())
    throw DimMismatch("bcirc_oracle_tprod: incompatible dims");
  Eigen::MatrixXd prod = bcirc(a) * unfold(b);
  return fold(prod, {a.n1(), b.n2(), a.n3()});
}

}  // namespace tubal
