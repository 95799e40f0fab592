#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

#include "tubal/errors.hpp"

namespace tubal {

using Index = Eigen::Index;

struct Dims3 {
  Index n1 = 0, n2 = 0, n3 = 0;
  friend bool operator==(const Dims3&, const Dims3&) = default;
};

// Dense real third-order tensor. Storage is slice-major: frontal slice k is
// an n1 x n2 matrix, slices ordered by k, column-major within a slice.
class Tensor3 {
 public:
  Tensor3() = default;

  Tensor3(Index n1, Index n2, Index n3) : n1_(n1), n2_(n2), n3_(n3) {
    if (n1 < 1 || n2 < 1 || n3 < 1) throw DimMismatch("Tensor3: dims must be positive");
    slices_.assign(static_cast<std::size_t>(n3), Eigen::MatrixXd::Zero(n1, n2));
  }

  static Tensor3 from_slices(std::vector<Eigen::MatrixXd> slices) {
    if (slices.empty()) throw DimMismatch("Tensor3: need at least one slice");
    Tensor3 t;
    t.n1_ = slices.front().rows();
    t.n2_ = slices.front().cols();
    t.n3_ = static_cast<Index>(slices.size());
    for (const auto& s : slices)
      if (s.rows() != t.n1_ || s.cols() != t.n2_)
        throw DimMismatch("Tensor3: ragged slice shapes");
    t.slices_ = std::move(slices);
    return t;
  }

  Dims3 dims() const { return {n1_, n2_, n3_}; }
  Index n1() const { return n1_; }
  Index n2() const { return n2_; }
  Index n3() const { return n3_; }
  Index size() const { return n1_ * n2_ * n3_; }

  const Eigen::MatrixXd& slice(Index k) const { return slices_[static_cast<std::size_t>(k)]; }
  Eigen::MatrixXd& slice(Index k) { return slices_[static_cast<std::size_t>(k)]; }

  double operator()(Index i, Index j, Index k) const { return slices_[static_cast<std::size_t>(k)](i, j); }
  double& operator()(Index i, Index j, Index k) { return slices_[static_cast<std::size_t>(k)](i, j); }

  double fro_norm() const {
    double s = 0.0;
    for (const auto& m : slices_) s += m.squaredNorm();
    return std::sqrt(s);
  }

  bool all_finite() const {
    for (const auto& m : slices_)
      if (!m.allFinite()) return false;
    return true;
  }

  Tensor3& operator+=(const Tensor3& o) {
    check_same_dims(o);
    for (Index k = 0; k < n3_; ++k) slice(k) += o.slice(k);
    return *this;
  }
  Tensor3& operator-=(const Tensor3& o) {
    check_same_dims(o);
    for (Index k = 0; k < n3_; ++k) slice(k) -= o.slice(k);
    return *this;
  }
  Tensor3& operator*=(double c) {
    for (auto& m : slices_) m *= c;
    return *this;
  }

  friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
  friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
  friend Tensor3 operator*(Tensor3 a, double c) { return a *= c; }
  friend Tensor3 operator*(double c, Tensor3 a) { return a *= c; }

  // Slice-major flattening used by the measurement operator and file format.
  Eigen::VectorXd vec() const {
    Eigen::VectorXd v(size());
    Index off = 0;
    for (const auto& m : slices_) {
      v.segment(off, m.size()) = Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
      off += m.size();
    }
    return v;
  }

  static Tensor3 unvec(const Eigen::VectorXd& v, Dims3 d) {
    if (v.size() != d.n1 * d.n2 * d.n3) throw DimMismatch("unvec: size mismatch");
    Tensor3 t(d.n1, d.n2, d.n3);
    Index off = 0;
    for (Index k = 0; k < d.n3; ++k) {
      t.slice(k) = Eigen::Map<const Eigen::MatrixXd>(v.data() + off, d.n1, d.n2);
      off += d.n1 * d.n2;
    }
    return t;
  }

 private:
  void check_same_dims(const Tensor3& o) const {
    if (dims() != o.dims()) throw DimMismatch("Tensor3: dimension mismatch");
  }

  Index n1_ = 0, n2_ = 0, n3_ = 0;
  std::vector<Eigen::MatrixXd> slices_;
};

}  // namespace tubal
