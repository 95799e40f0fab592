#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <thread>
#include <vector>

#include "tubal/rng.hpp"
#include "tubal/tensor3.hpp"

namespace tubal {

// Linear map M: R^{n1 x n2 x n3} -> R^m realized by m Gaussian sensing
// tensors with entries N(0, 1/m). Rows regenerate bit-identically from
// (seed, m, dims) in any order, so the operator can be streamed instead of
// stored. A materialized row matrix is kept when it fits the byte budget;
// the two compute paths agree to floating-point rounding.
class MeasurementOperator {
 public:
  enum class Kind { Gaussian, IdentityBasis };

  MeasurementOperator(Dims3 dims, Index m, std::uint64_t seed,
                      std::int64_t materialize_budget_bytes = kDefaultBudget)
      : kind_(Kind::Gaussian), dims_(dims), m_(m), seed_(seed) {
    if (m < 1) throw DimMismatch("MeasurementOperator: m must be positive");
    const std::int64_t bytes = static_cast<std::int64_t>(m) * entry_count() * 8;
    if (bytes <= materialize_budget_bytes) {
      rows_.resize(m, entry_count());
      Eigen::VectorXd row(entry_count());
      for (Index i = 0; i < m; ++i) {
        fill_row(i, row);
        rows_.row(i) = row;
      }
    }
  }

  // Test-only operator whose sensing tensors are the unit basis, so that
  // adjoint(apply(x)) == x exactly. Requires m == n1*n2*n3.
  static MeasurementOperator identity_basis(Dims3 dims) {
    MeasurementOperator op;
    op.kind_ = Kind::IdentityBasis;
    op.dims_ = dims;
    op.m_ = dims.n1 * dims.n2 * dims.n3;
    return op;
  }

  Kind kind() const { return kind_; }
  Dims3 dims() const { return dims_; }
  Index m() const { return m_; }
  std::uint64_t seed() const { return seed_; }
  bool materialized() const { return rows_.size() > 0; }

  // i-th sensing tensor, regenerated on demand.
  Tensor3 sensing_tensor(Index i) const {
    if (kind_ == Kind::IdentityBasis) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(entry_count());
      e(i) = 1.0;
      return Tensor3::unvec(e, dims_);
    }
    Eigen::VectorXd row(entry_count());
    fill_row(i, row);
    return Tensor3::unvec(row, dims_);
  }

  Eigen::VectorXd apply(const Tensor3& x) const {
    if (x.dims() != dims_) throw DimMismatch("MeasurementOperator: tensor dims disagree");
    const Eigen::VectorXd v = x.vec();
    if (kind_ == Kind::IdentityBasis) return v;
    Eigen::VectorXd y(m_);
    if (materialized()) {
      parallel_row_blocks([&](Index lo, Index hi) {
        y.segment(lo, hi - lo).noalias() = rows_.middleRows(lo, hi - lo) * v;
      });
    } else {
      parallel_row_blocks([&](Index lo, Index hi) {
        Eigen::VectorXd row(entry_count());
        for (Index i = lo; i < hi; ++i) {
          fill_row(i, row);
          y(i) = row.dot(v);
        }
      });
    }
    return y;
  }

  Tensor3 adjoint(const Eigen::VectorXd& y) const {
    if (y.size() != m_) throw DimMismatch("MeasurementOperator: measurement count disagrees");
    if (kind_ == Kind::IdentityBasis) return Tensor3::unvec(y, dims_);
    // Fixed-size blocks accumulated in index order keep the sum reproducible
    // for any thread count.
    const Index nblocks = (m_ + kBlockRows - 1) / kBlockRows;
    std::vector<Eigen::VectorXd> partial(static_cast<std::size_t>(nblocks));
    parallel_block_range(nblocks, [&](Index b) {
      const Index lo = b * kBlockRows, hi = std::min(m_, lo + kBlockRows);
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(entry_count());
      if (materialized()) {
        acc.noalias() = rows_.middleRows(lo, hi - lo).transpose() * y.segment(lo, hi - lo);
      } else {
        Eigen::VectorXd row(entry_count());
        for (Index i = lo; i < hi; ++i) {
          fill_row(i, row);
          acc += y(i) * row;
        }
      }
      partial[static_cast<std::size_t>(b)] = std::move(acc);
    });
    Eigen::VectorXd total = Eigen::VectorXd::Zero(entry_count());
    for (const auto& p : partial) total += p;
    return Tensor3::unvec(total, dims_);
  }

  static void set_threads(int n) { threads() = std::max(1, n); }
  static int get_threads() { return threads(); }

 private:
  static constexpr std::int64_t kDefaultBudget = std::int64_t{512} * 1024 * 1024;
  static constexpr Index kBlockRows = 1024;

  MeasurementOperator() = default;

  static int& threads() {
    static int t = 1;
    return t;
  }

  Index entry_count() const { return dims_.n1 * dims_.n2 * dims_.n3; }

  void fill_row(Index i, Eigen::VectorXd& row) const {
    GaussianStream g(derive_key(seed_, static_cast<std::uint64_t>(i)));
    const double sd = 1.0 / std::sqrt(static_cast<double>(m_));
    for (Index j = 0; j < row.size(); ++j) row(j) = sd * g.next();
  }

  template <typename Fn>
  void parallel_row_blocks(Fn fn) const {
    const Index nblocks = (m_ + kBlockRows - 1) / kBlockRows;
    parallel_block_range(nblocks, [&](Index b) {
      fn(b * kBlockRows, std::min(m_, (b + 1) * kBlockRows));
    });
  }

  template <typename Fn>
  static void parallel_block_range(Index nblocks, Fn fn) {
    const int nt = std::min<Index>(threads(), nblocks);
    if (nt <= 1) {
      for (Index b = 0; b < nblocks; ++b) fn(b);
      return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
      pool.emplace_back([&, t] {
        for (Index b = t; b < nblocks; b += nt) fn(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  Kind kind_ = Kind::Gaussian;
  Dims3 dims_;
  Index m_ = 0;
  std::uint64_t seed_ = 0;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows_;
};

}  // namespace tubal
