#pragma once

#include <memory>
#include <vector>

#include "tubal/init.hpp"
#include "tubal/loss.hpp"
#include "tubal/tlinalg.hpp"

namespace tubal {

// Synthetic ground truth description: per-frequency-slice ranks, condition
// number of the block-diagonal spectrum, and a seed. Paired slices of a
// real tensor must carry equal ranks.
struct GroundTruthSpec {
  Dims3 dims;
  std::vector<Index> multi_rank;
  double kappa = 1.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (dims.n1 < 1 || dims.n2 < 1 || dims.n3 < 1) throw BadSpec("GroundTruthSpec: bad dims");
    if (static_cast<Index>(multi_rank.size()) != dims.n3)
      throw BadSpec("GroundTruthSpec: multi_rank length must equal n3");
    for (Index rk : multi_rank)
      if (rk < 1 || rk > std::min(dims.n1, dims.n2))
        throw BadSpec("GroundTruthSpec: multi_rank entry out of range");
    for (Index k = 1; k < dims.n3; ++k)
      if (multi_rank[static_cast<std::size_t>(k)] != multi_rank[static_cast<std::size_t>(dims.n3 - k)])
        throw BadSpec("GroundTruthSpec: paired slices need equal ranks");
    if (kappa < 1.0) throw BadSpec("GroundTruthSpec: kappa must be >= 1");
  }

  Index tubal_rank() const {
    Index r = 0;
    for (Index rk : multi_rank) r = std::max(r, rk);
    return r;
  }
};

struct GroundTruth {
  Tensor3 xstar;
  Tensor3 lstar, rstar;  // balanced factors, tubal-rank many columns
};

namespace detail {

inline Eigen::MatrixXcd gaussian_orthonormal(Index n, Index r, bool real_slice,
                                             GaussianStream& g) {
  Eigen::MatrixXcd a(n, r);
  const double inv_sqrt2 = 0.70710678118654752440;
  for (Index j = 0; j < r; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (real_slice) {
        a(i, j) = Complex(g.next(), 0.0);
      } else {
        a(i, j) = Complex(g.next() * inv_sqrt2, g.next() * inv_sqrt2);
      }
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, r);
}

}  // namespace detail

// Builds Xstar slice by slice in the frequency domain: seeded orthonormal
// factors and a log-uniform singular-value ladder normalized to
// sigma_max = 1, sigma_min = 1/kappa. Values are dealt round-robin across
// the unique slices so every slice sees the full spread.
inline GroundTruth gen_ground_truth(const GroundTruthSpec& spec) {
  spec.validate();
  const Index n3 = spec.dims.n3;
  const Index h = num_unique_slices(n3);
  const Index rstar = spec.tubal_rank();

  Index s_unique = 0;
  for (Index k = 0; k < h; ++k) s_unique += spec.multi_rank[static_cast<std::size_t>(k)];
  if (spec.kappa > 1.0 && s_unique < 2)
    throw BadSpec("GroundTruthSpec: kappa > 1 needs at least two singular values");

  std::vector<double> ladder(static_cast<std::size_t>(s_unique));
  for (Index i = 0; i < s_unique; ++i) {
    const double t = (s_unique == 1) ? 0.0 : static_cast<double>(i) / static_cast<double>(s_unique - 1);
    ladder[static_cast<std::size_t>(i)] = std::pow(spec.kappa, -t);
  }

  // Deal the descending ladder to the slices.
  std::vector<std::vector<double>> sigma(static_cast<std::size_t>(h));
  {
    std::size_t next = 0;
    for (Index round = 0; round < rstar; ++round)
      for (Index k = 0; k < h; ++k)
        if (round < spec.multi_rank[static_cast<std::size_t>(k)])
          sigma[static_cast<std::size_t>(k)].push_back(ladder[next++]);
    for (auto& v : sigma) std::sort(v.begin(), v.end(), std::greater<>());
  }

  FreqTensor xf(spec.dims.n1, spec.dims.n2, n3);
  FreqTensor lf(spec.dims.n1, rstar, n3);
  FreqTensor rf(spec.dims.n2, rstar, n3);
  for (Index k = 0; k < h; ++k) {
    const bool real_slice = is_self_conjugate_slice(k, n3);
    const Index rk = spec.multi_rank[static_cast<std::size_t>(k)];
    GaussianStream gu(derive_key(spec.seed, 2 * static_cast<std::uint64_t>(k)));
    GaussianStream gv(derive_key(spec.seed, 2 * static_cast<std::uint64_t>(k) + 1));
    Eigen::MatrixXcd u = detail::gaussian_orthonormal(spec.dims.n1, rk, real_slice, gu);
    Eigen::MatrixXcd v = detail::gaussian_orthonormal(spec.dims.n2, rk, real_slice, gv);
    Eigen::VectorXd d(rk), droot(rk);
    for (Index i = 0; i < rk; ++i) {
      d(i) = sigma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      droot(i) = std::sqrt(d(i));
    }
    xf.slice(k) = u * d.asDiagonal() * v.adjoint();
    lf.slice(k).leftCols(rk) = u * droot.asDiagonal();
    rf.slice(k).leftCols(rk) = v * droot.asDiagonal();
  }
  xf.enforce_conjugate_symmetry();
  lf.enforce_conjugate_symmetry();
  rf.enforce_conjugate_symmetry();
  return {from_freq(xf), from_freq(lf), from_freq(rf)};
}

struct Problem {
  LossModel model;
  Tensor3 xstar, lstar, rstar;
  std::shared_ptr<const MeasurementOperator> op;  // null for factorization
};

inline Problem gen_problem(const GroundTruthSpec& spec, LossModel::Kind kind, Index m = 0,
                           std::uint64_t op_seed = 0) {
  GroundTruth gt = gen_ground_truth(spec);
  if (kind == LossModel::Kind::Factorization) {
    return {LossModel::factorization(gt.xstar), gt.xstar, std::move(gt.lstar),
            std::move(gt.rstar), nullptr};
  }
  if (m < 1) throw BadSpec("gen_problem: recovery needs m >= 1");
  auto op = std::make_shared<const MeasurementOperator>(spec.dims, m, op_seed);
  LossModel model = LossModel::recovery(op, gt.xstar);
  return {std::move(model), gt.xstar, std::move(gt.lstar), std::move(gt.rstar), std::move(op)};
}

}  // namespace tubal
