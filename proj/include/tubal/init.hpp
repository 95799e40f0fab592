#pragma once

#include "tubal/loss.hpp"
#include "tubal/rng.hpp"
#include "tubal/tlinalg.hpp"

namespace tubal {

// Spectral initialization: truncated t-SVD of the adjoint image M*(y),
// factors L0 = U0 * S0^{1/2}, R0 = V0 * S0^{1/2}. Balanced by construction.
inline FactorPair spectral_init(const LossModel& model, Index r) {
  if (model.kind() != LossModel::Kind::Recovery)
    throw BadSpec("spectral_init: requires a recovery model");
  const Dims3 d = model.dims();
  if (r < 1 || r > std::min(d.n1, d.n2)) throw BadRank("spectral_init: rank out of range");
  Tensor3 back = model.op().adjoint(model.y());
  FreqTsvd f = tsvd_freq(to_freq(back), r);
  FreqTensor root = fdiag_sqrt_freq(f.s);
  return FactorPair::from_freq_images(fmul(f.u, root), fmul(f.v, root));
}

// Gaussian initialization with entry standard deviations sqrt(scale/n1) and
// sqrt(scale/n2). scale = 1 is the plain random start; scale = 1e-10 is the
// near-zero start.
inline FactorPair random_init(Dims3 dims, Index r, double scale, std::uint64_t seed) {
  if (scale <= 0) throw BadSpec("random_init: scale must be positive");
  if (r < 1) throw BadRank("random_init: rank must be positive");
  Tensor3 l(dims.n1, r, dims.n3);
  Tensor3 rr(dims.n2, r, dims.n3);
  const double sd_l = std::sqrt(scale / static_cast<double>(dims.n1));
  const double sd_r = std::sqrt(scale / static_cast<double>(dims.n2));
  GaussianStream gl(derive_key(seed, 0));
  GaussianStream gr(derive_key(seed, 1));
  for (Index k = 0; k < dims.n3; ++k)
    for (Index j = 0; j < r; ++j)
      for (Index i = 0; i < dims.n1; ++i) l(i, j, k) = sd_l * gl.next();
  for (Index k = 0; k < dims.n3; ++k)
    for (Index j = 0; j < r; ++j)
      for (Index i = 0; i < dims.n2; ++i) rr(i, j, k) = sd_r * gr.next();
  return FactorPair::from_spatial(std::move(l), std::move(rr));
}

}  // namespace tubal
