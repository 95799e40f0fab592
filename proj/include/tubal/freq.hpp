#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <unsupported/Eigen/FFT>
#include <vector>

#include "tubal/tensor3.hpp"

namespace tubal {

using Complex = std::complex<double>;

// The one storage/transform convention used by the whole library.
// DFT along mode 3: forward unnormalized, inverse scaled by 1/n3.
struct SliceLayoutDescriptor {
  enum class Ordering : std::uint32_t { SliceMajor = 1 };
  enum class FftConvention : std::uint32_t { ForwardUnnormalizedInverseScaled = 1 };
  Ordering ordering = Ordering::SliceMajor;
  FftConvention fft = FftConvention::ForwardUnnormalizedInverseScaled;
  friend bool operator==(const SliceLayoutDescriptor&, const SliceLayoutDescriptor&) = default;
};

inline constexpr SliceLayoutDescriptor kLayout{};

// Relative ceiling on the imaginary residue allowed when transforming back
// to the spatial domain. One order above double FFT noise.
inline constexpr double kImagResidualTol = 1e-10;

// Number of frequency slices that are not determined by conjugate symmetry:
// slice 0, plus the lower half (and the Nyquist slice for even n3).
inline Index num_unique_slices(Index n3) { return n3 / 2 + 1; }

inline bool is_self_conjugate_slice(Index k, Index n3) {
  return k == 0 || (n3 % 2 == 0 && k == n3 / 2);
}

// Mode-3 DFT image of a Tensor3: n3 complex n1 x n2 frontal slices.
class FreqTensor {
 public:
  FreqTensor() = default;

  FreqTensor(Index n1, Index n2, Index n3) : n1_(n1), n2_(n2), n3_(n3) {
    if (n1 < 1 || n2 < 1 || n3 < 1) throw DimMismatch("FreqTensor: dims must be positive");
    slices_.assign(static_cast<std::size_t>(n3), Eigen::MatrixXcd::Zero(n1, n2));
  }

  Dims3 dims() const { return {n1_, n2_, n3_}; }
  Index n1() const { return n1_; }
  Index n2() const { return n2_; }
  Index n3() const { return n3_; }

  const Eigen::MatrixXcd& slice(Index k) const { return slices_[static_cast<std::size_t>(k)]; }
  Eigen::MatrixXcd& slice(Index k) { return slices_[static_cast<std::size_t>(k)]; }

  double fro_norm() const {
    double s = 0.0;
    for (const auto& m : slices_) s += m.squaredNorm();
    return std::sqrt(s);
  }

  // Overwrites the upper half with conjugates of the lower half and strips
  // imaginary dirt from self-conjugate slices, making the symmetry exact.
  void enforce_conjugate_symmetry() {
    for (Index k = 0; k < n3_; ++k)
      if (is_self_conjugate_slice(k, n3_)) slice(k).imag().setZero();
    for (Index k = num_unique_slices(n3_); k < n3_; ++k) slice(k) = slice(n3_ - k).conjugate();
  }

  FreqTensor& operator+=(const FreqTensor& o) {
    if (dims() != o.dims()) throw DimMismatch("FreqTensor: dimension mismatch");
    for (Index k = 0; k < n3_; ++k) slice(k) += o.slice(k);
    return *this;
  }
  FreqTensor& operator-=(const FreqTensor& o) {
    if (dims() != o.dims()) throw DimMismatch("FreqTensor: dimension mismatch");
    for (Index k = 0; k < n3_; ++k) slice(k) -= o.slice(k);
    return *this;
  }
  FreqTensor& operator*=(double c) {
    for (auto& m : slices_) m *= c;
    return *this;
  }
  friend FreqTensor operator+(FreqTensor a, const FreqTensor& b) { return a += b; }
  friend FreqTensor operator-(FreqTensor a, const FreqTensor& b) { return a -= b; }
  friend FreqTensor operator*(FreqTensor a, double c) { return a *= c; }
  friend FreqTensor operator*(double c, FreqTensor a) { return a *= c; }

  double max_symmetry_defect() const {
    double d = 0.0;
    for (Index k = 0; k < n3_; ++k) {
      if (is_self_conjugate_slice(k, n3_)) {
        d = std::max(d, slice(k).imag().cwiseAbs().maxCoeff());
      } else if (k >= num_unique_slices(n3_)) {
        d = std::max(d, (slice(k) - slice(n3_ - k).conjugate()).cwiseAbs().maxCoeff());
      }
    }
    return d;
  }

 private:
  Index n1_ = 0, n2_ = 0, n3_ = 0;
  std::vector<Eigen::MatrixXcd> slices_;
};

namespace detail {

// Tube-wise forward DFT. n3 == 1 is the identity transform; kissfft does
// not accept length-1 plans.
inline void fft_tubes_forward(const Tensor3& x, FreqTensor& out) {
  const Index n1 = x.n1(), n2 = x.n2(), n3 = x.n3();
  if (n3 == 1) {
    out.slice(0) = x.slice(0).cast<Complex>();
    return;
  }
  Eigen::FFT<double> fft;
  std::vector<double> tube(static_cast<std::size_t>(n3));
  std::vector<Complex> spec(static_cast<std::size_t>(n3));
  for (Index j = 0; j < n2; ++j) {
    for (Index i = 0; i < n1; ++i) {
      for (Index k = 0; k < n3; ++k) tube[static_cast<std::size_t>(k)] = x(i, j, k);
      fft.fwd(spec, tube);
      for (Index k = 0; k < n3; ++k) out.slice(k)(i, j) = spec[static_cast<std::size_t>(k)];
    }
  }
}

inline void fft_tubes_inverse(const FreqTensor& f, std::vector<Eigen::MatrixXcd>& out) {
  const Index n1 = f.n1(), n2 = f.n2(), n3 = f.n3();
  out.assign(static_cast<std::size_t>(n3), Eigen::MatrixXcd(n1, n2));
  if (n3 == 1) {
    out[0] = f.slice(0);
    return;
  }
  Eigen::FFT<double> fft;
  std::vector<Complex> spec(static_cast<std::size_t>(n3));
  std::vector<Complex> tube(static_cast<std::size_t>(n3));
  for (Index j = 0; j < n2; ++j) {
    for (Index i = 0; i < n1; ++i) {
      for (Index k = 0; k < n3; ++k) spec[static_cast<std::size_t>(k)] = f.slice(k)(i, j);
      fft.inv(tube, spec);  // applies the 1/n3 scaling
      for (Index k = 0; k < n3; ++k) out[static_cast<std::size_t>(k)](i, j) = tube[static_cast<std::size_t>(k)];
    }
  }
}

}  // namespace detail

inline FreqTensor to_freq(const Tensor3& x) {
  FreqTensor f(x.n1(), x.n2(), x.n3());
  detail::fft_tubes_forward(x, f);
  f.enforce_conjugate_symmetry();
  return f;
}

// Inverse mode-3 DFT. The imaginary part of the result is a consistency
// check: anything above kImagResidualTol relative to the result norm means
// the frequency-domain data was not the image of a real tensor.
inline Tensor3 from_freq(const FreqTensor& f) {
  std::vector<Eigen::MatrixXcd> full;
  detail::fft_tubes_inverse(f, full);
  double norm_sq = 0.0, max_imag = 0.0;
  for (const auto& m : full) {
    norm_sq += m.squaredNorm();
    max_imag = std::max(max_imag, m.imag().cwiseAbs().maxCoeff());
  }
  const double scale = std::sqrt(norm_sq);
  if (max_imag > kImagResidualTol * scale)
    throw SymmetryViolation("from_freq: imaginary residual " + std::to_string(max_imag) +
                            " exceeds tolerance for norm " + std::to_string(scale));
  Tensor3 x(f.n1(), f.n2(), f.n3());
  for (Index k = 0; k < f.n3(); ++k) x.slice(k) = full[static_cast<std::size_t>(k)].real();
  return x;
}

}  // namespace tubal
