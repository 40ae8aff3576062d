// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TMHD_GRID_HPP
#define TMHD_GRID_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace tmhd
{

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Index3 = std::array<int, 3>;

//
// Uniform collocation grid on the unit torus [0,1)^3 together with the FFT plans and
// per-mode tables used by every spectral operation.
//
// Coefficients use the real-to-complex half layout: mode storage index
// (i1 * N + i2) * (N/2 + 1) + i3 holds wavenumber k = (k(i1), k(i2), i3) with
// k(i) = i for i <= N/2 and i - N otherwise, i.e. components in {-N/2+1, ..., N/2}.
// The mode -k is implied by Hermitian symmetry. Coefficients are normalized so that
// f(x) = sum_k f_k exp(2 pi i k.x) and f_0 is the mean over the unit-volume box.
//
class Grid
{
public:
  // Grids own FFTW plans; share them through GridPtr.
  static std::shared_ptr<const Grid> Create(int points_per_axis, int threads = 1);

  Grid(const Grid &) = delete;
  Grid &operator=(const Grid &) = delete;
  ~Grid();

  int N() const { return n_; }
  int HalfN() const { return n_ / 2 + 1; }
  std::size_t RealSize() const { return real_size_; }
  std::size_t SpectralSize() const { return spectral_size_; }
  double Spacing() const { return 1.0 / n_; }

  // Largest |k_i| kept by the 2/3 rule.
  int DealiasCutoff() const { return n_ / 3; }

  const Index3 &Wavenumber(std::size_t mode) const { return k_[mode]; }

  // Wavevector used by odd-order derivatives: 2 pi k with Nyquist components zeroed so
  // that derivatives of real fields stay real.
  const Vec3 &DerivativeWavevector(std::size_t mode) const { return xi_[mode]; }

  // |xi_k|^2 = 4 pi^2 |k|^2 (Nyquist components included).
  double WavevectorNormSquared(std::size_t mode) const { return xi2_[mode]; }

  // Multiplicity of the stored coefficient in full-lattice sums (1 on the i3 = 0 and
  // i3 = N/2 planes, which store both k and -k explicitly; 2 elsewhere).
  double HermitianWeight(std::size_t mode) const { return weight_[mode]; }

  bool Retained(std::size_t mode) const { return retained_[mode] != 0; }

  // Storage index of wavenumber k if it is representable, else -1. Only k with
  // k3 >= 0 are stored; for k3 < 0 look up -k and conjugate.
  std::ptrdiff_t Find(const Index3 &k) const;

  // Cached (1 + |xi|^2)^s and |xi|^(2s) per mode.
  const std::vector<double> &SobolevWeights(double s) const;
  const std::vector<double> &HomogeneousWeights(double s) const;

  // Forward transform including the 1/N^3 normalization.
  void Forward(std::span<const double> values, std::span<Complex> coeffs) const;
  void Inverse(std::span<const Complex> coeffs, std::span<double> values) const;
  // Inverse that overwrites coeffs, saving the defensive copy.
  void InverseInPlace(std::span<Complex> coeffs, std::span<double> values) const;

  // Collocation point coordinate along one axis.
  double Coordinate(int i) const { return static_cast<double>(i) / n_; }

private:
  Grid(int points_per_axis, int threads);

  int n_;
  std::size_t real_size_;
  std::size_t spectral_size_;
  std::vector<Index3> k_;
  std::vector<Vec3> xi_;
  std::vector<double> xi2_;
  std::vector<double> weight_;
  std::vector<unsigned char> retained_;

  int real_alignment_ = 0;
  int complex_alignment_ = 0;
  void *forward_plan_ = nullptr;
  void *inverse_plan_ = nullptr;

  mutable std::mutex cache_mutex_;
  mutable std::map<double, std::unique_ptr<std::vector<double>>> sobolev_cache_;
  mutable std::map<double, std::unique_ptr<std::vector<double>>> homogeneous_cache_;
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace tmhd

#endif  // TMHD_GRID_HPP
