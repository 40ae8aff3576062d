// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TMHD_FIELD_HPP
#define TMHD_FIELD_HPP

#include <array>
#include <span>
#include <vector>
#include "tmhd/grid.hpp"

namespace tmhd
{

//
// Real scalar field on the torus stored as its Fourier coefficients (half layout, see
// Grid). A default-constructed field has no grid and is only a placeholder.
//
class SpectralScalar
{
public:
  SpectralScalar() = default;
  explicit SpectralScalar(GridPtr grid);

  const Grid &grid() const { return *grid_; }
  const GridPtr &grid_ptr() const { return grid_; }
  bool empty() const { return !grid_; }

  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex &operator[](std::size_t mode) { return coeffs_[mode]; }
  const Complex &operator[](std::size_t mode) const { return coeffs_[mode]; }

  double Mean() const { return coeffs_.empty() ? 0.0 : coeffs_[0].real(); }

  // Coefficient of an arbitrary wavenumber, using f_{-k} = conj(f_k); zero if the
  // wavenumber is not representable.
  Complex Mode(const Index3 &k) const;

  // Sets f_k and, implicitly or explicitly, f_{-k} = conj(value).
  void SetMode(const Index3 &k, Complex value);

  void SetZero();

  SpectralScalar &operator+=(const SpectralScalar &o);
  SpectralScalar &operator-=(const SpectralScalar &o);
  SpectralScalar &operator*=(double s);

  // this += s * o
  SpectralScalar &Axpy(double s, const SpectralScalar &o);

private:
  GridPtr grid_;
  std::vector<Complex> coeffs_;
};

SpectralScalar operator+(SpectralScalar a, const SpectralScalar &b);
SpectralScalar operator-(SpectralScalar a, const SpectralScalar &b);
SpectralScalar operator*(double s, SpectralScalar a);
SpectralScalar operator-(SpectralScalar a);

// Three scalar components on one grid.
class SpectralVector
{
public:
  SpectralVector() = default;
  explicit SpectralVector(GridPtr grid);
  SpectralVector(SpectralScalar x, SpectralScalar y, SpectralScalar z);

  const Grid &grid() const { return c_[0].grid(); }
  const GridPtr &grid_ptr() const { return c_[0].grid_ptr(); }
  bool empty() const { return c_[0].empty(); }

  SpectralScalar &operator[](int i) { return c_[i]; }
  const SpectralScalar &operator[](int i) const { return c_[i]; }

  Vec3 Mean() const { return {c_[0].Mean(), c_[1].Mean(), c_[2].Mean()}; }
  void SetZero();

  SpectralVector &operator+=(const SpectralVector &o);
  SpectralVector &operator-=(const SpectralVector &o);
  SpectralVector &operator*=(double s);
  SpectralVector &Axpy(double s, const SpectralVector &o);

private:
  std::array<SpectralScalar, 3> c_;
};

SpectralVector operator+(SpectralVector a, const SpectralVector &b);
SpectralVector operator-(SpectralVector a, const SpectralVector &b);
SpectralVector operator*(double s, SpectralVector a);
SpectralVector operator-(SpectralVector a);

// Grid-space values, row-major (x1 slowest), N^3 entries.
using GridValues = std::vector<double>;

GridValues ToGrid(const SpectralScalar &f);
std::array<GridValues, 3> ToGrid(const SpectralVector &f);
SpectralScalar ToCoeffs(const GridPtr &grid, std::span<const double> values);
SpectralVector ToCoeffs(const GridPtr &grid, const std::array<GridValues, 3> &values);

// Projects the stored coefficients onto a real field: makes the explicitly stored
// conjugate pairs on the i3 = 0 and i3 = N/2 planes consistent and self-conjugate
// modes real.
void EnforceHermitian(SpectralScalar &f);

// Largest violation of f_{-k} = conj(f_k) among explicitly stored pairs.
double HermitianDefect(const SpectralScalar &f);

}  // namespace tmhd

#endif  // TMHD_FIELD_HPP
