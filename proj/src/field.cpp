// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include "tmhd/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tmhd
{

namespace
{

// Maps a wavenumber component into (-N/2, N/2].
int Wrap(int k, int n)
{
  int r = ((k % n) + n) % n;
  return r > n / 2 ? r - n : r;
}

Index3 WrapAll(const Index3 &k, int n)
{
  return {Wrap(k[0], n), Wrap(k[1], n), Wrap(k[2], n)};
}

Index3 Negate(const Index3 &k, int n)
{
  return WrapAll({-k[0], -k[1], -k[2]}, n);
}

void CheckSameGrid(const SpectralScalar &a, const SpectralScalar &b)
{
  if (a.grid_ptr() != b.grid_ptr())
  {
    throw std::invalid_argument("spectral fields live on different grids");
  }
}

}  // namespace

SpectralScalar::SpectralScalar(GridPtr grid)
  : grid_(std::move(grid)), coeffs_(grid_->SpectralSize(), Complex(0.0, 0.0))
{
}

Complex SpectralScalar::Mode(const Index3 &k_in) const
{
  const int n = grid_->N();
  Index3 k = WrapAll(k_in, n);
  if (k[2] < 0)
  {
    return std::conj(Mode(Negate(k, n)));
  }
  const auto idx = grid_->Find(k);
  return idx < 0 ? Complex(0.0, 0.0) : coeffs_[idx];
}

void SpectralScalar::SetMode(const Index3 &k_in, Complex value)
{
  const int n = grid_->N();
  Index3 k = WrapAll(k_in, n);
  if (k[2] < 0)
  {
    k = Negate(k, n);
    value = std::conj(value);
  }
  const Index3 mk = Negate(k, n);
  if (mk == k)
  {
    coeffs_[grid_->Find(k)] = Complex(value.real(), 0.0);
    return;
  }
  coeffs_[grid_->Find(k)] = value;
  if (k[2] == 0 || k[2] == n / 2)
  {
    coeffs_[grid_->Find(mk)] = std::conj(value);
  }
}

void SpectralScalar::SetZero()
{
  std::fill(coeffs_.begin(), coeffs_.end(), Complex(0.0, 0.0));
}

SpectralScalar &SpectralScalar::operator+=(const SpectralScalar &o)
{
  CheckSameGrid(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
  {
    coeffs_[i] += o.coeffs_[i];
  }
  return *this;
}

SpectralScalar &SpectralScalar::operator-=(const SpectralScalar &o)
{
  CheckSameGrid(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
  {
    coeffs_[i] -= o.coeffs_[i];
  }
  return *this;
}

SpectralScalar &SpectralScalar::operator*=(double s)
{
  for (auto &c : coeffs_)
  {
    c *= s;
  }
  return *this;
}

SpectralScalar &SpectralScalar::Axpy(double s, const SpectralScalar &o)
{
  CheckSameGrid(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
  {
    coeffs_[i] += s * o.coeffs_[i];
  }
  return *this;
}

SpectralScalar operator+(SpectralScalar a, const SpectralScalar &b)
{
  return a += b;
}

SpectralScalar operator-(SpectralScalar a, const SpectralScalar &b)
{
  return a -= b;
}

SpectralScalar operator*(double s, SpectralScalar a)
{
  return a *= s;
}

SpectralScalar operator-(SpectralScalar a)
{
  return a *= -1.0;
}

SpectralVector::SpectralVector(GridPtr grid)
  : c_{SpectralScalar(grid), SpectralScalar(grid), SpectralScalar(grid)}
{
}

SpectralVector::SpectralVector(SpectralScalar x, SpectralScalar y, SpectralScalar z)
  : c_{std::move(x), std::move(y), std::move(z)}
{
  CheckSameGrid(c_[0], c_[1]);
  CheckSameGrid(c_[0], c_[2]);
}

void SpectralVector::SetZero()
{
  for (auto &c : c_)
  {
    c.SetZero();
  }
}

SpectralVector &SpectralVector::operator+=(const SpectralVector &o)
{
  for (int i = 0; i < 3; ++i)
  {
    c_[i] += o.c_[i];
  }
  return *this;
}

SpectralVector &SpectralVector::operator-=(const SpectralVector &o)
{
  for (int i = 0; i < 3; ++i)
  {
    c_[i] -= o.c_[i];
  }
  return *this;
}

SpectralVector &SpectralVector::operator*=(double s)
{
  for (auto &c : c_)
  {
    c *= s;
  }
  return *this;
}

SpectralVector &SpectralVector::Axpy(double s, const SpectralVector &o)
{
  for (int i = 0; i < 3; ++i)
  {
    c_[i].Axpy(s, o.c_[i]);
  }
  return *this;
}

SpectralVector operator+(SpectralVector a, const SpectralVector &b)
{
  return a += b;
}

SpectralVector operator-(SpectralVector a, const SpectralVector &b)
{
  return a -= b;
}

SpectralVector operator*(double s, SpectralVector a)
{
  return a *= s;
}

SpectralVector operator-(SpectralVector a)
{
  return a *= -1.0;
}

GridValues ToGrid(const SpectralScalar &f)
{
  GridValues v(f.grid().RealSize());
  f.grid().Inverse(f.coeffs(), v);
  return v;
}

std::array<GridValues, 3> ToGrid(const SpectralVector &f)
{
  return {ToGrid(f[0]), ToGrid(f[1]), ToGrid(f[2])};
}

SpectralScalar ToCoeffs(const GridPtr &grid, std::span<const double> values)
{
  SpectralScalar f(grid);
  grid->Forward(values, f.coeffs());
  return f;
}

SpectralVector ToCoeffs(const GridPtr &grid, const std::array<GridValues, 3> &values)
{
  return SpectralVector(ToCoeffs(grid, values[0]), ToCoeffs(grid, values[1]),
                        ToCoeffs(grid, values[2]));
}

void EnforceHermitian(SpectralScalar &f)
{
  const Grid &g = f.grid();
  const int n = g.N();
  for (int plane : {0, n / 2})
  {
    for (int k1 = -n / 2 + 1; k1 <= n / 2; ++k1)
    {
      for (int k2 = -n / 2 + 1; k2 <= n / 2; ++k2)
      {
        const Index3 k{k1, k2, plane};
        const Index3 mk = Negate(k, n);
        const auto i = g.Find(k);
        const auto j = g.Find(mk);
        if (i == j)
        {
          f[i] = Complex(f[i].real(), 0.0);
        }
        else if (i < j)
        {
          const Complex avg = 0.5 * (f[i] + std::conj(f[j]));
          f[i] = avg;
          f[j] = std::conj(avg);
        }
      }
    }
  }
}

double HermitianDefect(const SpectralScalar &f)
{
  const Grid &g = f.grid();
  const int n = g.N();
  double worst = 0.0;
  for (int plane : {0, n / 2})
  {
    for (int k1 = -n / 2 + 1; k1 <= n / 2; ++k1)
    {
      for (int k2 = -n / 2 + 1; k2 <= n / 2; ++k2)
      {
        const Index3 k{k1, k2, plane};
        const auto i = g.Find(k);
        const auto j = g.Find(Negate(k, n));
        worst = std::max(worst, std::abs(f[i] - std::conj(f[j])));
      }
    }
  }
  return worst;
}

}  // namespace tmhd
