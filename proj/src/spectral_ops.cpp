// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include "tmhd/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include "tmhd/errors.hpp"

namespace tmhd
{

namespace
{

constexpr Complex kI(0.0, 1.0);

double WeightedSum(const SpectralScalar &f, const std::vector<double> &w)
{
  const Grid &g = f.grid();
  const auto c = f.coeffs();
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
  {
    sum += g.HermitianWeight(i) * w[i] * std::norm(c[i]);
  }
  return sum;
}

}  // namespace

SpectralScalar Derivative(const SpectralScalar &f, int axis)
{
  SpectralScalar out(f.grid_ptr());
  const Grid &g = f.grid();
  for (std::size_t i = 0; i < g.SpectralSize(); ++i)
  {
    out[i] = kI * g.DerivativeWavevector(i)[axis] * f[i];
  }
  return out;
}

SpectralVector Gradient(const SpectralScalar &f)
{
  return SpectralVector(Derivative(f, 0), Derivative(f, 1), Derivative(f, 2));
}

SpectralScalar Divergence(const SpectralVector &u)
{
  SpectralScalar out(u.grid_ptr());
  const Grid &g = u.grid();
  for (std::size_t i = 0; i < g.SpectralSize(); ++i)
  {
    const Vec3 &xi = g.DerivativeWavevector(i);
    out[i] = kI * (xi[0] * u[0][i] + xi[1] * u[1][i] + xi[2] * u[2][i]);
  }
  return out;
}

SpectralVector Curl(const SpectralVector &u)
{
  SpectralVector out(u.grid_ptr());
  const Grid &g = u.grid();
  for (std::size_t i = 0; i < g.SpectralSize(); ++i)
  {
    const Vec3 &xi = g.DerivativeWavevector(i);
    out[0][i] = kI * (xi[1] * u[2][i] - xi[2] * u[1][i]);
    out[1][i] = kI * (xi[2] * u[0][i] - xi[0] * u[2][i]);
    out[2][i] = kI * (xi[0] * u[1][i] - xi[1] * u[0][i]);
  }
  return out;
}

SpectralScalar Laplacian(const SpectralScalar &f)
{
  SpectralScalar out(f.grid_ptr());
  const Grid &g = f.grid();
  for (std::size_t i = 0; i < g.SpectralSize(); ++i)
  {
    out[i] = -g.WavevectorNormSquared(i) * f[i];
  }
  return out;
}

SpectralVector Laplacian(const SpectralVector &u)
{
  return SpectralVector(Laplacian(u[0]), Laplacian(u[1]), Laplacian(u[2]));
}

SpectralScalar InverseLaplacian(const SpectralScalar &f)
{
  const double mean = f.Mean();
  const double norm = L2Norm(f);
  if (std::abs(mean) > 1e-10 * norm)
  {
    std::ostringstream msg;
    msg << "inverse Laplacian needs a mean-zero field (mean " << mean << ", L2 norm " << norm
        << ")";
    throw MeanNotZero(msg.str());
  }
  SpectralScalar out(f.grid_ptr());
  const Grid &g = f.grid();
  for (std::size_t i = 1; i < g.SpectralSize(); ++i)
  {
    out[i] = -f[i] / g.WavevectorNormSquared(i);
  }
  return out;
}

SpectralVector LerayQ(const SpectralVector &u)
{
  SpectralVector out(u.grid_ptr());
  const Grid &g = u.grid();
  for (std::size_t i = 0; i < g.SpectralSize(); ++i)
  {
    const Vec3 &xi = g.DerivativeWavevector(i);
    const double xx = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (xx == 0.0)
    {
      continue;
    }
    const Complex proj = (xi[0] * u[0][i] + xi[1] * u[1][i] + xi[2] * u[2][i]) / xx;
    for (int d = 0; d < 3; ++d)
    {
      out[d][i] = xi[d] * proj;
    }
  }
  return out;
}

SpectralVector LerayP(const SpectralVector &u)
{
  SpectralVector out = u;
  const Grid &g = u.grid();
  for (std::size_t i = 0; i < g.SpectralSize(); ++i)
  {
    const Vec3 &xi = g.DerivativeWavevector(i);
    const double xx = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (xx == 0.0)
    {
      continue;
    }
    const Complex proj = (xi[0] * u[0][i] + xi[1] * u[1][i] + xi[2] * u[2][i]) / xx;
    for (int d = 0; d < 3; ++d)
    {
      out[d][i] -= xi[d] * proj;
    }
  }
  return out;
}

SpectralScalar DirectionalDerivative(const Vec3 &n, const SpectralScalar &f)
{
  SpectralScalar out(f.grid_ptr());
  const Grid &g = f.grid();
  for (std::size_t i = 0; i < g.SpectralSize(); ++i)
  {
    const Vec3 &xi = g.DerivativeWavevector(i);
    out[i] = kI * (n[0] * xi[0] + n[1] * xi[1] + n[2] * xi[2]) * f[i];
  }
  return out;
}

SpectralVector DirectionalDerivative(const Vec3 &n, const SpectralVector &u)
{
  return SpectralVector(DirectionalDerivative(n, u[0]), DirectionalDerivative(n, u[1]),
                        DirectionalDerivative(n, u[2]));
}

SpectralScalar Dot(const Vec3 &n, const SpectralVector &u)
{
  SpectralScalar out = n[0] * u[0];
  out.Axpy(n[1], u[1]);
  out.Axpy(n[2], u[2]);
  return out;
}

SpectralVector Times(const Vec3 &n, const SpectralScalar &f)
{
  return SpectralVector(n[0] * f, n[1] * f, n[2] * f);
}

double SobolevNormSquared(const SpectralScalar &f, double s)
{
  if (s < 0.0)
  {
    throw NegativeOrder("Sobolev order must be >= 0, got " + std::to_string(s));
  }
  return WeightedSum(f, f.grid().SobolevWeights(s));
}

double SobolevNormSquared(const SpectralVector &u, double s)
{
  return SobolevNormSquared(u[0], s) + SobolevNormSquared(u[1], s) +
         SobolevNormSquared(u[2], s);
}

double SobolevNorm(const SpectralScalar &f, double s)
{
  return std::sqrt(SobolevNormSquared(f, s));
}

double SobolevNorm(const SpectralVector &u, double s)
{
  return std::sqrt(SobolevNormSquared(u, s));
}

double HsInner(const SpectralScalar &f, const SpectralScalar &g, double s)
{
  if (s < 0.0)
  {
    throw NegativeOrder("Sobolev order must be >= 0, got " + std::to_string(s));
  }
  const Grid &grid = f.grid();
  const auto &w = grid.SobolevWeights(s);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.SpectralSize(); ++i)
  {
    sum += grid.HermitianWeight(i) * w[i] * (f[i] * std::conj(g[i])).real();
  }
  return sum;
}

double HsInner(const SpectralVector &f, const SpectralVector &g, double s)
{
  return HsInner(f[0], g[0], s) + HsInner(f[1], g[1], s) + HsInner(f[2], g[2], s);
}

double HomogeneousNorm(const SpectralScalar &f, double s)
{
  if (s < 0.0)
  {
    throw NegativeOrder("Sobolev order must be >= 0, got " + std::to_string(s));
  }
  return std::sqrt(WeightedSum(f, f.grid().HomogeneousWeights(s)));
}

double GradientSobolevNormSquared(const SpectralScalar &f, double s)
{
  if (s < 0.0)
  {
    throw NegativeOrder("Sobolev order must be >= 0, got " + std::to_string(s));
  }
  const Grid &g = f.grid();
  const auto &w = g.SobolevWeights(s);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.SpectralSize(); ++i)
  {
    const Vec3 &xi = g.DerivativeWavevector(i);
    const double xx = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    sum += g.HermitianWeight(i) * w[i] * xx * std::norm(f[i]);
  }
  return sum;
}

double GradientSobolevNormSquared(const SpectralVector &u, double s)
{
  return GradientSobolevNormSquared(u[0], s) + GradientSobolevNormSquared(u[1], s) +
         GradientSobolevNormSquared(u[2], s);
}

double L2Norm(const SpectralScalar &f)
{
  return SobolevNorm(f, 0.0);
}

double L2Norm(const SpectralVector &u)
{
  return SobolevNorm(u, 0.0);
}

SpectralScalar Refine(const SpectralScalar &f, const GridPtr &fine)
{
  SpectralScalar out(fine);
  const Grid &g = f.grid();
  const int half = g.N() / 2;
  for (std::size_t i = 0; i < g.SpectralSize(); ++i)
  {
    const Index3 &k = g.Wavenumber(i);
    if (k[0] == half || k[1] == half || k[2] == half)
    {
      continue;
    }
    out[fine->Find(k)] = f[i];
  }
  return out;
}

double LinfNorm(const SpectralScalar &f, bool oversample)
{
  if (oversample)
  {
    static std::mutex m;
    static std::map<int, GridPtr> fine_grids;
    GridPtr fine;
    {
      std::lock_guard<std::mutex> lock(m);
      auto &slot = fine_grids[f.grid().N()];
      if (!slot)
      {
        slot = Grid::Create(2 * f.grid().N());
      }
      fine = slot;
    }
    return LinfNorm(Refine(f, fine), false);
  }
  const GridValues v = ToGrid(f);
  double m = 0.0;
  for (double x : v)
  {
    m = std::max(m, std::abs(x));
  }
  return m;
}

double LinfNorm(std::span<const GridValues> components)
{
  if (components.empty())
  {
    return 0.0;
  }
  const std::size_t size = components.front().size();
  double m = 0.0;
  for (std::size_t p = 0; p < size; ++p)
  {
    double s = 0.0;
    for (const auto &c : components)
    {
      s += c[p] * c[p];
    }
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

void DealiasInPlace(SpectralScalar &f)
{
  const Grid &g = f.grid();
  for (std::size_t i = 0; i < g.SpectralSize(); ++i)
  {
    if (!g.Retained(i))
    {
      f[i] = Complex(0.0, 0.0);
    }
  }
}

void DealiasInPlace(SpectralVector &u)
{
  for (int d = 0; d < 3; ++d)
  {
    DealiasInPlace(u[d]);
  }
}

SpectralScalar Dealias(SpectralScalar f)
{
  DealiasInPlace(f);
  return f;
}

SpectralVector Dealias(SpectralVector u)
{
  DealiasInPlace(u);
  return u;
}

}  // namespace tmhd
