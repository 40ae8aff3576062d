// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include "test_support.hpp"
#include "tmhd/errors.hpp"
#include "tmhd/spectral_ops.hpp"

using namespace tmhd;
using tmhd::test::RelativeMaxDiff;

namespace
{

constexpr double kPi = std::numbers::pi;

double GridSumSquares(const GridValues &v)
{
  double s = 0.0;
  for (double x : v)
  {
    s += x * x;
  }
  return s / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("forward and inverse transforms round-trip")
{
  const GridPtr grid = Grid::Create(16);
  std::mt19937_64 rng(11);
  const SpectralScalar f = test::RandomFullScalar(grid, rng);
  const SpectralScalar back = ToCoeffs(grid, ToGrid(f));
  CHECK(RelativeMaxDiff(back, f) < 1e-14);
  CHECK(HermitianDefect(f) < 1e-15);
}

TEST_CASE("coefficients follow the unit-box normalization")
{
  const GridPtr grid = Grid::Create(8);
  GridValues v(grid->RealSize());
  const int n = grid->N();
  for (int i = 0; i < n; ++i)
  {
    for (int j = 0; j < n; ++j)
    {
      for (int k = 0; k < n; ++k)
      {
        const double x = grid->Coordinate(i);
        const double z = grid->Coordinate(k);
        v[(static_cast<std::size_t>(i) * n + j) * n + k] =
            0.5 + 3.0 * std::cos(2.0 * kPi * x) + std::sin(2.0 * kPi * 2.0 * z);
      }
    }
  }
  const SpectralScalar f = ToCoeffs(grid, v);
  CHECK(f.Mean() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(f.Mode({1, 0, 0}) - Complex(1.5, 0.0)) < 1e-14);
  CHECK(std::abs(f.Mode({-1, 0, 0}) - Complex(1.5, 0.0)) < 1e-14);
  CHECK(std::abs(f.Mode({0, 0, 2}) - Complex(0.0, -0.5)) < 1e-14);
  CHECK(std::abs(f.Mode({0, 0, -2}) - Complex(0.0, 0.5)) < 1e-14);
}

TEST_CASE("Parseval holds on random fields")
{
  const GridPtr grid = Grid::Create(16);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial)
  {
    const SpectralScalar f = test::RandomFullScalar(grid, rng);
    const double grid_l2 = GridSumSquares(ToGrid(f));
    CHECK(std::abs(SobolevNormSquared(f, 0.0) - grid_l2) / grid_l2 < 1e-12);
    CHECK(std::abs(L2Norm(f) * L2Norm(f) - grid_l2) / grid_l2 < 1e-12);
  }
}

TEST_CASE("derivatives match analytic values on a trigonometric field")
{
  const GridPtr grid = Grid::Create(16);
  const int n = grid->N();
  GridValues v(grid->RealSize()), dv(grid->RealSize());
  for (int i = 0; i < n; ++i)
  {
    for (int j = 0; j < n; ++j)
    {
      for (int k = 0; k < n; ++k)
      {
        const double y = grid->Coordinate(j);
        const std::size_t p = (static_cast<std::size_t>(i) * n + j) * n + k;
        v[p] = std::sin(2.0 * kPi * 3.0 * y);
        dv[p] = 6.0 * kPi * std::cos(2.0 * kPi * 3.0 * y);
      }
    }
  }
  const SpectralScalar f = ToCoeffs(grid, v);
  const GridValues got = ToGrid(Derivative(f, 1));
  double err = 0.0;
  for (std::size_t p = 0; p < v.size(); ++p)
  {
    err = std::max(err, std::abs(got[p] - dv[p]));
  }
  CHECK(err < 1e-12);
  CHECK(test::MaxAbs(Derivative(f, 0)) == 0.0);
  const SpectralScalar lap = Laplacian(f);
  CHECK(RelativeMaxDiff(lap, -(36.0 * kPi * kPi) * f) < 1e-14);
}

TEST_CASE("Leray projectors split random fields")
{
  const GridPtr grid = Grid::Create(16);
  std::mt19937_64 rng(5);
  SpectralVector u(test::RandomFullScalar(grid, rng), test::RandomFullScalar(grid, rng),
                   test::RandomFullScalar(grid, rng));
  const SpectralVector p = LerayP(u);
  const SpectralVector q = LerayQ(u);
  CHECK(RelativeMaxDiff(p + q, u) < 1e-12);
  const double scale = std::sqrt(GradientSobolevNormSquared(u, 0.0));
  CHECK(L2Norm(Divergence(p)) / scale < 1e-12);
  CHECK(L2Norm(Curl(q)) / scale < 1e-12);
  CHECK(RelativeMaxDiff(LerayP(p), p) < 1e-12);
  CHECK(std::abs(HsInner(p, q, 0.0)) / (L2Norm(u) * L2Norm(u)) < 1e-12);
}

TEST_CASE("inverse Laplacian inverts the Laplacian on mean-zero fields")
{
  const GridPtr grid = Grid::Create(16);
  std::mt19937_64 rng(9);
  SpectralScalar f = test::RandomFullScalar(grid, rng);
  f[0] = 0.0;
  CHECK(RelativeMaxDiff(Laplacian(InverseLaplacian(f)), f) < 1e-12);
  CHECK(RelativeMaxDiff(InverseLaplacian(Laplacian(f)), f) < 1e-12);
  f[0] = 1.0;
  CHECK_THROWS_AS(InverseLaplacian(f), MeanNotZero);
}

TEST_CASE("Sobolev norms use the (1 + |xi|^2)^s multiplier")
{
  const GridPtr grid = Grid::Create(8);
  SpectralScalar f(grid);
  f.SetMode({1, 2, 0}, Complex(0.3, -0.4));
  const double xi2 = 4.0 * kPi * kPi * 5.0;
  const double mod2 = 0.25;
  CHECK(SobolevNormSquared(f, 0.0) == doctest::Approx(2.0 * mod2).epsilon(1e-14));
  CHECK(SobolevNormSquared(f, 3.0) ==
        doctest::Approx(2.0 * mod2 * std::pow(1.0 + xi2, 3.0)).epsilon(1e-13));
  CHECK(HomogeneousNorm(f, 2.0) == doctest::Approx(std::sqrt(2.0 * mod2) * xi2).epsilon(1e-13));
  CHECK(GradientSobolevNormSquared(f, 1.0) ==
        doctest::Approx(2.0 * mod2 * xi2 * (1.0 + xi2)).epsilon(1e-13));
  CHECK(HsInner(f, f, 2.0) == doctest::Approx(SobolevNormSquared(f, 2.0)).epsilon(1e-14));
}

TEST_CASE("dealiased products equal the exact convolution on retained modes")
{
  const GridPtr grid = Grid::Create(8);
  const int kc = grid->DealiasCutoff();
  std::mt19937_64 rng(17);
  const SpectralScalar f = test::RandomScalar(grid, rng, kc, false);
  const SpectralScalar g = test::RandomScalar(grid, rng, kc, false);
  const GridValues fv = ToGrid(f);
  const GridValues gv = ToGrid(g);
  GridValues prod(fv.size());
  for (std::size_t p = 0; p < fv.size(); ++p)
  {
    prod[p] = fv[p] * gv[p];
  }
  const SpectralScalar fg = Dealias(ToCoeffs(grid, prod));

  double err = 0.0;
  double ref = 0.0;
  for (std::size_t m = 0; m < grid->SpectralSize(); ++m)
  {
    const Index3 &k = grid->Wavenumber(m);
    Complex exact = 0.0;
    if (grid->Retained(m))
    {
      for (int p1 = -kc; p1 <= kc; ++p1)
      {
        for (int p2 = -kc; p2 <= kc; ++p2)
        {
          for (int p3 = -kc; p3 <= kc; ++p3)
          {
            exact += f.Mode({p1, p2, p3}) * g.Mode({k[0] - p1, k[1] - p2, k[2] - p3});
          }
        }
      }
    }
    err = std::max(err, std::abs(fg[m] - exact));
    ref = std::max(ref, std::abs(exact));
  }
  CHECK(err / ref < 1e-13);
}

TEST_CASE("refinement preserves collocation values")
{
  const GridPtr coarse = Grid::Create(8);
  const GridPtr fine = Grid::Create(16);
  std::mt19937_64 rng(23);
  const SpectralScalar f = test::RandomScalar(coarse, rng, 3, false);
  const GridValues cv = ToGrid(f);
  const GridValues fv = ToGrid(Refine(f, fine));
  double err = 0.0;
  for (int i = 0; i < 8; ++i)
  {
    for (int j = 0; j < 8; ++j)
    {
      for (int k = 0; k < 8; ++k)
      {
        const double a = cv[(static_cast<std::size_t>(i) * 8 + j) * 8 + k];
        const double b = fv[(static_cast<std::size_t>(2 * i) * 16 + 2 * j) * 16 + 2 * k];
        err = std::max(err, std::abs(a - b));
      }
    }
  }
  CHECK(err < 1e-13);
  CHECK(LinfNorm(f, true) >= LinfNorm(f) - 1e-14);
}

TEST_CASE("directional derivative and dot are linear combinations")
{
  const GridPtr grid = Grid::Create(8);
  std::mt19937_64 rng(31);
  const SpectralVector u = test::RandomVector(grid, rng, 2);
  const Vec3 n{1.0, -2.0, 0.5};
  SpectralScalar expect = n[0] * Derivative(u[0], 0);
  expect.Axpy(n[1], Derivative(u[0], 1)).Axpy(n[2], Derivative(u[0], 2));
  CHECK(RelativeMaxDiff(DirectionalDerivative(n, u[0]), expect) < 1e-14);
  SpectralScalar dot = n[0] * u[0];
  dot.Axpy(n[1], u[1]).Axpy(n[2], u[2]);
  CHECK(RelativeMaxDiff(Dot(n, u), dot) < 1e-15);
}
