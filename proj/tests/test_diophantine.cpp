// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include "test_support.hpp"
#include "tmhd/diophantine.hpp"
#include "tmhd/errors.hpp"
#include "tmhd/spectral_ops.hpp"

using namespace tmhd;

namespace
{

const Vec3 kIrrational{1.0, std::numbers::sqrt2, std::numbers::sqrt3};

// Direct scan of the Euclidean lattice ball.
double BruteForceC(const Vec3 &n, double r, int radius)
{
  double best = std::numeric_limits<double>::infinity();
  for (int i = -radius; i <= radius; ++i)
  {
    for (int j = -radius; j <= radius; ++j)
    {
      for (int k = -radius; k <= radius; ++k)
      {
        const int norm2 = i * i + j * j + k * k;
        if (norm2 == 0 || norm2 > radius * radius)
        {
          continue;
        }
        const double dot = std::abs(n[0] * i + n[1] * j + n[2] * k);
        best = std::min(best, dot * std::pow(std::sqrt(static_cast<double>(norm2)), r));
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("rational directions are resonant")
{
  const BackgroundField axis = Certify({1.0, 0.0, 0.0}, 3.0, 8);
  CHECK(axis.c_empirical == 0.0);
  CHECK(axis.n[0] * axis.resonant_k[0] == 0.0);
  const BackgroundField diag = Certify({1.0, 1.0, 1.0}, 3.0, 8);
  CHECK(diag.c_empirical == 0.0);
  const Index3 &k = diag.resonant_k;
  CHECK(k[0] + k[1] + k[2] == 0);
  CHECK(k[0] * k[0] + k[1] * k[1] + k[2] * k[2] == 2);
}

TEST_CASE("certification of (1, sqrt 2, sqrt 3) matches a brute-force scan")
{
  const BackgroundField bg8 = Certify(kIrrational, 3.0, 8);
  CHECK(bg8.c_empirical == doctest::Approx(BruteForceC(kIrrational, 3.0, 8)).epsilon(1e-12));
  const BackgroundField bg16 = Certify(kIrrational, 3.0, 16);
  CHECK(bg16.c_empirical > 0.0);
  CHECK(bg16.c_empirical == doctest::Approx(BruteForceC(kIrrational, 3.0, 16)).epsilon(1e-12));
  // The minimizer is k = (0, 1, -1) up to sign: (sqrt 3 - sqrt 2) 2^{3/2} = 2 sqrt 6 - 4.
  CHECK(bg16.c_empirical == doctest::Approx(2.0 * std::sqrt(6.0) - 4.0).epsilon(1e-12));
  const Index3 &k = bg16.resonant_k;
  CHECK(k[0] == 0);
  CHECK(std::abs(k[1]) == 1);
  CHECK(k[2] == -k[1]);
}

TEST_CASE("certification is monotone in the lattice radius")
{
  double previous = std::numeric_limits<double>::infinity();
  for (int radius = 1; radius <= 10; ++radius)
  {
    const double c = Certify(kIrrational, 3.5, radius).c_empirical;
    CHECK(c <= previous);
    previous = c;
  }
}

TEST_CASE("certification rejects invalid input")
{
  CHECK_THROWS_AS(Certify(kIrrational, 2.0, 4), InvalidExponent);
  CHECK_THROWS_AS(Certify({0.0, 0.0, 0.0}, 3.0, 4), ZeroVector);
  CHECK_THROWS_AS(Certify(kIrrational, 3.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(PoincareConstant(Certify({1.0, 0.0, 0.0}, 3.0, 4), 0.0), NotDiophantine);
}

TEST_CASE("band-limited Poincare inequality holds for random mean-zero fields")
{
  const GridPtr grid = Grid::Create(16);
  const BackgroundField bg = Certify(kIrrational, 3.0, 16);
  const double c_ball = PoincareConstant(bg, 0.0);
  const double c_grid = PoincareConstantOnGrid(kIrrational, 3.0, 0.0, *grid);
  // The dealiased cube |k_i| <= 5 lies inside the ball |k| <= 16.
  CHECK(c_grid <= c_ball * (1.0 + 1e-14));
  std::mt19937_64 rng(2026);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial)
  {
    const SpectralScalar f = test::RandomScalar(grid, rng, grid->DealiasCutoff());
    for (double s : {0.0, 3.0})
    {
      const double lhs = SobolevNorm(f, s);
      const double rhs = SobolevNorm(DirectionalDerivative(kIrrational, f), s + 3.0);
      if (lhs > c_ball * rhs * (1.0 + 1e-12) || lhs > c_grid * rhs * (1.0 + 1e-12))
      {
        ++violations;
      }
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("the Poincare constant is attained by a single resonant mode")
{
  const GridPtr grid = Grid::Create(16);
  const double c_grid = PoincareConstantOnGrid(kIrrational, 3.0, 0.0, *grid);
  double best = 0.0;
  for (std::size_t m = 1; m < grid->SpectralSize(); ++m)
  {
    if (!grid->Retained(m))
    {
      continue;
    }
    SpectralScalar f(grid);
    f.SetMode(grid->Wavenumber(m), 1.0);
    const double ratio =
        SobolevNorm(f, 0.0) / SobolevNorm(DirectionalDerivative(kIrrational, f), 3.0);
    best = std::max(best, ratio);
  }
  CHECK(best == doctest::Approx(c_grid).epsilon(1e-12));
}
