// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>
#include "test_support.hpp"
#include "tmhd/errors.hpp"
#include "tmhd/model.hpp"
#include "tmhd/spectral_ops.hpp"

using namespace tmhd;
using tmhd::test::RelativeMaxDiff;

namespace
{

const Vec3 kIrrational{1.0, std::numbers::sqrt2, std::numbers::sqrt3};

Physics MakePhysics(const Vec3 &n, FTermConvention conv = FTermConvention::kConsistent)
{
  Physics ph;
  ph.background.n = n;
  ph.viscosities.mu = 0.1;
  ph.viscosities.lambda = 0.05;
  ph.f_terms = conv;
  return ph;
}

// Linear part of the tendencies assembled from spectral operators.
Fields LinearTendency(const Fields &f, const Physics &ph)
{
  const Vec3 &n = ph.n();
  Fields out = Fields::Zero(f.grid_ptr());
  out.a = -Divergence(f.u);
  out.u = ViscousOperator(f.u, ph.viscosities);
  out.u -= Gradient(f.a + Dot(n, f.b));
  out.u += DirectionalDerivative(n, f.b);
  out.b = DirectionalDerivative(n, f.u);
  out.b -= Times(n, Divergence(f.u));
  return out;
}

double RelativeFieldsDiff(const Fields &a, const Fields &b)
{
  return std::max({RelativeMaxDiff(a.a, b.a), RelativeMaxDiff(a.u, b.u),
                   RelativeMaxDiff(a.b, b.b)});
}

double FieldsMax(const Fields &f)
{
  double m = test::MaxAbs(f.a);
  for (int j = 0; j < 3; ++j)
  {
    m = std::max({m, test::MaxAbs(f.u[j]), test::MaxAbs(f.b[j])});
  }
  return m;
}

Fields Difference(Fields a, const Fields &b)
{
  a.Axpy(-1.0, b);
  return a;
}

GridValues Pointwise(const GridValues &x, const GridValues &y)
{
  GridValues out(x.size());
  for (std::size_t p = 0; p < x.size(); ++p)
  {
    out[p] = x[p] * y[p];
  }
  return out;
}

}  // namespace

TEST_CASE("pressure law normalization and potential energy")
{
  const PressureLaw p2(2.0);
  CHECK(p2.SoundSpeedSquared(1.0) == doctest::Approx(1.0));
  CHECK(p2.PotentialEnergy(0.1) == doctest::Approx(0.005).epsilon(1e-14));
  CHECK(p2.PotentialEnergyQuadrature(1.1) == doctest::Approx(0.005).epsilon(1e-12));

  // gamma = 3: g(2) = 2 [ (4 - 1)/6 + (1/2 - 1)/3 ] = 2/3.
  const PressureLaw p3(3.0);
  CHECK(p3.PotentialEnergy(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  for (double gamma : {1.4, 5.0 / 3.0, 2.0, 3.0})
  {
    const PressureLaw pl(gamma);
    CHECK(pl.SoundSpeedSquared(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    for (double rho : {0.3, 0.8, 0.999, 1.05, 2.0, 4.0})
    {
      CHECK(pl.PotentialEnergy(rho - 1.0) ==
            doctest::Approx(pl.PotentialEnergyQuadrature(rho)).epsilon(1e-11));
      CHECK(pl.PressureCorrection(rho - 1.0) ==
            doctest::Approx(pl.SoundSpeedSquared(rho) / rho - 1.0).epsilon(1e-13));
    }
    // g is locally quadratic with curvature P'(1) = 1.
    CHECK(pl.PotentialEnergy(1e-4) / 1e-8 == doctest::Approx(0.5).epsilon(1e-3));
  }
  const std::vector<double> bad{1.0, 0.0};
  CHECK_THROWS_AS(PotentialEnergyDensity(p2, bad), NonpositiveDensity);
}

TEST_CASE("viscosity validation")
{
  Viscosities v;
  CHECK_NOTHROW(v.Validate());
  v.mu = 0.0;
  CHECK_THROWS_AS(v.Validate(), std::invalid_argument);
  v.mu = 0.1;
  v.lambda = -0.3;
  CHECK_THROWS_AS(v.Validate(), std::invalid_argument);
}

TEST_CASE("the equilibrium is steady")
{
  const GridPtr grid = Grid::Create(16);
  const Fields rhs = Rhs(Fields::Zero(grid), MakePhysics(kIrrational));
  CHECK(FieldsMax(rhs) == 0.0);
}

TEST_CASE("tendencies linearize to the spectral linear operator")
{
  const GridPtr grid = Grid::Create(16);
  std::mt19937_64 rng(41);
  const Physics ph = MakePhysics(kIrrational);
  Fields f = test::RandomFields(grid, rng, 3, 1.0);
  f.b = LerayP(f.b);
  const Fields lin = LinearTendency(f, ph);
  const double eps = 1e-6;
  Fields small = f;
  small *= eps;
  Fields got = Rhs(small, ph);
  got *= 1.0 / eps;
  CHECK(FieldsMax(Difference(got, lin)) / FieldsMax(lin) < 1e-4);
}

TEST_CASE("nonlinear remainder scales quadratically")
{
  const GridPtr grid = Grid::Create(16);
  std::mt19937_64 rng(43);
  const Physics ph = MakePhysics(kIrrational);
  Fields f = test::RandomFields(grid, rng, 2, 1.0);
  f.b = LerayP(f.b);
  auto remainder = [&](double eps) {
    Fields s = f;
    s *= eps;
    Fields r = Rhs(s, ph);
    Fields lin = LinearTendency(s, ph);
    return FieldsMax(Difference(r, lin));
  };
  const double ratio = remainder(2e-3) / remainder(1e-3);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("remainders close the evolution equations")
{
  const GridPtr grid = Grid::Create(16);
  std::mt19937_64 rng(47);
  const Physics ph = MakePhysics(kIrrational);
  Fields f = test::RandomFields(grid, rng, grid->DealiasCutoff(), 1e-3);
  f.b = LerayP(f.b);
  const Fields rhs = Rhs(f, ph);
  const FTerms ft = ComputeFTerms(f, ph);
  const Fields lin = LinearTendency(f, ph);
  CHECK(RelativeMaxDiff(rhs.a, lin.a + ft.f1) < 1e-12);
  CHECK(RelativeMaxDiff(rhs.u, lin.u + ft.f4) < 1e-12);
  CHECK(RelativeMaxDiff(rhs.b, lin.b + ft.f3) < 1e-12);
  const Fields explicit_part = ExplicitRhs(f, ph);
  CHECK(RelativeMaxDiff(explicit_part.u + ViscousOperator(f.u, ph.viscosities), rhs.u) < 1e-12);
}

TEST_CASE("continuity and induction remainders are conservative products")
{
  const GridPtr grid = Grid::Create(16);
  std::mt19937_64 rng(53);
  const Physics ph = MakePhysics(kIrrational);
  Fields f = test::RandomFields(grid, rng, 3, 2e-3);
  f.b = LerayP(f.b);
  const FTerms ft = ComputeFTerms(f, ph);

  const GridValues a = ToGrid(f.a);
  const auto u = ToGrid(f.u);
  const auto b = ToGrid(f.b);
  // f1 = -div(a u)
  std::array<GridValues, 3> au{Pointwise(a, u[0]), Pointwise(a, u[1]), Pointwise(a, u[2])};
  const SpectralScalar f1 = -Dealias(Divergence(ToCoeffs(grid, au)));
  CHECK(RelativeMaxDiff(ft.f1, f1) < 1e-12);
  // f3 = curl(u x B) for solenoidal B
  std::array<GridValues, 3> uxb;
  for (int j = 0; j < 3; ++j)
  {
    const int k = (j + 1) % 3;
    const int l = (j + 2) % 3;
    uxb[j] = Pointwise(u[k], b[l]);
    const GridValues t = Pointwise(u[l], b[k]);
    for (std::size_t p = 0; p < t.size(); ++p)
    {
      uxb[j][p] -= t[p];
    }
  }
  const SpectralVector f3 = Dealias(Curl(ToCoeffs(grid, uxb)));
  CHECK(RelativeMaxDiff(ft.f3, f3) < 1e-11);
}

TEST_CASE("the two f-term conventions differ by the pressure-type terms")
{
  const GridPtr grid = Grid::Create(16);
  std::mt19937_64 rng(59);
  Fields f = test::RandomFields(grid, rng, 3, 2e-3);
  f.b = LerayP(f.b);
  const FTerms lit = ComputeFTerms(f, MakePhysics(kIrrational, FTermConvention::kLiteral));
  const FTerms con = ComputeFTerms(f, MakePhysics(kIrrational, FTermConvention::kConsistent));
  CHECK(RelativeMaxDiff(lit.f1, con.f1) == 0.0);
  CHECK(RelativeMaxDiff(lit.f3, con.f3) == 0.0);

  // f4 literal - f4 consistent = 2 grad(pm) / rho + 2 k(a) grad a, pm = |B|^2 / 2.
  const PressureLaw pl(2.0);
  const GridValues a = ToGrid(f.a);
  const auto b = ToGrid(f.b);
  GridValues pm(a.size());
  for (std::size_t p = 0; p < a.size(); ++p)
  {
    pm[p] = 0.5 * (b[0][p] * b[0][p] + b[1][p] * b[1][p] + b[2][p] * b[2][p]);
  }
  const auto grad_pm = ToGrid(Gradient(Dealias(ToCoeffs(grid, pm))));
  const auto grad_a = ToGrid(Gradient(f.a));
  std::array<GridValues, 3> diff;
  for (int j = 0; j < 3; ++j)
  {
    diff[j].resize(a.size());
    for (std::size_t p = 0; p < a.size(); ++p)
    {
      diff[j][p] = 2.0 * grad_pm[j][p] / (1.0 + a[p]) +
                   2.0 * pl.PressureCorrection(a[p]) * grad_a[j][p];
    }
  }
  CHECK(RelativeMaxDiff(lit.f4 - con.f4, Dealias(ToCoeffs(grid, diff))) < 1e-11);
}

TEST_CASE("derived quantities satisfy the damping identity")
{
  const GridPtr grid = Grid::Create(16);
  std::mt19937_64 rng(61);
  Fields f = test::RandomFields(grid, rng, 4, 0.1);
  Viscosities v;
  v.lambda = 0.05;
  const DerivedQuantities d = ComputeDerived(f, kIrrational, v);
  CHECK(d.identity_residual < 1e-13);
  CHECK(RelativeMaxDiff(d.d, f.a + Dot(kIrrational, f.b)) < 1e-15);
  CHECK(RelativeMaxDiff(d.pu + d.qu, f.u) < 1e-14);
  // div G = div Qu - d / nu
  SpectralScalar expect = Divergence(d.qu);
  expect.Axpy(-1.0 / v.nu(), d.d);
  CHECK(RelativeMaxDiff(Divergence(d.g), expect) < 1e-12);
}

TEST_CASE("vacuum approach is detected")
{
  const GridPtr grid = Grid::Create(8);
  Fields f = Fields::Zero(grid);
  f.a.SetMode({1, 0, 0}, 0.4);  // a = 0.8 cos(2 pi x), min rho = 0.2
  const Physics ph = MakePhysics(kIrrational);
  CHECK(MinDensity(f) == doctest::Approx(0.2).epsilon(1e-13));
  CHECK_THROWS_AS(CheckAdmissible(f, ph), VacuumApproach);
  CHECK_THROWS_AS(Rhs(f, ph), VacuumApproach);
  f.a.SetMode({1, 0, 0}, 0.3);
  CHECK_NOTHROW(CheckAdmissible(f, ph));
}
