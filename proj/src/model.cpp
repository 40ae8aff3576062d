// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include "tmhd/model.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include "tmhd/errors.hpp"
#include "tmhd/spectral_ops.hpp"

namespace tmhd
{

PressureLaw::PressureLaw(double adiabatic_exponent) : gamma_(adiabatic_exponent)
{
  if (!(gamma_ > 1.0))
  {
    throw std::invalid_argument("adiabatic exponent must be > 1");
  }
}

double PressureLaw::Pressure(double rho) const
{
  return std::pow(rho, gamma_) / gamma_;
}

double PressureLaw::SoundSpeedSquared(double rho) const
{
  return std::pow(rho, gamma_ - 1.0);
}

double PressureLaw::PressureCorrection(double a) const
{
  // (1+a)^(gamma-2) - 1
  return std::expm1((gamma_ - 2.0) * std::log1p(a));
}

double PressureLaw::PotentialEnergy(double a) const
{
  if (gamma_ == 2.0)
  {
    return 0.5 * a * a;
  }
  // rho/gamma * [ (rho^(gamma-1) - 1)/(gamma-1) + 1/rho - 1 ]
  const double rho = 1.0 + a;
  const double t1 = std::expm1((gamma_ - 1.0) * std::log1p(a)) / (gamma_ - 1.0);
  const double t2 = -a / rho;
  return rho / gamma_ * (t1 + t2);
}

double PressureLaw::PotentialEnergyQuadrature(double rho) const
{
  if (rho == 1.0)
  {
    return 0.0;
  }
  const double p1 = Pressure(1.0);
  auto integrand = [&](double tau) { return (Pressure(tau) - p1) / (tau * tau); };
  double err = 0.0;
  const double val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 1.0, rho, 15, 1e-14, &err);
  return rho * val;
}

std::vector<double> PotentialEnergyDensity(const PressureLaw &pl, std::span<const double> rho)
{
  std::vector<double> g(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i)
  {
    if (!(rho[i] > 0.0))
    {
      std::ostringstream msg;
      msg << "potential energy needs rho > 0, got " << rho[i] << " at point " << i;
      throw NonpositiveDensity(msg.str());
    }
    g[i] = pl.PotentialEnergy(rho[i] - 1.0);
  }
  return g;
}

void Viscosities::Validate() const
{
  if (!(mu > 0.0))
  {
    throw std::invalid_argument("shear viscosity mu must be > 0");
  }
  if (!(nu() > 0.0))
  {
    throw std::invalid_argument("lambda + 2 mu must be > 0");
  }
}

Fields Fields::Zero(const GridPtr &grid)
{
  return Fields{SpectralScalar(grid), SpectralVector(grid), SpectralVector(grid)};
}

Fields &Fields::operator+=(const Fields &o)
{
  a += o.a;
  u += o.u;
  b += o.b;
  return *this;
}

Fields &Fields::operator*=(double s)
{
  a *= s;
  u *= s;
  b *= s;
  return *this;
}

Fields &Fields::Axpy(double s, const Fields &o)
{
  a.Axpy(s, o.a);
  u.Axpy(s, o.u);
  b.Axpy(s, o.b);
  return *this;
}

double MinDensity(const Fields &f)
{
  const GridValues a = ToGrid(f.a);
  return 1.0 + *std::min_element(a.begin(), a.end());
}

namespace
{

void ThrowIfVacuum(double min_rho, double c0)
{
  if (min_rho < 0.5 * c0)
  {
    std::ostringstream msg;
    msg << "density fell to " << min_rho << " < c0/2 = " << 0.5 * c0;
    throw VacuumApproach(msg.str());
  }
}

using Tensor = std::array<std::array<GridValues, 3>, 3>;

// Grid-space copies of everything the nonlinear terms need. Instances are reused per
// thread and grid size, so a tendency evaluation allocates no grid-sized buffers.
struct GridWork
{
  GridValues a;
  std::array<GridValues, 3> u, b, grad_a, visc, grad_pm;
  Tensor grad_u;  // grad_u[j][i] = d_i u_j
  Tensor grad_b;
  GridValues div_u, pm;
  GridValues inv_rho, i_of_a, k_of_a;
  GridValues out_f1;
  std::array<GridValues, 3> out_f3, out_f4;
  std::vector<Complex> spec;

  explicit GridWork(const Grid &grid)
  {
    const std::size_t size = grid.RealSize();
    for (GridValues *v : {&a, &div_u, &pm, &inv_rho, &i_of_a, &k_of_a, &out_f1})
    {
      v->resize(size);
    }
    for (auto *arr : {&u, &b, &grad_a, &visc, &grad_pm, &out_f3, &out_f4})
    {
      for (auto &v : *arr)
      {
        v.resize(size);
      }
    }
    for (auto *t : {&grad_u, &grad_b})
    {
      for (auto &row : *t)
      {
        for (auto &v : row)
        {
          v.resize(size);
        }
      }
    }
    spec.resize(grid.SpectralSize());
  }

  // Inverse transform of the coefficients coeff(mode).
  template <typename Coeff>
  void Synthesize(const Grid &grid, GridValues &out, Coeff coeff)
  {
    for (std::size_t m = 0; m < spec.size(); ++m)
    {
      spec[m] = coeff(m);
    }
    grid.InverseInPlace(spec, out);
  }

  void Fill(const Fields &f, const Physics &ph)
  {
    const Grid &grid = f.a.grid();
    const Viscosities &v = ph.viscosities;
    const double lm = v.lambda + v.mu;
    auto deriv = [&](const SpectralScalar &s, int axis) {
      return [&grid, &s, axis](std::size_t m) {
        const Complex c = s[m];
        const double k = grid.DerivativeWavevector(m)[axis];
        return Complex(-k * c.imag(), k * c.real());
      };
    };
    grid.Inverse(f.a.coeffs(), a);
    for (int j = 0; j < 3; ++j)
    {
      grid.Inverse(f.u[j].coeffs(), u[j]);
      grid.Inverse(f.b[j].coeffs(), b[j]);
      Synthesize(grid, grad_a[j], deriv(f.a, j));
      for (int i = 0; i < 3; ++i)
      {
        Synthesize(grid, grad_u[j][i], deriv(f.u[j], i));
        Synthesize(grid, grad_b[j][i], deriv(f.b[j], i));
      }
      // mu lap u_j + (lambda + mu) d_j div u
      Synthesize(grid, visc[j], [&](std::size_t m) {
        const Vec3 &xi = grid.DerivativeWavevector(m);
        const Complex xu = xi[0] * f.u[0][m] + xi[1] * f.u[1][m] + xi[2] * f.u[2][m];
        return -v.mu * grid.WavevectorNormSquared(m) * f.u[j][m] - lm * xi[j] * xu;
      });
    }

    const std::size_t size = a.size();
    for (std::size_t p = 0; p < size; ++p)
    {
      pm[p] = 0.5 * (b[0][p] * b[0][p] + b[1][p] * b[1][p] + b[2][p] * b[2][p]);
    }
    // Gradient of the dealiased magnetic pressure.
    std::vector<Complex> pm_hat(grid.SpectralSize());
    grid.Forward(pm, pm_hat);
    for (std::size_t m = 0; m < pm_hat.size(); ++m)
    {
      if (!grid.Retained(m))
      {
        pm_hat[m] = 0.0;
      }
    }
    for (int j = 0; j < 3; ++j)
    {
      Synthesize(grid, grad_pm[j], [&](std::size_t m) {
        const double k = grid.DerivativeWavevector(m)[j];
        return Complex(-k * pm_hat[m].imag(), k * pm_hat[m].real());
      });
    }

    double min_rho = 1.0;
    for (std::size_t p = 0; p < size; ++p)
    {
      div_u[p] = grad_u[0][0][p] + grad_u[1][1][p] + grad_u[2][2][p];
      const double rho = 1.0 + a[p];
      min_rho = std::min(min_rho, rho);
      inv_rho[p] = 1.0 / rho;
      i_of_a[p] = a[p] / rho;
      k_of_a[p] = ph.pressure.PressureCorrection(a[p]);
    }
    ThrowIfVacuum(min_rho, ph.c0);
  }

  // (v . grad) w_j with gradient tensor gw.
  double Advect(const std::array<GridValues, 3> &v, const Tensor &gw, int j, std::size_t p) const
  {
    return v[0][p] * gw[j][0][p] + v[1][p] * gw[j][1][p] + v[2][p] * gw[j][2][p];
  }

  // n . grad B_j - d_j (n . B)
  double LinearMagnetic(const Vec3 &n, int j, std::size_t p) const
  {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
    {
      s += n[i] * grad_b[j][i][p] - n[i] * grad_b[i][j][p];
    }
    return s;
  }

  double NGradB(const Vec3 &n, int j, std::size_t p) const
  {
    return n[0] * grad_b[j][0][p] + n[1] * grad_b[j][1][p] + n[2] * grad_b[j][2][p];
  }

  double GradNDotB(const Vec3 &n, int j, std::size_t p) const
  {
    return n[0] * grad_b[0][j][p] + n[1] * grad_b[1][j][p] + n[2] * grad_b[2][j][p];
  }
};

GridWork &FillWork(const Fields &f, const Physics &ph)
{
  thread_local std::map<int, std::unique_ptr<GridWork>> pool;
  const Grid &grid = f.a.grid();
  auto &slot = pool[grid.N()];
  if (!slot)
  {
    slot = std::make_unique<GridWork>(grid);
  }
  slot->Fill(f, ph);
  return *slot;
}

SpectralScalar Back(const GridPtr &grid, const GridValues &v)
{
  return Dealias(ToCoeffs(grid, v));
}

SpectralVector Back(const GridPtr &grid, const std::array<GridValues, 3> &v)
{
  return Dealias(ToCoeffs(grid, v));
}

// f1, f3 and the consistent f4: the nonlinear remainders of the three equations.
struct Remainders
{
  SpectralScalar f1;
  SpectralVector f3;
  SpectralVector f4;
};

Remainders ComputeRemainders(GridWork &w, const GridPtr &grid, const Physics &ph)
{
  const std::size_t size = w.a.size();
  const Vec3 &n = ph.n();
  GridValues &f1 = w.out_f1;
  std::array<GridValues, 3> &f3 = w.out_f3;
  std::array<GridValues, 3> &f4 = w.out_f4;
  for (std::size_t p = 0; p < size; ++p)
  {
    const double ugrad_a =
        w.u[0][p] * w.grad_a[0][p] + w.u[1][p] * w.grad_a[1][p] + w.u[2][p] * w.grad_a[2][p];
    f1[p] = -ugrad_a - w.a[p] * w.div_u[p];
    for (int j = 0; j < 3; ++j)
    {
      const double bgrad_b = w.Advect(w.b, w.grad_b, j, p);
      f3[j][p] = w.Advect(w.b, w.grad_u, j, p) - w.b[j][p] * w.div_u[p] -
                 w.Advect(w.u, w.grad_b, j, p);
      f4[j][p] = -w.i_of_a[p] * (w.visc[j][p] + w.LinearMagnetic(n, j, p)) -
                 w.k_of_a[p] * w.grad_a[j][p] +
                 w.inv_rho[p] * (bgrad_b - w.grad_pm[j][p]) - w.Advect(w.u, w.grad_u, j, p);
    }
  }
  return Remainders{Back(grid, f1), Back(grid, f3), Back(grid, f4)};
}

Fields Tendency(const Fields &f, const Physics &ph, bool include_viscous)
{
  const GridPtr &grid_ptr = f.grid_ptr();
  const Grid &grid = *grid_ptr;
  GridWork &w = FillWork(f, ph);
  Remainders rem = ComputeRemainders(w, grid_ptr, ph);
  const Vec3 &n = ph.n();
  const Viscosities &v = ph.viscosities;
  const double lm = v.lambda + v.mu;

  Fields out{std::move(rem.f1), std::move(rem.f4), std::move(rem.f3)};
  // Linear terms, mode by mode:
  //   da/dt += -div u
  //   du/dt += n.grad B - grad(n.B) - grad a [+ mu lap u + (lambda+mu) grad div u]
  //   dB/dt += n.grad u - n div u
  // Linear terms of band-limited fields stay in band; the mask keeps roundoff there too.
  const Complex i_unit(0.0, 1.0);
  for (std::size_t m = 0; m < grid.SpectralSize(); ++m)
  {
    if (!grid.Retained(m))
    {
      out.a[m] = 0.0;
      for (int j = 0; j < 3; ++j)
      {
        out.u[j][m] = 0.0;
        out.b[j][m] = 0.0;
      }
      continue;
    }
    const Vec3 &xi = grid.DerivativeWavevector(m);
    const double n_xi = n[0] * xi[0] + n[1] * xi[1] + n[2] * xi[2];
    const Complex xi_u = xi[0] * f.u[0][m] + xi[1] * f.u[1][m] + xi[2] * f.u[2][m];
    const Complex n_b = n[0] * f.b[0][m] + n[1] * f.b[1][m] + n[2] * f.b[2][m];
    const Complex am = f.a[m];
    out.a[m] -= i_unit * xi_u;
    for (int j = 0; j < 3; ++j)
    {
      Complex du = i_unit * (n_xi * f.b[j][m] - xi[j] * (n_b + am));
      if (include_viscous)
      {
        du -= v.mu * grid.WavevectorNormSquared(m) * f.u[j][m] + lm * xi[j] * xi_u;
      }
      out.u[j][m] += du;
      out.b[j][m] += i_unit * (n_xi * f.u[j][m] - n[j] * xi_u);
    }
  }
  return out;
}

}  // namespace

void CheckAdmissible(const Fields &f, const Physics &ph)
{
  ThrowIfVacuum(MinDensity(f), ph.c0);
}

SpectralVector ViscousOperator(const SpectralVector &u, const Viscosities &visc)
{
  SpectralVector out = visc.mu * Laplacian(u);
  out.Axpy(visc.lambda + visc.mu, Gradient(Divergence(u)));
  return out;
}

Fields Rhs(const Fields &f, const Physics &ph)
{
  return Tendency(f, ph, true);
}

Fields ExplicitRhs(const Fields &f, const Physics &ph)
{
  return Tendency(f, ph, false);
}

FTerms ComputeFTerms(const Fields &f, const Physics &ph)
{
  const GridPtr &grid = f.grid_ptr();
  GridWork &w = FillWork(f, ph);
  Remainders rem = ComputeRemainders(w, grid, ph);

  const std::size_t size = w.a.size();
  const Vec3 &n = ph.n();
  const double mu = ph.viscosities.mu;
  const double lm = ph.viscosities.lambda + ph.viscosities.mu;
  const bool literal = ph.f_terms == FTermConvention::kLiteral;

  // grad I(a)
  const auto grad_i = ToGrid(Gradient(ToCoeffs(grid, w.i_of_a)));

  // Literal signs: +B grad B and +k(a) grad a in the leading group, and +B grad B inside
  // the I(a) group of f4.
  const double s_pm = literal ? 1.0 : -1.0;
  const double s_k = literal ? 1.0 : -1.0;
  const double s_f4_group = literal ? 1.0 : -1.0;

  std::array<GridValues, 3> f2, f4;
  for (int j = 0; j < 3; ++j)
  {
    f2[j].resize(size);
    f4[j].resize(size);
  }
  for (std::size_t p = 0; p < size; ++p)
  {
    for (int j = 0; j < 3; ++j)
    {
      const double ugrad_u = w.Advect(w.u, w.grad_u, j, p);
      const double bgrad_b = w.Advect(w.b, w.grad_b, j, p);
      const double lead =
          -ugrad_u + bgrad_b + s_pm * w.grad_pm[j][p] + s_k * w.k_of_a[p] * w.grad_a[j][p];
      const double gradi_gradu = grad_i[0][p] * w.grad_u[j][0][p] +
                                 grad_i[1][p] * w.grad_u[j][1][p] +
                                 grad_i[2][p] * w.grad_u[j][2][p];
      const double mag = w.NGradB(n, j, p) + bgrad_b - w.GradNDotB(n, j, p);
      f2[j][p] = lead + mu * gradi_gradu + lm * grad_i[j][p] * w.div_u[p] -
                 w.i_of_a[p] * (mag - w.grad_pm[j][p]);
      f4[j][p] = lead - w.i_of_a[p] * w.visc[j][p] -
                 w.i_of_a[p] * (mag + s_f4_group * w.grad_pm[j][p]);
    }
  }

  FTerms out;
  out.f1 = std::move(rem.f1);
  out.f2 = Back(grid, f2);
  out.f3 = std::move(rem.f3);
  out.f4 = Back(grid, f4);
  return out;
}

DerivedQuantities ComputeDerived(const Fields &f, const Vec3 &n, const Viscosities &visc)
{
  DerivedQuantities out;
  out.d = f.a + Dot(n, f.b);
  out.pu = LerayP(f.u);
  out.qu = LerayQ(f.u);
  const double inv_nu = 1.0 / visc.nu();
  out.g = out.qu;
  out.g.Axpy(-inv_nu, Gradient(InverseLaplacian(out.d)));

  SpectralScalar residual = Divergence(out.qu);
  residual -= Divergence(out.g);
  residual.Axpy(-inv_nu, out.d);
  const double scale = L2Norm(Divergence(f.u)) + inv_nu * L2Norm(out.d);
  out.identity_residual = scale > 0.0 ? L2Norm(residual) / scale : L2Norm(residual);
  return out;
}

}  // namespace tmhd
