// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TMHD_MODEL_HPP
#define TMHD_MODEL_HPP

#include <span>
#include <vector>
#include "tmhd/diophantine.hpp"
#include "tmhd/field.hpp"

namespace tmhd
{

//
// Isentropic closure P(rho) = rho^gamma / gamma, normalized so that P'(1) = 1.
//
class PressureLaw
{
public:
  explicit PressureLaw(double adiabatic_exponent = 2.0);

  double gamma() const { return gamma_; }
  double Pressure(double rho) const;
  double SoundSpeedSquared(double rho) const;  // P'(rho)

  // k(a) = P'(1+a)/(1+a) - 1.
  double PressureCorrection(double a) const;

  // g(rho) = rho * int_1^rho (P(tau) - P(1)) / tau^2 dtau, closed form evaluated in the
  // perturbation a = rho - 1 to avoid cancellation near rho = 1.
  double PotentialEnergy(double a) const;

  // Same integral by adaptive Gauss-Kronrod quadrature.
  double PotentialEnergyQuadrature(double rho) const;

private:
  double gamma_;
};

// Throws NonpositiveDensity if some rho <= 0.
std::vector<double> PotentialEnergyDensity(const PressureLaw &pl, std::span<const double> rho);

struct Viscosities
{
  double mu = 0.1;
  double lambda = 0.0;

  double nu() const { return lambda + 2.0 * mu; }

  // Throws std::invalid_argument unless mu > 0 and lambda + 2 mu > 0.
  void Validate() const;
};

// Sign conventions for f2/f4. kLiteral takes +grad(|B|^2/2) and +k(a) grad a in the
// leading group and +grad(|B|^2/2) inside the I(a) group of f4. kConsistent uses the
// signs implied by the momentum equation, under which
//   du/dt = mu lap u + (lambda+mu) grad div u - grad a - grad(n.B) + n.grad B + f4
// holds identically.
enum class FTermConvention
{
  kLiteral,
  kConsistent,
};

struct Physics
{
  BackgroundField background;
  PressureLaw pressure;
  Viscosities viscosities;
  // Density floor parameter: the state is admissible while min(1 + a) >= c0 / 2.
  double c0 = 0.5;
  FTermConvention f_terms = FTermConvention::kLiteral;

  const Vec3 &n() const { return background.n; }
};

// The perturbation triple (a, u, B) with rho = 1 + a and total field n + B.
struct Fields
{
  SpectralScalar a;
  SpectralVector u;
  SpectralVector b;

  static Fields Zero(const GridPtr &grid);

  const GridPtr &grid_ptr() const { return a.grid_ptr(); }

  Fields &operator+=(const Fields &o);
  Fields &operator*=(double s);
  Fields &Axpy(double s, const Fields &o);
};

struct State : Fields
{
  double t = 0.0;

  State() = default;
  State(Fields f, double time) : Fields(std::move(f)), t(time) {}
};

// min over collocation points of 1 + a.
double MinDensity(const Fields &f);

// Throws VacuumApproach if min(1 + a) < c0 / 2.
void CheckAdmissible(const Fields &f, const Physics &ph);

// mu lap u + (lambda + mu) grad div u.
SpectralVector ViscousOperator(const SpectralVector &u, const Viscosities &visc);

// Full tendencies (da/dt, du/dt, dB/dt). Products are formed on the grid and every
// tendency is dealiased.
Fields Rhs(const Fields &f, const Physics &ph);

// Rhs minus the constant-coefficient viscous operator acting on u.
Fields ExplicitRhs(const Fields &f, const Physics &ph);

struct FTerms
{
  SpectralScalar f1;
  SpectralVector f2;
  SpectralVector f3;
  SpectralVector f4;
};

FTerms ComputeFTerms(const Fields &f, const Physics &ph);

struct DerivedQuantities
{
  SpectralScalar d;   // a + n.B
  SpectralVector g;   // Qu - nu^-1 lap^-1 grad d
  SpectralVector pu;  // P u
  SpectralVector qu;  // Q u
  // L2 norm of div(Qu) - div(G) - d/nu relative to ||div u|| + ||d||/nu.
  double identity_residual = 0.0;
};

DerivedQuantities ComputeDerived(const Fields &f, const Vec3 &n, const Viscosities &visc);

}  // namespace tmhd

#endif  // TMHD_MODEL_HPP
