// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include "tmhd/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include "tmhd/errors.hpp"
#include "tmhd/spectral_ops.hpp"

namespace tmhd
{

namespace
{

// Stability region of classical RK4 on the negative real axis.
constexpr double kRk4RealLimit = 2.78;

bool AllFinite(const Fields &f)
{
  auto finite = [](const SpectralScalar &s) {
    for (const Complex &c : s.coeffs())
    {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      {
        return false;
      }
    }
    return true;
  };
  return finite(f.a) && finite(f.u[0]) && finite(f.u[1]) && finite(f.u[2]) &&
         finite(f.b[0]) && finite(f.b[1]) && finite(f.b[2]);
}

// Deterministic uniform draw on [-1, 1) from the top 53 bits.
double Uniform(std::uint64_t bits)
{
  return 2.0 * std::ldexp(static_cast<double>(bits >> 11), -53) - 1.0;
}

// One representative of each {k, -k} pair with max |k_i| <= kmax.
std::vector<Index3> HalfBand(int kmax)
{
  std::vector<Index3> out;
  for (int k1 = 0; k1 <= kmax; ++k1)
  {
    for (int k2 = -kmax; k2 <= kmax; ++k2)
    {
      for (int k3 = -kmax; k3 <= kmax; ++k3)
      {
        if (k1 > 0 || (k1 == 0 && k2 > 0) || (k1 == 0 && k2 == 0 && k3 > 0))
        {
          out.push_back({k1, k2, k3});
        }
      }
    }
  }
  return out;
}

class Draw
{
public:
  explicit Draw(unsigned long long seed) : rng_(seed) {}
  Complex operator()()
  {
    const double re = Uniform(rng_());
    const double im = Uniform(rng_());
    return {re, im};
  }

private:
  std::mt19937_64 rng_;
};

double H3NormSquared(const Fields &f)
{
  return SobolevNormSquared(f.a, 3.0) + SobolevNormSquared(f.u, 3.0) +
         SobolevNormSquared(f.b, 3.0);
}

void CheckBand(const Grid &grid, int kmax)
{
  if (kmax < 1 || kmax > grid.DealiasCutoff())
  {
    std::ostringstream msg;
    msg << "init_kmax must lie in [1, " << grid.DealiasCutoff() << "], got " << kmax;
    throw ConfigError(msg.str());
  }
}

State MakeRandom(const InitialConfig &cfg, const GridPtr &grid)
{
  CheckBand(*grid, cfg.kmax);
  Draw draw(cfg.seed);
  Fields f = Fields::Zero(grid);
  for (const Index3 &k : HalfBand(cfg.kmax))
  {
    f.a.SetMode(k, draw());
    for (int j = 0; j < 3; ++j)
    {
      f.u[j].SetMode(k, draw());
    }
    for (int j = 0; j < 3; ++j)
    {
      f.b[j].SetMode(k, draw());
    }
  }
  f.b = LerayP(f.b);

  // Scaling (a, u, B) by s turns int (1+a) u = mean(u) + <a, u> into s mean(u) + s^2 <a, u>,
  // so the momentum is cancelled by the mean m = -s^2 <a, u>. The H^3 norm then obeys
  // s^2 |f|^2 + s^4 |<a, u>|^2 = eps^2, a quadratic in s^2.
  Vec3 c{};
  double c2 = 0.0;
  for (int j = 0; j < 3; ++j)
  {
    c[j] = HsInner(f.a, f.u[j], 0.0);
    c2 += c[j] * c[j];
  }
  const double f2 = H3NormSquared(f);
  const double eps2 = cfg.epsilon * cfg.epsilon;
  const double s2 =
      c2 > 0.0 ? 2.0 * eps2 / (f2 + std::sqrt(f2 * f2 + 4.0 * c2 * eps2)) : eps2 / f2;
  f *= std::sqrt(s2);
  for (int j = 0; j < 3; ++j)
  {
    f.u[j][0] = Complex(-s2 * c[j], 0.0);
  }
  return State(std::move(f), 0.0);
}

State MakeResonant(const InitialConfig &cfg, const GridPtr &grid, const Vec3 &n)
{
  CheckBand(*grid, cfg.kmax);
  Draw draw(cfg.seed);
  Fields f = Fields::Zero(grid);
  bool found = false;
  for (const Index3 &k : HalfBand(cfg.kmax))
  {
    if (n[0] * k[0] + n[1] * k[1] + n[2] * k[2] != 0.0)
    {
      continue;
    }
    // k x n is orthogonal to k (solenoidal) and to n (no n.B component).
    Vec3 e{k[1] * n[2] - k[2] * n[1], k[2] * n[0] - k[0] * n[2], k[0] * n[1] - k[1] * n[0]};
    const double len = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    const Complex amp = draw();
    for (int j = 0; j < 3; ++j)
    {
      f.b[j].SetMode(k, amp * (e[j] / len));
    }
    found = true;
  }
  if (!found)
  {
    throw ConfigError("resonant preset: no mode with n.k = 0 and max|k_i| <= init_kmax");
  }
  f *= cfg.epsilon / std::sqrt(H3NormSquared(f));
  return State(std::move(f), 0.0);
}

}  // namespace

Scheme ParseScheme(const std::string &name)
{
  if (name == "rk4_explicit" || name == "rk4")
  {
    return Scheme::kRk4Explicit;
  }
  if (name == "imex_cn")
  {
    return Scheme::kImexCn;
  }
  if (name == "ifrk4")
  {
    return Scheme::kIfRk4;
  }
  throw ConfigError("scheme: unknown value '" + name + "' (rk4_explicit, imex_cn, ifrk4)");
}

std::string SchemeName(Scheme scheme)
{
  switch (scheme)
  {
    case Scheme::kRk4Explicit:
      return "rk4_explicit";
    case Scheme::kImexCn:
      return "imex_cn";
    case Scheme::kIfRk4:
      return "ifrk4";
  }
  return "";
}

Preset ParsePreset(const std::string &name)
{
  if (name == "random")
  {
    return Preset::kRandom;
  }
  if (name == "viscous_shear")
  {
    return Preset::kViscousShear;
  }
  if (name == "zero" || name == "steady")
  {
    return Preset::kZero;
  }
  if (name == "resonant")
  {
    return Preset::kResonant;
  }
  throw ConfigError("preset: unknown value '" + name +
                    "' (random, viscous_shear, zero, steady, resonant)");
}

std::string PresetName(Preset preset)
{
  switch (preset)
  {
    case Preset::kRandom:
      return "random";
    case Preset::kViscousShear:
      return "viscous_shear";
    case Preset::kZero:
      return "zero";
    case Preset::kResonant:
      return "resonant";
  }
  return "";
}

void CheckStability(const Fields &f, const Physics &ph, const StepperConfig &cfg, double dt)
{
  const Grid &grid = f.a.grid();
  const Viscosities &v = ph.viscosities;
  const double visc_max = std::max(v.mu, v.nu());
  std::ostringstream msg;

  if (cfg.scheme == Scheme::kRk4Explicit)
  {
    const double dx = grid.Spacing();
    const double bound = cfg.cfl_viscous * dx * dx / visc_max;
    if (dt > bound)
    {
      msg << "dt = " << dt << " exceeds the viscous CFL bound " << bound;
      throw StabilityViolation(msg.str());
    }
    const double kc = grid.DealiasCutoff();
    const double xi2_max = 3.0 * 4.0 * std::numbers::pi * std::numbers::pi * kc * kc;
    if (visc_max * xi2_max * dt > kRk4RealLimit)
    {
      msg << "dt = " << dt << " exceeds the RK4 viscous spectral bound "
          << kRk4RealLimit / (visc_max * xi2_max);
      throw StabilityViolation(msg.str());
    }
  }

  const GridValues a = ToGrid(f.a);
  double max_c2 = 0.0;
  for (double x : a)
  {
    max_c2 = std::max(max_c2, ph.pressure.SoundSpeedSquared(1.0 + x));
  }
  const auto u = ToGrid(f.u);
  const auto b = ToGrid(f.b);
  const double u_inf = LinfNorm(u);
  const double b_inf = LinfNorm(b);
  const Vec3 &n = ph.n();
  const double n_len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  const double c_fast = std::sqrt(max_c2 + (n_len + b_inf) * (n_len + b_inf));
  const double courant = dt * (c_fast + u_inf) * 2.0 * grid.DealiasCutoff();
  if (!(courant <= cfg.cfl_advective))
  {
    msg << "dt = " << dt << " gives advective Courant number " << courant << " > "
        << cfg.cfl_advective;
    throw StabilityViolation(msg.str());
  }
}

Stepper::Stepper(const Physics &ph, const StepperConfig &cfg) : ph_(ph), cfg_(cfg)
{
  ph_.viscosities.Validate();
  if (!(cfg_.dt > 0.0))
  {
    throw ConfigError("dt must be > 0");
  }
  if (cfg_.project_b_every < 1)
  {
    throw ConfigError("project_b_every must be >= 1");
  }
}

const Stepper::Factors &Stepper::FactorsFor(const Grid &grid, double tau)
{
  auto it = factors_.find(tau);
  if (it != factors_.end())
  {
    return *it->second;
  }
  auto fac = std::make_unique<Factors>();
  const std::size_t size = grid.SpectralSize();
  for (auto *v : {&fac->exp_p, &fac->exp_q, &fac->cn_p, &fac->cn_q, &fac->implicit_p,
                  &fac->implicit_q})
  {
    v->resize(size);
  }
  const Viscosities &v = ph_.viscosities;
  for (std::size_t m = 0; m < size; ++m)
  {
    const Vec3 &xi = grid.DerivativeWavevector(m);
    const double xi_e2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    const double lp = -v.mu * grid.WavevectorNormSquared(m);
    const double lq = lp - (v.lambda + v.mu) * xi_e2;
    fac->exp_p[m] = std::exp(lp * tau);
    fac->exp_q[m] = std::exp(lq * tau);
    fac->implicit_p[m] = 1.0 / (1.0 - 0.5 * tau * lp);
    fac->implicit_q[m] = 1.0 / (1.0 - 0.5 * tau * lq);
    fac->cn_p[m] = (1.0 + 0.5 * tau * lp) * fac->implicit_p[m];
    fac->cn_q[m] = (1.0 + 0.5 * tau * lq) * fac->implicit_q[m];
  }
  return *factors_.emplace(tau, std::move(fac)).first->second;
}

void Stepper::ApplyPropagator(SpectralVector &u, const std::vector<double> &p_factor,
                              const std::vector<double> &q_factor) const
{
  const Grid &grid = u.grid();
  for (std::size_t m = 0; m < grid.SpectralSize(); ++m)
  {
    const Vec3 &xi = grid.DerivativeWavevector(m);
    const double xi_e2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (xi_e2 == 0.0)
    {
      for (int j = 0; j < 3; ++j)
      {
        u[j][m] *= p_factor[m];
      }
      continue;
    }
    const Complex proj = (xi[0] * u[0][m] + xi[1] * u[1][m] + xi[2] * u[2][m]) / xi_e2;
    for (int j = 0; j < 3; ++j)
    {
      const Complex q = xi[j] * proj;
      u[j][m] = p_factor[m] * (u[j][m] - q) + q_factor[m] * q;
    }
  }
}

Stepper::Slope Stepper::Evaluate(const Fields &f, bool include_viscous) const
{
  Slope s;
  s.f = include_viscous ? Rhs(f, ph_) : ExplicitRhs(f, ph_);
  s.dissipation = BasicDissipation(f, ph_.viscosities);
  s.directional_b = DirectionalMagneticNormSquared(f, ph_.background);
  return s;
}

void Stepper::StepRk4(State &s, double h)
{
  const Slope k1 = Evaluate(s, true);
  Fields y = s;
  y.Axpy(0.5 * h, k1.f);
  const Slope k2 = Evaluate(y, true);
  y = s;
  y.Axpy(0.5 * h, k2.f);
  const Slope k3 = Evaluate(y, true);
  y = s;
  y.Axpy(h, k3.f);
  const Slope k4 = Evaluate(y, true);

  s.Axpy(h / 6.0, k1.f);
  s.Axpy(h / 3.0, k2.f);
  s.Axpy(h / 3.0, k3.f);
  s.Axpy(h / 6.0, k4.f);
  monitors_.dissipation_integral +=
      h / 6.0 * (k1.dissipation + 2.0 * k2.dissipation + 2.0 * k3.dissipation + k4.dissipation);
  monitors_.directional_b_integral +=
      h / 6.0 *
      (k1.directional_b + 2.0 * k2.directional_b + 2.0 * k3.directional_b + k4.directional_b);
}

void Stepper::StepImex(State &s, double h)
{
  const Factors &fac = FactorsFor(s.a.grid(), h);
  // Predictor: y* = (1 - hL/2)^-1 [(1 + hL/2) y + h N(y)].
  const Slope k1 = Evaluate(s, false);
  Fields pred = s;
  ApplyPropagator(pred.u, fac.cn_p, fac.cn_q);
  Fields base = pred;
  SpectralVector push = k1.f.u;
  ApplyPropagator(push, fac.implicit_p, fac.implicit_q);
  pred.a.Axpy(h, k1.f.a);
  pred.b.Axpy(h, k1.f.b);
  pred.u.Axpy(h, push);

  // Corrector: average the explicit tendencies.
  const Slope k2 = Evaluate(pred, false);
  SpectralVector mean_u = 0.5 * (k1.f.u + k2.f.u);
  ApplyPropagator(mean_u, fac.implicit_p, fac.implicit_q);
  base.a.Axpy(0.5 * h, k1.f.a);
  base.a.Axpy(0.5 * h, k2.f.a);
  base.b.Axpy(0.5 * h, k1.f.b);
  base.b.Axpy(0.5 * h, k2.f.b);
  base.u.Axpy(h, mean_u);
  static_cast<Fields &>(s) = std::move(base);

  monitors_.dissipation_integral += 0.5 * h * (k1.dissipation + k2.dissipation);
  monitors_.directional_b_integral += 0.5 * h * (k1.directional_b + k2.directional_b);
}

void Stepper::StepIfRk4(State &s, double h)
{
  const Factors &full = FactorsFor(s.a.grid(), h);
  const Factors &half = FactorsFor(s.a.grid(), 0.5 * h);
  auto propagate = [&](Fields &f, const Factors &fac) {
    ApplyPropagator(f.u, fac.exp_p, fac.exp_q);
  };

  const Slope k1 = Evaluate(s, false);

  Fields s2 = s;
  s2.Axpy(0.5 * h, k1.f);
  propagate(s2, half);
  const Slope k2 = Evaluate(s2, false);

  Fields eu_half = s;
  propagate(eu_half, half);
  Fields s3 = eu_half;
  s3.Axpy(0.5 * h, k2.f);
  const Slope k3 = Evaluate(s3, false);

  Fields eu_full = s;
  propagate(eu_full, full);
  Fields ek3 = k3.f;
  propagate(ek3, half);
  Fields s4 = eu_full;
  s4.Axpy(h, ek3);
  const Slope k4 = Evaluate(s4, false);

  Fields ek1 = k1.f;
  propagate(ek1, full);
  Fields mid = k2.f;
  mid += k3.f;
  propagate(mid, half);
  Fields next = std::move(eu_full);
  next.Axpy(h / 6.0, ek1);
  next.Axpy(h / 3.0, mid);
  next.Axpy(h / 6.0, k4.f);
  static_cast<Fields &>(s) = std::move(next);

  monitors_.dissipation_integral +=
      h / 6.0 * (k1.dissipation + 2.0 * k2.dissipation + 2.0 * k3.dissipation + k4.dissipation);
  monitors_.directional_b_integral +=
      h / 6.0 *
      (k1.directional_b + 2.0 * k2.directional_b + 2.0 * k3.directional_b + k4.directional_b);
}

void Stepper::Step(State &state, double h)
{
  if (h <= 0.0)
  {
    h = cfg_.dt;
  }
  CheckStability(state, ph_, cfg_, h);
  switch (cfg_.scheme)
  {
    case Scheme::kRk4Explicit:
      StepRk4(state, h);
      break;
    case Scheme::kImexCn:
      StepImex(state, h);
      break;
    case Scheme::kIfRk4:
      StepIfRk4(state, h);
      break;
  }
  state.t += h;
  ++steps_;
  if (!AllFinite(state))
  {
    throw NumericalFailure("non-finite coefficients");
  }

  monitors_.div_b_pre = L2Norm(Divergence(state.b));
  if (steps_ % cfg_.project_b_every == 0)
  {
    state.b = LerayP(state.b);
  }
  monitors_.div_b_post = L2Norm(Divergence(state.b));

  monitors_.step_mass_drift = state.a.Mean();
  state.a[0] = Complex(0.0, 0.0);
  monitors_.step_mean_b_drift = state.b.Mean();
  for (int j = 0; j < 3; ++j)
  {
    state.b[j][0] = Complex(0.0, 0.0);
  }
  CheckAdmissible(state, ph_);
}

namespace
{

[[noreturn]] void RethrowWithTime(double t)
{
  std::ostringstream suffix;
  suffix.precision(17);
  suffix << " (at t = " << t << ")";
  try
  {
    throw;
  }
  catch (const VacuumApproach &e)
  {
    throw VacuumApproach(e.what() + suffix.str());
  }
  catch (const NonpositiveDensity &e)
  {
    throw NonpositiveDensity(e.what() + suffix.str());
  }
  catch (const StabilityViolation &e)
  {
    throw StabilityViolation(e.what() + suffix.str());
  }
  catch (const NumericalFailure &e)
  {
    throw NumericalFailure(e.what() + suffix.str());
  }
}

}  // namespace

Trajectory Run(State initial, const StepperConfig &cfg, const Physics &ph,
               const DiagnosticsConfig &dcfg, const DiagnosticsSink &sink, bool keep_states)
{
  if (cfg.snapshot_every < 1)
  {
    throw ConfigError("snapshot_every must be >= 1");
  }
  if (cfg.t_end < initial.t)
  {
    throw ConfigError("t_end precedes the initial time");
  }
  Stepper stepper(ph, cfg);
  Trajectory traj;
  State state = std::move(initial);
  const double t0 = state.t;
  // Steps of exactly dt, with a trailing shorter step when dt does not divide the span.
  const double span = cfg.t_end - t0;
  const long full_steps = static_cast<long>(std::floor(span / cfg.dt * (1.0 + 1e-12)));
  const double remainder = span - full_steps * cfg.dt;
  const bool tail = remainder > 1e-9 * cfg.dt;
  const long nsteps = full_steps + (tail ? 1 : 0);

  auto emit = [&](long step) {
    DiagnosticsRecord rec = ComputeRecord(state, ph, dcfg, stepper.monitors(), step);
    if (sink)
    {
      sink(state, stepper.monitors(), rec);
    }
    traj.records.push_back(std::move(rec));
    if (keep_states)
    {
      traj.states.push_back(state);
    }
  };

  try
  {
    CheckAdmissible(state, ph);
    emit(0);
    for (long step = 1; step <= nsteps; ++step)
    {
      const double h = (tail && step == nsteps) ? remainder : cfg.dt;
      stepper.Step(state, h);
      if (step == nsteps)
      {
        state.t = cfg.t_end;
      }
      if (step % cfg.snapshot_every == 0 || step == nsteps)
      {
        emit(step);
      }
    }
  }
  catch (const NumericalFailure &)
  {
    RethrowWithTime(state.t);
  }
  return traj;
}

State MakeInitial(const InitialConfig &cfg, const GridPtr &grid, const Vec3 &n)
{
  if (cfg.epsilon < 0.0)
  {
    throw ConfigError("epsilon must be >= 0");
  }
  if (cfg.epsilon == 0.0 || cfg.preset == Preset::kZero)
  {
    return State(Fields::Zero(grid), 0.0);
  }
  switch (cfg.preset)
  {
    case Preset::kRandom:
      return MakeRandom(cfg, grid);
    case Preset::kResonant:
      return MakeResonant(cfg, grid, n);
    case Preset::kViscousShear:
    {
      Fields f = Fields::Zero(grid);
      // eps sin(2 pi x1) = eps (e^{i 2 pi x1} - e^{-i 2 pi x1}) / 2i
      f.u[1].SetMode({1, 0, 0}, Complex(0.0, -0.5 * cfg.epsilon));
      return State(std::move(f), 0.0);
    }
    case Preset::kZero:
      break;
  }
  return State(Fields::Zero(grid), 0.0);
}

}  // namespace tmhd
