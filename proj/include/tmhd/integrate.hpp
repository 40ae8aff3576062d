// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TMHD_INTEGRATE_HPP
#define TMHD_INTEGRATE_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>
#include "tmhd/diagnostics.hpp"
#include "tmhd/model.hpp"

namespace tmhd
{

enum class Scheme
{
  kRk4Explicit,  // classical four-stage Runge-Kutta on the full tendency
  kImexCn,       // Crank-Nicolson on the viscous operator, Heun on the rest
  kIfRk4,        // integrating-factor (Lawson) RK4, viscous operator solved exactly
};

// "rk4_explicit", "imex_cn", "ifrk4". Throws ConfigError on unknown names.
Scheme ParseScheme(const std::string &name);
std::string SchemeName(Scheme scheme);

struct StepperConfig
{
  Scheme scheme = Scheme::kIfRk4;
  double dt = 5e-3;
  double cfl_advective = 0.4;
  double cfl_viscous = 0.4;
  double t_end = 50.0;
  int project_b_every = 1;
  int snapshot_every = 2;
};

// Largest stable dt limits for a state. Throws StabilityViolation when dt exceeds any
// bound that applies to the scheme:
//   explicit viscous:  dt <= cfl_viscous dx^2 / max(mu, nu)  and
//                      max(mu, nu) |xi|^2_max dt <= 2.78 over retained modes (rk4_explicit)
//   advective:         dt (c_fast + |u|_inf) 2 k_c <= cfl_advective  (all schemes)
// where c_fast = sqrt(max P'(rho) + (|n| + |B|_inf)^2) and k_c is the dealiasing cutoff.
void CheckStability(const Fields &f, const Physics &ph, const StepperConfig &cfg, double dt);

class Stepper
{
public:
  Stepper(const Physics &ph, const StepperConfig &cfg);

  // Advances by h (defaults to cfg.dt), then projects B, removes the mean drift of a
  // and B, and updates the monitors.
  void Step(State &state, double h = 0.0);

  const RunMonitors &monitors() const { return monitors_; }
  void set_monitors(const RunMonitors &m) { monitors_ = m; }
  long steps_taken() const { return steps_; }

private:
  // Per-mode multipliers of the viscous operator for one time increment.
  struct Factors
  {
    std::vector<double> exp_p, exp_q;          // exp(L tau) on the P and Q parts
    std::vector<double> cn_p, cn_q;            // (1 + tau L / 2) / (1 - tau L / 2)
    std::vector<double> implicit_p, implicit_q;  // 1 / (1 - tau L / 2)
  };
  const Factors &FactorsFor(const Grid &grid, double tau);

  // Tendency of the stepped variables plus the two accumulated integrands.
  struct Slope
  {
    Fields f;
    double dissipation = 0.0;
    double directional_b = 0.0;
  };
  Slope Evaluate(const Fields &f, bool include_viscous) const;

  void StepRk4(State &s, double h);
  void StepImex(State &s, double h);
  void StepIfRk4(State &s, double h);
  void ApplyPropagator(SpectralVector &u, const std::vector<double> &p_factor,
                       const std::vector<double> &q_factor) const;

  Physics ph_;
  StepperConfig cfg_;
  RunMonitors monitors_;
  long steps_ = 0;
  std::map<double, std::unique_ptr<Factors>> factors_;
};

struct Trajectory
{
  std::vector<DiagnosticsRecord> records;
  std::vector<State> states;  // filled only when requested
};

using DiagnosticsSink =
    std::function<void(const State &, const RunMonitors &, const DiagnosticsRecord &)>;

// Integrates to cfg.t_end (the last step is shortened to land on it) and emits a record
// at step 0, every snapshot_every steps and at the final time. Numerical failures are
// rethrown with the offending time in the message.
Trajectory Run(State initial, const StepperConfig &cfg, const Physics &ph,
               const DiagnosticsConfig &dcfg, const DiagnosticsSink &sink = {},
               bool keep_states = false);

enum class Preset
{
  kRandom,        // band-limited random perturbation with the conservation constraints
  kViscousShear,  // u = eps (0, sin 2 pi x1, 0), a = B = 0
  kZero,          // the equilibrium itself
  kResonant,      // B on modes with n.k = 0, a = u = 0
};

// "random", "viscous_shear", "zero" (alias "steady"), "resonant".
Preset ParsePreset(const std::string &name);
std::string PresetName(Preset preset);

struct InitialConfig
{
  Preset preset = Preset::kRandom;
  double epsilon = 1e-2;
  unsigned long long seed = 1;
  int kmax = 1;  // modes with max_i |k_i| <= kmax are populated
};

// Random and resonant presets are scaled so that ||(a,u,B)||_{H^3} = epsilon, with
// mean(a) = mean(B) = 0, div B = 0 and int (1+a) u = 0. Throws ConfigError if the
// resonant preset finds no mode with n.k = 0 in the band.
State MakeInitial(const InitialConfig &cfg, const GridPtr &grid, const Vec3 &n);

}  // namespace tmhd

#endif  // TMHD_INTEGRATE_HPP
