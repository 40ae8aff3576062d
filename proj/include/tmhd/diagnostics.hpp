// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TMHD_DIAGNOSTICS_HPP
#define TMHD_DIAGNOSTICS_HPP

#include <span>
#include <string>
#include <vector>
#include "tmhd/model.hpp"

namespace tmhd
{

// Quantities that only the time stepper can observe: time integrals carried through the
// Runge-Kutta stages and the corrections applied by the last step.
struct RunMonitors
{
  double dissipation_integral = 0.0;    // int_0^t D_basic
  double directional_b_integral = 0.0;  // int_0^t ||n.grad B||^2_{H^{r+3}}
  double div_b_pre = 0.0;               // ||div B||_{L2} before the last projection
  double div_b_post = 0.0;              // and after it
  double step_mass_drift = 0.0;         // mean(a) removed by the last step
  Vec3 step_mean_b_drift{};             // mean(B) removed by the last step
};

struct DiagnosticsConfig
{
  // Sobolev orders for the ||(a,u,B)||_{H^s} columns.
  std::vector<double> s_list;
  // Weight of the quadratic part of the Lyapunov functional.
  double lyapunov_gamma = 32.0;
  bool oversample_linf = false;
};

// {0, 3, r+4, ceil(4r+7)}.
std::vector<double> DefaultSobolevList(double r);

struct DiagnosticsRecord
{
  long step = 0;
  double t = 0.0;
  std::vector<double> norms;  // ||(a,u,B)||_{H^s}, aligned with DiagnosticsConfig::s_list
  double e_basic = 0.0;
  double d_basic = 0.0;
  double y_inf = 0.0;
  double dirb_hr3 = 0.0;  // ||n.grad B||_{H^{r+3}}
  double u_hr5 = 0.0;     // ||u||_{H^{r+5}}
  double cross_term = 0.0;
  double d_hr4 = 0.0;
  double gradg_hr4 = 0.0;
  double lyap_e = 0.0;
  double lyap_d = 0.0;
  double e_margin = 0.0;  // E - ||(d,u,B,G)||^2_{H^{r+4}}
  double b_l2 = 0.0;
  double gradb_l2 = 0.0;
  double b_h3 = 0.0;
  double mass_drift = 0.0;  // int rho - 1
  Vec3 momentum{};          // int rho u
  Vec3 mean_b{};            // int B
  RunMonitors monitors;
};

std::vector<std::string> RecordColumnNames(const DiagnosticsConfig &cfg);
std::vector<double> RecordValues(const DiagnosticsRecord &rec);

// Every functional of one snapshot.
DiagnosticsRecord ComputeRecord(const State &state, const Physics &ph,
                                const DiagnosticsConfig &cfg, const RunMonitors &monitors,
                                long step);

// int (2 g(rho) + rho |u|^2 + |B|^2) / 2, evaluated on the collocation grid.
double BasicEnergy(const Fields &f, const PressureLaw &pl);

// mu ||grad u||^2 + (lambda + mu) ||div u||^2.
double BasicDissipation(const Fields &f, const Viscosities &visc);

// ||n.grad B||^2_{H^{r+3}}.
double DirectionalMagneticNormSquared(const Fields &f, const BackgroundField &bg);

//   ||(grad a, grad u, grad B)||_inf + ||(grad a, grad u, grad B)||_inf^2 + ||(a,B)||_inf^2
//   + ||a||_inf^2 ||B||_inf^2 + ||B||_inf^2 ||grad B||_inf^2
// with pointwise Euclidean norms of the stacked components.
double YInfinity(const Fields &f, bool oversample = false);

// <P u, n.grad B> in the H^{r+3} pairing.
double CrossTerm(const Fields &f, const BackgroundField &bg);

struct LyapunovPair
{
  double e = 0.0;
  double d = 0.0;
  double e_slope = 0.0;  // ||a||^2 + ||(d,u,B,G)||^2 in H^{r+4}: dE/dgamma
  double d_slope = 0.0;  // dD/dgamma
  double cross = 0.0;
  double margin = 0.0;   // E - ||(d,u,B,G)||^2_{H^{r+4}}
  double d_hr4 = 0.0;
  double gradg_hr4 = 0.0;
};

// Throws std::invalid_argument unless gamma > 1.
LyapunovPair ComputeLyapunov(const Fields &f, const BackgroundField &bg,
                             const Viscosities &visc, double gamma);

struct EnergyResidual
{
  std::vector<double> t;         // interval midpoints
  std::vector<double> residual;  // dE/dt + mean D over each interval
  double max_abs = 0.0;
  double normalized = 0.0;  // max_abs / max D_basic
};

// Uses the stepper-integrated dissipation for the interval mean of D_basic.
EnergyResidual BasicEnergyResidual(std::span<const double> t, std::span<const double> e_basic,
                                   std::span<const double> d_basic,
                                   std::span<const double> dissipation_integral);
EnergyResidual BasicEnergyResidual(const std::vector<DiagnosticsRecord> &records);

struct DecayFit
{
  double alpha = 0.0;  // value ~ C (1+t)^-alpha
  double log_prefactor = 0.0;
  double residual = 0.0;  // RMS of the log-space residuals
  std::size_t samples = 0;
};

// Least squares of log(value) against log(1+t) on samples with t0 <= t <= t1.
// Throws InsufficientSamples below 10 samples and NonpositiveValues on values <= 0.
DecayFit FitDecay(std::span<const double> t, std::span<const double> value, double t0,
                  double t1);

struct HiddenDissipationReport
{
  bool vacuous = false;  // no sample with positive ||u||_{H^{r+5}}
  double c_hat = 0.0;    // max LHS+ / RHS; +inf if LHS > 0 where RHS = 0
  std::vector<double> t, lhs, rhs;
  double cumulative_total = 0.0;  // int ||n.grad B||^2_{H^{r+3}} over the window
  double final_fraction = 0.0;    // share contributed by the last 20% of the window
  bool plateau = false;           // final_fraction < 0.05 (or nothing accumulated)
};

// LHS(t) = ||n.grad B||^2_{H^{r+3}} - dX/dt (centered differences),
// RHS(t) = ||u||^2_{H^{r+5}}.
HiddenDissipationReport AuditHiddenDissipation(std::span<const double> t,
                                               std::span<const double> dirb_hr3,
                                               std::span<const double> cross_term,
                                               std::span<const double> u_hr5,
                                               std::span<const double> dirb_integral);
HiddenDissipationReport AuditHiddenDissipation(const std::vector<DiagnosticsRecord> &records);

}  // namespace tmhd

#endif  // TMHD_DIAGNOSTICS_HPP
