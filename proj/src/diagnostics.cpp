// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include "tmhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>
#include "tmhd/errors.hpp"
#include "tmhd/spectral_ops.hpp"

namespace tmhd
{

namespace
{

std::string FormatOrder(double s)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", s);
  return buf;
}

double MeanOf(const GridValues &v)
{
  // Pairwise-free plain sum; fixed order keeps results bitwise reproducible.
  double s = 0.0;
  for (double x : v)
  {
    s += x;
  }
  return s / static_cast<double>(v.size());
}

struct GridFields
{
  GridValues a;
  std::array<GridValues, 3> u, b;
  std::vector<GridValues> grad_a, grad_u, grad_b;

  explicit GridFields(const Fields &f)
  {
    a = ToGrid(f.a);
    u = ToGrid(f.u);
    b = ToGrid(f.b);
    for (int i = 0; i < 3; ++i)
    {
      grad_a.push_back(ToGrid(Derivative(f.a, i)));
    }
    for (int j = 0; j < 3; ++j)
    {
      for (int i = 0; i < 3; ++i)
      {
        grad_u.push_back(ToGrid(Derivative(f.u[j], i)));
        grad_b.push_back(ToGrid(Derivative(f.b[j], i)));
      }
    }
  }
};

double YInfinityFromGrid(const GridFields &g)
{
  std::vector<GridValues> grads;
  grads.reserve(21);
  grads.insert(grads.end(), g.grad_a.begin(), g.grad_a.end());
  grads.insert(grads.end(), g.grad_u.begin(), g.grad_u.end());
  grads.insert(grads.end(), g.grad_b.begin(), g.grad_b.end());
  const double grad_all = LinfNorm(grads);

  const std::vector<GridValues> ab = {g.a, g.b[0], g.b[1], g.b[2]};
  const double ab_inf = LinfNorm(ab);
  const double a_inf = LinfNorm(std::span<const GridValues>(&g.a, 1));
  const double b_inf = LinfNorm(g.b);
  const double gradb_inf = LinfNorm(g.grad_b);

  return grad_all + grad_all * grad_all + ab_inf * ab_inf + a_inf * a_inf * b_inf * b_inf +
         b_inf * b_inf * gradb_inf * gradb_inf;
}

double BasicEnergyFromGrid(const GridFields &g, const PressureLaw &pl)
{
  GridValues density(g.a.size());
  for (std::size_t p = 0; p < g.a.size(); ++p)
  {
    const double rho = 1.0 + g.a[p];
    if (!(rho > 0.0))
    {
      throw NonpositiveDensity("basic energy needs rho > 0");
    }
    const double uu = g.u[0][p] * g.u[0][p] + g.u[1][p] * g.u[1][p] + g.u[2][p] * g.u[2][p];
    const double bb = g.b[0][p] * g.b[0][p] + g.b[1][p] * g.b[1][p] + g.b[2][p] * g.b[2][p];
    density[p] = pl.PotentialEnergy(g.a[p]) + 0.5 * rho * uu + 0.5 * bb;
  }
  return MeanOf(density);
}

}  // namespace

std::vector<double> DefaultSobolevList(double r)
{
  return {0.0, 3.0, r + 4.0, std::ceil(4.0 * r + 7.0)};
}

std::vector<std::string> RecordColumnNames(const DiagnosticsConfig &cfg)
{
  std::vector<std::string> names = {"step", "t"};
  for (double s : cfg.s_list)
  {
    names.push_back("norm_h" + FormatOrder(s));
  }
  const char *rest[] = {"e_basic",      "d_basic",      "y_inf",        "dirb_hr3",
                        "u_hr5",        "cross_term",   "d_hr4",        "gradg_hr4",
                        "lyap_e",       "lyap_d",       "e_margin",     "b_l2",
                        "gradb_l2",     "b_h3",         "mass_drift",   "momentum_1",
                        "momentum_2",   "momentum_3",   "mean_b_1",     "mean_b_2",
                        "mean_b_3",     "div_b_pre",    "div_b_post",   "step_mass_drift",
                        "step_mean_b_1", "step_mean_b_2", "step_mean_b_3",
                        "dissipation_integral", "dirb_integral"};
  names.insert(names.end(), std::begin(rest), std::end(rest));
  return names;
}

std::vector<double> RecordValues(const DiagnosticsRecord &r)
{
  std::vector<double> v = {static_cast<double>(r.step), r.t};
  v.insert(v.end(), r.norms.begin(), r.norms.end());
  const auto &m = r.monitors;
  const double rest[] = {r.e_basic,
                         r.d_basic,
                         r.y_inf,
                         r.dirb_hr3,
                         r.u_hr5,
                         r.cross_term,
                         r.d_hr4,
                         r.gradg_hr4,
                         r.lyap_e,
                         r.lyap_d,
                         r.e_margin,
                         r.b_l2,
                         r.gradb_l2,
                         r.b_h3,
                         r.mass_drift,
                         r.momentum[0],
                         r.momentum[1],
                         r.momentum[2],
                         r.mean_b[0],
                         r.mean_b[1],
                         r.mean_b[2],
                         m.div_b_pre,
                         m.div_b_post,
                         m.step_mass_drift,
                         m.step_mean_b_drift[0],
                         m.step_mean_b_drift[1],
                         m.step_mean_b_drift[2],
                         m.dissipation_integral,
                         m.directional_b_integral};
  v.insert(v.end(), std::begin(rest), std::end(rest));
  return v;
}

double BasicEnergy(const Fields &f, const PressureLaw &pl)
{
  return BasicEnergyFromGrid(GridFields(f), pl);
}

double BasicDissipation(const Fields &f, const Viscosities &visc)
{
  return visc.mu * GradientSobolevNormSquared(f.u, 0.0) +
         (visc.lambda + visc.mu) * SobolevNormSquared(Divergence(f.u), 0.0);
}

double DirectionalMagneticNormSquared(const Fields &f, const BackgroundField &bg)
{
  return SobolevNormSquared(DirectionalDerivative(bg.n, f.b), bg.r + 3.0);
}

double YInfinity(const Fields &f, bool oversample)
{
  if (!oversample)
  {
    return YInfinityFromGrid(GridFields(f));
  }
  const GridPtr fine = Grid::Create(2 * f.a.grid().N());
  Fields fine_fields{Refine(f.a, fine), SpectralVector(fine), SpectralVector(fine)};
  for (int d = 0; d < 3; ++d)
  {
    fine_fields.u[d] = Refine(f.u[d], fine);
    fine_fields.b[d] = Refine(f.b[d], fine);
  }
  return YInfinityFromGrid(GridFields(fine_fields));
}

double CrossTerm(const Fields &f, const BackgroundField &bg)
{
  return HsInner(LerayP(f.u), DirectionalDerivative(bg.n, f.b), bg.r + 3.0);
}

LyapunovPair ComputeLyapunov(const Fields &f, const BackgroundField &bg,
                             const Viscosities &visc, double gamma)
{
  if (!(gamma > 1.0))
  {
    throw std::invalid_argument("Lyapunov weight gamma must be > 1");
  }
  const double s = bg.r + 4.0;
  const DerivedQuantities dq = ComputeDerived(f, bg.n, visc);

  const double a2 = SobolevNormSquared(f.a, s);
  const double d2 = SobolevNormSquared(dq.d, s);
  const double u2 = SobolevNormSquared(f.u, s);
  const double b2 = SobolevNormSquared(f.b, s);
  const double g2 = SobolevNormSquared(dq.g, s);
  const double quad = d2 + u2 + b2 + g2;

  const double nu = visc.nu();
  const double grad_g2 = GradientSobolevNormSquared(dq.g, s);
  const double d_slope = d2 / nu + visc.mu * GradientSobolevNormSquared(f.u, s) +
                         (visc.lambda + visc.mu) * SobolevNormSquared(Divergence(f.u), s) +
                         nu * grad_g2;

  LyapunovPair out;
  out.cross = CrossTerm(f, bg);
  out.e_slope = a2 + quad;
  out.d_slope = d_slope;
  out.e = gamma * out.e_slope - out.cross;
  out.d = gamma * d_slope + DirectionalMagneticNormSquared(f, bg);
  out.margin = out.e - quad;
  out.d_hr4 = std::sqrt(d2);
  out.gradg_hr4 = std::sqrt(grad_g2);
  return out;
}

DiagnosticsRecord ComputeRecord(const State &state, const Physics &ph,
                                const DiagnosticsConfig &cfg, const RunMonitors &monitors,
                                long step)
{
  DiagnosticsRecord rec;
  rec.step = step;
  rec.t = state.t;
  rec.monitors = monitors;
  for (double s : cfg.s_list)
  {
    rec.norms.push_back(std::sqrt(SobolevNormSquared(state.a, s) +
                                  SobolevNormSquared(state.u, s) +
                                  SobolevNormSquared(state.b, s)));
  }

  const GridFields grid(state);
  rec.e_basic = BasicEnergyFromGrid(grid, ph.pressure);
  rec.d_basic = BasicDissipation(state, ph.viscosities);
  rec.y_inf = cfg.oversample_linf ? YInfinity(state, true) : YInfinityFromGrid(grid);

  const BackgroundField &bg = ph.background;
  rec.dirb_hr3 = std::sqrt(DirectionalMagneticNormSquared(state, bg));
  rec.u_hr5 = SobolevNorm(state.u, bg.r + 5.0);

  const LyapunovPair lp = ComputeLyapunov(state, bg, ph.viscosities, cfg.lyapunov_gamma);
  rec.cross_term = lp.cross;
  rec.d_hr4 = lp.d_hr4;
  rec.gradg_hr4 = lp.gradg_hr4;
  rec.lyap_e = lp.e;
  rec.lyap_d = lp.d;
  rec.e_margin = lp.margin;

  rec.b_l2 = L2Norm(state.b);
  rec.gradb_l2 = std::sqrt(GradientSobolevNormSquared(state.b, 0.0));
  rec.b_h3 = SobolevNorm(state.b, 3.0);

  rec.mass_drift = state.a.Mean();
  for (int j = 0; j < 3; ++j)
  {
    rec.momentum[j] = state.u[j].Mean() + HsInner(state.a, state.u[j], 0.0);
    rec.mean_b[j] = state.b[j].Mean();
  }
  return rec;
}

EnergyResidual BasicEnergyResidual(std::span<const double> t, std::span<const double> e_basic,
                                   std::span<const double> d_basic,
                                   std::span<const double> dissipation_integral)
{
  if (t.size() < 2)
  {
    throw InsufficientSamples("energy residual needs at least two snapshots");
  }
  EnergyResidual out;
  double max_d = 0.0;
  for (double d : d_basic)
  {
    max_d = std::max(max_d, std::abs(d));
  }
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
  {
    const double dt = t[i + 1] - t[i];
    const double r = (e_basic[i + 1] - e_basic[i]) / dt +
                     (dissipation_integral[i + 1] - dissipation_integral[i]) / dt;
    out.t.push_back(0.5 * (t[i] + t[i + 1]));
    out.residual.push_back(r);
    out.max_abs = std::max(out.max_abs, std::abs(r));
  }
  out.normalized = max_d > 0.0 ? out.max_abs / max_d : out.max_abs;
  return out;
}

EnergyResidual BasicEnergyResidual(const std::vector<DiagnosticsRecord> &records)
{
  std::vector<double> t, e, d, w;
  for (const auto &r : records)
  {
    t.push_back(r.t);
    e.push_back(r.e_basic);
    d.push_back(r.d_basic);
    w.push_back(r.monitors.dissipation_integral);
  }
  return BasicEnergyResidual(t, e, d, w);
}

DecayFit FitDecay(std::span<const double> t, std::span<const double> value, double t0,
                  double t1)
{
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i)
  {
    if (t[i] < t0 || t[i] > t1)
    {
      continue;
    }
    if (!(value[i] > 0.0))
    {
      throw NonpositiveValues("decay fit needs positive values, got " +
                              std::to_string(value[i]) + " at t = " + std::to_string(t[i]));
    }
    x.push_back(std::log1p(t[i]));
    y.push_back(std::log(value[i]));
  }
  if (x.size() < 10)
  {
    throw InsufficientSamples("decay fit needs >= 10 samples in the window, got " +
                              std::to_string(x.size()));
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  DecayFit fit;
  const double slope = sxy / sxx;
  fit.alpha = -slope;
  fit.log_prefactor = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    const double e = y[i] - (fit.log_prefactor + slope * x[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  fit.samples = x.size();
  return fit;
}

HiddenDissipationReport AuditHiddenDissipation(std::span<const double> t,
                                               std::span<const double> dirb_hr3,
                                               std::span<const double> cross_term,
                                               std::span<const double> u_hr5,
                                               std::span<const double> dirb_integral)
{
  HiddenDissipationReport out;
  const std::size_t n = t.size();
  bool any_rhs = false;
  bool unbounded = false;
  for (std::size_t i = 1; i + 1 < n; ++i)
  {
    const double dx = (cross_term[i + 1] - cross_term[i - 1]) / (t[i + 1] - t[i - 1]);
    const double lhs = dirb_hr3[i] * dirb_hr3[i] - dx;
    const double rhs = u_hr5[i] * u_hr5[i];
    out.t.push_back(t[i]);
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    if (rhs > 0.0)
    {
      any_rhs = true;
      out.c_hat = std::max(out.c_hat, std::max(lhs, 0.0) / rhs);
    }
    else if (lhs > 0.0)
    {
      unbounded = true;
    }
  }
  out.vacuous = !any_rhs && !unbounded;
  if (unbounded)
  {
    out.c_hat = std::numeric_limits<double>::infinity();
  }

  if (n >= 2)
  {
    const double t0 = t.front();
    const double t1 = t.back();
    out.cumulative_total = dirb_integral[n - 1] - dirb_integral[0];
    const double t_cut = t1 - 0.2 * (t1 - t0);
    // Linear interpolation of the running integral at t_cut.
    double h_cut = dirb_integral[0];
    for (std::size_t i = 0; i + 1 < n; ++i)
    {
      if (t[i] <= t_cut && t_cut <= t[i + 1])
      {
        const double w = (t_cut - t[i]) / (t[i + 1] - t[i]);
        h_cut = (1.0 - w) * dirb_integral[i] + w * dirb_integral[i + 1];
        break;
      }
    }
    const double tail = dirb_integral[n - 1] - h_cut;
    out.final_fraction = out.cumulative_total > 0.0 ? tail / out.cumulative_total : 0.0;
  }
  out.plateau = out.final_fraction < 0.05;
  return out;
}

HiddenDissipationReport AuditHiddenDissipation(const std::vector<DiagnosticsRecord> &records)
{
  std::vector<double> t, b, x, u, h;
  for (const auto &r : records)
  {
    t.push_back(r.t);
    b.push_back(r.dirb_hr3);
    x.push_back(r.cross_term);
    u.push_back(r.u_hr5);
    h.push_back(r.monitors.directional_b_integral);
  }
  return AuditHiddenDissipation(t, b, x, u, h);
}

}  // namespace tmhd
