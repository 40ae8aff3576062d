// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: prints one PASS/FAIL line per criterion and exits nonzero if any
// criterion fails. Usage: tmhd_acceptance [work_dir] [--reuse]
// With --reuse, a finished run whose run.cfg matches the requested configuration is
// read back instead of being recomputed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>
#include "tmhd/app.hpp"
#include "tmhd/config.hpp"
#include "tmhd/csv.hpp"
#include "tmhd/diagnostics.hpp"
#include "tmhd/diophantine.hpp"
#include "tmhd/errors.hpp"
#include "tmhd/integrate.hpp"
#include "tmhd/spectral_ops.hpp"

using namespace tmhd;
namespace fs = std::filesystem;

namespace
{

constexpr double kPi = std::numbers::pi;

struct Outcome
{
  bool pass = true;
  std::string detail;
};

class Report
{
public:
  void Add(int id, const Outcome &o, double seconds)
  {
    std::printf("%s criterion %d: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(),
                seconds);
    std::fflush(stdout);
    failures_ += o.pass ? 0 : 1;
  }
  int failures() const { return failures_; }

private:
  int failures_ = 0;
};

double Seconds(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string Sci(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

Outcome Guard(const std::function<Outcome()> &body)
{
  try
  {
    return body();
  }
  catch (const std::exception &e)
  {
    return {false, std::string("exception: ") + e.what()};
  }
}

// Random real field: normal coefficients on every stored mode.
SpectralScalar RandomField(const GridPtr &grid, std::mt19937_64 &rng, int kmax)
{
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralScalar f(grid);
  for (std::size_t m = 0; m < grid->SpectralSize(); ++m)
  {
    const Index3 &k = grid->Wavenumber(m);
    if (std::max({std::abs(k[0]), std::abs(k[1]), std::abs(k[2])}) <= kmax)
    {
      f[m] = Complex(normal(rng), normal(rng));
    }
  }
  EnforceHermitian(f);
  return f;
}

double RelDiff(const SpectralVector &x, const SpectralVector &y)
{
  double num = 0.0, den = 0.0;
  for (int j = 0; j < 3; ++j)
  {
    for (std::size_t m = 0; m < x[j].coeffs().size(); ++m)
    {
      num = std::max(num, std::abs(x[j][m] - y[j][m]));
      den = std::max(den, std::abs(y[j][m]));
    }
  }
  return num / den;
}

Outcome SpectralIdentities()
{
  const GridPtr grid = Grid::Create(16);
  std::mt19937_64 rng(20261018);
  double worst_pq = 0.0, worst_div = 0.0, worst_curl = 0.0, worst_parseval = 0.0,
         worst_lap = 0.0;
  for (int trial = 0; trial < 10; ++trial)
  {
    const int kmax = grid->N() / 2;
    const SpectralVector u(RandomField(grid, rng, kmax), RandomField(grid, rng, kmax),
                           RandomField(grid, rng, kmax));
    const SpectralVector p = LerayP(u);
    const SpectralVector q = LerayQ(u);
    const double grad = std::sqrt(GradientSobolevNormSquared(u, 0.0));
    worst_pq = std::max(worst_pq, RelDiff(p + q, u));
    worst_div = std::max(worst_div, L2Norm(Divergence(p)) / grad);
    worst_curl = std::max(worst_curl, L2Norm(Curl(q)) / grad);

    const GridValues v = ToGrid(u[0]);
    double grid_sum = 0.0;
    for (double x : v)
    {
      grid_sum += x * x;
    }
    grid_sum /= static_cast<double>(v.size());
    worst_parseval =
        std::max(worst_parseval, std::abs(SobolevNormSquared(u[0], 0.0) - grid_sum) / grid_sum);

    SpectralScalar f = u[1];
    f[0] = 0.0;
    const SpectralScalar back = Laplacian(InverseLaplacian(f));
    worst_lap = std::max(worst_lap, RelDiff(SpectralVector(back, back, back),
                                            SpectralVector(f, f, f)));
  }
  const double worst =
      std::max({worst_pq, worst_div, worst_curl, worst_parseval, worst_lap});
  return {worst <= 1e-12, "P+Q=I " + Sci(worst_pq) + ", div P " + Sci(worst_div) + ", curl Q " +
                              Sci(worst_curl) + ", Parseval " + Sci(worst_parseval) +
                              ", lap lap^-1 " + Sci(worst_lap) + " (tol 1e-12)"};
}

Outcome Certification()
{
  const Vec3 irrational{1.0, std::numbers::sqrt2, std::numbers::sqrt3};
  const double c_axis = Certify({1.0, 0.0, 0.0}, 3.0, 16).c_empirical;
  const double c_diag = Certify({1.0, 1.0, 1.0}, 3.0, 16).c_empirical;
  const BackgroundField bg = Certify(irrational, 3.0, 16);

  const GridPtr grid = Grid::Create(16);
  const double constant = PoincareConstant(bg, 0.0);
  std::mt19937_64 rng(7);
  int violations = 0;
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 100; ++trial)
  {
    SpectralScalar f = RandomField(grid, rng, grid->DealiasCutoff());
    f[0] = 0.0;
    const double lhs = SobolevNorm(f, 0.0);
    const double rhs = constant * SobolevNorm(DirectionalDerivative(irrational, f), 3.0);
    worst_ratio = std::max(worst_ratio, lhs / rhs);
    violations += lhs > rhs ? 1 : 0;
  }
  const bool pass = c_axis == 0.0 && c_diag == 0.0 && bg.c_empirical > 0.0 && violations == 0;
  return {pass, "c(1,0,0) = " + Sci(c_axis) + ", c(1,1,1) = " + Sci(c_diag) +
                    ", c(1,sqrt2,sqrt3) = " + Sci(bg.c_empirical) + ", Poincare violations " +
                    std::to_string(violations) + "/100 (max ratio " + Sci(worst_ratio) + ")"};
}

Outcome OracleDecay()
{
  const GridPtr grid = Grid::Create(32);
  InitialConfig ic;
  ic.preset = Preset::kViscousShear;
  ic.epsilon = 1e-2;
  const Vec3 zero{0.0, 0.0, 0.0};
  State s = MakeInitial(ic, grid, zero);
  const Complex c0 = s.u[1].Mode({1, 0, 0});
  Physics ph;
  ph.background.n = zero;
  ph.viscosities.mu = 0.1;
  StepperConfig cfg;
  cfg.scheme = Scheme::kRk4Explicit;
  cfg.dt = 1e-3;
  Stepper stepper(ph, cfg);
  for (int i = 0; i < 1000; ++i)
  {
    stepper.Step(s);
  }
  const double expect = std::exp(-4.0 * kPi * kPi * ph.viscosities.mu * 1.0);
  const double got = s.u[1].Mode({1, 0, 0}).imag() / c0.imag();
  const double rel = std::abs(got / expect - 1.0);
  return {rel <= 1e-6, "amplitude ratio " + Sci(got) + " vs exp(-4 pi^2 mu) " + Sci(expect) +
                           ", relative error " + Sci(rel) + " (tol 1e-6)"};
}

struct RunData
{
  CsvTable table;
  double seconds = 0.0;
  bool reused = false;
  std::vector<double> Col(const std::string &name) const { return table.Column(name); }
};

RunData Execute(const RunConfig &cfg, bool reuse)
{
  RunData out;
  const fs::path dir(cfg.output_dir);
  const fs::path csv = dir / "diagnostics.csv";
  const fs::path cfg_file = dir / "run.cfg";
  if (reuse && fs::exists(csv) && fs::exists(cfg_file))
  {
    std::ifstream in(cfg_file);
    std::stringstream text;
    text << in.rdbuf();
    if (text.str() == ConfigText(cfg))
    {
      out.table = ReadCsv(csv);
      if (!out.table.rows.empty() && out.table.rows.back()[1] == cfg.t_end)
      {
        out.reused = true;
        return out;
      }
    }
  }
  const auto start = std::chrono::steady_clock::now();
  ExecuteRun(cfg);
  out.seconds = Seconds(start);
  out.table = ReadCsv(csv);
  return out;
}

double MaxAbsColumn(const RunData &run, const std::vector<std::string> &names)
{
  double m = 0.0;
  for (const auto &name : names)
  {
    for (double v : run.Col(name))
    {
      m = std::max(m, std::abs(v));
    }
  }
  return m;
}

double EnergyResidual(const RunData &run)
{
  return BasicEnergyResidual(run.Col("t"), run.Col("e_basic"), run.Col("d_basic"),
                             run.Col("dissipation_integral"))
      .normalized;
}

HiddenDissipationReport HiddenAudit(const RunData &run)
{
  return AuditHiddenDissipation(run.Col("t"), run.Col("dirb_hr3"), run.Col("cross_term"),
                                run.Col("u_hr5"), run.Col("dirb_integral"));
}

Outcome Conservation(const RunData &run)
{
  const double mass = MaxAbsColumn(run, {"mass_drift"});
  const double mean_b = MaxAbsColumn(run, {"mean_b_1", "mean_b_2", "mean_b_3"});
  const double momentum = MaxAbsColumn(run, {"momentum_1", "momentum_2", "momentum_3"});
  const double div_b = MaxAbsColumn(run, {"div_b_post"});
  const bool timely = run.reused || run.seconds < 1800.0;
  const bool pass =
      mass <= 1e-10 && mean_b <= 1e-12 && momentum <= 1e-8 && div_b <= 1e-13 && timely;
  return {pass, "max |int rho - 1| " + Sci(mass) + ", |int B| " + Sci(mean_b) + ", |int rho u| " +
                    Sci(momentum) + ", div B " + Sci(div_b) + " over " +
                    std::to_string(run.table.rows.size()) + " snapshots, run time " +
                    (run.reused ? std::string("reused") : Sci(run.seconds) + " s")};
}

Outcome EnergyIdentity(const RunData &run, const RunData &half)
{
  const double r = EnergyResidual(run);
  const double r_half = EnergyResidual(half);
  const double shrink = r / r_half;
  return {r <= 1e-4 && shrink >= 8.0, "normalized residual " + Sci(r) + " (dt), " + Sci(r_half) +
                                          " (dt/2), shrink " + Sci(shrink) +
                                          " (tol 1e-4, shrink >= 8)"};
}

Outcome Stability(const RunData &run)
{
  const std::vector<double> h3 = run.Col("norm_h3");
  const double init = h3.front();
  const double sup = *std::max_element(h3.begin(), h3.end());
  const double last = h3.back();
  return {sup <= 2.0 * init && last <= 0.1 * init,
          "H^3 initial " + Sci(init) + ", sup " + Sci(sup) + " (<= 2x), final " + Sci(last) +
              " (<= 0.1x)"};
}

Outcome DecayExponents(const RunData &run, double r)
{
  char col[32];
  std::snprintf(col, sizeof(col), "norm_h%g", r + 4.0);
  const DecayFit norm = FitDecay(run.Col("t"), run.Col(col), 5.0, 50.0);
  const DecayFit energy = FitDecay(run.Col("t"), run.Col("lyap_e"), 5.0, 50.0);
  return {norm.alpha >= 1.4 && energy.alpha >= 2.8,
          std::string("alpha(") + col + ") = " + Sci(norm.alpha) + " (>= 1.4), alpha(E) = " +
              Sci(energy.alpha) + " (>= 2.8) over t in [5, 50]"};
}

Outcome HiddenDissipation(const RunData &run, const RunData &half)
{
  const HiddenDissipationReport a = HiddenAudit(run);
  const HiddenDissipationReport b = HiddenAudit(half);
  const bool finite = std::isfinite(a.c_hat) && std::isfinite(b.c_hat) && !a.vacuous;
  const double drift = finite ? std::abs(b.c_hat / a.c_hat - 1.0) : std::numeric_limits<double>::infinity();
  return {a.plateau && finite && drift <= 0.1,
          "final 20% share " + Sci(a.final_fraction) + " (< 0.05), C_hat " + Sci(a.c_hat) +
              " (dt) vs " + Sci(b.c_hat) + " (dt/2), relative change " + Sci(drift) +
              " (<= 0.1)"};
}

Outcome DiophantineContrast(const RunData &resonant, const RunData &run)
{
  const std::vector<double> br = resonant.Col("b_l2");
  const std::vector<double> bd = run.Col("b_l2");
  const double loss_resonant = 1.0 - br.back() / br.front();
  const double loss_diophantine = 1.0 - bd.back() / bd.front();
  return {loss_resonant < 0.05 && loss_diophantine > 0.5,
          "||B||_L2 loss: resonant n = (1,0,0) " + Sci(loss_resonant) + " (< 0.05), Diophantine " +
              Sci(loss_diophantine) + " (> 0.5)"};
}

Outcome AuditClosure(const fs::path &dir)
{
  AuditOptions opts;
  opts.dir = dir;
  const AuditReport rep = Audit(opts);
  return {rep.mismatches.empty() && rep.snapshots > 0,
          std::to_string(rep.mismatches.size()) + " mismatches over " +
              std::to_string(rep.snapshots) + " snapshots, " +
              std::to_string(rep.values_compared) + " values, max relative difference " +
              Sci(rep.max_relative_difference) + " (tol 1e-10)"};
}

}  // namespace

int main(int argc, char **argv)
{
  fs::path work = fs::temp_directory_path() / "tmhd_acceptance";
  bool reuse = false;
  for (int i = 1; i < argc; ++i)
  {
    const std::string arg = argv[i];
    if (arg == "--reuse")
    {
      reuse = true;
    }
    else
    {
      work = arg;
    }
  }
  fs::create_directories(work);
  Report report;

  auto timed = [&](int id, double limit, const std::function<Outcome()> &body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = Guard(body);
    const double s = Seconds(start);
    if (o.pass && s >= limit)
    {
      o.pass = false;
      o.detail += ", exceeded the " + Sci(limit) + " s budget";
    }
    report.Add(id, o, s);
  };

  timed(1, 1.0, SpectralIdentities);
  timed(2, 5.0, Certification);
  timed(3, 120.0, OracleDecay);

  RunConfig base;
  base.output_dir = (work / "default").string();
  RunConfig half = base;
  half.dt = base.dt / 2.0;
  half.snapshot_every = base.snapshot_every * 2;
  half.file_every = base.file_every * 1000;
  half.output_dir = (work / "half_dt").string();
  RunConfig resonant = base;
  resonant.preset = "resonant";
  resonant.n = {1.0, 0.0, 0.0};
  resonant.file_every = base.file_every * 1000;
  resonant.output_dir = (work / "resonant").string();

  RunData run_default, run_half, run_resonant;
  bool have_default = false, have_half = false, have_resonant = false;
  auto load = [&](const RunConfig &cfg, RunData &data, bool &ok, const char *label) {
    try
    {
      data = Execute(cfg, reuse);
      ok = true;
      std::printf("info: %s run %s\n", label,
                  data.reused ? "reused" : ("took " + Sci(data.seconds) + " s").c_str());
    }
    catch (const std::exception &e)
    {
      std::printf("info: %s run failed: %s\n", label, e.what());
    }
    std::fflush(stdout);
  };
  load(base, run_default, have_default, "default");
  load(half, run_half, have_half, "half-dt");
  load(resonant, run_resonant, have_resonant, "resonant");

  auto need = [](bool ok, const std::function<Outcome()> &body) {
    return [ok, body] { return ok ? body() : Outcome{false, "required run failed"}; };
  };
  const auto none = std::numeric_limits<double>::infinity();
  timed(4, none, need(have_default, [&] { return Conservation(run_default); }));
  timed(5, none, need(have_default && have_half,
                      [&] { return EnergyIdentity(run_default, run_half); }));
  timed(6, none, need(have_default, [&] { return Stability(run_default); }));
  timed(7, none, need(have_default, [&] { return DecayExponents(run_default, base.r); }));
  timed(8, none, need(have_default && have_half,
                      [&] { return HiddenDissipation(run_default, run_half); }));
  timed(9, none, need(have_default && have_resonant,
                      [&] { return DiophantineContrast(run_resonant, run_default); }));
  timed(10, none, need(have_default, [&] { return AuditClosure(base.output_dir); }));

  std::printf("%s: %d of 10 criteria failed\n", report.failures() == 0 ? "ACCEPTED" : "REJECTED",
              report.failures());
  return report.failures() == 0 ? 0 : 1;
}
