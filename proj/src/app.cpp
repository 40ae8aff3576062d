// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include "tmhd/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <json.hpp>
#include "tmhd/csv.hpp"
#include "tmhd/diagnostics.hpp"
#include "tmhd/errors.hpp"
#include "tmhd/integrate.hpp"
#include "tmhd/snapshot_io.hpp"

namespace tmhd
{

namespace fs = std::filesystem;

namespace
{

std::string Sci(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

double RelativeDifference(double a, double b)
{
  if (a == b)
  {
    return 0.0;
  }
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

std::optional<double> TryFit(const std::vector<DiagnosticsRecord> &recs,
                             const std::function<double(const DiagnosticsRecord &)> &value,
                             double t0, double t1)
{
  std::vector<double> t, v;
  for (const auto &r : recs)
  {
    t.push_back(r.t);
    v.push_back(value(r));
  }
  try
  {
    return FitDecay(t, v, t0, t1).alpha;
  }
  catch (const Error &)
  {
    return std::nullopt;
  }
}

}  // namespace

int GuardedExit(const std::function<int()> &body, std::ostream &err)
{
  try
  {
    return body();
  }
  catch (const ConfigError &e)
  {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const FormatError &e)
  {
    err << "format error: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const NumericalFailure &e)
  {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  catch (const Error &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const std::invalid_argument &e)
  {
    err << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  }
  catch (const std::exception &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

std::string CertifyJson(const RunConfig &cfg)
{
  const int k = EffectiveLatticeRadius(cfg);
  const BackgroundField bg = Certify(cfg.n, cfg.r, k);
  nlohmann::ordered_json j;
  j["n"] = bg.n;
  j["r"] = bg.r;
  j["K"] = bg.lattice_radius;
  j["c_empirical"] = bg.c_empirical;
  j["resonant_k"] = bg.resonant_k;
  return j.dump();
}

int CmdCertify(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
  return GuardedExit(
      [&] {
        if (!(cfg.r > 2.0))
        {
          throw InvalidExponent("r: Diophantine exponent must satisfy r > 2");
        }
        out << CertifyJson(cfg) << '\n';
        return static_cast<int>(kExitOk);
      },
      err);
}

std::string SummaryLine(const RunSummary &s)
{
  auto opt = [](const std::optional<double> &v) { return v ? Sci(*v) : std::string("n/a"); };
  std::ostringstream out;
  out << "summary: steps=" << s.steps << " rows=" << s.rows << " snapshots=" << s.snapshot_files
      << " max|mass_drift|=" << Sci(s.max_mass_drift)
      << " max|momentum|=" << Sci(s.max_momentum) << " max|mean_b|=" << Sci(s.max_mean_b)
      << " max_div_b_post=" << Sci(s.max_div_b_post)
      << " energy_residual=" << opt(s.energy_residual) << " alpha_hr4=" << opt(s.alpha_norm)
      << " alpha_E=" << opt(s.alpha_energy);
  return out.str();
}

RunSummary ExecuteRun(const RunConfig &cfg)
{
  ValidateConfig(cfg);
  const Physics ph = BuildPhysics(cfg);
  const InitialConfig ic = BuildInitialConfig(cfg);
  if (ic.preset == Preset::kRandom && ic.epsilon > 0.0 && !(ph.background.c_empirical > 0.0))
  {
    const Index3 &k = ph.background.resonant_k;
    throw ConfigError("n: the random preset needs a Diophantine n, but certification found "
                      "n.k = 0 at k = (" +
                      std::to_string(k[0]) + ", " + std::to_string(k[1]) + ", " +
                      std::to_string(k[2]) + ")");
  }
  const StepperConfig scfg = BuildStepperConfig(cfg);
  const DiagnosticsConfig dcfg = BuildDiagnosticsConfig(cfg);
  const GridPtr grid = Grid::Create(cfg.grid, cfg.threads);
  State initial = MakeInitial(ic, grid, ph.n());

  const fs::path out_dir(cfg.output_dir);
  const fs::path snap_dir = out_dir / "snapshots";
  fs::create_directories(snap_dir);
  for (const auto &old : ListSnapshots(snap_dir))
  {
    fs::remove(old);
  }
  {
    std::ofstream cfg_out(out_dir / "run.cfg");
    cfg_out << ConfigText(cfg);
  }

  CsvWriter csv(out_dir / "diagnostics.csv", RecordColumnNames(dcfg));
  RunSummary summary;
  const double t_end = cfg.t_end;
  auto sink = [&](const State &state, const RunMonitors &mon, const DiagnosticsRecord &rec) {
    csv.Row(RecordValues(rec));
    const bool last = state.t >= t_end;
    if (summary.rows % static_cast<std::size_t>(cfg.file_every) == 0 || last)
    {
      Snapshot snap{rec.step, state, ph, dcfg, mon};
      WriteSnapshot(snap_dir / SnapshotFileName(rec.step), snap);
      ++summary.snapshot_files;
    }
    ++summary.rows;
  };
  const Trajectory traj = Run(std::move(initial), scfg, ph, dcfg, sink);
  csv.Flush();

  for (const auto &r : traj.records)
  {
    summary.steps = r.step;
    summary.max_mass_drift = std::max(summary.max_mass_drift, std::abs(r.mass_drift));
    for (int j = 0; j < 3; ++j)
    {
      summary.max_momentum = std::max(summary.max_momentum, std::abs(r.momentum[j]));
      summary.max_mean_b = std::max(summary.max_mean_b, std::abs(r.mean_b[j]));
    }
    summary.max_div_b_post = std::max(summary.max_div_b_post, r.monitors.div_b_post);
  }
  if (traj.records.size() >= 2)
  {
    summary.energy_residual = BasicEnergyResidual(traj.records).normalized;
  }
  const double t1 = cfg.fit_t1 > 0.0 ? cfg.fit_t1 : cfg.t_end;
  const auto it = std::find(dcfg.s_list.begin(), dcfg.s_list.end(), cfg.r + 4.0);
  if (it != dcfg.s_list.end())
  {
    const std::size_t idx = static_cast<std::size_t>(it - dcfg.s_list.begin());
    summary.alpha_norm =
        TryFit(traj.records, [idx](const DiagnosticsRecord &r) { return r.norms[idx]; },
               cfg.fit_t0, t1);
  }
  summary.alpha_energy = TryFit(
      traj.records, [](const DiagnosticsRecord &r) { return r.lyap_e; }, cfg.fit_t0, t1);
  return summary;
}

int CmdRun(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
  return GuardedExit(
      [&] {
        const RunSummary s = ExecuteRun(cfg);
        out << "wrote " << (fs::path(cfg.output_dir) / "diagnostics.csv").string() << '\n';
        out << SummaryLine(s) << '\n';
        return static_cast<int>(kExitOk);
      },
      err);
}

AuditReport Audit(const AuditOptions &opts)
{
  fs::path snap_dir = opts.dir / "snapshots";
  fs::path csv_path = opts.dir / "diagnostics.csv";
  if (!fs::is_directory(snap_dir))
  {
    snap_dir = opts.dir;
    csv_path = opts.dir.parent_path() / "diagnostics.csv";
  }
  const CsvTable table = ReadCsv(csv_path);
  const std::size_t step_col = table.ColumnIndex("step");
  std::map<long, std::size_t> row_of_step;
  for (std::size_t i = 0; i < table.rows.size(); ++i)
  {
    row_of_step[static_cast<long>(table.rows[i][step_col])] = i;
  }

  AuditReport report;
  report.gamma_override = opts.lyapunov_gamma;
  GridPtr grid;
  const auto files = ListSnapshots(snap_dir);
  if (files.empty())
  {
    throw FormatError("no snapshot files in " + snap_dir.string());
  }
  for (const auto &path : files)
  {
    Snapshot snap = ReadSnapshot(path, grid);
    if (!grid)
    {
      grid = Grid::Create(snap.state.a.grid().N(), opts.threads);
      snap = ReadSnapshot(path, grid);
    }
    ++report.snapshots;
    const auto row_it = row_of_step.find(snap.step);
    if (row_it == row_of_step.end())
    {
      throw FormatError(path.string() + ": step " + std::to_string(snap.step) +
                        " has no row in " + csv_path.string());
    }
    const auto &row = table.rows[row_it->second];
    const DiagnosticsRecord rec =
        ComputeRecord(snap.state, snap.physics, snap.diagnostics, snap.monitors, snap.step);
    const auto names = RecordColumnNames(snap.diagnostics);
    const auto values = RecordValues(rec);
    for (std::size_t c = 0; c < names.size(); ++c)
    {
      const double csv_value = row[table.ColumnIndex(names[c])];
      const double rel = RelativeDifference(csv_value, values[c]);
      ++report.values_compared;
      report.max_relative_difference = std::max(report.max_relative_difference, rel);
      if (!(rel <= opts.tolerance))
      {
        report.mismatches.push_back({snap.step, names[c], csv_value, values[c]});
      }
    }

    if (opts.lyapunov_gamma)
    {
      const double g1 = *opts.lyapunov_gamma;
      const double g0 = snap.diagnostics.lyapunov_gamma;
      const BackgroundField &bg = snap.physics.background;
      const LyapunovPair base = ComputeLyapunov(snap.state, bg, snap.physics.viscosities, g0);
      const LyapunovPair moved = ComputeLyapunov(snap.state, bg, snap.physics.viscosities, g1);
      const double e_csv = row[table.ColumnIndex("lyap_e")];
      const double d_csv = row[table.ColumnIndex("lyap_d")];
      const double e_pred = e_csv + (g1 - g0) * base.e_slope;
      const double d_pred = d_csv + (g1 - g0) * base.d_slope;
      const double viol =
          std::max(RelativeDifference(moved.e, e_pred), RelativeDifference(moved.d, d_pred));
      report.affine_max_relative = std::max(report.affine_max_relative.value_or(0.0), viol);
    }
  }
  return report;
}

int CmdAudit(const AuditOptions &opts, std::ostream &out, std::ostream &err)
{
  return GuardedExit(
      [&] {
        const AuditReport rep = Audit(opts);
        out << "audited " << rep.snapshots << " snapshots, " << rep.values_compared
            << " values, max relative difference " << Sci(rep.max_relative_difference)
            << '\n';
        for (const auto &m : rep.mismatches)
        {
          out << "mismatch: step " << m.step << " column " << m.column << " csv "
              << FormatDouble(m.csv) << " recomputed " << FormatDouble(m.recomputed) << '\n';
        }
        bool ok = rep.mismatches.empty();
        if (rep.affine_max_relative)
        {
          const bool affine_ok = *rep.affine_max_relative <= opts.tolerance;
          out << "lyapunov gamma " << *rep.gamma_override << ": affine law max relative "
              << "violation " << Sci(*rep.affine_max_relative)
              << (affine_ok ? " (holds)" : " (violated)") << '\n';
          ok = ok && affine_ok;
        }
        out << (ok ? "audit: OK" : "audit: MISMATCH") << '\n';
        return static_cast<int>(ok ? kExitOk : kExitAuditMismatch);
      },
      err);
}

int CmdDecayFit(const fs::path &csv, const std::string &column, double t0, double t1,
                std::ostream &out, std::ostream &err)
{
  return GuardedExit(
      [&] {
        const CsvTable table = ReadCsv(csv);
        const DecayFit fit = FitDecay(table.Column("t"), table.Column(column), t0, t1);
        nlohmann::ordered_json j;
        j["column"] = column;
        j["t0"] = t0;
        j["t1"] = t1;
        j["alpha"] = fit.alpha;
        j["log_prefactor"] = fit.log_prefactor;
        j["residual"] = fit.residual;
        j["samples"] = fit.samples;
        out << j.dump() << '\n';
        return static_cast<int>(kExitOk);
      },
      err);
}

}  // namespace tmhd
