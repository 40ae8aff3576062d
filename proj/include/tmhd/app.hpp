// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TMHD_APP_HPP
#define TMHD_APP_HPP

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>
#include "tmhd/config.hpp"

namespace tmhd
{

enum ExitCode
{
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitAuditMismatch = 4,
};

// Runs body and maps library errors onto exit codes, printing the message to err.
int GuardedExit(const std::function<int()> &body, std::ostream &err);

// Certification report as one JSON object.
std::string CertifyJson(const RunConfig &cfg);
int CmdCertify(const RunConfig &cfg, std::ostream &out, std::ostream &err);

struct RunSummary
{
  long steps = 0;
  std::size_t rows = 0;
  std::size_t snapshot_files = 0;
  double max_mass_drift = 0.0;
  double max_momentum = 0.0;
  double max_mean_b = 0.0;
  double max_div_b_post = 0.0;
  std::optional<double> energy_residual;
  std::optional<double> alpha_norm;  // decay exponent of ||(a,u,B)||_{H^{r+4}}
  std::optional<double> alpha_energy;  // decay exponent of E(t)
};

std::string SummaryLine(const RunSummary &s);

// Writes <output_dir>/diagnostics.csv, <output_dir>/run.cfg and
// <output_dir>/snapshots/snap_<step>.bin. Stale snapshot files in that directory are
// removed first. Throws on failure.
RunSummary ExecuteRun(const RunConfig &cfg);
int CmdRun(const RunConfig &cfg, std::ostream &out, std::ostream &err);

struct AuditOptions
{
  std::filesystem::path dir;  // run directory (or its snapshots/ subdirectory)
  std::optional<double> lyapunov_gamma;
  double tolerance = 1e-10;
  int threads = 1;
};

struct AuditMismatch
{
  long step = 0;
  std::string column;
  double csv = 0.0;
  double recomputed = 0.0;
};

struct AuditReport
{
  std::size_t snapshots = 0;
  std::size_t values_compared = 0;
  double max_relative_difference = 0.0;
  std::vector<AuditMismatch> mismatches;
  // With a Lyapunov gamma override: max relative violation of
  // E(gamma') = E(gamma) + (gamma' - gamma) dE/dgamma.
  std::optional<double> affine_max_relative;
  std::optional<double> gamma_override;
};

// Throws FormatError on unreadable snapshots or a CSV row missing for a snapshot.
AuditReport Audit(const AuditOptions &opts);
int CmdAudit(const AuditOptions &opts, std::ostream &out, std::ostream &err);

int CmdDecayFit(const std::filesystem::path &csv, const std::string &column, double t0,
                double t1, std::ostream &out, std::ostream &err);

}  // namespace tmhd

#endif  // TMHD_APP_HPP
