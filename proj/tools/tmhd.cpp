// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <CLI11.hpp>
#include "tmhd/app.hpp"

namespace
{

struct ConfigOptions
{
  std::string file;
  std::map<std::string, std::string> overrides;
};

void AddConfigOptions(CLI::App *cmd, ConfigOptions &opts)
{
  cmd->add_option("-c,--config", opts.file, "key = value configuration file");
  for (const std::string &key : tmhd::ConfigKeys())
  {
    cmd->add_option_function<std::string>(
        "--" + key, [&opts, key](const std::string &v) { opts.overrides[key] = v; },
        "override configuration key '" + key + "'");
  }
}

tmhd::RunConfig ResolveConfig(const ConfigOptions &opts)
{
  tmhd::RunConfig cfg;
  if (!opts.file.empty())
  {
    cfg = tmhd::LoadConfig(opts.file);
  }
  for (const auto &[key, value] : opts.overrides)
  {
    tmhd::SetConfigValue(cfg, key, value);
  }
  return cfg;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Pseudo-spectral compressible MHD around a Diophantine background field"};
  app.require_subcommand(1);

  ConfigOptions certify_opts;
  auto *certify = app.add_subcommand("certify", "Certify the Diophantine background field");
  AddConfigOptions(certify, certify_opts);

  ConfigOptions run_opts;
  auto *run = app.add_subcommand("run", "Integrate and write diagnostics and snapshots");
  AddConfigOptions(run, run_opts);

  tmhd::AuditOptions audit_opts;
  std::optional<double> audit_gamma;
  auto *audit = app.add_subcommand("audit", "Recompute diagnostics from snapshot files");
  audit->add_option("dir", audit_opts.dir, "run directory")->required();
  audit->add_option("--lyapunov-gamma", audit_gamma,
                    "check E and D at another gamma against the affine law");
  audit->add_option("--tolerance", audit_opts.tolerance, "relative tolerance");
  audit->add_option("--threads", audit_opts.threads, "FFT threads");

  std::string fit_csv;
  std::string fit_column = "norm_h7";
  double fit_t0 = 5.0;
  double fit_t1 = 50.0;
  auto *fit = app.add_subcommand("decay-fit", "Fit value ~ C (1+t)^-alpha to a CSV column");
  fit->add_option("csv", fit_csv, "diagnostics CSV")->required();
  fit->add_option("--column", fit_column, "column to fit");
  fit->add_option("--t0", fit_t0, "window start");
  fit->add_option("--t1", fit_t1, "window end");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : tmhd::kExitConfig;
  }

  if (*certify)
  {
    return tmhd::GuardedExit(
        [&] { return tmhd::CmdCertify(ResolveConfig(certify_opts), std::cout, std::cerr); },
        std::cerr);
  }
  if (*run)
  {
    return tmhd::GuardedExit(
        [&] { return tmhd::CmdRun(ResolveConfig(run_opts), std::cout, std::cerr); }, std::cerr);
  }
  if (*audit)
  {
    audit_opts.lyapunov_gamma = audit_gamma;
    return tmhd::CmdAudit(audit_opts, std::cout, std::cerr);
  }
  return tmhd::CmdDecayFit(fit_csv, fit_column, fit_t0, fit_t1, std::cout, std::cerr);
}
