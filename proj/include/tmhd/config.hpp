// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TMHD_CONFIG_HPP
#define TMHD_CONFIG_HPP

#include <filesystem>
#include <string>
#include <vector>
#include "tmhd/diagnostics.hpp"
#include "tmhd/integrate.hpp"
#include "tmhd/model.hpp"

namespace tmhd
{

//
// Flat key = value run configuration. Lines starting with '#' are comments. Every key
// is also accepted as a --key command-line override.
//
struct RunConfig
{
  int grid = 32;
  std::string scheme = "ifrk4";
  double dt = 5e-3;
  double cfl_advective = 0.4;
  double cfl_viscous = 0.4;
  double t_end = 50.0;
  double epsilon = 1e-2;
  unsigned long long seed = 1;
  std::string preset = "random";
  int init_kmax = 1;
  Vec3 n{1.0, 1.4142135623730951, 1.7320508075688772};
  double r = 3.0;
  int lattice_radius = 0;  // 0 selects N/2
  double gamma_ad = 2.0;
  double mu = 0.1;
  double lambda = 0.0;
  double c0 = 0.5;
  double lyapunov_gamma = 32.0;
  std::vector<double> s_list;  // empty selects the default list
  int project_b_every = 1;
  int snapshot_every = 2;
  int file_every = 25;  // snapshot files every file_every diagnostic rows (and the last)
  std::string output_dir = "run";
  std::string f_term_convention = "literal";
  int threads = 1;
  bool oversample_linf = false;
  double fit_t0 = 5.0;
  double fit_t1 = 0.0;  // 0 selects t_end
};

const std::vector<std::string> &ConfigKeys();

// Throws ConfigError naming the key on unknown keys or unparsable values.
void SetConfigValue(RunConfig &cfg, const std::string &key, const std::string &value);

// Throws ConfigError with "file:line: key: reason" context.
RunConfig LoadConfig(const std::filesystem::path &path, RunConfig base = {});

// Throws ConfigError naming the field when a physical or numerical constraint fails.
void ValidateConfig(const RunConfig &cfg);

std::string ConfigText(const RunConfig &cfg);

// Parses "1, sqrt(2), -sqrt(3)" style vectors.
Vec3 ParseVector(const std::string &text);

int EffectiveLatticeRadius(const RunConfig &cfg);
FTermConvention ParseFTermConvention(const std::string &name);
Physics BuildPhysics(const RunConfig &cfg);
StepperConfig BuildStepperConfig(const RunConfig &cfg);
DiagnosticsConfig BuildDiagnosticsConfig(const RunConfig &cfg);
InitialConfig BuildInitialConfig(const RunConfig &cfg);

// Certification of n, or an uncertified record with c = 0 for n = 0.
BackgroundField MakeBackground(const Vec3 &n, double r, int lattice_radius);

}  // namespace tmhd

#endif  // TMHD_CONFIG_HPP
