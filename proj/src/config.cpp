// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include "tmhd/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include "tmhd/errors.hpp"

namespace tmhd
{

namespace
{

std::string Trim(const std::string &s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
  {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double ParseDouble(const std::string &text)
{
  const std::string t = Trim(text);
  char *end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || !std::isfinite(v))
  {
    throw ConfigError("not a finite number: '" + text + "'");
  }
  return v;
}

long long ParseInteger(const std::string &text)
{
  const std::string t = Trim(text);
  char *end = nullptr;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0')
  {
    throw ConfigError("not an integer: '" + text + "'");
  }
  return v;
}

int ParseInt(const std::string &text)
{
  const long long v = ParseInteger(text);
  if (v < -2147483647LL || v > 2147483647LL)
  {
    throw ConfigError("integer out of range: '" + text + "'");
  }
  return static_cast<int>(v);
}

bool ParseBool(const std::string &text)
{
  const std::string t = Trim(text);
  if (t == "1" || t == "true" || t == "yes" || t == "on")
  {
    return true;
  }
  if (t == "0" || t == "false" || t == "no" || t == "off")
  {
    return false;
  }
  throw ConfigError("not a boolean: '" + text + "'");
}

// A number or sqrt(number), optionally negated.
double ParseComponent(const std::string &text)
{
  std::string t = Trim(text);
  double sign = 1.0;
  if (!t.empty() && (t[0] == '-' || t[0] == '+'))
  {
    sign = t[0] == '-' ? -1.0 : 1.0;
    t = Trim(t.substr(1));
  }
  if (t.rfind("sqrt(", 0) == 0 && t.back() == ')')
  {
    const double x = ParseDouble(t.substr(5, t.size() - 6));
    if (x < 0.0)
    {
      throw ConfigError("sqrt of a negative number: '" + text + "'");
    }
    return sign * std::sqrt(x);
  }
  return sign * ParseDouble(t);
}

std::vector<std::string> SplitList(const std::string &text)
{
  std::string t = Trim(text);
  if (t.size() >= 2 && (t.front() == '(' || t.front() == '[') && (t.back() == ')' || t.back() == ']'))
  {
    t = t.substr(1, t.size() - 2);
  }
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : t)
  {
    if (c == '(')
    {
      ++depth;
    }
    else if (c == ')')
    {
      --depth;
    }
    if (c == ',' && depth == 0)
    {
      out.push_back(Trim(cur));
      cur.clear();
      continue;
    }
    cur.push_back(c);
  }
  if (!Trim(cur).empty())
  {
    out.push_back(Trim(cur));
  }
  return out;
}

using Setter = std::function<void(RunConfig &, const std::string &)>;

const std::vector<std::pair<std::string, Setter>> &Setters()
{
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"grid", [](RunConfig &c, const std::string &v) { c.grid = ParseInt(v); }},
      {"scheme", [](RunConfig &c, const std::string &v) { c.scheme = Trim(v); }},
      {"dt", [](RunConfig &c, const std::string &v) { c.dt = ParseDouble(v); }},
      {"cfl_advective", [](RunConfig &c, const std::string &v) { c.cfl_advective = ParseDouble(v); }},
      {"cfl_viscous", [](RunConfig &c, const std::string &v) { c.cfl_viscous = ParseDouble(v); }},
      {"t_end", [](RunConfig &c, const std::string &v) { c.t_end = ParseDouble(v); }},
      {"epsilon", [](RunConfig &c, const std::string &v) { c.epsilon = ParseDouble(v); }},
      {"seed",
       [](RunConfig &c, const std::string &v) {
         const long long s = ParseInteger(v);
         if (s < 0)
         {
           throw ConfigError("seed must be >= 0");
         }
         c.seed = static_cast<unsigned long long>(s);
       }},
      {"preset", [](RunConfig &c, const std::string &v) { c.preset = Trim(v); }},
      {"init_kmax", [](RunConfig &c, const std::string &v) { c.init_kmax = ParseInt(v); }},
      {"n", [](RunConfig &c, const std::string &v) { c.n = ParseVector(v); }},
      {"r", [](RunConfig &c, const std::string &v) { c.r = ParseDouble(v); }},
      {"lattice_radius", [](RunConfig &c, const std::string &v) { c.lattice_radius = ParseInt(v); }},
      {"gamma_ad", [](RunConfig &c, const std::string &v) { c.gamma_ad = ParseDouble(v); }},
      {"mu", [](RunConfig &c, const std::string &v) { c.mu = ParseDouble(v); }},
      {"lambda", [](RunConfig &c, const std::string &v) { c.lambda = ParseDouble(v); }},
      {"c0", [](RunConfig &c, const std::string &v) { c.c0 = ParseDouble(v); }},
      {"lyapunov_gamma", [](RunConfig &c, const std::string &v) { c.lyapunov_gamma = ParseDouble(v); }},
      {"s_list",
       [](RunConfig &c, const std::string &v) {
         c.s_list.clear();
         for (const auto &item : SplitList(v))
         {
           c.s_list.push_back(ParseDouble(item));
         }
       }},
      {"project_b_every", [](RunConfig &c, const std::string &v) { c.project_b_every = ParseInt(v); }},
      {"snapshot_every", [](RunConfig &c, const std::string &v) { c.snapshot_every = ParseInt(v); }},
      {"file_every", [](RunConfig &c, const std::string &v) { c.file_every = ParseInt(v); }},
      {"output_dir", [](RunConfig &c, const std::string &v) { c.output_dir = Trim(v); }},
      {"f_term_convention", [](RunConfig &c, const std::string &v) { c.f_term_convention = Trim(v); }},
      {"threads", [](RunConfig &c, const std::string &v) { c.threads = ParseInt(v); }},
      {"oversample_linf", [](RunConfig &c, const std::string &v) { c.oversample_linf = ParseBool(v); }},
      {"fit_t0", [](RunConfig &c, const std::string &v) { c.fit_t0 = ParseDouble(v); }},
      {"fit_t1", [](RunConfig &c, const std::string &v) { c.fit_t1 = ParseDouble(v); }},
  };
  return table;
}

[[noreturn]] void Invalid(const std::string &field, const std::string &reason)
{
  throw ConfigError(field + ": " + reason);
}

}  // namespace

const std::vector<std::string> &ConfigKeys()
{
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto &entry : Setters())
    {
      k.push_back(entry.first);
    }
    return k;
  }();
  return keys;
}

Vec3 ParseVector(const std::string &text)
{
  const auto items = SplitList(text);
  if (items.size() != 3)
  {
    throw ConfigError("expected three components, got " + std::to_string(items.size()));
  }
  return {ParseComponent(items[0]), ParseComponent(items[1]), ParseComponent(items[2])};
}

void SetConfigValue(RunConfig &cfg, const std::string &key, const std::string &value)
{
  for (const auto &[name, set] : Setters())
  {
    if (name == key)
    {
      try
      {
        set(cfg, value);
      }
      catch (const ConfigError &e)
      {
        throw ConfigError(key + ": " + e.what());
      }
      return;
    }
  }
  throw ConfigError(key + ": unknown configuration key");
}

RunConfig LoadConfig(const std::filesystem::path &path, RunConfig base)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError(path.string() + ": cannot open config file");
  }
  std::string line;
  long lineno = 0;
  while (std::getline(in, line))
  {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
    {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty())
    {
      continue;
    }
    const auto eq = line.find('=');
    const std::string where = path.string() + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string::npos)
    {
      throw ConfigError(where + "expected 'key = value', got '" + line + "'");
    }
    try
    {
      SetConfigValue(base, Trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    catch (const ConfigError &e)
    {
      throw ConfigError(where + e.what());
    }
  }
  return base;
}

void ValidateConfig(const RunConfig &cfg)
{
  if (cfg.grid < 4 || cfg.grid % 2 != 0)
  {
    Invalid("grid", "must be an even integer >= 4");
  }
  ParseScheme(cfg.scheme);
  ParsePreset(cfg.preset);
  ParseFTermConvention(cfg.f_term_convention);
  if (!(cfg.dt > 0.0))
  {
    Invalid("dt", "must be > 0");
  }
  if (!(cfg.cfl_advective > 0.0))
  {
    Invalid("cfl_advective", "must be > 0");
  }
  if (!(cfg.cfl_viscous > 0.0))
  {
    Invalid("cfl_viscous", "must be > 0");
  }
  if (cfg.t_end < 0.0)
  {
    Invalid("t_end", "must be >= 0");
  }
  if (cfg.epsilon < 0.0)
  {
    Invalid("epsilon", "must be >= 0");
  }
  if (!(cfg.r > 2.0))
  {
    Invalid("r", "Diophantine exponent must satisfy r > 2");
  }
  if (cfg.lattice_radius < 0)
  {
    Invalid("lattice_radius", "must be >= 0");
  }
  if (!(cfg.gamma_ad > 1.0))
  {
    Invalid("gamma_ad", "adiabatic exponent must be > 1");
  }
  if (!(cfg.mu > 0.0))
  {
    Invalid("mu", "shear viscosity must be > 0");
  }
  if (!(cfg.lambda + 2.0 * cfg.mu > 0.0))
  {
    Invalid("lambda", "lambda + 2 mu must be > 0");
  }
  if (!(cfg.c0 > 0.0 && cfg.c0 <= 2.0))
  {
    Invalid("c0", "must lie in (0, 2]");
  }
  if (!(cfg.lyapunov_gamma > 1.0))
  {
    Invalid("lyapunov_gamma", "must be > 1");
  }
  for (double s : cfg.s_list)
  {
    if (s < 0.0)
    {
      Invalid("s_list", "Sobolev orders must be >= 0");
    }
  }
  if (cfg.init_kmax < 1 || cfg.init_kmax > cfg.grid / 3)
  {
    Invalid("init_kmax", "must lie in [1, grid/3]");
  }
  if (cfg.project_b_every < 1)
  {
    Invalid("project_b_every", "must be >= 1");
  }
  if (cfg.snapshot_every < 1)
  {
    Invalid("snapshot_every", "must be >= 1");
  }
  if (cfg.file_every < 1)
  {
    Invalid("file_every", "must be >= 1");
  }
  if (cfg.threads < 1)
  {
    Invalid("threads", "must be >= 1");
  }
  if (cfg.output_dir.empty())
  {
    Invalid("output_dir", "must not be empty");
  }
}

std::string ConfigText(const RunConfig &cfg)
{
  std::ostringstream out;
  out.precision(17);
  out << "grid = " << cfg.grid << '\n'
      << "scheme = " << cfg.scheme << '\n'
      << "dt = " << cfg.dt << '\n'
      << "cfl_advective = " << cfg.cfl_advective << '\n'
      << "cfl_viscous = " << cfg.cfl_viscous << '\n'
      << "t_end = " << cfg.t_end << '\n'
      << "epsilon = " << cfg.epsilon << '\n'
      << "seed = " << cfg.seed << '\n'
      << "preset = " << cfg.preset << '\n'
      << "init_kmax = " << cfg.init_kmax << '\n'
      << "n = " << cfg.n[0] << ", " << cfg.n[1] << ", " << cfg.n[2] << '\n'
      << "r = " << cfg.r << '\n'
      << "lattice_radius = " << cfg.lattice_radius << '\n'
      << "gamma_ad = " << cfg.gamma_ad << '\n'
      << "mu = " << cfg.mu << '\n'
      << "lambda = " << cfg.lambda << '\n'
      << "c0 = " << cfg.c0 << '\n'
      << "lyapunov_gamma = " << cfg.lyapunov_gamma << '\n';
  if (!cfg.s_list.empty())
  {
    out << "s_list = ";
    for (std::size_t i = 0; i < cfg.s_list.size(); ++i)
    {
      out << (i ? ", " : "") << cfg.s_list[i];
    }
    out << '\n';
  }
  out << "project_b_every = " << cfg.project_b_every << '\n'
      << "snapshot_every = " << cfg.snapshot_every << '\n'
      << "file_every = " << cfg.file_every << '\n'
      << "output_dir = " << cfg.output_dir << '\n'
      << "f_term_convention = " << cfg.f_term_convention << '\n'
      << "threads = " << cfg.threads << '\n'
      << "oversample_linf = " << (cfg.oversample_linf ? "true" : "false") << '\n'
      << "fit_t0 = " << cfg.fit_t0 << '\n'
      << "fit_t1 = " << cfg.fit_t1 << '\n';
  return out.str();
}

int EffectiveLatticeRadius(const RunConfig &cfg)
{
  return cfg.lattice_radius > 0 ? cfg.lattice_radius : cfg.grid / 2;
}

FTermConvention ParseFTermConvention(const std::string &name)
{
  if (name == "literal")
  {
    return FTermConvention::kLiteral;
  }
  if (name == "consistent")
  {
    return FTermConvention::kConsistent;
  }
  throw ConfigError("f_term_convention: unknown value '" + name + "' (literal, consistent)");
}

BackgroundField MakeBackground(const Vec3 &n, double r, int lattice_radius)
{
  if (n[0] == 0.0 && n[1] == 0.0 && n[2] == 0.0)
  {
    if (!(r > 2.0))
    {
      throw InvalidExponent("Diophantine exponent must satisfy r > 2");
    }
    BackgroundField bg;
    bg.n = n;
    bg.r = r;
    bg.lattice_radius = lattice_radius;
    bg.c_empirical = 0.0;
    return bg;
  }
  return Certify(n, r, lattice_radius);
}

Physics BuildPhysics(const RunConfig &cfg)
{
  Physics ph;
  ph.background = MakeBackground(cfg.n, cfg.r, EffectiveLatticeRadius(cfg));
  ph.pressure = PressureLaw(cfg.gamma_ad);
  ph.viscosities.mu = cfg.mu;
  ph.viscosities.lambda = cfg.lambda;
  ph.c0 = cfg.c0;
  ph.f_terms = ParseFTermConvention(cfg.f_term_convention);
  return ph;
}

StepperConfig BuildStepperConfig(const RunConfig &cfg)
{
  StepperConfig s;
  s.scheme = ParseScheme(cfg.scheme);
  s.dt = cfg.dt;
  s.cfl_advective = cfg.cfl_advective;
  s.cfl_viscous = cfg.cfl_viscous;
  s.t_end = cfg.t_end;
  s.project_b_every = cfg.project_b_every;
  s.snapshot_every = cfg.snapshot_every;
  return s;
}

DiagnosticsConfig BuildDiagnosticsConfig(const RunConfig &cfg)
{
  DiagnosticsConfig d;
  d.s_list = cfg.s_list.empty() ? DefaultSobolevList(cfg.r) : cfg.s_list;
  d.lyapunov_gamma = cfg.lyapunov_gamma;
  d.oversample_linf = cfg.oversample_linf;
  return d;
}

InitialConfig BuildInitialConfig(const RunConfig &cfg)
{
  InitialConfig ic;
  ic.preset = ParsePreset(cfg.preset);
  ic.epsilon = cfg.epsilon;
  ic.seed = cfg.seed;
  ic.kmax = cfg.init_kmax;
  return ic;
}

}  // namespace tmhd
