// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include "tmhd/snapshot_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include "tmhd/errors.hpp"

namespace tmhd
{

namespace
{

constexpr char kMagic[8] = {'T', 'M', 'H', 'D', 'S', 'N', 'A', 'P'};

template <typename T>
T ToLittle(T v)
{
  if constexpr (std::endian::native == std::endian::big)
  {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    std::reverse(b, b + sizeof(T));
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

class Writer
{
public:
  explicit Writer(const std::filesystem::path &path) : path_(path), out_(path, std::ios::binary)
  {
    if (!out_)
    {
      throw FormatError("cannot open " + path.string() + " for writing");
    }
  }

  template <typename T>
  void Put(T v)
  {
    v = ToLittle(v);
    out_.write(reinterpret_cast<const char *>(&v), sizeof(T));
  }

  void Bytes(const char *data, std::size_t n) { out_.write(data, static_cast<std::streamsize>(n)); }

  void Finish()
  {
    out_.flush();
    if (!out_)
    {
      throw FormatError("write failed for " + path_.string());
    }
  }

private:
  std::filesystem::path path_;
  std::ofstream out_;
};

class Reader
{
public:
  explicit Reader(const std::filesystem::path &path) : path_(path), in_(path, std::ios::binary)
  {
    if (!in_)
    {
      throw FormatError("cannot open snapshot " + path.string());
    }
  }

  template <typename T>
  T Get(const char *what)
  {
    T v;
    in_.read(reinterpret_cast<char *>(&v), sizeof(T));
    if (in_.gcount() != static_cast<std::streamsize>(sizeof(T)))
    {
      Fail(std::string("truncated while reading ") + what);
    }
    return ToLittle(v);
  }

  void Bytes(char *data, std::size_t n, const char *what)
  {
    in_.read(data, static_cast<std::streamsize>(n));
    if (in_.gcount() != static_cast<std::streamsize>(n))
    {
      Fail(std::string("truncated while reading ") + what);
    }
  }

  bool AtEnd()
  {
    return in_.peek() == std::char_traits<char>::eof();
  }

  [[noreturn]] void Fail(const std::string &msg) const
  {
    throw FormatError(path_.string() + ": " + msg);
  }

private:
  std::filesystem::path path_;
  std::ifstream in_;
};

template <typename Visit>
void ForEachStoredMode(const Grid &grid, Visit visit)
{
  const int n = grid.N();
  const int half = n / 2;
  for (int k1 = -half + 1; k1 <= half; ++k1)
  {
    for (int k2 = -half + 1; k2 <= half; ++k2)
    {
      for (int k3 = 0; k3 <= half; ++k3)
      {
        visit(static_cast<std::size_t>(grid.Find({k1, k2, k3})));
      }
    }
  }
}

std::vector<const SpectralScalar *> Blocks(const Fields &f)
{
  return {&f.a, &f.u[0], &f.u[1], &f.u[2], &f.b[0], &f.b[1], &f.b[2]};
}

}  // namespace

std::string SnapshotFileName(long step)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "snap_%09ld.bin", step);
  return buf;
}

void WriteSnapshot(const std::filesystem::path &path, const Snapshot &snap)
{
  const Physics &ph = snap.physics;
  const Grid &grid = snap.state.a.grid();
  Writer w(path);
  w.Bytes(kMagic, sizeof(kMagic));
  w.Put<std::uint32_t>(kSnapshotVersion);
  w.Put<std::int32_t>(grid.N());
  w.Put<std::int64_t>(snap.step);
  w.Put<double>(snap.state.t);
  w.Put<double>(ph.pressure.gamma());
  w.Put<double>(ph.viscosities.mu);
  w.Put<double>(ph.viscosities.lambda);
  w.Put<double>(ph.c0);
  for (double x : ph.background.n)
  {
    w.Put<double>(x);
  }
  w.Put<double>(ph.background.r);
  w.Put<std::int32_t>(ph.background.lattice_radius);
  w.Put<std::int32_t>(ph.f_terms == FTermConvention::kConsistent ? 1 : 0);
  w.Put<double>(ph.background.c_empirical);
  w.Put<double>(snap.diagnostics.lyapunov_gamma);
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(snap.diagnostics.s_list.size()));
  for (double s : snap.diagnostics.s_list)
  {
    w.Put<double>(s);
  }
  w.Put<std::uint8_t>(snap.diagnostics.oversample_linf ? 1 : 0);
  const RunMonitors &m = snap.monitors;
  for (double x : {m.dissipation_integral, m.directional_b_integral, m.div_b_pre, m.div_b_post,
                   m.step_mass_drift, m.step_mean_b_drift[0], m.step_mean_b_drift[1],
                   m.step_mean_b_drift[2]})
  {
    w.Put<double>(x);
  }
  for (const SpectralScalar *f : Blocks(snap.state))
  {
    ForEachStoredMode(grid, [&](std::size_t idx) {
      w.Put<double>((*f)[idx].real());
      w.Put<double>((*f)[idx].imag());
    });
  }
  w.Finish();
}

Snapshot ReadSnapshot(const std::filesystem::path &path, GridPtr grid)
{
  Reader r(path);
  char magic[8];
  r.Bytes(magic, sizeof(magic), "magic");
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
  {
    r.Fail("not a snapshot file (bad magic)");
  }
  const auto version = r.Get<std::uint32_t>("version");
  if (version != kSnapshotVersion)
  {
    r.Fail("unsupported snapshot version " + std::to_string(version));
  }
  const auto n = r.Get<std::int32_t>("grid size");
  if (n < 2 || n % 2 != 0)
  {
    r.Fail("invalid grid size " + std::to_string(n));
  }
  Snapshot snap;
  snap.step = r.Get<std::int64_t>("step");
  const double t = r.Get<double>("time");
  const double gamma_ad = r.Get<double>("gamma_ad");
  snap.physics.pressure = PressureLaw(gamma_ad);
  snap.physics.viscosities.mu = r.Get<double>("mu");
  snap.physics.viscosities.lambda = r.Get<double>("lambda");
  snap.physics.c0 = r.Get<double>("c0");
  for (double &x : snap.physics.background.n)
  {
    x = r.Get<double>("n");
  }
  snap.physics.background.r = r.Get<double>("r");
  snap.physics.background.lattice_radius = r.Get<std::int32_t>("lattice radius");
  snap.physics.f_terms = r.Get<std::int32_t>("f-term convention") == 1
                             ? FTermConvention::kConsistent
                             : FTermConvention::kLiteral;
  snap.physics.background.c_empirical = r.Get<double>("c_empirical");
  snap.diagnostics.lyapunov_gamma = r.Get<double>("lyapunov gamma");
  const auto m = r.Get<std::uint32_t>("s-list size");
  if (m > 1024)
  {
    r.Fail("implausible s-list size " + std::to_string(m));
  }
  for (std::uint32_t i = 0; i < m; ++i)
  {
    snap.diagnostics.s_list.push_back(r.Get<double>("s-list"));
  }
  snap.diagnostics.oversample_linf = r.Get<std::uint8_t>("oversample flag") != 0;
  RunMonitors &mon = snap.monitors;
  mon.dissipation_integral = r.Get<double>("monitors");
  mon.directional_b_integral = r.Get<double>("monitors");
  mon.div_b_pre = r.Get<double>("monitors");
  mon.div_b_post = r.Get<double>("monitors");
  mon.step_mass_drift = r.Get<double>("monitors");
  for (double &x : mon.step_mean_b_drift)
  {
    x = r.Get<double>("monitors");
  }

  if (!grid || grid->N() != n)
  {
    grid = Grid::Create(n);
  }
  snap.state = State(Fields::Zero(grid), t);
  const char *names[] = {"a", "u1", "u2", "u3", "B1", "B2", "B3"};
  int block = 0;
  State &st = snap.state;
  for (SpectralScalar *f : {&st.a, &st.u[0], &st.u[1], &st.u[2], &st.b[0], &st.b[1], &st.b[2]})
  {
    ForEachStoredMode(*grid, [&](std::size_t idx) {
      const double re = r.Get<double>(names[block]);
      const double im = r.Get<double>(names[block]);
      (*f)[idx] = Complex(re, im);
    });
    ++block;
  }
  if (!r.AtEnd())
  {
    r.Fail("trailing bytes after coefficient data");
  }
  return snap;
}

std::vector<std::filesystem::path> ListSnapshots(const std::filesystem::path &dir)
{
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::is_directory(dir))
  {
    throw FormatError("snapshot directory " + dir.string() + " does not exist");
  }
  for (const auto &entry : std::filesystem::directory_iterator(dir))
  {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.rfind("snap_", 0) == 0 && entry.path().extension() == ".bin")
    {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tmhd
