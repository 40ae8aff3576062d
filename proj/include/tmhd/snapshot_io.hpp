// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TMHD_SNAPSHOT_IO_HPP
#define TMHD_SNAPSHOT_IO_HPP

#include <cstdint>
#include <filesystem>
#include <vector>
#include "tmhd/diagnostics.hpp"
#include "tmhd/model.hpp"

namespace tmhd
{

//
// Binary snapshot layout (all multi-byte values little-endian):
//
//   char[8]   magic "TMHDSNAP"
//   uint32    version (1)
//   int32     N
//   int64     step
//   double    t
//   double    gamma_ad, mu, lambda, c0, n1, n2, n3, r
//   int32     lattice radius K
//   int32     f-term convention (0 literal, 1 consistent)
//   double    c_empirical, lyapunov gamma
//   uint32    number of Sobolev orders m, then m doubles
//   uint8     oversample_linf flag
//   double    dissipation_integral, directional_b_integral, div_b_pre, div_b_post,
//             step_mass_drift, step_mean_b_drift[3]
//   data      7 blocks (a, u1, u2, u3, B1, B2, B3); each block lists (re, im) pairs for
//             k1 in (-N/2, N/2], k2 in (-N/2, N/2], k3 in [0, N/2], k1 outermost
//
struct Snapshot
{
  long step = 0;
  State state;
  Physics physics;
  DiagnosticsConfig diagnostics;
  RunMonitors monitors;
};

inline constexpr std::uint32_t kSnapshotVersion = 1;

void WriteSnapshot(const std::filesystem::path &path, const Snapshot &snap);

// Throws FormatError (naming the file) on bad magic, version mismatch or truncation.
// Grids are created on demand; pass an existing grid of matching size to reuse it.
Snapshot ReadSnapshot(const std::filesystem::path &path, GridPtr grid = nullptr);

// Snapshot files of a run directory in step order.
std::vector<std::filesystem::path> ListSnapshots(const std::filesystem::path &dir);

std::string SnapshotFileName(long step);

}  // namespace tmhd

#endif  // TMHD_SNAPSHOT_IO_HPP
