// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TMHD_DIOPHANTINE_HPP
#define TMHD_DIOPHANTINE_HPP

#include "tmhd/grid.hpp"

namespace tmhd
{

//
// Background magnetic field n with its non-resonance certificate over the truncated
// lattice 0 < |k| <= K (Euclidean norm):
//   c_empirical = min |n.k| |k|^r,
// attained at resonant_k. This is a finite-lattice statement only; it never certifies
// the condition on all of Z^3.
//
struct BackgroundField
{
  Vec3 n{};
  double r = 3.0;
  int lattice_radius = 1;
  double c_empirical = 0.0;
  Index3 resonant_k{};
};

// Exhaustive scan. Ties are broken towards smaller |k|, then towards the representative
// with larger leading absolute components, so the result is deterministic.
// Throws InvalidExponent if r <= 2, ZeroVector if n = 0, std::invalid_argument if K < 1.
BackgroundField Certify(const Vec3 &n, double r, int lattice_radius);

// Band-limited constant
//   C(K) = max_{0<|k|<=K} (1+|xi_k|^2)^{-r/2} / |n.xi_k|,  xi_k = 2 pi k,
// so that ||f||_{H^s} <= C(K) ||n.grad f||_{H^{s+r}} for mean-zero f supported on the
// lattice ball. The s-dependence cancels in the multiplier form but is kept in the
// signature. Throws NotDiophantine if c_empirical = 0.
double PoincareConstant(const BackgroundField &bg, double s);

// Same constant over the modes a grid keeps after dealiasing (the support of every
// simulated field), which is a cube rather than a ball.
double PoincareConstantOnGrid(const Vec3 &n, double r, double s, const Grid &grid);

}  // namespace tmhd

#endif  // TMHD_DIOPHANTINE_HPP
