// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include "tmhd/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include "tmhd/errors.hpp"

namespace tmhd
{

namespace
{

// k and -k give the same value; keep the one whose first nonzero component is positive.
Index3 Canonical(const Index3 &k)
{
  for (int d = 0; d < 3; ++d)
  {
    if (k[d] != 0)
    {
      return k[d] > 0 ? k : Index3{-k[0], -k[1], -k[2]};
    }
  }
  return k;
}

double Ratio(const Vec3 &n, double r, const Index3 &k)
{
  const double two_pi = 2.0 * std::numbers::pi;
  const double ndotxi = two_pi * (n[0] * k[0] + n[1] * k[1] + n[2] * k[2]);
  const double xi2 = two_pi * two_pi * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  return std::pow(1.0 + xi2, -0.5 * r) / std::abs(ndotxi);
}

}  // namespace

BackgroundField Certify(const Vec3 &n, double r, int lattice_radius)
{
  if (!(r > 2.0))
  {
    std::ostringstream msg;
    msg << "Diophantine exponent must satisfy r > 2, got " << r;
    throw InvalidExponent(msg.str());
  }
  if (n[0] == 0.0 && n[1] == 0.0 && n[2] == 0.0)
  {
    throw ZeroVector("background field n must be nonzero");
  }
  if (lattice_radius < 1)
  {
    throw std::invalid_argument("lattice radius must be >= 1");
  }

  const int K = lattice_radius;
  const long K2 = static_cast<long>(K) * K;
  BackgroundField bg;
  bg.n = n;
  bg.r = r;
  bg.lattice_radius = K;
  bg.c_empirical = std::numeric_limits<double>::infinity();

  // Order key: (c, |k|^2, descending |k_i| pattern, descending signed pattern).
  auto key = [](double c, const Index3 &k) {
    const long kk = static_cast<long>(k[0]) * k[0] + static_cast<long>(k[1]) * k[1] +
                    static_cast<long>(k[2]) * k[2];
    return std::make_tuple(c, kk, -std::abs(k[0]), -std::abs(k[1]), -std::abs(k[2]), -k[0],
                           -k[1], -k[2]);
  };
  bool have = false;
  decltype(key(0.0, Index3{})) best{};
  for (int k1 = 0; k1 <= K; ++k1)
  {
    for (int k2 = -K; k2 <= K; ++k2)
    {
      for (int k3 = -K; k3 <= K; ++k3)
      {
        const Index3 k{k1, k2, k3};
        const long kk = static_cast<long>(k1) * k1 + static_cast<long>(k2) * k2 +
                        static_cast<long>(k3) * k3;
        if (kk == 0 || kk > K2 || Canonical(k) != k)
        {
          continue;
        }
        const double ndotk = n[0] * k1 + n[1] * k2 + n[2] * k3;
        const double c = std::abs(ndotk) * std::pow(std::sqrt(static_cast<double>(kk)), r);
        const auto cand = key(c, k);
        if (!have || cand < best)
        {
          best = cand;
          bg.c_empirical = c;
          bg.resonant_k = k;
          have = true;
        }
      }
    }
  }
  return bg;
}

double PoincareConstant(const BackgroundField &bg, double s)
{
  (void)s;
  if (!(bg.c_empirical > 0.0))
  {
    throw NotDiophantine("c_empirical = 0: n is resonant on the certified lattice");
  }
  const int K = bg.lattice_radius;
  const long K2 = static_cast<long>(K) * K;
  double best = 0.0;
  for (int k1 = 0; k1 <= K; ++k1)
  {
    for (int k2 = -K; k2 <= K; ++k2)
    {
      for (int k3 = -K; k3 <= K; ++k3)
      {
        const Index3 k{k1, k2, k3};
        const long kk = static_cast<long>(k1) * k1 + static_cast<long>(k2) * k2 +
                        static_cast<long>(k3) * k3;
        if (kk == 0 || kk > K2 || Canonical(k) != k)
        {
          continue;
        }
        best = std::max(best, Ratio(bg.n, bg.r, k));
      }
    }
  }
  return best;
}

double PoincareConstantOnGrid(const Vec3 &n, double r, double s, const Grid &grid)
{
  (void)s;
  double best = 0.0;
  for (std::size_t i = 1; i < grid.SpectralSize(); ++i)
  {
    if (!grid.Retained(i))
    {
      continue;
    }
    const Index3 &k = grid.Wavenumber(i);
    const double ndotk = n[0] * k[0] + n[1] * k[1] + n[2] * k[2];
    if (ndotk == 0.0)
    {
      throw NotDiophantine("n is resonant on the retained grid modes");
    }
    best = std::max(best, Ratio(n, r, k));
  }
  return best;
}

}  // namespace tmhd
