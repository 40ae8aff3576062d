// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#include "tmhd/grid.hpp"

#include <cmath>
#include <cstring>
#include <fftw3.h>
#include <numbers>
#include <stdexcept>
#include <string>
#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace tmhd
{

namespace
{

// FFTW planning is not thread safe.
std::mutex &PlannerMutex()
{
  static std::mutex m;
  return m;
}

#if defined(__GLIBC__)
// Field temporaries are N^3 doubles; serving them from the heap instead of fresh mmaps
// avoids a page-fault storm on every transform.
void TuneAllocator()
{
  static std::once_flag once;
  std::call_once(once, [] {
    mallopt(M_MMAP_THRESHOLD, 256 * 1024 * 1024);
    mallopt(M_TRIM_THRESHOLD, 512 * 1024 * 1024);
  });
}
#else
void TuneAllocator() {}
#endif

// Scratch arrays reused across transforms on the calling thread.
template <typename T>
std::vector<T> &Scratch(std::size_t size)
{
  thread_local std::vector<T> buf;
  if (buf.size() < size)
  {
    buf.resize(size);
  }
  return buf;
}

int SignedWavenumber(int i, int n)
{
  return i <= n / 2 ? i : i - n;
}

}  // namespace

std::shared_ptr<const Grid> Grid::Create(int points_per_axis, int threads)
{
  return std::shared_ptr<const Grid>(new Grid(points_per_axis, threads));
}

Grid::Grid(int points_per_axis, int threads) : n_(points_per_axis)
{
  if (n_ < 4 || n_ % 2 != 0)
  {
    throw std::invalid_argument("grid size must be an even integer >= 4, got " +
                                std::to_string(n_));
  }
  const std::size_t n = static_cast<std::size_t>(n_);
  const std::size_t nh = static_cast<std::size_t>(HalfN());
  real_size_ = n * n * n;
  spectral_size_ = n * n * nh;

  k_.resize(spectral_size_);
  xi_.resize(spectral_size_);
  xi2_.resize(spectral_size_);
  weight_.resize(spectral_size_);
  retained_.resize(spectral_size_);

  const double two_pi = 2.0 * std::numbers::pi;
  const int cutoff = DealiasCutoff();
  std::size_t idx = 0;
  for (int i1 = 0; i1 < n_; ++i1)
  {
    for (int i2 = 0; i2 < n_; ++i2)
    {
      for (int i3 = 0; i3 < HalfN(); ++i3, ++idx)
      {
        const Index3 k = {SignedWavenumber(i1, n_), SignedWavenumber(i2, n_), i3};
        k_[idx] = k;
        Vec3 xi{};
        double xi2 = 0.0;
        bool keep = true;
        for (int d = 0; d < 3; ++d)
        {
          const bool nyquist = (k[d] == n_ / 2);
          xi[d] = nyquist ? 0.0 : two_pi * k[d];
          xi2 += two_pi * two_pi * k[d] * k[d];
          keep = keep && std::abs(k[d]) <= cutoff;
        }
        xi_[idx] = xi;
        xi2_[idx] = xi2;
        weight_[idx] = (i3 == 0 || i3 == n_ / 2) ? 1.0 : 2.0;
        retained_[idx] = keep ? 1 : 0;
      }
    }
  }

  TuneAllocator();
  std::lock_guard<std::mutex> lock(PlannerMutex());
  static bool threads_ready = false;
  if (threads > 1 && !threads_ready)
  {
    threads_ready = fftw_init_threads() != 0;
  }
  if (threads_ready)
  {
    fftw_plan_with_nthreads(threads > 1 ? threads : 1);
  }
  std::vector<double> rbuf(real_size_);
  std::vector<Complex> cbuf(spectral_size_);
  auto *cptr = reinterpret_cast<fftw_complex *>(cbuf.data());
  // Plans assume the alignment of these heap buffers; Forward and Inverse fall back to
  // scratch copies for arrays aligned differently.
  real_alignment_ = fftw_alignment_of(rbuf.data());
  complex_alignment_ = fftw_alignment_of(reinterpret_cast<double *>(cbuf.data()));
  const unsigned flags = FFTW_ESTIMATE;
  forward_plan_ = fftw_plan_dft_r2c_3d(n_, n_, n_, rbuf.data(), cptr, flags);
  inverse_plan_ = fftw_plan_dft_c2r_3d(n_, n_, n_, cptr, rbuf.data(), flags);
  if (!forward_plan_ || !inverse_plan_)
  {
    throw std::runtime_error("FFTW planning failed");
  }
}

Grid::~Grid()
{
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

std::ptrdiff_t Grid::Find(const Index3 &k) const
{
  const int half = n_ / 2;
  for (int d = 0; d < 3; ++d)
  {
    if (k[d] <= -half || k[d] > half)
    {
      return -1;
    }
  }
  if (k[2] < 0)
  {
    return -1;
  }
  const int i1 = k[0] < 0 ? k[0] + n_ : k[0];
  const int i2 = k[1] < 0 ? k[1] + n_ : k[1];
  return (static_cast<std::ptrdiff_t>(i1) * n_ + i2) * HalfN() + k[2];
}

const std::vector<double> &Grid::SobolevWeights(double s) const
{
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto &slot = sobolev_cache_[s];
  if (!slot)
  {
    auto w = std::make_unique<std::vector<double>>(spectral_size_);
    for (std::size_t i = 0; i < spectral_size_; ++i)
    {
      (*w)[i] = std::pow(1.0 + xi2_[i], s);
    }
    slot = std::move(w);
  }
  return *slot;
}

const std::vector<double> &Grid::HomogeneousWeights(double s) const
{
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto &slot = homogeneous_cache_[s];
  if (!slot)
  {
    auto w = std::make_unique<std::vector<double>>(spectral_size_);
    for (std::size_t i = 0; i < spectral_size_; ++i)
    {
      (*w)[i] = (s == 0.0) ? 1.0 : (xi2_[i] == 0.0 ? 0.0 : std::pow(xi2_[i], s));
    }
    slot = std::move(w);
  }
  return *slot;
}

void Grid::Forward(std::span<const double> values, std::span<Complex> coeffs) const
{
  if (values.size() != real_size_ || coeffs.size() != spectral_size_)
  {
    throw std::invalid_argument("Grid::Forward: size mismatch");
  }
  // r2c does not modify its input, FFTW's signature is just not const-correct.
  auto *in = const_cast<double *>(values.data());
  if (fftw_alignment_of(in) != real_alignment_)
  {
    auto &buf = Scratch<double>(real_size_);
    std::memcpy(buf.data(), values.data(), real_size_ * sizeof(double));
    in = buf.data();
  }
  auto *out = reinterpret_cast<fftw_complex *>(coeffs.data());
  if (fftw_alignment_of(reinterpret_cast<double *>(out)) != complex_alignment_)
  {
    auto &buf = Scratch<Complex>(spectral_size_);
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), in,
                         reinterpret_cast<fftw_complex *>(buf.data()));
    std::copy(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(spectral_size_),
              coeffs.begin());
  }
  else
  {
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), in, out);
  }
  const double scale = 1.0 / static_cast<double>(real_size_);
  for (auto &c : coeffs)
  {
    c *= scale;
  }
}

void Grid::Inverse(std::span<const Complex> coeffs, std::span<double> values) const
{
  if (values.size() != real_size_ || coeffs.size() != spectral_size_)
  {
    throw std::invalid_argument("Grid::Inverse: size mismatch");
  }
  // c2r destroys its input.
  auto &scratch = Scratch<Complex>(spectral_size_);
  std::copy(coeffs.begin(), coeffs.end(), scratch.begin());
  auto *in = reinterpret_cast<fftw_complex *>(scratch.data());
  if (fftw_alignment_of(values.data()) != real_alignment_)
  {
    auto &buf = Scratch<double>(real_size_);
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), in, buf.data());
    std::copy(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(real_size_),
              values.begin());
  }
  else
  {
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), in, values.data());
  }
}

void Grid::InverseInPlace(std::span<Complex> coeffs, std::span<double> values) const
{
  if (values.size() != real_size_ || coeffs.size() != spectral_size_)
  {
    throw std::invalid_argument("Grid::InverseInPlace: size mismatch");
  }
  if (fftw_alignment_of(reinterpret_cast<double *>(coeffs.data())) != complex_alignment_ ||
      fftw_alignment_of(values.data()) != real_alignment_)
  {
    Inverse(coeffs, values);
    return;
  }
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex *>(coeffs.data()), values.data());
}

}  // namespace tmhd
