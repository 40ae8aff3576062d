// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TMHD_SPECTRAL_OPS_HPP
#define TMHD_SPECTRAL_OPS_HPP

#include "tmhd/field.hpp"

namespace tmhd
{

// Differential operators act mode by mode. Axes are 0-based (x1 -> 0).
SpectralScalar Derivative(const SpectralScalar &f, int axis);
SpectralVector Gradient(const SpectralScalar &f);
SpectralScalar Divergence(const SpectralVector &u);
SpectralVector Curl(const SpectralVector &u);
SpectralScalar Laplacian(const SpectralScalar &f);
SpectralVector Laplacian(const SpectralVector &u);

// -f_k / |xi_k|^2 for k != 0. Throws MeanNotZero if |mean(f)| exceeds 1e-10 times the
// L2 norm of f.
SpectralScalar InverseLaplacian(const SpectralScalar &f);

// Leray pair: Q u = grad lap^-1 div u, P = I - Q. Modes whose derivative wavevector
// vanishes (k = 0 and pure Nyquist corners) belong to P.
SpectralVector LerayP(const SpectralVector &u);
SpectralVector LerayQ(const SpectralVector &u);

// (n . grad) f, i.e. multiplication by i (n . xi_k).
SpectralScalar DirectionalDerivative(const Vec3 &n, const SpectralScalar &f);
SpectralVector DirectionalDerivative(const Vec3 &n, const SpectralVector &u);

// Pointwise n . u; linear, so exact in coefficients.
SpectralScalar Dot(const Vec3 &n, const SpectralVector &u);

// n * f as a vector field.
SpectralVector Times(const Vec3 &n, const SpectralScalar &f);

//
// Sobolev norms with the multiplier convention
//   ||f||_{H^s}^2 = sum_k (1 + |xi_k|^2)^s |f_k|^2,
// summed over the full lattice (both k and -k). Vector norms add component squares.
//
double SobolevNormSquared(const SpectralScalar &f, double s);
double SobolevNormSquared(const SpectralVector &u, double s);
double SobolevNorm(const SpectralScalar &f, double s);
double SobolevNorm(const SpectralVector &u, double s);
double HsInner(const SpectralScalar &f, const SpectralScalar &g, double s);
double HsInner(const SpectralVector &f, const SpectralVector &g, double s);

// ||Lambda^s f||_{L2}, Lambda = sqrt(-lap).
double HomogeneousNorm(const SpectralScalar &f, double s);

// ||grad f||_{H^s}^2 = sum_axis ||d_axis f||_{H^s}^2 without forming the derivatives.
double GradientSobolevNormSquared(const SpectralScalar &f, double s);
double GradientSobolevNormSquared(const SpectralVector &u, double s);

double L2Norm(const SpectralScalar &f);
double L2Norm(const SpectralVector &u);

// Max over collocation points; with oversample the field is first zero-padded onto a
// grid with twice the points per axis.
double LinfNorm(const SpectralScalar &f, bool oversample = false);
// Max over collocation points of the pointwise Euclidean norm of the components.
double LinfNorm(std::span<const GridValues> components);

// Zero-pads f onto a finer grid (Nyquist-index modes of the coarse grid are dropped).
SpectralScalar Refine(const SpectralScalar &f, const GridPtr &fine);

// 2/3 rule: zero every coefficient with some |k_i| > N/3.
SpectralScalar Dealias(SpectralScalar f);
SpectralVector Dealias(SpectralVector u);
void DealiasInPlace(SpectralScalar &f);
void DealiasInPlace(SpectralVector &u);

}  // namespace tmhd

#endif  // TMHD_SPECTRAL_OPS_HPP
