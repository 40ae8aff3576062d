// Copyright 2026 The torus-mhd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TMHD_ERRORS_HPP
#define TMHD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tmhd
{

// Base of every library error; callers that only need a message catch this.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Spectral algebra.
class MeanNotZero : public Error
{
public:
  using Error::Error;
};

class NegativeOrder : public Error
{
public:
  using Error::Error;
};

// Diophantine certification.
class InvalidExponent : public Error
{
public:
  using Error::Error;
};

class ZeroVector : public Error
{
public:
  using Error::Error;
};

class NotDiophantine : public Error
{
public:
  using Error::Error;
};

// Physics and time stepping. These are "numerical failures" at the CLI level.
class NumericalFailure : public Error
{
public:
  using Error::Error;
};

class VacuumApproach : public NumericalFailure
{
public:
  using NumericalFailure::NumericalFailure;
};

class NonpositiveDensity : public NumericalFailure
{
public:
  using NumericalFailure::NumericalFailure;
};

class StabilityViolation : public NumericalFailure
{
public:
  using NumericalFailure::NumericalFailure;
};

// Diagnostics.
class NonpositiveValues : public Error
{
public:
  using Error::Error;
};

class InsufficientSamples : public Error
{
public:
  using Error::Error;
};

// Input handling.
class ConfigError : public Error
{
public:
  using Error::Error;
};

class FormatError : public Error
{
public:
  using Error::Error;
};

}  // namespace tmhd

#endif  // TMHD_ERRORS_HPP
