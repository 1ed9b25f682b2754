#pragma once

#include <stdexcept>
#include <string>

namespace squeeze {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or violated type invariant.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Time query outside the declared domain of a schedule or function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parameters violate |eps|^2 < kappa^2 + 4 Omega^2 where a closed form needs it.
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// Adaptive integration could not meet the requested tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double t_lo, double t_hi)
      : Error(what), t_lo_(t_lo), t_hi_(t_hi) {}

  double interval_begin() const noexcept { return t_lo_; }
  double interval_end() const noexcept { return t_hi_; }

 private:
  double t_lo_;
  double t_hi_;
};

/// Quadrature did not resolve to the requested tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double coarse, double refined)
      : Error(what), coarse_(coarse), refined_(refined) {}

  double coarse() const noexcept { return coarse_; }
  double refined() const noexcept { return refined_; }

 private:
  double coarse_;
  double refined_;
};

}  // namespace squeeze
