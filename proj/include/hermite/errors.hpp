#pragma once

#include <stdexcept>
#include <string>

namespace hermite {

// Bad argument or config value. Maps to CLI exit code 2.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input dimensions do not match the grid/basis they are used with.
struct ShapeError : ParameterError {
  using ParameterError::ParameterError;
};

// Evolution time too close to the kernel's singular set {k*pi/2}.
struct SingularTimeError : ParameterError {
  using ParameterError::ParameterError;
};

// Strichartz ratio with vanishing Schatten denominator.
struct DegenerateSystemError : ParameterError {
  using ParameterError::ParameterError;
};

// Parameter sequence outside the 1/mu << beta << L^2 regime.
struct RegimeError : ParameterError {
  using ParameterError::ParameterError;
};

// A numerical result failed its accuracy contract. Maps to CLI exit code 3.
struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quadrature-built gamma0 lost more trace than allowed.
struct ResolutionError : AccuracyError {
  using AccuracyError::AccuracyError;
};

// Spectral round trip residual exceeded the band-limit tolerance.
struct BandLimitError : AccuracyError {
  using AccuracyError::AccuracyError;
};

// NaN/overflow during time stepping. Maps to CLI exit code 4.
struct InstabilityError : std::runtime_error {
  InstabilityError(const std::string& what, long step_index)
      : std::runtime_error(what + " (step " + std::to_string(step_index) + ")"),
        step(step_index) {}
  long step;
};

}  // namespace hermite
