#pragma once

#include <stdexcept>
#include <string>

namespace levrot {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not settle before the node cap.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double previous, double last)
      : Error(what), previous_estimate(previous), last_estimate(last) {}
  double previous_estimate;
  double last_estimate;
};

/// a + q^2/2 < 0: the pseudopotential is repulsive for this mode.
class AntiTrappingError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

class ExtractionError : public Error {
 public:
  using Error::Error;
};

/// The spin/phonon resonance cannot be reached; `limiting_quantity` names why.
class ResonanceUnreachable : public Error {
 public:
  ResonanceUnreachable(const std::string& what, std::string limiting)
      : Error(what), limiting_quantity(std::move(limiting)) {}
  std::string limiting_quantity;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace levrot
