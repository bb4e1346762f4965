#pragma once

#include <stdexcept>
#include <string>

namespace aoi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A distribution shape, count, fraction or grid value outside its domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Arrival rate at or above the service rate on a single-server station.
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// Too few samples to form the requested statistic.
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration text.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace aoi
