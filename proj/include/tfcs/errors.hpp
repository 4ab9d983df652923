#pragma once

#include <stdexcept>
#include <string>

namespace tfcs {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IncompatibleTensorsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Truncation-quality problems (imaginary residues, negative probabilities)
/// beyond tolerance. Reported, not silently clipped.
struct NumericalQualityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ChecksumError : IoError {
  using IoError::IoError;
};
struct FormatVersionError : IoError {
  using IoError::IoError;
};
struct TruncatedFileError : IoError {
  using IoError::IoError;
};

}  // namespace tfcs
