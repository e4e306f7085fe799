#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drivemotif {

enum class ErrorKind {
  ConstantSeries,
  IndivisibleSegment,
  AlphabetOutOfRange,
  SeriesTooShort,
  EmptyInput,
  NonFiniteValue,
  BandInfeasible,
  LengthMismatch,
  DegenerateContext,
  InvalidConfig,
  FileUnreadable,
  TooFewSamples,
  ColumnMissing,
  SpecInfeasible,
  WriteFailure,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` lets callers (and the CLI
/// exit-code mapping) branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace drivemotif
