#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uqseg {

enum class ErrorCode {
  ValueOutOfRange,
  ShapeMismatch,
  BadMagic,
  TruncatedFile,
  UnsupportedFormat,
  DuplicateId,
  UnknownClass,
  MissingKey,
  IoError,
  InvalidConfig,
  InvalidSpec,
  InsufficientData,
  MissingPredictor,
  LengthMismatch,
  ConstantInput,
  TooFewSamples,
  EmptyInput,
  MissingPanel,
  MissingUpstream,
};

std::string_view to_string(ErrorCode code);

// Process exit status for an error that escapes a CLI command:
// 2 usage/config, 3 I/O, 4 data validation, 5 statistical precondition.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace uqseg
