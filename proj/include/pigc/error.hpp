#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pigc {

enum class ErrorKind {
  kFormat,               // ragged CSV rows
  kParse,                // non-numeric cell, malformed number
  kSchema,               // duplicate / missing names
  kDegenerateInput,      // zero variance, identical points
  kIndex,                // index out of range
  kUnderflow,            // too few nodes left after exclusion
  kInsufficientSamples,  // T too small for the requested lag
  kShape,                // dimension mismatch
  kRank,                 // singular system or rank-deficient request
  kDegenerateModel,      // nonpositive residual variance
  kInstability,          // diverging simulation
  kUndefinedAuc,         // single-class labels
  kConfig,               // bad configuration
  kIo,                   // file system
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Same error with "stage: " prepended to the message.
  Error with_stage(std::string_view stage) const {
    return Error(kind_, std::string(stage) + ": " + what());
  }

 private:
  ErrorKind kind_;
};

}  // namespace pigc
