#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toral {

/// Machine-readable error categories. The CLI reports `error_name(code)`.
enum class Errc {
  NonUnimodular,
  NotHyperbolic,
  NotUnipotent,
  IdentityHasNoDistinguishedVector,
  NotPolynomial,
  SharedModulusPairOnly,
  TracesDiffer,
  NotPairwiseDistinct,
  NotCommuting,
  ResolutionMismatch,
  CommutingUnipotents,
  CommutingInputs,
  NonHyperbolicSample,
  ZeroFrequencyPresent,
  ParseError,
  InvalidArgument,
};

std::string_view error_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  Errc code_;
};

}  // namespace toral
