#include "toral/error.hpp"

namespace toral {

std::string_view error_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonUnimodular: return "NonUnimodular";
    case Errc::NotHyperbolic: return "NotHyperbolic";
    case Errc::NotUnipotent: return "NotUnipotent";
    case Errc::IdentityHasNoDistinguishedVector: return "IdentityHasNoDistinguishedVector";
    case Errc::NotPolynomial: return "NotPolynomial";
    case Errc::SharedModulusPairOnly: return "SharedModulusPairOnly";
    case Errc::TracesDiffer: return "TracesDiffer";
    case Errc::NotPairwiseDistinct: return "NotPairwiseDistinct";
    case Errc::NotCommuting: return "NotCommuting";
    case Errc::ResolutionMismatch: return "ResolutionMismatch";
    case Errc::CommutingUnipotents: return "CommutingUnipotents";
    case Errc::CommutingInputs: return "CommutingInputs";
    case Errc::NonHyperbolicSample: return "NonHyperbolicSample";
    case Errc::ZeroFrequencyPresent: return "ZeroFrequencyPresent";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace toral
