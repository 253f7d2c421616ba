#include "pinkforge/errors.hpp"

namespace pinkforge {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::CharacteristicTwo: return "CharacteristicTwo";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::StructureMismatch: return "StructureMismatch";
    case Errc::NotAdapted: return "NotAdapted";
    case Errc::NotMultFree: return "NotMultFree";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotInSR1: return "NotInSR1";
    case Errc::NotPinkStable: return "NotPinkStable";
    case Errc::NotWeaklyOdd: return "NotWeaklyOdd";
    case Errc::DegreeExhausted: return "DegreeExhausted";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void raise(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace pinkforge
