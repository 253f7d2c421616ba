#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pinkforge {

enum class Errc {
  InvalidArgument,
  NotAUnit,
  CharacteristicTwo,
  OutOfDomain,
  StructureMismatch,
  NotAdapted,
  NotMultFree,
  TooLarge,
  NotInSR1,
  NotPinkStable,
  NotWeaklyOdd,
  DegreeExhausted,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

inline void require(bool condition, Errc code, const char* message) {
  if (!condition) raise(code, message);
}

}  // namespace pinkforge
