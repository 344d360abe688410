#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cubesum {

enum class Errc {
  NotCoprime,
  NotCoprimeModuli,
  EvenModulus,
  DomainError,
  Overflow,
  OracleTooLarge,
  SlowDecay,
  TooLarge,
  NoPair,
  ConditionViolated,
  ConfigError,
  EmptyRange,
  IdentityFailed,
};

std::string_view errc_name(Errc code);

// Every failure in the library is reported as an Error carrying one of the
// codes above; callers switch on code(), the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cubesum
