#pragma once

#include <stdexcept>
#include <string>

namespace powerfree {

enum class Errc {
  empty_word,
  bad_index,
  bad_symbol,
  bad_input,
  non_integral_power,
  length_mismatch,
  not_in_language,
  unsupported_regime,
  missing_data,
  budget_exceeded,
  empty_language,
};

inline const char* to_cstring(Errc c) {
  switch (c) {
    case Errc::empty_word:         return "EMPTY_WORD";
    case Errc::bad_index:          return "BAD_INDEX";
    case Errc::bad_symbol:         return "BAD_SYMBOL";
    case Errc::bad_input:          return "BAD_INPUT";
    case Errc::non_integral_power: return "NON_INTEGRAL_POWER";
    case Errc::length_mismatch:    return "LENGTH_MISMATCH";
    case Errc::not_in_language:    return "NOT_IN_LANGUAGE";
    case Errc::unsupported_regime: return "UNSUPPORTED_REGIME";
    case Errc::missing_data:       return "MISSING_DATA";
    case Errc::budget_exceeded:    return "BUDGET_EXCEEDED";
    case Errc::empty_language:     return "EMPTY_LANGUAGE";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(to_cstring(code)) + ": " + msg),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace powerfree
