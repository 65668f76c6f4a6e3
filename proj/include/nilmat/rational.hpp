#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace nilmat {

// All kernel arithmetic is exact; no floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

enum class ErrorCode {
  EvenModulus,
  NotANilpotentRing,
  ShapeMismatch,
  CapExceeded,
  IndexOutOfRange,
  RingMismatch,
  ParseError,
  Unsupported,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  [[nodiscard]] ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

inline std::string rational_to_string(const Rational& r) {
  return r.str();
}

} // namespace nilmat
