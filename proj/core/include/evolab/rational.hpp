#pragma once

#include <string>

namespace evolab {

// Small exact rational for rate parameters; normalized with positive
// denominator and coprime parts.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);

  // Accepts "p/q" or a bare integer "p".
  static Rational parse(const std::string& text);

  std::string str() const;

  bool operator==(const Rational&) const = default;
};

}  // namespace evolab
