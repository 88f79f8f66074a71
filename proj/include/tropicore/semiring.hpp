#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tropicore {

// The three semirings the library works over. All of them share ordinary
// multiplication on the nonnegative reals; they differ in the addition.
//   MaxTimes  : a (+) b = max(a, b)
//   PlusTimes : a (+) b = a + b
//   Boolean   : {0, 1} with disjunction/conjunction (a sub-semiring of MaxTimes)
enum class Semiring { MaxTimes, PlusTimes, Boolean };

inline const char* semiring_name(Semiring sr) {
  switch (sr) {
    case Semiring::MaxTimes: return "max";
    case Semiring::PlusTimes: return "nonneg";
    case Semiring::Boolean: return "boolean";
  }
  return "?";
}

inline double sr_add(Semiring sr, double a, double b) {
  return sr == Semiring::PlusTimes ? a + b : std::max(a, b);
}

// Error with a stable process exit code, so the CLI can map failure modes
// to distinct statuses.
struct Error : std::runtime_error {
  enum Code {
    Generic = 1,
    Parse = 2,
    InvalidArgument = 3,
    Divergence = 4,
    Precondition = 5,
    Internal = 6,
  };
  int code;
  explicit Error(const std::string& msg, int c = Generic) : std::runtime_error(msg), code(c) {}
};

// Floating-point comparison policy. x equals y iff
//   |x - y| <= abs_eps + rel_eps * max(|x|, |y|).
// All matrix entries are nonnegative, so "zero" means <= abs_eps.
struct Tolerance {
  double rel_eps = 1e-9;
  double abs_eps = 1e-12;

  bool eq(double x, double y) const {
    return std::abs(x - y) <= abs_eps + rel_eps * std::max(std::abs(x), std::abs(y));
  }
  bool is_zero(double x) const { return x <= abs_eps; }
};

inline long long gcd_ll(long long a, long long b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_ll(a, b) * b;
}

}  // namespace tropicore
