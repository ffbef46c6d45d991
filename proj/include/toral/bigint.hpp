#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace toral {

using Int = mpz_class;
using Rat = mpq_class;

/// Parses a decimal integer with optional sign. Throws Error(ParseError).
Int parse_int(std::string_view text);
/// Parses "p", "p/q" or a terminating decimal such as "0.25".
Rat parse_rational(std::string_view text);

inline std::string to_string(const Int& v) { return v.get_str(); }
std::string to_string(const Rat& v);

inline int sign(const Int& v) { return sgn(v); }
inline int sign(const Rat& v) { return sgn(v); }

/// Content (gcd of absolute values); zero for the zero vector.
Int content(const std::vector<Int>& v);

/// Scales a rational vector to a primitive integer vector with the same direction.
std::vector<Int> integerize(const std::vector<Rat>& v);

/// Exact rational from a small integer ratio.
inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Fits in int64_t?
inline bool fits_i64(const Int& v) {
  return v.fits_slong_p() && sizeof(long) == 8;
}

/// Integer square root floor(sqrt(v)) for v >= 0.
Int isqrt(const Int& v);

double to_double(const Rat& v);

}  // namespace toral
