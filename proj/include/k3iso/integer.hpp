#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace k3iso {

// Every quantity in the library is an exact integer; nothing is ever
// truncated to a machine word without a range check.
using Int = boost::multiprecision::cpp_int;

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline int sign(const Int& a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }

// Non-negative gcd; gcd(0, 0) = 0.
inline Int gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline Int gcd(const Int& a, const Int& b, const Int& c) {
  return gcd(gcd(a, b), c);
}

inline Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a) / gcd(a, b) * abs(b);
}

// Residue in [0, |n|).
inline Int mod(const Int& a, const Int& n) {
  Int m = abs(n);
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return a % d == 0;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) { return boost::multiprecision::sqrt(n); }

inline std::optional<Int> exact_sqrt(const Int& n) {
  if (n < 0) return std::nullopt;
  Int r = isqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

struct ExtendedGcd {
  Int g;  // >= 0
  Int s;
  Int t;  // s*a + t*b = g
};

ExtendedGcd extended_gcd(const Int& a, const Int& b);

// Inverse of a modulo n (n >= 1), if it exists.
std::optional<Int> mod_inverse(const Int& a, const Int& n);

inline std::optional<std::int64_t> to_i64(const Int& a) {
  if (a > std::numeric_limits<std::int64_t>::max() ||
      a < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return static_cast<std::int64_t>(a);
}

inline std::string to_string(const Int& a) { return a.str(); }

// Integer lattice point, used for solutions of binary form equations.
struct Point {
  Int x;
  Int y;

  friend bool operator==(const Point&, const Point&) = default;
  friend bool operator<(const Point& p, const Point& q) {
    if (p.x != q.x) return p.x < q.x;
    return p.y < q.y;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << "(" << p.x << ", " << p.y << ")";
}

}  // namespace k3iso
