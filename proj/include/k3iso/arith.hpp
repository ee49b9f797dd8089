#pragma once

#include "k3iso/integer.hpp"

namespace k3iso {

// Mukai data of v = (r, H, s) with H = d * H~ and H~ primitive.
struct MukaiInput {
  Int r;
  Int s;
  Int d;
};

// gcd decomposition of (r, s, d):
//   c = (r, s), a = r/c, b = s/c, d_a = (d, a), d_b = (d, b),
//   a1 = a/d_a^2, b1 = b/d_b^2, H~^2 = 2 * n_half = 2 * a1 * b1 * c^2.
struct MukaiInvariants {
  Int c;
  Int a;
  Int b;
  Int d_a;
  Int d_b;
  Int a1;
  Int b1;
  Int n_half;

  Int d() const { return d_a * d_b; }

  friend bool operator==(const MukaiInvariants&, const MukaiInvariants&) = default;
};

// Throws Error{NotPrimitive} when (c, d) > 1 and Error{NotDivisible} when
// d^2 does not divide a*b (H~^2 would not be an even integer).
MukaiInvariants invariants(const MukaiInput& input);

// n(v) = (r, s, gamma).
Int n_of_v(const Int& r, const Int& s, const Int& gamma);

struct GammaSplit {
  Int gamma_a;  // (gamma, a1)
  Int gamma_b;  // (gamma, b1)
  Int gamma_2;  // gamma / (gamma_a * gamma_b), always 1 or 2

  friend bool operator==(const GammaSplit&, const GammaSplit&) = default;
};

// Requires gamma | 2*a1*b1 and (a1, b1) = 1; throws Error{SplitFailure}
// otherwise.
GammaSplit gamma_split(const Int& gamma, const Int& a1, const Int& b1);

}  // namespace k3iso
