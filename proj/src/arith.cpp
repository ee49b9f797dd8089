#include "k3iso/arith.hpp"

#include <sstream>

#include "k3iso/error.hpp"

namespace k3iso {

MukaiInvariants invariants(const MukaiInput& in) {
  if (in.r < 1 || in.s < 1 || in.d < 1) {
    throw Error(ErrorCode::InvalidInput, "r, s, d must be positive");
  }
  MukaiInvariants inv;
  inv.c = gcd(in.r, in.s);
  if (gcd(inv.c, in.d) != 1) {
    std::ostringstream os;
    os << "(c, d) = (" << inv.c << ", " << in.d << ") has gcd "
       << gcd(inv.c, in.d);
    throw Error(ErrorCode::NotPrimitive, os.str());
  }
  inv.a = in.r / inv.c;
  inv.b = in.s / inv.c;
  // (a, b) = (c, d) = 1, so d^2 | a*b*c^2 reduces to d^2 | a*b, which in
  // turn forces d = d_a*d_b with d_a^2 | a and d_b^2 | b.
  if (!divides(in.d * in.d, inv.a * inv.b)) {
    std::ostringstream os;
    os << "d^2 = " << in.d * in.d << " does not divide a*b = " << inv.a * inv.b;
    throw Error(ErrorCode::NotDivisible, os.str());
  }
  inv.d_a = gcd(in.d, inv.a);
  inv.d_b = gcd(in.d, inv.b);
  inv.a1 = inv.a / (inv.d_a * inv.d_a);
  inv.b1 = inv.b / (inv.d_b * inv.d_b);
  inv.n_half = inv.a1 * inv.b1 * inv.c * inv.c;

  if (inv.d_a * inv.d_b != in.d || inv.a1 * inv.d_a * inv.d_a * inv.c != in.r ||
      inv.b1 * inv.d_b * inv.d_b * inv.c != in.s ||
      inv.n_half * in.d * in.d != in.r * in.s) {
    throw Error(ErrorCode::NotDivisible, "inconsistent gcd decomposition");
  }
  return inv;
}

Int n_of_v(const Int& r, const Int& s, const Int& gamma) {
  return gcd(r, s, gamma);
}

GammaSplit gamma_split(const Int& gamma, const Int& a1, const Int& b1) {
  if (gamma < 1 || a1 < 1 || b1 < 1) {
    throw Error(ErrorCode::SplitFailure, "arguments must be positive");
  }
  if (gcd(a1, b1) != 1) {
    throw Error(ErrorCode::SplitFailure, "(a1, b1) != 1");
  }
  if (!divides(gamma, 2 * a1 * b1)) {
    std::ostringstream os;
    os << "gamma = " << gamma << " does not divide 2*a1*b1 = " << 2 * a1 * b1;
    throw Error(ErrorCode::SplitFailure, os.str());
  }
  GammaSplit g;
  g.gamma_a = gcd(gamma, a1);
  g.gamma_b = gcd(gamma, b1);
  if (!divides(g.gamma_a * g.gamma_b, gamma)) {
    throw Error(ErrorCode::SplitFailure, "gamma_a * gamma_b does not divide gamma");
  }
  g.gamma_2 = gamma / (g.gamma_a * g.gamma_b);
  return g;
}

}  // namespace k3iso
