#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "k3iso/binary_form.hpp"
#include "k3iso/integer.hpp"
#include "k3iso/lattice.hpp"

namespace k3iso {

// Coordinates over (e1, e2, f1, f2) in U(1) + U(2):
// e1^2 = e2^2 = 0, e1.e2 = -1, f1^2 = f2^2 = 0, f1.f2 = +1.
struct ModelVector {
  std::array<Int, 4> c;

  ModelVector operator+(const ModelVector& o) const;
  friend ModelVector operator*(const Int& k, const ModelVector& v);
  friend bool operator==(const ModelVector&, const ModelVector&) = default;
};

std::ostream& operator<<(std::ostream& os, const ModelVector& v);

Int model_pairing(const ModelVector& u, const ModelVector& v);

// Mukai vector (d1^2 a c, d1 d2 H, d2^2 b c) with H = a b c^2 f1 + f2, i.e.
// d1^2 ac e1 + d2^2 bc e2 + d1 d2 abc^2 f1 + d1 d2 f2. Requires (a, b) = 1 and
// (d1, bc) = (d2, ac) = (d1, d2) = 1; throws Error{PreconditionViolated}.
ModelVector build_v(const Int& a, const Int& b, const Int& c, const Int& d1, const Int& d2);

// Quotient coordinates are integer pairs over a chosen basis of v^perp / Zv.
using QuotientCoords = std::array<Int, 2>;

struct QuotientReport {
  Gram2 gram;                          // on the chosen quotient basis
  std::array<ModelVector, 2> basis;    // lifts of the quotient basis to v^perp
  // Transcendental data, present when v has a nonzero U(2) part.
  std::optional<QuotientCoords> t_bar;    // image of t
  std::optional<Int> index;               // divisibility of t_bar
  std::optional<QuotientCoords> t_tilde;  // t_bar / index
  std::optional<QuotientCoords> h;        // primitive generator of t_tilde^perp
  std::optional<Int> h_sq;
};

// v^perp / Zv for a primitive isotropic v, computed by unimodular reduction
// of the linear form <., v> rather than from hand-picked bases.
class PerpQuotient {
 public:
  // Throws Error{NotIsotropic} or Error{NotPrimitive}.
  explicit PerpQuotient(const ModelVector& v);

  const ModelVector& v() const { return v_; }
  const QuotientReport& report() const { return report_; }
  // Image in the quotient of xi in v^perp; throws Error{InvalidInput}
  // when xi is not orthogonal to v.
  QuotientCoords project(const ModelVector& xi) const;

 private:
  ModelVector v_;
  std::array<ModelVector, 3> kernel_;        // basis of v^perp
  std::array<std::array<Int, 4>, 4> u_inv_;  // coordinates w.r.t. the reduced basis
  std::array<std::array<Int, 3>, 3> w_t_;    // kernel coords -> (along v, q1, q2)
  QuotientReport report_;
};

inline QuotientReport perp_quotient(const ModelVector& v) { return PerpQuotient(v).report(); }

// P with P^T G P = [[0, 1], [1, 0]]; nullopt when G is not congruent to U.
std::optional<Mat2> hyperbolic_basis(const Gram2& g);

struct NuReport {
  bool ok = false;
  QuotientReport base;     // (d1, d2) = (1, 1)
  QuotientReport twisted;  // given (d1, d2)
  std::string detail;
};

// Identifies alpha-bar, beta-bar of v^perp/Zv with alpha~_1, beta~_1 of
// v1^perp/Zv1 (alpha_1 = d1 e1 + d2 bc f1, beta_1 = d2 e2 + d1 ac f1, reduced
// by d2 and d1 respectively) and checks it is an isometry of bases carrying
// t~ to +-t~_1. Throws Error{PreconditionViolated} like build_v.
NuReport verify_nu(const Int& a, const Int& b, const Int& c, const Int& d1, const Int& d2);

}  // namespace k3iso
