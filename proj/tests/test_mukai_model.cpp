#include <doctest.h>

#include <numeric>

#include "k3iso/arith.hpp"
#include "k3iso/error.hpp"
#include "k3iso/mukai_model.hpp"

using namespace k3iso;

namespace {

bool is_u(const Gram2& g) {
  auto p = hyperbolic_basis(g);
  if (!p) return false;
  // P^T G P entrywise.
  auto pair = [&](const Int& x1, const Int& y1, const Int& x2, const Int& y2) {
    return x1 * (g.g11 * x2 + g.g12 * y2) + y1 * (g.g12 * x2 + g.g22 * y2);
  };
  return abs(p->det()) == 1 && pair(p->a, p->c, p->a, p->c) == 0 &&
         pair(p->b, p->d, p->b, p->d) == 0 && pair(p->a, p->c, p->b, p->d) == 1;
}

Int det2(const QuotientCoords& u, const QuotientCoords& w) { return u[0] * w[1] - u[1] * w[0]; }

}  // namespace

TEST_CASE("model vectors") {
  ModelVector v = build_v(2, 3, 1, 1, 1);
  CHECK(v == ModelVector{{2, 3, 6, 1}});
  CHECK(model_pairing(v, v) == 0);
  CHECK(build_v(1, 1, 2, 3, 1) == ModelVector{{18, 2, 12, 3}});
  CHECK(build_v(1, 1, 1, 1, 1) == ModelVector{{1, 1, 1, 1}});
  CHECK_THROWS_AS(build_v(1, 2, 1, 2, 1), Error);
  CHECK_THROWS_AS(build_v(2, 4, 1, 1, 1), Error);
  CHECK_THROWS_AS(build_v(1, 1, 1, 2, 2), Error);
}

TEST_CASE("quotient examples") {
  QuotientReport r = perp_quotient(build_v(2, 3, 1, 1, 1));
  CHECK(r.gram.det() == -1);
  CHECK(is_u(r.gram));
  CHECK(*r.h_sq == 12);
  CHECK(*r.index == 1);

  r = perp_quotient(build_v(1, 1, 2, 1, 1));
  CHECK(*r.index == 2);
  CHECK(*r.h_sq == 2);

  r = perp_quotient(ModelVector{{1, 0, 0, 0}});
  CHECK(is_u(r.gram));
  CHECK_FALSE(r.index);

  try {
    perp_quotient(ModelVector{{1, 1, 0, 0}});
    FAIL("expected NotIsotropic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotIsotropic);
  }
  try {
    perp_quotient(ModelVector{{2, 0, 2, 0}});
    FAIL("expected NotPrimitive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrimitive);
  }
}

TEST_CASE("hand-picked bases of v-perp agree with the reduced quotient") {
  for (long a = 1; a <= 6; ++a) {
    for (long b = 1; b <= 6; ++b) {
      if (std::gcd(a, b) != 1) continue;
      for (long c = 1; c <= 4; ++c) {
        PerpQuotient q(build_v(a, b, c, 1, 1));
        const QuotientReport& r = q.report();
        QuotientCoords alpha = q.project(ModelVector{{1, 0, b * c, 0}});
        QuotientCoords beta = q.project(ModelVector{{0, 1, a * c, 0}});
        QuotientCoords t = q.project(ModelVector{{0, 0, -a * b * c * c, 1}});
        CHECK(abs(det2(alpha, beta)) == 1);
        CHECK(t == *r.t_bar);
        CHECK(*r.index == c);
        CHECK((*r.t_tilde)[0] * c == t[0]);
        CHECK((*r.t_tilde)[1] * c == t[1]);
        // Lifts reproduce the quotient Gram.
        CHECK(model_pairing(r.basis[0], r.basis[1]) == r.gram.g12);
        CHECK(q.project(r.basis[0]) == QuotientCoords{1, 0});
        CHECK(q.project(r.basis[1]) == QuotientCoords{0, 1});
        CHECK(q.project(q.v()) == QuotientCoords{0, 0});
      }
    }
  }
  PerpQuotient q(build_v(1, 1, 1, 1, 1));
  CHECK_THROWS_AS(q.project(ModelVector{{1, 0, 0, 0}}), Error);
}

TEST_CASE("model grid: U, h^2 = 2ab, index = c = n(v), nu") {
  for (long a = 1; a <= 6; ++a) {
    for (long b = 1; b <= 6; ++b) {
      if (std::gcd(a, b) != 1) continue;
      for (long c = 1; c <= 4; ++c) {
        QuotientReport r = perp_quotient(build_v(a, b, c, 1, 1));
        CHECK(r.gram.even());
        CHECK(r.gram.det() == -1);
        CHECK(is_u(r.gram));
        CHECK(*r.h_sq == 2 * a * b);
        CHECK(*r.index == c);
        CHECK(*r.index == n_of_v(a * c, b * c, 2 * a * b * c * c));
        for (long d1 = 1; d1 <= 5; ++d1) {
          for (long d2 = 1; d2 <= 5; ++d2) {
            bool valid = std::gcd(d1, b * c) == 1 && std::gcd(d2, a * c) == 1 &&
                         std::gcd(d1, d2) == 1;
            if (!valid) {
              CHECK_THROWS_AS(verify_nu(a, b, c, d1, d2), Error);
              continue;
            }
            NuReport nu = verify_nu(a, b, c, d1, d2);
            CHECK_MESSAGE(nu.ok, nu.detail);
          }
        }
      }
    }
  }
}

TEST_CASE("nu examples") {
  CHECK(verify_nu(1, 1, 2, 3, 1).ok);
  CHECK(verify_nu(2, 3, 1, 1, 5).ok);
  CHECK_THROWS_AS(verify_nu(1, 2, 1, 2, 1), Error);
}
