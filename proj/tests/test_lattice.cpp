#include <doctest.h>

#include <random>

#include "k3iso/error.hpp"
#include "k3iso/lattice.hpp"

using namespace k3iso;

namespace {

ErrorCode error_of(const Gram2& g, const Point& h) {
  try {
    from_gram(g, h);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

// z^2 from basis coordinates on {H~, w}, written out independently of the
// (x, y) formula.
Int square_by_basis(const Int& n_half, const Int& gamma, const Int& delta, const Int& mu,
                    const Int& alpha, const Int& beta) {
  Int modulus = 2 * n_half / gamma;
  Int w_sq = (gamma * mu * mu - delta) / modulus;
  return alpha * alpha * 2 * n_half + 2 * alpha * beta * gamma * mu + beta * beta * w_sq;
}

std::mt19937_64 rng(20240611);

long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

}  // namespace

TEST_CASE("validate examples") {
  LatticeReport r = validate({1, 1, 1, 1});
  REQUIRE(r.valid());
  CHECK(*r.gram == Gram2{2, 1, 0});

  r = validate({2, 2, 2, 1});
  REQUIRE(r.valid());
  CHECK(*r.gram == Gram2{4, 2, 0});

  r = validate({1, 1, 2, 1});
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0] == LatticeViolation::DeltaCongruence);
  CHECK(describe(r.violations[0]) == "invariant: delta congruence");

  CHECK(validate({0, 1, 1, 1}).violations[0] == LatticeViolation::NonPositive);
  CHECK(validate({3, 4, 1, 1}).violations[0] == LatticeViolation::GammaDivides);
  CHECK(validate({4, 1, 2, 2}).violations[0] == LatticeViolation::MuUnit);

  try {
    PolarizedLattice::make(1, 1, 2, 1);
    FAIL("expected InvalidLattice");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidLattice);
    CHECK(e.detail() == "invariant: delta congruence");
  }
}

TEST_CASE("pairing and content examples") {
  PolarizedLattice L1 = PolarizedLattice::make(1, 1, 1, 1);
  CHECK(square(L1, L1.h_tilde()) == 2);

  PolarizedLattice L = PolarizedLattice::make(2, 1, 1, 1);
  CHECK(square(L, {3, -1}) == 2);
  CHECK(content(L, {3, -1}) == 1);
  BasisCoords bc = basis_coords(L, {3, -1});
  CHECK(bc.alpha == 1);
  CHECK(bc.beta == -1);
  CHECK(content(L, L.h_tilde()) == 1);
  CHECK(content(L, 2 * L.h_tilde()) == 2);
  CHECK(content(L, {0, 0}) == 0);

  PolarizedLattice L2 = PolarizedLattice::make(2, 2, 2, 1);
  CHECK(pairing(L2, L2.h_tilde(), L2.w()) == 2);

  CHECK_THROWS_AS(pairing(L, {1, 0}, {1, 0}), Error);  // 1 != mu*0 mod 4
}

TEST_CASE("mu and -mu give the same lattice") {
  PolarizedLattice a = PolarizedLattice::make(5, 1, 9, 3);
  PolarizedLattice b = PolarizedLattice::make(5, 1, 9, 7);
  CHECK(a.canonical() == b.canonical());
  CHECK(a.canonical().mu() == 3);
  CHECK(b.flips_f());
  CHECK(a.canonical().gram() == b.canonical().gram());
}

TEST_CASE("from_gram examples") {
  GramEmbedding e = from_gram({2, 1, 0}, {1, 0});
  CHECK(e.lattice() == PolarizedLattice::make(1, 1, 1, 1));

  e = from_gram({4, 2, 0}, {1, 0});
  CHECK(e.lattice() == PolarizedLattice::make(2, 2, 2, 1));

  CHECK(error_of({2, 0, 2}, {1, 0}) == ErrorCode::NotHyperbolic);
  CHECK(error_of({1, 0, -2}, {1, 0}) == ErrorCode::NotEven);
  CHECK(error_of({2, 1, 0}, {2, 0}) == ErrorCode::NotPrimitivePolarization);
  CHECK(error_of({2, 1, 0}, {0, 1}) == ErrorCode::NotPositive);
  CHECK(error_of({-2, 1, 0}, {1, 0}) == ErrorCode::NotPositive);
}

TEST_CASE("lattice enumeration is exactly the valid canonical presentations") {
  for (Int n = 1; n <= 12; ++n) {
    std::vector<PolarizedLattice> all = enumerate_lattices(n, 60);
    std::size_t brute = 0;
    for (Int g = 1; g <= 60; ++g) {
      for (Int d = 1; g * d <= 60; ++d) {
        if (!divides(g, 2 * n)) continue;
        Int modulus = 2 * n / g;
        for (Int mu = 0; 2 * mu <= modulus; ++mu) {
          if (validate({n, g, d, mu}).valid()) ++brute;
        }
      }
    }
    CHECK(all.size() == brute);
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(all[i].is_canonical());
      if (i > 0) {
        auto key = [](const PolarizedLattice& L) {
          return std::tuple(L.gamma(), L.delta(), L.mu());
        };
        CHECK(key(all[i - 1]) < key(all[i]));
      }
    }
  }
}

TEST_CASE("evenness, determinant and the two linear forms over a grid") {
  int lattices = 0;
  for (long n = 1; n <= 60; ++n) {
    for (const PolarizedLattice& L : enumerate_lattices(n, 2500)) {
      if (L.delta() > 50 || L.gamma() > 50) continue;
      ++lattices;
      Gram2 g = L.gram();
      CHECK(g.even());
      CHECK(g.det() == -L.gamma() * L.delta());
      CHECK(square(L, L.f()) * L.gamma() == -2 * L.n_half() * L.delta());
      for (int k = 0; k < 200; ++k) {
        Int alpha = uniform(-1000, 1000), beta = uniform(-1000, 1000);
        LatticeVector z = from_basis(L, alpha, beta);
        REQUIRE(L.contains(z));
        Int sq = square(L, z);
        CHECK(sq % 2 == 0);
        CHECK(sq == square_by_basis(L.n_half(), L.gamma(), L.delta(), L.mu(), alpha, beta));
        CHECK(pairing(L, L.h_tilde(), z) == h_dot(L, z));
        CHECK(pairing(L, L.f(), z) == f_dot(L, z));
        CHECK(content(L, z) == gcd(alpha, beta));
      }
    }
  }
  CHECK(lattices > 500);
}

TEST_CASE("from_gram round trip under random basis changes") {
  std::vector<PolarizedLattice> pool;
  for (long n = 1; n <= 30; ++n) {
    for (PolarizedLattice& L : enumerate_lattices(n, 200)) pool.push_back(std::move(L));
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const PolarizedLattice& L = pool[uniform(0, pool.size() - 1)];
    // Random unimodular P; G' = P^T G P and h' = P^{-1} e1.
    Int p11 = 1, p12 = 0, p21 = 0, p22 = 1;
    for (int step = 0; step < 4; ++step) {
      Int k = uniform(-3, 3);
      if (step % 2 == 0) {
        p12 += k * p11;
        p22 += k * p21;
      } else {
        p11 += k * p12;
        p21 += k * p22;
      }
    }
    if (uniform(0, 1)) {
      p11 = -p11;
      p21 = -p21;
    }
    Int det = p11 * p22 - p12 * p21;
    REQUIRE(abs(det) == 1);
    Gram2 g = L.gram();
    auto gp = [&](const Int& a1, const Int& a2, const Int& b1, const Int& b2) {
      return a1 * (g.g11 * b1 + g.g12 * b2) + a2 * (g.g12 * b1 + g.g22 * b2);
    };
    Gram2 g2{gp(p11, p21, p11, p21), gp(p11, p21, p12, p22), gp(p12, p22, p12, p22)};
    Point h{p22 * det, -p21 * det};

    GramEmbedding e = from_gram(g2, h);
    CHECK(e.lattice() == L.canonical());
    CHECK(e.to_lattice(h) == e.lattice().h_tilde());
    for (int k = 0; k < 5; ++k) {
      Point u{uniform(-50, 50), uniform(-50, 50)}, v{uniform(-50, 50), uniform(-50, 50)};
      LatticeVector zu = e.to_lattice(u), zv = e.to_lattice(v);
      CHECK(pairing(e.lattice(), zu, zv) ==
            u.x * (g2.g11 * v.x + g2.g12 * v.y) + u.y * (g2.g12 * v.x + g2.g22 * v.y));
      CHECK(e.to_standard(zu) == u);
    }
  }
}
