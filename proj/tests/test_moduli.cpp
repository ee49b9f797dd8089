#include <doctest.h>

#include <random>

#include "k3iso/decide.hpp"
#include "k3iso/error.hpp"
#include "k3iso/moduli.hpp"

using namespace k3iso;

namespace {

std::mt19937_64 rng(1312);

long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

std::vector<PolarizedLattice> lattice_pool() {
  std::vector<PolarizedLattice> pool;
  for (long n = 1; n <= 20; ++n) {
    for (PolarizedLattice& L : enumerate_lattices(n, 100)) pool.push_back(std::move(L));
  }
  return pool;
}

const PolarizedLattice& pick(const std::vector<PolarizedLattice>& pool) {
  return pool[uniform(0, static_cast<long>(pool.size()) - 1)];
}

LatticeVector random_vector(const PolarizedLattice& L, long range) {
  return from_basis(L, uniform(-range, range), uniform(-range, range));
}

// A primitive isotropic (rho, l, sigma) with rho, sigma >= 1, if the draw allows one.
std::optional<MukaiVector> random_isotropic(const PolarizedLattice& L) {
  LatticeVector l = random_vector(L, 6);
  Int half = square(L, l) / 2;
  if (half <= 0 || half > 100000) return std::nullopt;
  std::vector<Int> divisors;
  for (Int k = 1; k * k <= half; ++k) {
    if (divides(k, half)) {
      divisors.push_back(k);
      divisors.push_back(half / k);
    }
  }
  Int rho = divisors[uniform(0, static_cast<long>(divisors.size()) - 1)];
  MukaiVector v{rho, l, half / rho};
  if (!primitive_isotropic(v, L)) return std::nullopt;
  return v;
}

ErrorCode error_of(const Morphism& m, const MukaiVector& v, const PolarizedLattice& L) {
  try {
    apply(m, v, L);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("mukai square examples") {
  PolarizedLattice L1 = PolarizedLattice::make(1, 1, 1, 1);
  CHECK(mukai_square({1, L1.h_tilde(), 1}, L1) == 0);
  CHECK(mukai_square({1, L1.h_tilde(), 2}, L1) == -2);
}

TEST_CASE("morphism examples") {
  PolarizedLattice L = PolarizedLattice::make(2, 1, 1, 1);
  LatticeVector h = L.h_tilde();
  CHECK(*apply(Reflection{}, {2, h, 1}, L) == MukaiVector{1, h, 2});

  PolarizedLattice L1 = PolarizedLattice::make(1, 1, 1, 1);
  LatticeVector h1 = L1.h_tilde();
  CHECK(*apply(Nu{2, 3}, {1, h1, 1}, L1) == MukaiVector{4, 6 * h1, 9});
  CHECK(*apply(NuInverse{2, 3}, {4, 6 * h1, 9}, L1) == MukaiVector{1, h1, 1});

  LatticeVector D{-1, -1};
  CHECK(D == -L.w());
  CHECK(*apply(Twist{D}, {1, h, 2}, L) == MukaiVector{1, {3, -1}, 1});

  TwistReport rep = twist_preserves({1, h, 2}, D, L);
  CHECK(rep.preserved());
  CHECK(rep.divisor_before == 1);
  CHECK(rep.square_before == 0);
  CHECK(twist_preserves({1, h, 2}, {0, 0}, L).image == MukaiVector{1, h, 2});

  // (2, 2H~, 2): common divisor 2 survives any twist.
  for (int k = 0; k < 20; ++k) {
    TwistReport r = twist_preserves({2, 2 * h, 2}, random_vector(L, 10), L);
    CHECK(r.preserved());
    CHECK(r.divisor_after == 2);
  }

  CHECK_FALSE(apply(Tyurin{1, {3, -1}}, {1, {3, -1}, 1}, L));
  CHECK(error_of(Tyurin{1, {3, -1}}, {2, {3, -1}, 1}, L) == ErrorCode::PreconditionViolated);
  CHECK(error_of(Tyurin{-1, {3, -1}}, {-1, {3, -1}, -1}, L) == ErrorCode::PreconditionViolated);
  CHECK(error_of(Nu{2, 2}, {1, h1, 1}, L1) == ErrorCode::PreconditionViolated);
  CHECK(error_of(Twist{{1, 0}}, {1, h, 2}, L) == ErrorCode::PreconditionViolated);
  CHECK(kind_name(NuInverse{1, 1}) == "nu_inverse");
}

TEST_CASE("nu preserves primitivity exactly under its gcd conditions") {
  PolarizedLattice L = PolarizedLattice::make(6, 1, 1, 1);  // H~^2 = 12 = 2rs
  for (auto [r, s] : {std::pair<long, long>{1, 6}, {2, 3}, {3, 2}, {6, 1}}) {
    MukaiVector v{r, L.h_tilde(), s};
    REQUIRE(primitive_isotropic(v, L));
    for (long d1 = 1; d1 <= 6; ++d1) {
      for (long d2 = 1; d2 <= 6; ++d2) {
        MukaiVector raw{d1 * d1 * r, (d1 * d2) * L.h_tilde(), d2 * d2 * s};
        CHECK(mukai_square(raw, L) == 0);
        bool conditions = gcd(d1, s) == 1 && gcd(d2, r) == 1 && gcd(d1, d2) == 1;
        CHECK(conditions == (common_divisor(raw, L) == 1));
        if (conditions) {
          CHECK(*apply(Nu{d1, d2}, v, L) == raw);
        } else {
          CHECK(error_of(Nu{d1, d2}, v, L) == ErrorCode::PreconditionViolated);
        }
      }
    }
  }
}

TEST_CASE("reflection, twist and nu identities on random vectors") {
  std::vector<PolarizedLattice> pool = lattice_pool();
  int reflections = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const PolarizedLattice& L = pick(pool);
    MukaiVector v{uniform(-20, 20), random_vector(L, 20), uniform(-20, 20)};
    LatticeVector D = random_vector(L, 20);

    MukaiVector t = *apply(Twist{D}, v, L);
    CHECK(*apply(Twist{-D}, t, L) == v);
    TwistReport rep = twist_preserves(v, D, L);
    CHECK(rep.preserved());

    long d1 = uniform(1, 6), d2 = uniform(1, 6);
    MukaiVector scaled{d1 * d1 * v.rank, (d1 * d2) * v.c1, d2 * d2 * v.sigma};
    CHECK(mukai_square(scaled, L) == (d1 * d2) * (d1 * d2) * mukai_square(v, L));

    if (auto iso = random_isotropic(L)) {
      MukaiVector r = *apply(Reflection{}, *iso, L);
      CHECK(*apply(Reflection{}, r, L) == *iso);
      CHECK(mukai_square(r, L) == mukai_square(*iso, L));
      ++reflections;
    }
  }
  CHECK(reflections > 50);
}

TEST_CASE("validate_chain accepts certificates and rejects tampering") {
  PolarizedLattice L = PolarizedLattice::make(2, 1, 1, 1);
  MukaiInvariants inv = invariants({2, 1, 1});
  WitnessSearch found = find_witness(L, inv);
  REQUIRE(found.hit);
  Certificate cert = certificate(L, inv, *found.hit);
  CHECK(validate_chain(cert.chain, L).ok);
  CHECK(cert.chain.source == MukaiVector{2, L.h_tilde(), 1});

  Chain bad = cert.chain;
  bad.steps.insert(bad.steps.begin() + 1,
                   ChainStep{Nu{2, 2}, bad.steps[1].source, bad.steps[1].source});
  ChainReport r = validate_chain(bad, L);
  CHECK_FALSE(r.ok);
  CHECK(r.failed_step == 1u);
  CHECK(r.detail.find("nu") != std::string::npos);

  // Tyurin with h1^2 != 2*rho.
  Chain shape = cert.chain;
  shape.steps.back().morphism = Tyurin{1, L.h_tilde()};
  r = validate_chain(shape, L);
  CHECK_FALSE(r.ok);
  CHECK(r.failed_step == shape.steps.size() - 1);

  Chain open = cert.chain;
  open.steps.pop_back();
  CHECK_FALSE(validate_chain(open, L).ok);

  Chain wrong_target = cert.chain;
  wrong_target.steps[2].target = MukaiVector{5, L.h_tilde(), 5};
  CHECK(validate_chain(wrong_target, L).failed_step == 2u);
}
