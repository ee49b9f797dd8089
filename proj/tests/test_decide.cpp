#include <doctest.h>

#include "k3iso/decide.hpp"
#include "k3iso/error.hpp"

using namespace k3iso;

namespace {

struct Instance {
  MukaiInvariants inv;
  PolarizedLattice lattice;
};

Instance worked(long gamma, long delta) {
  return {invariants({2, 1, 1}), PolarizedLattice::make(2, gamma, delta, 1)};
}

// Series test evaluated from the Gram matrix on {H~, w} and basis
// coordinates only, without the (x, y) presentation.
std::optional<int> series_by_gram(const PolarizedLattice& L, const MukaiInvariants& inv,
                                  const Int& alpha, const Int& beta, Series s) {
  const Int n2 = 2 * L.n_half(), hw = L.gamma() * L.mu();
  const Int ww = (L.gamma() * L.mu() * L.mu() - L.delta()) / L.modulus();
  Int sq = alpha * alpha * n2 + 2 * alpha * beta * hw + beta * beta * ww;
  Int h_dot = alpha * n2 + beta * hw;
  Int w_dot = alpha * hw + beta * ww;
  Int f_dot = L.modulus() * w_dot - L.mu() * h_dot;  // f = M*w - mu*H~
  const Int& own = s == Series::A ? inv.b1 : inv.a1;
  Int norm = 2 * own * inv.c;
  Int hmod = L.gamma() * (own / gcd(L.gamma(), own)) * inv.c;
  Int fmod = L.delta() * own * inv.c;
  if (!divides(hmod, h_dot) || !divides(fmod, f_dot)) return std::nullopt;
  if (sq == norm) return 1;
  if (sq == -norm) return -1;
  return std::nullopt;
}

void check_certificate(const Certificate& cert, const MukaiInvariants& inv) {
  const PolarizedLattice& L = cert.lattice;
  const Int step = (cert.series == Series::A ? inv.b1 : inv.a1) * inv.c;
  CHECK(cert.witness == cert.d2 * L.h_tilde() + step * cert.D);
  CHECK(cert.d2 >= 1);
  CHECK(cert.d2 <= step);
  CHECK(L.contains(cert.D));
  CHECK(check_series(L, inv, cert.witness, cert.series) == cert.sign);
  if (cert.series == Series::A) {
    GammaSplit sp = gamma_split(L.gamma(), inv.a1, inv.b1);
    CHECK(divides(inv.b1 * inv.c, cert.witness.y));
    CHECK(divides(inv.b1 / sp.gamma_b * inv.c, cert.witness.x));
  }
  ChainReport rep = validate_chain(cert.chain, L);
  CHECK_MESSAGE(rep.ok, rep.detail);
  CHECK(cert.chain.source == MukaiVector{inv.a * inv.c, inv.d() * L.h_tilde(), inv.b * inv.c});
  const ChainStep& last = cert.chain.steps.back();
  Int h_sq = square(L, cert.witness);
  CHECK(last.source == MukaiVector{cert.sign * h_sq / 2, cert.witness, cert.sign});
  CHECK_FALSE(last.target);
}

}  // namespace

TEST_CASE("series checks on the worked lattices") {
  Instance a = worked(1, 1);
  CHECK(check_series(a.lattice, a.inv, {3, -1}, Series::A) == 1);
  CHECK_FALSE(check_series(a.lattice, a.inv, {0, 0}, Series::A));

  Instance b = worked(2, 2);
  CHECK(check_series(b.lattice, b.inv, b.lattice.h_tilde(), Series::B) == 1);
}

TEST_CASE("worked instance, series A, sign +") {
  Instance in = worked(1, 1);
  WitnessSearch s = find_witness(in.lattice, in.inv);
  REQUIRE(s.hit);
  CHECK(*s.hit == SeriesHit{Series::A, 1, {3, -1}});
  Certificate cert = certificate(in.lattice, in.inv, *s.hit);
  CHECK(cert.p1 == 3);
  CHECK(cert.q1 == -1);
  CHECK(cert.d2 == 1);
  CHECK(cert.D == LatticeVector{-1, -1});
  REQUIRE(cert.chain.steps.size() == 5);
  CHECK(kind_name(cert.chain.steps[1].morphism) == "reflection");
  const ChainStep& twist = cert.chain.steps[3];
  CHECK(twist.source == MukaiVector{1, in.lattice.h_tilde(), 2});
  CHECK(*twist.target == MukaiVector{1, {3, -1}, 1});
  check_certificate(cert, in.inv);
}

TEST_CASE("worked instance, series B") {
  Instance in = worked(2, 2);
  WitnessSearch s = find_witness(in.lattice, in.inv);
  REQUIRE(s.hit);
  CHECK(*s.hit == SeriesHit{Series::B, 1, in.lattice.h_tilde()});
  Certificate cert = certificate(in.lattice, in.inv, *s.hit);
  CHECK(cert.d2 == 1);
  CHECK(cert.D == LatticeVector{0, 0});
  REQUIRE(cert.chain.steps.size() == 4);
  for (const ChainStep& st : cert.chain.steps) CHECK(kind_name(st.morphism) != "reflection");
  CHECK(cert.chain.steps.back().source == MukaiVector{2, in.lattice.h_tilde(), 1});
  check_certificate(cert, in.inv);

  // No norm +-2 vectors exist at all: every norm is 0 mod 4.
  for (long a = -30; a <= 30; ++a) {
    for (long b = -30; b <= 30; ++b) {
      CHECK(square(in.lattice, from_basis(in.lattice, a, b)) % 4 == 0);
    }
  }
}

TEST_CASE("worked instance, series A, sign -") {
  Instance in = worked(1, 9);
  WitnessSearch s = find_witness(in.lattice, in.inv);
  REQUIRE(s.hit);
  CHECK(*s.hit == SeriesHit{Series::A, -1, {-1, -1}});
  Certificate cert = certificate(in.lattice, in.inv, *s.hit);
  CHECK(cert.chain.steps.back().source == MukaiVector{1, {-1, -1}, -1});
  check_certificate(cert, in.inv);
}

TEST_CASE("verdict semantics") {
  DecisionInput yes{{2, 1, 1}, PolarizedLattice::make(2, 1, 1, 1), true};
  Verdict v = decide(yes);
  CHECK(v.kind == VerdictKind::Yes);
  REQUIRE(v.certificate);
  CHECK(*v.certificate == *decide(yes).certificate);

  DecisionInput obstructed{{2, 2, 1}, PolarizedLattice::make(4, 2, 2, 1), true};
  v = decide(obstructed);
  CHECK(v.kind == VerdictKind::No);
  CHECK(v.reason.find("n(v)=2") != std::string::npos);
  CHECK_FALSE(v.searched);
  obstructed.full_picard_general = false;
  CHECK(decide(obstructed).kind == VerdictKind::Unknown);

  CHECK_THROWS_AS(find_witness(obstructed.lattice, invariants({2, 2, 1})), Error);

  DecisionInput mismatch{{2, 3, 1}, PolarizedLattice::make(2, 1, 1, 1), true};
  try {
    decide(mismatch);
    FAIL("expected LatticeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LatticeMismatch);
  }

  // Find a searched miss and check both flag settings.
  bool seen = false;
  for (const PolarizedLattice& L : enumerate_lattices(4, 200)) {
    if (L.gamma() % 2 == 0) continue;  // c = 2 needs gamma odd
    DecisionInput in{{2, 2, 1}, L, true};
    Verdict full = decide(in);
    if (full.kind != VerdictKind::No) continue;
    seen = true;
    CHECK(full.reason == "no series A or B witness exists in N(X)");
    in.full_picard_general = false;
    Verdict sub = decide(in);
    CHECK(sub.kind == VerdictKind::Unknown);
    CHECK(sub.reason == "no witness in given sublattice");
    in.series = {Series::A};
    in.full_picard_general = true;
    CHECK(decide(in).kind == VerdictKind::Unknown);
  }
  CHECK(seen);
}

TEST_CASE("decide against a Gram-matrix enumeration oracle") {
  long yes = 0, no = 0;
  for (long r = 1; r <= 5; ++r) {
    for (long s = 1; s <= 5; ++s) {
      for (long d = 1; d <= 2; ++d) {
        MukaiInvariants inv;
        try {
          inv = invariants({r, s, d});
        } catch (const Error&) {
          continue;
        }
        for (const PolarizedLattice& L : enumerate_lattices(inv.n_half, 40)) {
          if (gcd(inv.c, inv.d() * L.gamma()) != 1) continue;
          Verdict v = decide({{r, s, d}, L, true});
          CAPTURE(r);
          CAPTURE(s);
          CAPTURE(d);
          CAPTURE(L.params().gamma);
          CAPTURE(L.params().delta);
          bool oracle_hit = false;
          for (long a = -40; a <= 40 && !oracle_hit; ++a) {
            for (long b = -40; b <= 40 && !oracle_hit; ++b) {
              for (Series ser : {Series::A, Series::B}) {
                auto sg = series_by_gram(L, inv, a, b, ser);
                CHECK(sg == check_series(L, inv, from_basis(L, a, b), ser));
                oracle_hit = oracle_hit || sg.has_value();
              }
            }
          }
          if (v.kind == VerdictKind::Yes) {
            ++yes;
            check_certificate(*v.certificate, inv);
          } else {
            ++no;
            CHECK(v.kind == VerdictKind::No);
            CHECK_FALSE(oracle_hit);
          }
        }
      }
    }
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}
