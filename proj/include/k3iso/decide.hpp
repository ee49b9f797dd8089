#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3iso/arith.hpp"
#include "k3iso/lattice.hpp"
#include "k3iso/moduli.hpp"
#include "k3iso/qsolve.hpp"

namespace k3iso {

enum class Series { A, B };

std::string to_string(Series s);

// Norm and congruence data of one series on the lattice N:
//   series A: z^2 = +-2*b1*c, H~.z = 0 mod gamma*(b1/gamma_b)*c,
//             f(H~).z = 0 mod delta*b1*c;
//   series B: the same with a1, gamma_a in place of b1, gamma_b.
// In (x, y) coordinates: gamma*x^2 - delta*y^2 = +-norm*M with
// x = 0 mod x_divisor, y = 0 mod y_divisor and x = mu*y mod M.
struct SeriesProblem {
  Int norm;       // 2*b1*c or 2*a1*c
  Int x_divisor;  // (b1/gamma_b)*c or (a1/gamma_a)*c
  Int y_divisor;  // b1*c or a1*c

  Int target(const PolarizedLattice& L, int sign) const { return sign * norm * L.modulus(); }
  ConstraintSet constraints(const PolarizedLattice& L) const;
};

SeriesProblem series_problem(const PolarizedLattice& L, const MukaiInvariants& inv, Series s);

// +1 / -1 when z belongs to the series with that sign of z^2, else nullopt.
std::optional<int> check_series(const PolarizedLattice& L, const MukaiInvariants& inv,
                                const LatticeVector& z, Series s);

struct SeriesHit {
  Series series;
  int sign;
  LatticeVector witness;

  friend bool operator==(const SeriesHit&, const SeriesHit&) = default;
};

struct WitnessSearch {
  std::optional<SeriesHit> hit;
  SolverStats stats;  // accumulated over solver calls
};

// Searches A/+, A/-, B/+, B/- in that order. Throws Error{HypothesisViolated}
// when (c, d*gamma) != 1. A miss is complete: no witness exists in N.
WitnessSearch find_witness(const PolarizedLattice& L, const MukaiInvariants& inv,
                           const std::vector<Series>& order = {Series::A, Series::B});

struct Certificate {
  PolarizedLattice lattice;  // canonical presentation the coordinates refer to
  Series series;
  int sign;
  LatticeVector witness;  // h1 = (p, q)
  Int p1;
  Int q1;
  Int d2;
  LatticeVector D;
  Chain chain;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// h1 = d2*H~ + b1*c*D (series A) or d2*H~ + a1*c*D (series B), and the chain
// NuInverse(d_a, d_b), [Reflection,] Nu(1, d2), Twist(D), Tyurin(sign, h1)
// from (r, H, s). Throws Error{SynthesisFailure} on any inexact step.
Certificate certificate(const PolarizedLattice& L, const MukaiInvariants& inv,
                        const SeriesHit& hit);

struct DecisionInput {
  MukaiInput mukai;
  PolarizedLattice lattice;
  // N = N(X), rho(X) = 2 and Aut(T(X), H^{2,0}) = +-1.
  bool full_picard_general = false;
  // Restricts the witness search; with a restriction a miss is never "no".
  std::vector<Series> series = {Series::A, Series::B};
};

enum class VerdictKind { Yes, No, Unknown };

std::string to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<Certificate> certificate;
  std::string reason;
  SolverStats stats;
  // True when the witness search ran to completion (hypothesis held).
  bool searched = false;
};

// Throws the validation errors of arith/lattice and Error{LatticeMismatch}
// when lattice.n_half != a1*b1*c^2.
Verdict decide(const DecisionInput& input);

// Bounded-scan oracle: every series vector with |x|, |y| <= bound, for the
// given series and sign, straight from enumerate_bounded.
std::vector<Point> oracle_series_scan(const PolarizedLattice& L, const MukaiInvariants& inv,
                                      Series s, int sign, const Int& bound);

enum class OracleAgreement {
  Agree,            // same answer inside the box
  OutsideBox,       // solver witness verifies but lies outside the box
  Disagree,         // solver said no while the scan found a witness
  NotApplicable,    // hypothesis fails; no witness search performed
};

std::string to_string(OracleAgreement a);

OracleAgreement cross_check(const PolarizedLattice& L, const MukaiInvariants& inv,
                            const Verdict& verdict, const Int& bound);

}  // namespace k3iso
