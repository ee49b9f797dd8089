#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "k3iso/binary_form.hpp"
#include "k3iso/integer.hpp"

namespace k3iso {

// value = residue (mod modulus)
struct Congruence {
  Int residue;
  Int modulus;
};

// x = mu * y (mod modulus)
struct CoupledCongruence {
  Int mu;
  Int modulus;
};

// Linear congruence conditions on a solution (x, y).
struct ConstraintSet {
  std::vector<Congruence> on_x;
  std::vector<Congruence> on_y;
  std::optional<CoupledCongruence> coupled;

  // x = 0 (mod e)
  ConstraintSet& x_divisible_by(const Int& e) {
    on_x.push_back({0, e});
    return *this;
  }
  ConstraintSet& y_divisible_by(const Int& e) {
    on_y.push_back({0, e});
    return *this;
  }
  ConstraintSet& x_congruent_mu_y(const Int& mu, const Int& modulus) {
    coupled = CoupledCongruence{mu, modulus};
    return *this;
  }

  bool empty() const { return on_x.empty() && on_y.empty() && !coupled; }
  // Throws Error{InvalidInput} if some modulus is < 1.
  void check_moduli() const;
  // lcm of all moduli; every condition depends only on (x, y) mod period().
  Int period() const;
  bool satisfied(const Int& x, const Int& y) const;
  bool satisfied(const Point& p) const { return satisfied(p.x, p.y); }
  // Whether any (x, y) at all meets every condition.
  bool compatible() const;
};

enum class SolveStatus { Solved, NoSolution, IncompatibleConstraints };

struct SolverStats {
  std::uint64_t root_candidates = 0;  // b with b^2 = D (mod 4|n|)
  std::uint64_t classes = 0;          // orbits of representations found
  std::uint64_t orbit_period = 0;     // largest residue period walked
};

struct Representation {
  SolveStatus status = SolveStatus::NoSolution;
  std::optional<Point> witness;
  SolverStats stats;

  bool solvable() const { return witness.has_value(); }
};

// Decides gamma*x^2 - delta*y^2 = m under cs. A NoSolution answer is a
// proof of non-existence, not the outcome of a bounded search. Among all
// solutions returns the one minimizing (|y|, |x|); ties prefer sign(x) =
// sign(m), then y >= 0.
// Throws Error{ZeroTarget} for m = 0 and Error{InvalidInput} unless
// gamma, delta >= 1.
Representation represent(const Int& gamma, const Int& delta, const Int& m,
                         const ConstraintSet& cs = {});

// Every solution with |x|, |y| <= bound, sorted by (x, y).
std::vector<Point> enumerate_bounded(const Int& gamma, const Int& delta, const Int& m,
                                     const ConstraintSet& cs, const Int& bound);

// Witness order used by represent.
bool witness_less(const Point& p, const Point& q, const Int& m);

}  // namespace k3iso
