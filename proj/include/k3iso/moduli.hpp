#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "k3iso/integer.hpp"
#include "k3iso/lattice.hpp"

namespace k3iso {

// Mukai vector (rank, c1, sigma) with c1 in N.
struct MukaiVector {
  Int rank;
  LatticeVector c1;
  Int sigma;

  friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

std::ostream& operator<<(std::ostream& os, const MukaiVector& v);

// c1^2 - 2*rank*sigma.
Int mukai_square(const MukaiVector& v, const PolarizedLattice& L);
// gcd(rank, content(c1), sigma).
Int common_divisor(const MukaiVector& v, const PolarizedLattice& L);
inline bool primitive_isotropic(const MukaiVector& v, const PolarizedLattice& L) {
  return common_divisor(v, L) == 1 && mukai_square(v, L) == 0;
}

// M(r, H, s) = M(s, H, r).
struct Reflection {
  friend bool operator==(const Reflection&, const Reflection&) = default;
};

// Tensoring by O(D).
struct Twist {
  LatticeVector D;
  friend bool operator==(const Twist&, const Twist&) = default;
};

// M(r, H, s) = M(d1^2 r, d1 d2 H, d2^2 s) for H primitive and
// (d1, s) = (d2, r) = (d1, d2) = 1.
struct Nu {
  Int d1;
  Int d2;
  friend bool operator==(const Nu&, const Nu&) = default;
};

struct NuInverse {
  Int d1;
  Int d2;
  friend bool operator==(const NuInverse&, const NuInverse&) = default;
};

// M(+-h1^2/2, h1, +-1) = X. Terminal.
struct Tyurin {
  int sign;
  LatticeVector h1;
  friend bool operator==(const Tyurin&, const Tyurin&) = default;
};

using Morphism = std::variant<Reflection, Twist, Nu, NuInverse, Tyurin>;

// "reflection", "twist", "nu", "nu_inverse", "tyurin"
std::string kind_name(const Morphism& m);

// Tyurin's geometric construction additionally needs
// h^0 O(h1) = h^0 O(-h1) = 0 when h1^2 < 0, which lattice data cannot decide.
inline constexpr const char* kTyurinCaveat =
    "Tyurin step with h1^2 < 0 assumes h^0(O(h1)) = h^0(O(-h1)) = 0; "
    "not decidable from lattice data";

// Image of v; nullopt is the terminal target X (Tyurin only).
// Throws Error{PreconditionViolated} with the failed condition.
std::optional<MukaiVector> apply(const Morphism& m, const MukaiVector& v,
                                 const PolarizedLattice& L);

struct TwistReport {
  Int divisor_before;
  Int divisor_after;
  Int square_before;
  Int square_after;
  MukaiVector image;

  bool preserved() const {
    return divisor_before == divisor_after && square_before == square_after;
  }
};

TwistReport twist_preserves(const MukaiVector& v, const LatticeVector& D,
                            const PolarizedLattice& L);

struct ChainStep {
  Morphism morphism;
  MukaiVector source;
  std::optional<MukaiVector> target;  // nullopt = X

  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

struct Chain {
  MukaiVector source;
  std::vector<ChainStep> steps;

  friend bool operator==(const Chain&, const Chain&) = default;
};

// Builds a chain by applying morphisms in order; throws like apply.
Chain build_chain(const MukaiVector& source, const std::vector<Morphism>& morphisms,
                  const PolarizedLattice& L);

struct ChainReport {
  bool ok = false;
  std::optional<std::size_t> failed_step;
  std::string detail;
};

// Replays every step: recorded sources/targets must match apply, every
// vector before X must be primitive and isotropic, and the chain must end
// with exactly one Tyurin step.
ChainReport validate_chain(const Chain& chain, const PolarizedLattice& L);

}  // namespace k3iso
