#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "k3iso/integer.hpp"

namespace k3iso {

// Raw (n_half, gamma, delta, mu) data, not yet validated.
struct LatticeParams {
  Int n_half;
  Int gamma;
  Int delta;
  Int mu;
};

// Symmetric 2x2 integer Gram matrix [[g11, g12], [g12, g22]].
struct Gram2 {
  Int g11;
  Int g12;
  Int g22;

  Int det() const { return g11 * g22 - g12 * g12; }
  bool even() const { return g11 % 2 == 0 && g22 % 2 == 0; }

  friend bool operator==(const Gram2&, const Gram2&) = default;
};

enum class LatticeViolation {
  NonPositive,       // n_half, gamma, delta must be >= 1
  GammaDivides,      // gamma | 2*n_half
  MuUnit,            // (mu, M) = 1
  DeltaCongruence,   // delta = mu^2 * gamma (mod 2M)
};

// "invariant: delta congruence" etc.
std::string describe(LatticeViolation v);

struct LatticeReport {
  std::vector<LatticeViolation> violations;
  // Gram on {H~, w} with the canonical mu; present when valid.
  std::optional<Gram2> gram;

  bool valid() const { return violations.empty(); }
};

LatticeReport validate(const LatticeParams& p);

// z = (x * H~ + y * f(H~)) / M, M = 2*n_half/gamma, with x = mu*y (mod M).
struct LatticeVector {
  Int x;
  Int y;

  LatticeVector operator+(const LatticeVector& o) const { return {x + o.x, y + o.y}; }
  LatticeVector operator-(const LatticeVector& o) const { return {x - o.x, y - o.y}; }
  LatticeVector operator-() const { return {-x, -y}; }
  friend LatticeVector operator*(const Int& k, const LatticeVector& v) {
    return {k * v.x, k * v.y};
  }
  bool is_zero() const { return x == 0 && y == 0; }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
};

std::ostream& operator<<(std::ostream& os, const LatticeVector& v);

// Rank-2 even hyperbolic lattice N with a primitive polarization H~,
// presented by (n_half, gamma, delta, mu): H~^2 = 2*n_half,
// H~.N = gamma*Z, det N = -gamma*delta, f(H~) spans H~^perp with
// f^2 = -2*n_half*delta/gamma, and N = [H~, f, w = (mu*H~ + f)/M].
class PolarizedLattice {
 public:
  // Throws Error{InvalidLattice} naming the first violated invariant.
  static PolarizedLattice make(const LatticeParams& p);
  static PolarizedLattice make(const Int& n_half, const Int& gamma,
                               const Int& delta, const Int& mu) {
    return make(LatticeParams{n_half, gamma, delta, mu});
  }

  const Int& n_half() const { return n_half_; }
  const Int& gamma() const { return gamma_; }
  const Int& delta() const { return delta_; }
  // Reduced into [0, M).
  const Int& mu() const { return mu_; }
  // M = 2*n_half/gamma.
  const Int& modulus() const { return modulus_; }

  LatticeParams params() const { return {n_half_, gamma_, delta_, mu_}; }

  // min(mu mod M, -mu mod M).
  Int canonical_mu() const;
  bool is_canonical() const { return mu_ == canonical_mu(); }
  // Same lattice with f replaced by -f when needed so that mu is canonical.
  // Vectors transfer by (x, y) -> (x, -y) exactly when flips_f() is true.
  PolarizedLattice canonical() const;
  bool flips_f() const { return !is_canonical(); }

  LatticeVector h_tilde() const { return {modulus_, 0}; }
  LatticeVector w() const { return {mu_, 1}; }
  LatticeVector f() const { return {0, modulus_}; }

  bool contains(const LatticeVector& z) const;
  // Gram on {H~, w}.
  Gram2 gram() const;

  friend bool operator==(const PolarizedLattice&, const PolarizedLattice&) = default;

 private:
  PolarizedLattice() = default;

  Int n_half_;
  Int gamma_;
  Int delta_;
  Int mu_;
  Int modulus_;
};

// Every valid lattice with the given n_half and gamma*delta <= max_gamma_delta,
// canonical mu only, ordered by (gamma, delta, mu).
std::vector<PolarizedLattice> enumerate_lattices(const Int& n_half, const Int& max_gamma_delta);

// (gamma*x*x' - delta*y*y') / M. Throws Error{IntegralityFailure} if the
// division is not exact and Error{NotInLattice} for vectors outside N.
Int pairing(const PolarizedLattice& L, const LatticeVector& z, const LatticeVector& zp);
inline Int square(const PolarizedLattice& L, const LatticeVector& z) { return pairing(L, z, z); }

// H~.z = gamma*x and f(H~).z = -delta*y.
inline Int h_dot(const PolarizedLattice& L, const LatticeVector& z) { return L.gamma() * z.x; }
inline Int f_dot(const PolarizedLattice& L, const LatticeVector& z) { return -L.delta() * z.y; }

// gcd(alpha, beta) for z = alpha*H~ + beta*w; 0 for the zero vector.
Int content(const PolarizedLattice& L, const LatticeVector& z);

// Basis-coordinate view: z = alpha*H~ + beta*w.
struct BasisCoords {
  Int alpha;
  Int beta;
};
BasisCoords basis_coords(const PolarizedLattice& L, const LatticeVector& z);
LatticeVector from_basis(const PolarizedLattice& L, const Int& alpha, const Int& beta);

// A lattice given by a Gram matrix on Z^2 and a primitive polarization h,
// together with the coordinate change to the (x, y) presentation.
class GramEmbedding {
 public:
  GramEmbedding(PolarizedLattice lattice, std::array<std::array<Int, 2>, 2> to_xy,
                Gram2 gram, Point h)
      : lattice_(std::move(lattice)), to_xy_(std::move(to_xy)),
        gram_(std::move(gram)), h_(std::move(h)) {}

  const PolarizedLattice& lattice() const { return lattice_; }
  const Gram2& gram() const { return gram_; }
  const Point& h() const { return h_; }
  // (x, y) = T * u; det T = +-M.
  const std::array<std::array<Int, 2>, 2>& to_xy_matrix() const { return to_xy_; }

  LatticeVector to_lattice(const Point& u) const;
  // Exact inverse; throws Error{NotInLattice} for vectors outside N.
  Point to_standard(const LatticeVector& z) const;

 private:
  PolarizedLattice lattice_;
  std::array<std::array<Int, 2>, 2> to_xy_;
  Gram2 gram_;
  Point h_;
};

// Reconstructs (gamma, delta, canonical mu) from an even hyperbolic Gram
// matrix and a primitive h with h.G.h > 0. Throws Error{NotEven},
// Error{NotHyperbolic}, Error{NotPrimitivePolarization}, Error{NotPositive}.
// The returned map is certified: pairings transported through it agree with
// G entry by entry and h maps to H~.
GramEmbedding from_gram(const Gram2& g, const Point& h);

}  // namespace k3iso
