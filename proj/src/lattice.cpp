#include "k3iso/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "k3iso/error.hpp"

namespace k3iso {

std::string describe(LatticeViolation v) {
  switch (v) {
    case LatticeViolation::NonPositive: return "invariant: positivity";
    case LatticeViolation::GammaDivides: return "invariant: gamma divides 2*n_half";
    case LatticeViolation::MuUnit: return "invariant: mu unit";
    case LatticeViolation::DeltaCongruence: return "invariant: delta congruence";
  }
  return "invariant: unknown";
}

std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
  return os << "(" << v.x << ", " << v.y << ")";
}

namespace {

Gram2 gram_for(const Int& n_half, const Int& gamma, const Int& delta,
               const Int& mu, const Int& modulus) {
  // w^2 = (gamma*mu^2 - delta)/M, H~.w = gamma*mu.
  return Gram2{2 * n_half, gamma * mu, (gamma * mu * mu - delta) / modulus};
}

Int canonical_residue(const Int& mu, const Int& modulus) {
  Int m1 = mod(mu, modulus);
  Int m2 = mod(-mu, modulus);
  return m1 < m2 ? m1 : m2;
}

}  // namespace

LatticeReport validate(const LatticeParams& p) {
  LatticeReport report;
  if (p.n_half < 1 || p.gamma < 1 || p.delta < 1) {
    report.violations.push_back(LatticeViolation::NonPositive);
    return report;
  }
  if (!divides(p.gamma, 2 * p.n_half)) {
    report.violations.push_back(LatticeViolation::GammaDivides);
    return report;
  }
  Int modulus = 2 * p.n_half / p.gamma;
  if (gcd(p.mu, modulus) != 1) {
    report.violations.push_back(LatticeViolation::MuUnit);
  }
  if (mod(p.delta - p.mu * p.mu * p.gamma, 2 * modulus) != 0) {
    report.violations.push_back(LatticeViolation::DeltaCongruence);
  }
  if (report.valid()) {
    report.gram = gram_for(p.n_half, p.gamma, p.delta,
                           canonical_residue(p.mu, modulus), modulus);
  }
  return report;
}

PolarizedLattice PolarizedLattice::make(const LatticeParams& p) {
  LatticeReport report = validate(p);
  if (!report.valid()) {
    throw Error(ErrorCode::InvalidLattice, describe(report.violations.front()));
  }
  PolarizedLattice L;
  L.n_half_ = p.n_half;
  L.gamma_ = p.gamma;
  L.delta_ = p.delta;
  L.modulus_ = 2 * p.n_half / p.gamma;
  L.mu_ = mod(p.mu, L.modulus_);
  return L;
}

Int PolarizedLattice::canonical_mu() const { return canonical_residue(mu_, modulus_); }

PolarizedLattice PolarizedLattice::canonical() const {
  PolarizedLattice L = *this;
  L.mu_ = canonical_mu();
  return L;
}

bool PolarizedLattice::contains(const LatticeVector& z) const {
  return mod(z.x - mu_ * z.y, modulus_) == 0;
}

Gram2 PolarizedLattice::gram() const {
  return gram_for(n_half_, gamma_, delta_, mu_, modulus_);
}

std::vector<PolarizedLattice> enumerate_lattices(const Int& n_half, const Int& max_gamma_delta) {
  std::vector<PolarizedLattice> out;
  if (n_half < 1) return out;
  for (Int gamma = 1; gamma <= 2 * n_half && gamma <= max_gamma_delta; ++gamma) {
    if (!divides(gamma, 2 * n_half)) continue;
    Int modulus = 2 * n_half / gamma;
    std::vector<std::pair<Int, Int>> found;  // (delta, mu)
    for (Int mu = 0; 2 * mu <= modulus; ++mu) {
      if (gcd(mu, modulus) != 1) continue;
      Int delta = mod(mu * mu * gamma, 2 * modulus);
      if (delta == 0) delta = 2 * modulus;
      for (; gamma * delta <= max_gamma_delta; delta += 2 * modulus) found.emplace_back(delta, mu);
    }
    std::sort(found.begin(), found.end());
    for (const auto& [delta, mu] : found) out.push_back(PolarizedLattice::make(n_half, gamma, delta, mu));
  }
  return out;
}

Int pairing(const PolarizedLattice& L, const LatticeVector& z, const LatticeVector& zp) {
  if (!L.contains(z) || !L.contains(zp)) {
    std::ostringstream os;
    os << "vector " << (L.contains(z) ? zp : z) << " violates x = mu*y (mod "
       << L.modulus() << ")";
    throw Error(ErrorCode::NotInLattice, os.str());
  }
  Int num = L.gamma() * z.x * zp.x - L.delta() * z.y * zp.y;
  if (!divides(L.modulus(), num)) {
    throw Error(ErrorCode::IntegralityFailure, "pairing numerator not divisible by M");
  }
  return num / L.modulus();
}

BasisCoords basis_coords(const PolarizedLattice& L, const LatticeVector& z) {
  if (!L.contains(z)) {
    throw Error(ErrorCode::NotInLattice, "vector outside N");
  }
  return {(z.x - L.mu() * z.y) / L.modulus(), z.y};
}

LatticeVector from_basis(const PolarizedLattice& L, const Int& alpha, const Int& beta) {
  return {alpha * L.modulus() + beta * L.mu(), beta};
}

Int content(const PolarizedLattice& L, const LatticeVector& z) {
  BasisCoords b = basis_coords(L, z);
  return gcd(b.alpha, b.beta);
}

LatticeVector GramEmbedding::to_lattice(const Point& u) const {
  return {to_xy_[0][0] * u.x + to_xy_[0][1] * u.y,
          to_xy_[1][0] * u.x + to_xy_[1][1] * u.y};
}

Point GramEmbedding::to_standard(const LatticeVector& z) const {
  if (!lattice_.contains(z)) {
    throw Error(ErrorCode::NotInLattice, "vector outside N");
  }
  const auto& t = to_xy_;
  Int det = t[0][0] * t[1][1] - t[0][1] * t[1][0];
  Int ux = t[1][1] * z.x - t[0][1] * z.y;
  Int uy = -t[1][0] * z.x + t[0][0] * z.y;
  if (!divides(det, ux) || !divides(det, uy)) {
    throw Error(ErrorCode::IntegralityFailure, "inverse coordinate map not integral");
  }
  return {ux / det, uy / det};
}

GramEmbedding from_gram(const Gram2& g, const Point& h) {
  if (!g.even()) {
    throw Error(ErrorCode::NotEven, "diagonal entries must be even");
  }
  if (g.det() >= 0) {
    std::ostringstream os;
    os << "det = " << g.det() << " >= 0";
    throw Error(ErrorCode::NotHyperbolic, os.str());
  }
  if (gcd(h.x, h.y) != 1) {
    throw Error(ErrorCode::NotPrimitivePolarization, "h is not primitive in Z^2");
  }
  auto apply = [&](const Point& u, const Point& v) {
    return u.x * (g.g11 * v.x + g.g12 * v.y) + u.y * (g.g12 * v.x + g.g22 * v.y);
  };
  Int hh = apply(h, h);
  if (hh <= 0) {
    throw Error(ErrorCode::NotPositive, "h.G.h <= 0");
  }

  // Complete h to a positively oriented basis {h, k} of Z^2.
  ExtendedGcd e = extended_gcd(h.x, h.y);
  Point k{-e.t, e.s};
  Int beta = apply(h, k);
  Int kappa = apply(k, k);
  Int gamma = gcd(hh, beta);
  Int n_half = hh / 2;
  Int modulus = hh / gamma;
  Int delta = (beta * beta - hh * kappa) / gamma;
  Int beta_g = beta / gamma;

  // f = eps * ((beta/gamma)*h - M*k); w = (mu*h + f)/M integral forces
  // mu = -eps*beta/gamma (mod M). eps is coupled to the canonical mu.
  Int mu_plus = mod(-beta_g, modulus);
  Int mu_minus = mod(beta_g, modulus);
  int eps = mu_plus <= mu_minus ? 1 : -1;
  Int mu = eps == 1 ? mu_plus : mu_minus;

  PolarizedLattice L = PolarizedLattice::make(n_half, gamma, delta, mu);

  // u = A*h + B*k, x = M*A + (beta/gamma)*B, y = -eps*B.
  // [A; B] = P^{-1} u with P = [h k], det P = 1.
  std::array<std::array<Int, 2>, 2> pinv{{{k.y, -k.x}, {-h.y, h.x}}};
  std::array<std::array<Int, 2>, 2> t{};
  for (int j = 0; j < 2; ++j) {
    t[0][j] = modulus * pinv[0][j] + beta_g * pinv[1][j];
    t[1][j] = -eps * pinv[1][j];
  }
  GramEmbedding emb(L, t, g, h);

  // Certify: transported pairings reproduce G, h maps to H~, and the
  // inverse map returns the standard basis.
  const Point basis[2] = {{1, 0}, {0, 1}};
  const Int entries[2][2] = {{g.g11, g.g12}, {g.g12, g.g22}};
  for (int i = 0; i < 2; ++i) {
    LatticeVector zi = emb.to_lattice(basis[i]);
    if (!(emb.to_standard(zi) == basis[i])) {
      throw Error(ErrorCode::SynthesisFailure, "coordinate map does not round-trip");
    }
    for (int j = 0; j < 2; ++j) {
      if (pairing(L, zi, emb.to_lattice(basis[j])) != entries[i][j]) {
        throw Error(ErrorCode::SynthesisFailure, "transported Gram differs from input");
      }
    }
  }
  if (!(emb.to_lattice(h) == L.h_tilde())) {
    throw Error(ErrorCode::SynthesisFailure, "h does not map to H~");
  }
  return emb;
}

}  // namespace k3iso
