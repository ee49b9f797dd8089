#include "k3iso/moduli.hpp"

#include <sstream>

#include "k3iso/error.hpp"

namespace k3iso {

std::ostream& operator<<(std::ostream& os, const MukaiVector& v) {
  return os << "(" << v.rank << ", " << v.c1 << ", " << v.sigma << ")";
}

Int mukai_square(const MukaiVector& v, const PolarizedLattice& L) {
  return square(L, v.c1) - 2 * v.rank * v.sigma;
}

Int common_divisor(const MukaiVector& v, const PolarizedLattice& L) {
  return gcd(v.rank, content(L, v.c1), v.sigma);
}

std::string kind_name(const Morphism& m) {
  struct Visitor {
    std::string operator()(const Reflection&) const { return "reflection"; }
    std::string operator()(const Twist&) const { return "twist"; }
    std::string operator()(const Nu&) const { return "nu"; }
    std::string operator()(const NuInverse&) const { return "nu_inverse"; }
    std::string operator()(const Tyurin&) const { return "tyurin"; }
  };
  return std::visit(Visitor{}, m);
}

namespace {

[[noreturn]] void violated(const std::string& kind, const std::string& what) {
  throw Error(ErrorCode::PreconditionViolated, kind + ": " + what);
}

template <typename T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_nu(const char* kind, const Int& d1, const Int& d2, const MukaiVector& v,
              const PolarizedLattice& L) {
  if (d1 < 1 || d2 < 1) violated(kind, "d1, d2 must be >= 1");
  if (v.rank < 1 || v.sigma < 1) violated(kind, "rank and sigma must be >= 1");
  if (content(L, v.c1) != 1) violated(kind, "c1 = " + str(v.c1) + " is not primitive in N");
  if (mukai_square(v, L) != 0) violated(kind, "source " + str(v) + " is not isotropic");
  if (gcd(d1, v.sigma) != 1) violated(kind, "(d1, s) != 1");
  if (gcd(d2, v.rank) != 1) violated(kind, "(d2, r) != 1");
  if (gcd(d1, d2) != 1) violated(kind, "(d1, d2) != 1");
}

struct Applier {
  const MukaiVector& v;
  const PolarizedLattice& L;

  std::optional<MukaiVector> operator()(const Reflection&) const {
    if (v.rank < 1 || v.sigma < 1) violated("reflection", "rank and sigma must be >= 1");
    if (!primitive_isotropic(v, L)) {
      violated("reflection", "source " + str(v) + " is not primitive isotropic");
    }
    return MukaiVector{v.sigma, v.c1, v.rank};
  }

  std::optional<MukaiVector> operator()(const Twist& t) const {
    if (!L.contains(t.D)) violated("twist", "D = " + str(t.D) + " is not in N");
    if (!L.contains(v.c1)) violated("twist", "c1 is not in N");
    Int d_sq = square(L, t.D);
    if (d_sq % 2 != 0) {
      throw Error(ErrorCode::IntegralityFailure, "odd D^2 in an even lattice");
    }
    return MukaiVector{v.rank, v.c1 + v.rank * t.D,
                       v.sigma + v.rank * (d_sq / 2) + pairing(L, t.D, v.c1)};
  }

  std::optional<MukaiVector> operator()(const Nu& n) const {
    check_nu("nu", n.d1, n.d2, v, L);
    return MukaiVector{n.d1 * n.d1 * v.rank, (n.d1 * n.d2) * v.c1, n.d2 * n.d2 * v.sigma};
  }

  std::optional<MukaiVector> operator()(const NuInverse& n) const {
    if (n.d1 < 1 || n.d2 < 1) violated("nu_inverse", "d1, d2 must be >= 1");
    Int d11 = n.d1 * n.d1, d22 = n.d2 * n.d2, d12 = n.d1 * n.d2;
    if (!divides(d11, v.rank) || !divides(d22, v.sigma) || !divides(d12, v.c1.x) ||
        !divides(d12, v.c1.y)) {
      violated("nu_inverse", "source " + str(v) + " is not of the form (d1^2 r, d1 d2 H, d2^2 s)");
    }
    MukaiVector pre{v.rank / d11, {v.c1.x / d12, v.c1.y / d12}, v.sigma / d22};
    if (!L.contains(pre.c1)) violated("nu_inverse", "H = c1/(d1 d2) is not in N");
    check_nu("nu_inverse", n.d1, n.d2, pre, L);
    return pre;
  }

  std::optional<MukaiVector> operator()(const Tyurin& t) const {
    if (t.sign != 1 && t.sign != -1) violated("tyurin", "sign must be +1 or -1");
    if (!L.contains(t.h1)) violated("tyurin", "h1 is not in N");
    Int h_sq = square(L, t.h1);
    if (h_sq == 0 || sign(h_sq) != t.sign) {
      violated("tyurin", "sign * h1^2 must be positive, h1^2 = " + str(h_sq));
    }
    MukaiVector shape{t.sign * h_sq / 2, t.h1, Int(t.sign)};
    if (!(v == shape)) {
      violated("tyurin", "source " + str(v) + " does not have shape " + str(shape));
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<MukaiVector> apply(const Morphism& m, const MukaiVector& v,
                                 const PolarizedLattice& L) {
  return std::visit(Applier{v, L}, m);
}

TwistReport twist_preserves(const MukaiVector& v, const LatticeVector& D,
                            const PolarizedLattice& L) {
  MukaiVector image = *apply(Twist{D}, v, L);
  return {common_divisor(v, L), common_divisor(image, L), mukai_square(v, L),
          mukai_square(image, L), image};
}

Chain build_chain(const MukaiVector& source, const std::vector<Morphism>& morphisms,
                  const PolarizedLattice& L) {
  Chain chain{source, {}};
  std::optional<MukaiVector> cur = source;
  for (const Morphism& m : morphisms) {
    if (!cur) violated(kind_name(m), "morphism after terminal Tyurin step");
    std::optional<MukaiVector> next = apply(m, *cur, L);
    chain.steps.push_back({m, *cur, next});
    cur = next;
  }
  return chain;
}

ChainReport validate_chain(const Chain& chain, const PolarizedLattice& L) {
  ChainReport report;
  std::optional<MukaiVector> cur = chain.source;
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const ChainStep& step = chain.steps[i];
    auto fail = [&](const std::string& why) {
      report.failed_step = i;
      report.detail = "step " + std::to_string(i) + " (" + kind_name(step.morphism) + "): " + why;
      return report;
    };
    if (!cur) return fail("morphism after terminal Tyurin step");
    if (!(step.source == *cur)) return fail("recorded source " + str(step.source) + " != " + str(*cur));
    try {
      if (!primitive_isotropic(*cur, L)) return fail("vector " + str(*cur) + " is not primitive isotropic");
      std::optional<MukaiVector> next = apply(step.morphism, *cur, L);
      if (next != step.target) return fail("recorded target does not match replay");
      cur = next;
    } catch (const Error& e) {
      return fail(e.what());
    }
  }
  if (chain.steps.empty() || cur) {
    report.failed_step = chain.steps.size();
    report.detail = "chain does not end with a Tyurin step to X";
    return report;
  }
  report.ok = true;
  return report;
}

}  // namespace k3iso
