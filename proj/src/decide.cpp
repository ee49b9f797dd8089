#include "k3iso/decide.hpp"

#include <algorithm>
#include <sstream>

#include "k3iso/error.hpp"

namespace k3iso {

std::string to_string(Series s) { return s == Series::A ? "A" : "B"; }

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Yes: return "yes";
    case VerdictKind::No: return "no";
    case VerdictKind::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(OracleAgreement a) {
  switch (a) {
    case OracleAgreement::Agree: return "agree";
    case OracleAgreement::OutsideBox: return "outside_box";
    case OracleAgreement::Disagree: return "disagree";
    case OracleAgreement::NotApplicable: return "n/a";
  }
  return "n/a";
}

ConstraintSet SeriesProblem::constraints(const PolarizedLattice& L) const {
  ConstraintSet cs;
  cs.x_divisible_by(x_divisor).y_divisible_by(y_divisor).x_congruent_mu_y(L.mu(), L.modulus());
  return cs;
}

SeriesProblem series_problem(const PolarizedLattice& L, const MukaiInvariants& inv, Series s) {
  const Int& own = s == Series::A ? inv.b1 : inv.a1;
  Int g = gcd(L.gamma(), own);
  return {2 * own * inv.c, own / g * inv.c, own * inv.c};
}

std::optional<int> check_series(const PolarizedLattice& L, const MukaiInvariants& inv,
                                const LatticeVector& z, Series s) {
  SeriesProblem p = series_problem(L, inv, s);
  Int sq = square(L, z);
  int sgn = 0;
  if (sq == p.norm) {
    sgn = 1;
  } else if (sq == -p.norm) {
    sgn = -1;
  } else {
    return std::nullopt;
  }
  if (!divides(L.gamma() * p.x_divisor, h_dot(L, z))) return std::nullopt;
  if (!divides(L.delta() * p.y_divisor, f_dot(L, z))) return std::nullopt;
  return sgn;
}

namespace {

void require_hypothesis(const PolarizedLattice& L, const MukaiInvariants& inv) {
  if (gcd(inv.c, inv.d() * L.gamma()) != 1) {
    std::ostringstream os;
    os << "(c, d*gamma) = (" << inv.c << ", " << inv.d() * L.gamma() << ") != 1";
    throw Error(ErrorCode::HypothesisViolated, os.str());
  }
}

void accumulate(SolverStats& into, const SolverStats& s) {
  into.root_candidates += s.root_candidates;
  into.classes += s.classes;
  into.orbit_period = std::max(into.orbit_period, s.orbit_period);
}

[[noreturn]] void synthesis_failure(const std::string& what) {
  throw Error(ErrorCode::SynthesisFailure, what);
}

}  // namespace

WitnessSearch find_witness(const PolarizedLattice& L, const MukaiInvariants& inv,
                           const std::vector<Series>& order) {
  require_hypothesis(L, inv);
  WitnessSearch out;
  for (Series s : order) {
    SeriesProblem p = series_problem(L, inv, s);
    ConstraintSet cs = p.constraints(L);
    for (int sgn : {1, -1}) {
      Representation rep = represent(L.gamma(), L.delta(), p.target(L, sgn), cs);
      accumulate(out.stats, rep.stats);
      if (rep.witness) {
        out.hit = SeriesHit{s, sgn, {rep.witness->x, rep.witness->y}};
        return out;
      }
    }
  }
  return out;
}

Certificate certificate(const PolarizedLattice& L, const MukaiInvariants& inv,
                        const SeriesHit& hit) {
  if (check_series(L, inv, hit.witness, hit.series) != hit.sign) {
    synthesis_failure("witness does not satisfy the series conditions");
  }
  GammaSplit split = gamma_split(L.gamma(), inv.a1, inv.b1);
  const bool a_series = hit.series == Series::A;
  const Int& own = a_series ? inv.b1 : inv.a1;
  const Int& other = a_series ? inv.a1 : inv.b1;
  const Int& own_g = a_series ? split.gamma_b : split.gamma_a;
  const Int& other_g = a_series ? split.gamma_a : split.gamma_b;

  const Int scale = own / own_g * inv.c;                          // (b1/gamma_b) c
  const Int denom = 2 / split.gamma_2 * (other / other_g) * inv.c;  // (2/gamma_2)(a1/gamma_a) c
  const Int step = own * inv.c;                                    // b1 c
  const LatticeVector& z = hit.witness;

  if (!divides(scale, z.x) || !divides(scale, z.y)) synthesis_failure("p, q not divisible by (b1/gamma_b)c");
  Certificate cert{L, hit.series, hit.sign, z, z.x / scale, z.y / scale, 0, {}, {}};
  if (!divides(own_g, cert.q1)) synthesis_failure("q1 not divisible by gamma_b");
  Int numer = cert.p1 - L.mu() * cert.q1;
  if (!divides(denom, numer)) synthesis_failure("p1 - mu*q1 not divisible by (2/gamma_2)(a1/gamma_a)c");
  cert.d2 = mod(numer / denom, step);
  if (cert.d2 == 0) cert.d2 = step;

  Int dx = z.x - cert.d2 * L.modulus();
  if (!divides(step, dx) || !divides(step, z.y)) synthesis_failure("h1 - d2*H~ not divisible by b1*c");
  cert.D = {dx / step, z.y / step};
  if (!L.contains(cert.D)) synthesis_failure("D is not in N");
  if (!(cert.d2 * L.h_tilde() + step * cert.D == z)) synthesis_failure("h1 != d2*H~ + b1*c*D");

  MukaiVector source{inv.a * inv.c, inv.d() * L.h_tilde(), inv.b * inv.c};
  std::vector<Morphism> morphisms{NuInverse{inv.d_a, inv.d_b}};
  if (a_series) morphisms.emplace_back(Reflection{});
  morphisms.emplace_back(Nu{1, cert.d2});
  morphisms.emplace_back(Twist{cert.D});
  morphisms.emplace_back(Tyurin{hit.sign, z});
  try {
    cert.chain = build_chain(source, morphisms, L);
  } catch (const Error& e) {
    synthesis_failure(std::string("chain assembly: ") + e.what());
  }
  ChainReport report = validate_chain(cert.chain, L);
  if (!report.ok) synthesis_failure("chain validation: " + report.detail);
  return cert;
}

Verdict decide(const DecisionInput& input) {
  MukaiInvariants inv = invariants(input.mukai);
  PolarizedLattice L = input.lattice.canonical();
  if (L.n_half() != inv.n_half) {
    std::ostringstream os;
    os << "lattice n_half = " << L.n_half() << " but a1*b1*c^2 = " << inv.n_half;
    throw Error(ErrorCode::LatticeMismatch, os.str());
  }

  Verdict v;
  Int nv = n_of_v(input.mukai.r, input.mukai.s, L.gamma());
  if (gcd(inv.c, inv.d() * L.gamma()) != 1) {
    std::ostringstream os;
    if (input.full_picard_general) {
      v.kind = VerdictKind::No;
      os << "n(v)=" << nv << " != 1";
    } else {
      v.kind = VerdictKind::Unknown;
      os << "hypothesis (c, d*gamma)=1 fails on this sublattice; n(v)=" << nv;
    }
    v.reason = os.str();
    return v;
  }

  WitnessSearch search = find_witness(L, inv, input.series);
  v.stats = search.stats;
  v.searched = true;
  if (search.hit) {
    v.kind = VerdictKind::Yes;
    v.certificate = certificate(L, inv, *search.hit);
    v.reason = "series " + to_string(search.hit->series) + " witness, sign " +
               (search.hit->sign > 0 ? "+1" : "-1");
    return v;
  }
  const bool all_series = input.series.size() == 2;
  if (input.full_picard_general && all_series) {
    v.kind = VerdictKind::No;
    v.reason = "no series A or B witness exists in N(X)";
  } else {
    v.kind = VerdictKind::Unknown;
    v.reason = all_series ? "no witness in given sublattice" : "no witness in the searched series";
  }
  return v;
}

std::vector<Point> oracle_series_scan(const PolarizedLattice& L, const MukaiInvariants& inv,
                                      Series s, int sign, const Int& bound) {
  SeriesProblem p = series_problem(L, inv, s);
  return enumerate_bounded(L.gamma(), L.delta(), p.target(L, sign), p.constraints(L), bound);
}

OracleAgreement cross_check(const PolarizedLattice& lattice, const MukaiInvariants& inv,
                            const Verdict& verdict, const Int& bound) {
  if (!verdict.searched) return OracleAgreement::NotApplicable;
  PolarizedLattice L = lattice.canonical();
  bool scan_hit = false;
  for (Series s : {Series::A, Series::B}) {
    for (int sgn : {1, -1}) {
      for (const Point& p : oracle_series_scan(L, inv, s, sgn, bound)) {
        // Every scan point must pass the pairing-based series test.
        if (check_series(L, inv, {p.x, p.y}, s) != sgn) return OracleAgreement::Disagree;
        scan_hit = true;
      }
    }
  }
  if (verdict.kind != VerdictKind::Yes) {
    return scan_hit ? OracleAgreement::Disagree : OracleAgreement::Agree;
  }
  const Certificate& cert = *verdict.certificate;
  if (check_series(L, inv, cert.witness, cert.series) != cert.sign) return OracleAgreement::Disagree;
  if (scan_hit) return OracleAgreement::Agree;
  bool outside = abs(cert.witness.x) > bound || abs(cert.witness.y) > bound;
  return outside ? OracleAgreement::OutsideBox : OracleAgreement::Disagree;
}

}  // namespace k3iso
