#include "k3iso/qsolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "k3iso/error.hpp"

namespace k3iso {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

// Combined single congruence r (mod n), or nullopt if incompatible.
std::optional<Congruence> combine(const std::vector<Congruence>& list) {
  Congruence acc{0, 1};
  for (const Congruence& c : list) {
    ExtendedGcd e = extended_gcd(acc.modulus, c.modulus);
    Int diff = c.residue - acc.residue;
    if (!divides(e.g, diff)) return std::nullopt;
    Int l = acc.modulus / e.g * c.modulus;
    Int r = acc.residue + acc.modulus * mod(diff / e.g * e.s, c.modulus / e.g);
    acc = {mod(r, l), l};
  }
  return acc;
}

// Congruence tests on machine words, valid when every modulus fits.
class FastChecker {
 public:
  static std::optional<FastChecker> make(const ConstraintSet& cs) {
    FastChecker f;
    auto push = [](std::vector<std::array<i64, 2>>& out, const std::vector<Congruence>& in) {
      for (const Congruence& c : in) {
        auto n = to_i64(c.modulus);
        if (!n || *n > (i64(1) << 40)) return false;
        out.push_back({static_cast<i64>(mod(c.residue, c.modulus)), *n});
      }
      return true;
    };
    if (!push(f.x_, cs.on_x) || !push(f.y_, cs.on_y)) return std::nullopt;
    if (cs.coupled) {
      auto n = to_i64(cs.coupled->modulus);
      if (!n || *n > (i64(1) << 40)) return std::nullopt;
      f.coupled_ = {static_cast<i64>(mod(cs.coupled->mu, cs.coupled->modulus)), *n};
    }
    return f;
  }

  bool operator()(i64 x, i64 y) const {
    for (const auto& [r, n] : x_) {
      if (((x - r) % n) != 0) return false;
    }
    for (const auto& [r, n] : y_) {
      if (((y - r) % n) != 0) return false;
    }
    if (coupled_) {
      i128 v = i128(x) - i128((*coupled_)[0]) * y;
      if (v % (*coupled_)[1] != 0) return false;
    }
    return true;
  }

 private:
  std::vector<std::array<i64, 2>> x_;
  std::vector<std::array<i64, 2>> y_;
  std::optional<std::array<i64, 2>> coupled_;
};

using u128 = unsigned __int128;

u128 isqrt_u128(u128 n) {
  if (n == 0) return 0;
  u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool fits(const Int& v, int bits) { return abs(v) < (Int(1) << bits); }

// All b in [0, 2|n|) with b^2 = disc (mod 4|n|).
std::vector<Int> sqrt_candidates(const Int& disc, const Int& n) {
  std::vector<Int> out;
  Int four_n = 4 * abs(n);
  if (fits(four_n, 60)) {
    i64 modulus = static_cast<i64>(four_n);
    i64 target = static_cast<i64>(mod(disc, four_n));
    i64 limit = modulus / 2;
    for (i64 b = 0; b < limit; ++b) {
      if (static_cast<i64>((i128(b) * b) % modulus) == target) out.emplace_back(b);
    }
    return out;
  }
  Int target = mod(disc, four_n);
  for (Int b = 0; b < 2 * abs(n); ++b) {
    if (mod(b * b, four_n) == target) out.push_back(b);
  }
  return out;
}

std::vector<Int> positive_divisors(const Int& n) {
  std::vector<Int> small, large;
  Int a = abs(n);
  for (Int k = 1; k * k <= a; ++k) {
    if (a % k == 0) {
      small.push_back(k);
      if (k * k != a) large.push_back(a / k);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

struct Search {
  const ConstraintSet& cs;
  Int m;  // original target, for tie-breaking
  Int period;
  std::optional<Point> best;
  SolverStats stats;

  void offer(const Point& p) {
    if (!cs.satisfied(p)) return;
    if (!best || witness_less(p, *best, m)) best = p;
  }
};

Point mat_mod(const Mat2& a, const Point& p, const Int& n) {
  Point q = a * p;
  return {mod(q.x, n), mod(q.y, n)};
}

// Orbit {+-A^j w} of one class of representations. Along the orbit each
// coordinate is a*eps^j + b*eps^-j, so |y| is V-shaped in j; constraint
// membership is periodic in j modulo the residue period of w mod L.
void scan_orbit(Point w, const Mat2& fwd, const Mat2& bwd, Search& s) {
  for (;;) {
    Point f = fwd * w;
    Point b = bwd * w;
    if (abs(f.y) < abs(w.y)) {
      w = f;
    } else if (abs(b.y) < abs(w.y)) {
      w = b;
    } else {
      break;
    }
  }

  const Int& L = s.period;
  std::vector<Point> residues;
  {
    Point start{mod(w.x, L), mod(w.y, L)};
    Point cur = start;
    do {
      residues.push_back(cur);
      cur = mat_mod(fwd, cur, L);
    } while (!(cur == start));
  }
  const std::size_t period = residues.size();
  s.stats.orbit_period = std::max<std::uint64_t>(s.stats.orbit_period, period);

  auto walk = [&](const Mat2& step, std::size_t count) {
    Point p = w;
    for (std::size_t i = 0; i < count; ++i) p = step * p;
    return p;
  };

  for (int sign : {1, -1}) {
    auto ok = [&](long long j) {
      long long P = static_cast<long long>(period);
      const Point& r = residues[static_cast<std::size_t>(((j % P) + P) % P)];
      return s.cs.satisfied(Int(sign) * r.x, Int(sign) * r.y);
    };
    std::optional<long long> first_fwd, first_bwd;
    for (long long j = 0; j < static_cast<long long>(period); ++j) {
      if (ok(j)) {
        first_fwd = j;
        break;
      }
    }
    if (!first_fwd) continue;
    for (long long k = 1; k <= static_cast<long long>(period); ++k) {
      if (ok(-k)) {
        first_bwd = k;
        break;
      }
    }
    std::vector<long long> picks{*first_fwd, -*first_bwd};
    if (ok(*first_fwd + 1)) picks.push_back(*first_fwd + 1);
    if (ok(-*first_bwd - 1)) picks.push_back(-*first_bwd - 1);
    for (long long j : picks) {
      Point p = j >= 0 ? walk(fwd, static_cast<std::size_t>(j))
                       : walk(bwd, static_cast<std::size_t>(-j));
      s.offer({sign * p.x, sign * p.y});
    }
  }
}

}  // namespace

void ConstraintSet::check_moduli() const {
  for (const auto* list : {&on_x, &on_y}) {
    for (const Congruence& c : *list) {
      if (c.modulus < 1) throw Error(ErrorCode::InvalidInput, "congruence modulus must be >= 1");
    }
  }
  if (coupled && coupled->modulus < 1) {
    throw Error(ErrorCode::InvalidInput, "coupled modulus must be >= 1");
  }
}

Int ConstraintSet::period() const {
  Int l = 1;
  for (const Congruence& c : on_x) l = lcm(l, c.modulus);
  for (const Congruence& c : on_y) l = lcm(l, c.modulus);
  if (coupled) l = lcm(l, coupled->modulus);
  return l;
}

bool ConstraintSet::satisfied(const Int& x, const Int& y) const {
  for (const Congruence& c : on_x) {
    if (!divides(c.modulus, x - c.residue)) return false;
  }
  for (const Congruence& c : on_y) {
    if (!divides(c.modulus, y - c.residue)) return false;
  }
  if (coupled && !divides(coupled->modulus, x - coupled->mu * y)) return false;
  return true;
}

bool ConstraintSet::compatible() const {
  auto cx = combine(on_x);
  auto cy = combine(on_y);
  if (!cx || !cy) return false;
  if (!coupled) return true;
  // rx + nx*i - mu*(ry + ny*j) = 0 (mod M) is solvable in (i, j)
  // iff gcd(nx, mu*ny, M) divides mu*ry - rx.
  Int g = gcd(cx->modulus, coupled->mu * cy->modulus, coupled->modulus);
  return divides(g, coupled->mu * cy->residue - cx->residue);
}

bool witness_less(const Point& p, const Point& q, const Int& m) {
  auto key = [&](const Point& v) {
    return std::make_tuple(abs(v.y), abs(v.x), sign(v.x) == sign(m) ? 0 : 1, v.y < 0 ? 1 : 0);
  };
  return key(p) < key(q);
}

Representation represent(const Int& gamma, const Int& delta, const Int& m,
                         const ConstraintSet& cs) {
  if (m == 0) throw Error(ErrorCode::ZeroTarget, "target m must be nonzero");
  if (gamma < 1 || delta < 1) {
    throw Error(ErrorCode::InvalidInput, "gamma and delta must be >= 1");
  }
  cs.check_moduli();
  Representation out;
  if (!cs.compatible()) {
    out.status = SolveStatus::IncompatibleConstraints;
    return out;
  }

  Int g0 = gcd(gamma, delta);
  if (!divides(g0, m)) {
    out.status = SolveStatus::NoSolution;
    return out;
  }
  const Int gamma0 = gamma / g0;
  const Int delta0 = delta / g0;
  const Int m0 = m / g0;

  Search search{cs, m, cs.period(), std::nullopt, {}};
  auto pell = pell_fundamental(gamma0 * delta0);

  if (std::holds_alternative<SquareDiscriminant>(pell)) {
    // (gamma0, delta0) = 1 with square product: gamma0 = p^2, delta0 = q^2
    // and (p x - q y)(p x + q y) = m0 has finitely many solutions.
    Int p = isqrt(gamma0);
    Int q = isqrt(delta0);
    for (const Int& d : positive_divisors(m0)) {
      for (int sgn : {1, -1}) {
        Int u = sgn * d;
        Int v = m0 / u;
        if (!divides(2 * p, u + v) || !divides(2 * q, v - u)) continue;
        ++search.stats.root_candidates;
        search.offer({(u + v) / (2 * p), (v - u) / (2 * q)});
      }
    }
  } else {
    const PellUnit& unit = std::get<PellUnit>(pell);
    const BinaryForm f0{gamma0, 0, -delta0};
    const Int disc = f0.disc();
    const FormCycle cycle(f0);
    const Mat2 fwd{unit.t, delta0 * unit.u, gamma0 * unit.u, unit.t};
    const Mat2 bwd = fwd.inverse_sl2();

    // Every representation is g * (primitive representation of m0/g^2);
    // primitive ones, up to proper automorphs, correspond to the b mod 2|n|
    // with b^2 = D (mod 4|n|) and [n, b, (b^2-D)/4n] properly equivalent to f0.
    Int am = abs(m0);
    for (Int g = 1; g * g <= am; ++g) {
      if (!divides(g * g, m0)) continue;
      Int n = m0 / (g * g);
      for (const Int& b : sqrt_candidates(disc, n)) {
        ++search.stats.root_candidates;
        BinaryForm cand{n, b, (b * b - disc) / (4 * n)};
        std::optional<Mat2> t = cycle.equivalence_to(cand);
        if (!t) continue;
        Point v{t->a, t->c};
        if (f0(v) != n) {
          throw Error(ErrorCode::SynthesisFailure, "equivalence matrix does not represent n");
        }
        ++search.stats.classes;
        scan_orbit({g * v.x, g * v.y}, fwd, bwd, search);
      }
    }
  }

  out.stats = search.stats;
  if (search.best) {
    const Point& w = *search.best;
    if (gamma * w.x * w.x - delta * w.y * w.y != m || !cs.satisfied(w)) {
      throw Error(ErrorCode::SynthesisFailure, "witness fails verification");
    }
    out.status = SolveStatus::Solved;
    out.witness = w;
  } else {
    out.status = SolveStatus::NoSolution;
  }
  return out;
}

std::vector<Point> enumerate_bounded(const Int& gamma, const Int& delta, const Int& m,
                                     const ConstraintSet& cs, const Int& bound) {
  if (gamma < 1 || delta < 1) {
    throw Error(ErrorCode::InvalidInput, "gamma and delta must be >= 1");
  }
  if (bound < 1) throw Error(ErrorCode::InvalidInput, "bound must be >= 1");
  cs.check_moduli();
  std::vector<Point> out;
  auto cy = combine(cs.on_y);
  if (!cs.compatible() || !cy) return out;

  std::optional<FastChecker> fast = FastChecker::make(cs);
  if (fast && fits(bound, 24) && fits(gamma, 40) && fits(delta, 40) && fits(m, 40) &&
      fits(cy->modulus, 40)) {
    const i64 B = static_cast<i64>(bound);
    const i128 g = static_cast<i64>(gamma);
    const i128 d = static_cast<i64>(delta);
    const i128 mm = static_cast<i64>(m);
    const i64 ny = static_cast<i64>(cy->modulus);
    const i64 ry = static_cast<i64>(cy->residue);
    // First y >= -B with y = ry (mod ny).
    i64 y0 = -B + (((ry + B) % ny) + ny) % ny;
    for (i64 y = y0; y <= B; y += ny) {
      i128 val = mm + d * y * y;
      if (val < 0 || val % g != 0) continue;
      u128 q = static_cast<u128>(val / g);
      u128 r = isqrt_u128(q);
      if (r * r != q || r > static_cast<u128>(B)) continue;
      i64 x = static_cast<i64>(r);
      if ((*fast)(-x, y) && x != 0) out.push_back({-x, y});
      if ((*fast)(x, y)) out.push_back({x, y});
    }
  } else {
    Int y0 = -bound + mod(cy->residue + bound, cy->modulus);
    for (Int y = y0; y <= bound; y += cy->modulus) {
      Int val = m + delta * y * y;
      if (val < 0 || !divides(gamma, val)) continue;
      auto r = exact_sqrt(val / gamma);
      if (!r || *r > bound) continue;
      if (*r != 0 && cs.satisfied(-*r, y)) out.push_back({-*r, y});
      if (cs.satisfied(*r, y)) out.push_back({*r, y});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace k3iso
