#include "k3iso/mukai_model.hpp"

#include <sstream>

#include "k3iso/error.hpp"

namespace k3iso {

ModelVector ModelVector::operator+(const ModelVector& o) const {
  ModelVector r;
  for (int i = 0; i < 4; ++i) r.c[i] = c[i] + o.c[i];
  return r;
}

ModelVector operator*(const Int& k, const ModelVector& v) {
  ModelVector r;
  for (int i = 0; i < 4; ++i) r.c[i] = k * v.c[i];
  return r;
}

std::ostream& operator<<(std::ostream& os, const ModelVector& v) {
  return os << v.c[0] << "e1 + " << v.c[1] << "e2 + " << v.c[2] << "f1 + " << v.c[3] << "f2";
}

Int model_pairing(const ModelVector& u, const ModelVector& v) {
  return -(u.c[0] * v.c[1] + u.c[1] * v.c[0]) + (u.c[2] * v.c[3] + u.c[3] * v.c[2]);
}

ModelVector build_v(const Int& a, const Int& b, const Int& c, const Int& d1, const Int& d2) {
  if (a < 1 || b < 1 || c < 1 || d1 < 1 || d2 < 1) {
    throw Error(ErrorCode::PreconditionViolated, "a, b, c, d1, d2 must be >= 1");
  }
  if (gcd(a, b) != 1) throw Error(ErrorCode::PreconditionViolated, "(a, b) != 1");
  if (gcd(d1, b * c) != 1) throw Error(ErrorCode::PreconditionViolated, "(d1, bc) != 1");
  if (gcd(d2, a * c) != 1) throw Error(ErrorCode::PreconditionViolated, "(d2, ac) != 1");
  if (gcd(d1, d2) != 1) throw Error(ErrorCode::PreconditionViolated, "(d1, d2) != 1");
  Int h1 = a * b * c * c;
  return ModelVector{{d1 * d1 * a * c, d2 * d2 * b * c, d1 * d2 * h1, d1 * d2}};
}

namespace {

template <std::size_t N>
using Square = std::array<std::array<Int, N>, N>;

template <std::size_t N>
Square<N> identity() {
  Square<N> m{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) m[i][j] = i == j ? 1 : 0;
  }
  return m;
}

template <std::size_t N>
struct RowReduction {
  Int g;
  Square<N> u;      // row * u = (g, 0, ..., 0)
  Square<N> u_inv;
};

// Unimodular column operations clearing a row vector into its first entry.
template <std::size_t N>
RowReduction<N> reduce_row(std::array<Int, N> row) {
  RowReduction<N> r{0, identity<N>(), identity<N>()};
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& q) {
    // col_dst -= q * col_src; inverse: row_src += q * row_dst.
    row[dst] -= q * row[src];
    for (std::size_t i = 0; i < N; ++i) r.u[i][dst] -= q * r.u[i][src];
    for (std::size_t j = 0; j < N; ++j) r.u_inv[src][j] += q * r.u_inv[dst][j];
  };
  auto swap_col = [&](std::size_t i, std::size_t j) {
    std::swap(row[i], row[j]);
    for (std::size_t k = 0; k < N; ++k) std::swap(r.u[k][i], r.u[k][j]);
    std::swap(r.u_inv[i], r.u_inv[j]);
  };
  for (std::size_t i = 1; i < N; ++i) {
    while (row[i] != 0) {
      add_col(0, i, row[0] / row[i]);
      swap_col(0, i);
    }
  }
  if (row[0] < 0) {
    row[0] = -row[0];
    for (std::size_t k = 0; k < N; ++k) r.u[k][0] = -r.u[k][0];
    for (std::size_t j = 0; j < N; ++j) r.u_inv[0][j] = -r.u_inv[0][j];
  }
  r.g = row[0];
  return r;
}

Int quotient_pairing(const Gram2& g, const QuotientCoords& u, const QuotientCoords& w) {
  return u[0] * (g.g11 * w[0] + g.g12 * w[1]) + u[1] * (g.g12 * w[0] + g.g22 * w[1]);
}

}  // namespace

PerpQuotient::PerpQuotient(const ModelVector& v) : v_(v) {
  if (model_pairing(v, v) != 0) {
    std::ostringstream os;
    os << "v = " << v << " has square " << model_pairing(v, v);
    throw Error(ErrorCode::NotIsotropic, os.str());
  }
  if (gcd(gcd(v.c[0], v.c[1]), gcd(v.c[2], v.c[3])) != 1) {
    throw Error(ErrorCode::NotPrimitive, "v is not primitive");
  }

  // <e_j, v> for the standard basis.
  std::array<Int, 4> phi{-v.c[1], -v.c[0], v.c[3], v.c[2]};
  RowReduction<4> ker = reduce_row(phi);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < 4; ++i) kernel_[k].c[i] = ker.u[i][k + 1];
  }
  u_inv_ = ker.u_inv;

  // v in kernel coordinates, then a unimodular W with coords * W = (1, 0, 0).
  std::array<Int, 3> coords;
  for (std::size_t k = 0; k < 3; ++k) {
    coords[k] = 0;
    for (std::size_t i = 0; i < 4; ++i) coords[k] += u_inv_[k + 1][i] * v.c[i];
  }
  RowReduction<3> ext = reduce_row(coords);
  if (ext.g != 1) throw Error(ErrorCode::NotPrimitive, "v is not primitive in v^perp");
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) w_t_[i][j] = ext.u[j][i];
  }
  // Lifts: kernel * (W^T)^{-1} e_{1,2}, with (W^T)^{-1} = (W^{-1})^T.
  for (std::size_t q = 0; q < 2; ++q) {
    ModelVector lift{{0, 0, 0, 0}};
    for (std::size_t i = 0; i < 3; ++i) lift = lift + ext.u_inv[q + 1][i] * kernel_[i];
    report_.basis[q] = lift;
  }
  const auto& b = report_.basis;
  report_.gram = Gram2{model_pairing(b[0], b[0]), model_pairing(b[0], b[1]),
                       model_pairing(b[1], b[1])};

  // T(X) in the rank-one model: t spans H^perp inside U(2).
  if (v.c[2] != 0 || v.c[3] != 0) {
    Int g = gcd(v.c[2], v.c[3]);
    ModelVector t{{0, 0, -v.c[2] / g, v.c[3] / g}};
    QuotientCoords tb = project(t);
    Int index = gcd(tb[0], tb[1]);
    if (index != 0) {
      QuotientCoords tt{tb[0] / index, tb[1] / index};
      Int p = report_.gram.g11 * tt[0] + report_.gram.g12 * tt[1];
      Int q = report_.gram.g12 * tt[0] + report_.gram.g22 * tt[1];
      Int hg = gcd(p, q);
      QuotientCoords h{q / hg, -p / hg};
      if (h[0] < 0 || (h[0] == 0 && h[1] < 0)) h = {-h[0], -h[1]};
      report_.t_bar = tb;
      report_.index = index;
      report_.t_tilde = tt;
      report_.h = h;
      report_.h_sq = quotient_pairing(report_.gram, h, h);
    }
  }
}

QuotientCoords PerpQuotient::project(const ModelVector& xi) const {
  if (model_pairing(xi, v_) != 0) {
    throw Error(ErrorCode::InvalidInput, "vector is not orthogonal to v");
  }
  std::array<Int, 3> kc;
  for (std::size_t k = 0; k < 3; ++k) {
    kc[k] = 0;
    for (std::size_t i = 0; i < 4; ++i) kc[k] += u_inv_[k + 1][i] * xi.c[i];
  }
  QuotientCoords out;
  for (std::size_t q = 0; q < 2; ++q) {
    out[q] = 0;
    for (std::size_t i = 0; i < 3; ++i) out[q] += w_t_[q + 1][i] * kc[i];
  }
  return out;
}

std::optional<Mat2> hyperbolic_basis(const Gram2& g) {
  if (!g.even() || g.det() != -1) return std::nullopt;
  Int a = g.g11 / 2, b = g.g12, c = g.g22 / 2;
  // Isotropic primitive e for a x^2 + b x y + c y^2 (discriminant 1).
  Point e = a == 0 ? Point{1, 0} : Point{1 - b, 2 * a};
  Int ge = gcd(e.x, e.y);
  e = {e.x / ge, e.y / ge};
  auto pair = [&](const Point& u, const Point& w) {
    return u.x * (g.g11 * w.x + g.g12 * w.y) + u.y * (g.g12 * w.x + g.g22 * w.y);
  };
  if (pair(e, e) != 0) return std::nullopt;
  ExtendedGcd x = extended_gcd(e.x, e.y);
  Point k{-x.t, x.s};
  Int ek = pair(e, k);
  if (ek == -1) k = {-k.x, -k.y};
  else if (ek != 1) return std::nullopt;
  Int half = pair(k, k) / 2;
  k = {k.x - half * e.x, k.y - half * e.y};
  Mat2 p{e.x, k.x, e.y, k.y};
  if (pair(e, e) != 0 || pair(k, k) != 0 || pair(e, k) != 1) return std::nullopt;
  return p;
}

namespace {

// (vec + k*v) / n for the k in [0, n) that makes it integral.
std::optional<ModelVector> divide_mod_v(const ModelVector& vec, const ModelVector& v, const Int& n) {
  for (Int k = 0; k < n; ++k) {
    ModelVector s = vec + k * v;
    bool ok = true;
    for (const Int& x : s.c) ok = ok && divides(n, x);
    if (ok) {
      for (Int& x : s.c) x /= n;
      return s;
    }
  }
  return std::nullopt;
}

// Coordinates of target over the basis {u, w}; nullopt unless det = +-1.
std::optional<QuotientCoords> solve_basis(const QuotientCoords& u, const QuotientCoords& w,
                                          const QuotientCoords& target) {
  Int det = u[0] * w[1] - w[0] * u[1];
  if (abs(det) != 1) return std::nullopt;
  return QuotientCoords{(target[0] * w[1] - w[0] * target[1]) * det,
                        (u[0] * target[1] - target[0] * u[1]) * det};
}

}  // namespace

NuReport verify_nu(const Int& a, const Int& b, const Int& c, const Int& d1, const Int& d2) {
  ModelVector v = build_v(a, b, c, 1, 1);
  ModelVector v1 = build_v(a, b, c, d1, d2);
  PerpQuotient base(v), twisted(v1);
  NuReport out{false, base.report(), twisted.report(), ""};

  const Int ac = a * c, bc = b * c;
  QuotientCoords alpha = base.project(ModelVector{{1, 0, bc, 0}});
  QuotientCoords beta = base.project(ModelVector{{0, 1, ac, 0}});
  auto alpha1 = divide_mod_v(ModelVector{{d1, 0, d2 * bc, 0}}, v1, d2);
  auto beta1 = divide_mod_v(ModelVector{{0, d2, d1 * ac, 0}}, v1, d1);
  if (!alpha1 || !beta1) {
    out.detail = "alpha_1 or beta_1 is not divisible modulo Z v1";
    return out;
  }
  QuotientCoords alpha_t = twisted.project(*alpha1);
  QuotientCoords beta_t = twisted.project(*beta1);

  const Gram2& g0 = base.report().gram;
  const Gram2& g1 = twisted.report().gram;
  if (quotient_pairing(g0, alpha, alpha) != quotient_pairing(g1, alpha_t, alpha_t) ||
      quotient_pairing(g0, alpha, beta) != quotient_pairing(g1, alpha_t, beta_t) ||
      quotient_pairing(g0, beta, beta) != quotient_pairing(g1, beta_t, beta_t)) {
    out.detail = "identification is not an isometry";
    return out;
  }
  const auto& t0 = base.report().t_tilde;
  const auto& t1 = twisted.report().t_tilde;
  if (!t0 || !t1) {
    out.detail = "missing transcendental generator";
    return out;
  }
  auto s0 = solve_basis(alpha, beta, *t0);
  auto s1 = solve_basis(alpha_t, beta_t, *t1);
  if (!s0 || !s1) {
    out.detail = "identified vectors do not form quotient bases";
    return out;
  }
  bool same = *s0 == *s1;
  bool opposite = (*s0)[0] == -(*s1)[0] && (*s0)[1] == -(*s1)[1];
  if (!same && !opposite) {
    out.detail = "transcendental generators do not correspond";
    return out;
  }
  if (base.report().h_sq != twisted.report().h_sq) {
    out.detail = "Picard generators have different squares";
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace k3iso
