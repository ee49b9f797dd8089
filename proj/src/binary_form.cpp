#include "k3iso/binary_form.hpp"

#include <sstream>

#include "k3iso/error.hpp"

namespace k3iso {

BinaryForm BinaryForm::compose(const Mat2& t) const {
  // f(t.a x + t.b y, t.c x + t.d y)
  return {(*this)(t.a, t.c),
          2 * a * t.a * t.b + b * (t.a * t.d + t.b * t.c) + 2 * c * t.c * t.d,
          (*this)(t.b, t.d)};
}

std::ostream& operator<<(std::ostream& os, const BinaryForm& f) {
  return os << "[" << f.a << ", " << f.b << ", " << f.c << "]";
}

namespace {

void require_indefinite(const Int& disc) {
  if (disc <= 0 || exact_sqrt(disc)) {
    std::ostringstream os;
    os << "discriminant " << disc << " must be positive and non-square";
    throw Error(ErrorCode::InvalidInput, os.str());
  }
}

}  // namespace

bool is_reduced(const BinaryForm& f) {
  Int disc = f.disc();
  require_indefinite(disc);
  Int s = isqrt(disc);  // sqrt(D) lies strictly between s and s+1
  Int a2 = 2 * abs(f.a);
  return f.b > 0 && f.b <= s && a2 + f.b > s && a2 - f.b <= s;
}

FormStep rho(const BinaryForm& f) {
  Int disc = f.disc();
  require_indefinite(disc);
  Int s = isqrt(disc);
  Int c_abs = abs(f.c);
  Int two_c = 2 * c_abs;
  // Window of length 2|c|: (-|c|, |c|] when |c| > sqrt(D), else
  // (sqrt(D) - 2|c|, sqrt(D)).
  Int lo = c_abs > s ? Int(-c_abs + 1) : Int(s - two_c + 1);
  Int r = lo + mod(-f.b - lo, two_c);
  Int shift = (r + f.b) / (2 * f.c);
  Mat2 t{0, -1, 1, shift};
  BinaryForm g{f.c, r, (r * r - disc) / (4 * f.c)};
  return {g, t};
}

FormStep reduce(const BinaryForm& f) {
  FormStep cur{f, Mat2::identity()};
  while (!is_reduced(cur.form)) {
    FormStep next = rho(cur.form);
    cur = {next.form, cur.transform * next.transform};
  }
  return cur;
}

FormCycle::FormCycle(const BinaryForm& f) : base_(reduce(f)) {
  FormStep cur{base_.form, Mat2::identity()};
  do {
    index_.emplace(cur.form, cycle_.size());
    cycle_.push_back(cur);
    FormStep next = rho(cur.form);
    cur = {next.form, cur.transform * next.transform};
  } while (!(cur.form == base_.form));
}

std::optional<Mat2> FormCycle::equivalence_to(const BinaryForm& g) const {
  if (g.disc() != base_.form.disc()) return std::nullopt;
  FormStep red = reduce(g);
  auto it = index_.find(red.form);
  if (it == index_.end()) return std::nullopt;
  // red = g o Tg = f o Tf o S  =>  g = f o (Tf S Tg^{-1}).
  return base_.transform * cycle_[it->second].transform * red.transform.inverse_sl2();
}

std::variant<PellUnit, SquareDiscriminant> pell_fundamental(const Int& disc) {
  if (disc < 1) throw Error(ErrorCode::InvalidInput, "Pell discriminant must be >= 1");
  Int a0 = isqrt(disc);
  if (a0 * a0 == disc) return SquareDiscriminant{a0};

  Int m = 0, d = 1, a = a0;
  Int p_prev = 1, p = a0;
  Int q_prev = 0, q = 1;
  while (p * p - disc * q * q != 1) {
    m = d * a - m;
    d = (disc - m * m) / d;
    a = (a0 + m) / d;
    Int p_next = a * p + p_prev;
    Int q_next = a * q + q_prev;
    p_prev = p;
    p = p_next;
    q_prev = q;
    q = q_next;
  }
  return PellUnit{p, q};
}

}  // namespace k3iso
