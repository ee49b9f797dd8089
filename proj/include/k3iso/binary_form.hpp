#pragma once

#include <array>
#include <map>
#include <optional>
#include <tuple>
#include <variant>
#include <vector>

#include "k3iso/integer.hpp"

namespace k3iso {

// 2x2 integer matrix, row-major.
struct Mat2 {
  Int a, b, c, d;  // [[a, b], [c, d]]

  static Mat2 identity() { return {1, 0, 0, 1}; }
  Int det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Point operator*(const Point& p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
  // Inverse of a determinant-one matrix.
  Mat2 inverse_sl2() const { return {d, -b, -c, a}; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

// f(x, y) = a x^2 + b x y + c y^2.
struct BinaryForm {
  Int a, b, c;

  Int disc() const { return b * b - 4 * a * c; }
  Int operator()(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }
  Int operator()(const Point& p) const { return (*this)(p.x, p.y); }
  Int content() const { return gcd(a, b, c); }
  // (f o T)(X) = f(T X).
  BinaryForm compose(const Mat2& t) const;

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
  friend bool operator<(const BinaryForm& f, const BinaryForm& g) {
    return std::tie(f.a, f.b, f.c) < std::tie(g.a, g.b, g.c);
  }
};

std::ostream& operator<<(std::ostream& os, const BinaryForm& f);

// Reduction theory for indefinite forms of non-square discriminant D > 0.
// Reduced: |sqrt(D) - 2|a|| < b < sqrt(D).
bool is_reduced(const BinaryForm& f);

struct FormStep {
  BinaryForm form;
  Mat2 transform;  // form = original o transform
};

// One application of the reduction operator rho(a, b, c) = (c, r, (r^2-D)/4c)
// with r = -b (mod 2c) normalized into the window fixed by |c| vs sqrt(D).
FormStep rho(const BinaryForm& f);

// Applies rho until the form is reduced.
FormStep reduce(const BinaryForm& f);

// Proper equivalence classes of forms with non-square discriminant, each
// given by the rho-cycle of one reduced form.
class FormCycle {
 public:
  explicit FormCycle(const BinaryForm& f);

  // Reduced representative, and its transform from the original form.
  const FormStep& base() const { return base_; }
  std::size_t length() const { return cycle_.size(); }
  const std::vector<FormStep>& members() const { return cycle_; }

  // If g is properly equivalent to the original form f, returns T with
  // g = f o T, det T = 1.
  std::optional<Mat2> equivalence_to(const BinaryForm& g) const;

 private:
  FormStep base_;
  // cycle_[k].transform maps the reduced base form onto cycle_[k].form.
  std::vector<FormStep> cycle_;
  std::map<BinaryForm, std::size_t> index_;
};

struct PellUnit {
  Int t;
  Int u;
};

struct SquareDiscriminant {
  Int root;
};

// Minimal t^2 - D u^2 = 1 with u >= 1, from the continued fraction of sqrt(D).
std::variant<PellUnit, SquareDiscriminant> pell_fundamental(const Int& discriminant);

}  // namespace k3iso
