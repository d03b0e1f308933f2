#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "apolar/scalar.hpp"

namespace apolar {

/// Sparse monomial over 1-based variables. Only nonzero exponents are stored,
/// sorted by variable index.
class Monomial {
 public:
  Monomial() = default;
  /// Pairs (variable, exponent); zero exponents are dropped, repeats merged.
  explicit Monomial(std::vector<std::pair<int, int>> powers);
  static Monomial variable(int var, int exponent = 1);

  const std::vector<std::pair<int, int>>& powers() const { return powers_; }
  int degree() const { return degree_; }
  int exponent(int var) const;
  int max_variable() const { return powers_.empty() ? 0 : powers_.back().first; }
  bool is_one() const { return powers_.empty(); }
  bool is_square_free() const;

  /// alpha <= beta componentwise.
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other) in the reverse direction: returns this / other.
  Monomial operator/(const Monomial& other) const;

  /// alpha! = prod_i alpha_i!
  Integer factorial() const;

  std::string to_string(const std::string& symbol = "x") const;

  bool operator==(const Monomial& o) const { return powers_ == o.powers_; }
  /// Degree first, then reverse-lexicographic on exponent vectors so that
  /// x1 > x2 > ... within a degree.
  std::strong_ordering operator<=>(const Monomial& o) const;

 private:
  std::vector<std::pair<int, int>> powers_;
  int degree_ = 0;
};

/// Exact sparse multivariate polynomial; the oracle representation used to
/// check every engine.
class SparsePoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  SparsePoly() = default;
  explicit SparsePoly(int nvars) : nvars_(nvars) {}
  SparsePoly(int nvars, TermMap terms);

  static SparsePoly constant(const Rational& c, int nvars = 0);
  static SparsePoly variable(int var, int nvars = 0);
  static SparsePoly monomial(const Monomial& m, const Rational& c = 1, int nvars = 0);

  const TermMap& terms() const { return terms_; }
  int nvars() const { return nvars_; }
  void set_nvars(int n) { nvars_ = std::max(nvars_, n); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Highest term degree; -1 for the zero polynomial.
  int degree() const;
  /// The zero polynomial counts as homogeneous.
  bool is_homogeneous() const;
  Rational coefficient(const Monomial& m) const;
  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }

  void add_term(const Monomial& m, const Rational& c);

  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator-() const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly operator*(const Rational& c) const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly pow(int e) const;

  SparsePoly derivative(int var) const;
  /// Applies d^alpha with the factorial rule.
  SparsePoly derivative(const Monomial& alpha) const;
  /// Sets x_var := 0.
  SparsePoly zero_variable(int var) const;
  Rational evaluate(const std::vector<Rational>& point) const;

  bool operator==(const SparsePoly& o) const { return terms_ == o.terms_; }

  std::string to_string() const;

 private:
  TermMap terms_;
  int nvars_ = 0;
};

/// Square matrix of polynomials, row-major.
using PolyMatrix = std::vector<std::vector<SparsePoly>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// h(d_1, ..., d_n) applied to f, term by term with
/// d^alpha x^beta = beta!/(beta - alpha)! x^(beta - alpha).
SparsePoly apply_diff_operator(const SparsePoly& h, const SparsePoly& f);

/// <f, g> = f(d) g = sum_alpha f_alpha g_alpha alpha!. Throws DegreeMismatch
/// unless f and g are homogeneous of the same degree.
ExactScalar apolar_inner_product(const SparsePoly& f, const SparsePoly& g);

/// Permanent by enumeration of permutations. Throws SizeLimit above `limit`.
Rational permanent(const RationalMatrix& a, int limit = 10);

/// Leibniz determinant over polynomial entries (desk-scale oracle).
SparsePoly symbolic_determinant(const PolyMatrix& m);

struct DiffSpanLimits {
  std::size_t max_derivatives = 200000;
};

/// All distinct nonzero partial derivatives d^alpha f, alpha ranging over
/// exponents dividing some term of f (alpha = 0 included).
std::vector<std::pair<Monomial, SparsePoly>> all_derivatives(const SparsePoly& f,
                                                             const DiffSpanLimits& limits = {});

/// dim Diff(f): rank of the span of all partial derivatives of f of all
/// orders, by exact elimination.
std::size_t diff_span_dim(const SparsePoly& f, const DiffSpanLimits& limits = {});

}  // namespace apolar
