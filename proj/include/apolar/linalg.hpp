#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "apolar/polynomial.hpp"

namespace apolar {

/// Incremental echelon basis of a space of polynomials. Rows are kept with
/// distinct leading monomials; each row remembers its expression in terms of
/// the inserted (independent) generators.
class PolynomialSpan {
 public:
  /// Returns true and records `p` as a generator when it is independent of
  /// the current span.
  bool insert(const SparsePoly& p);

  std::size_t dimension() const { return rows_.size(); }
  bool contains(const SparsePoly& p) const;

  /// Coordinates of `p` over the accepted generators, in insertion order.
  /// Throws SolveFailure when `p` is outside the span.
  std::vector<Rational> coordinates(const SparsePoly& p) const;

  /// Splits p = s + r with s in the span and r supported on non-pivot
  /// monomials; returns the coordinates of s. This is a linear projection
  /// that fixes the span.
  std::vector<Rational> project(const SparsePoly& p, SparsePoly* remainder = nullptr) const;

 private:
  struct Row {
    SparsePoly poly;                // leading monomial is the pivot
    std::vector<Rational> combo;    // poly = sum combo[g] * generator[g]
  };

  // Reduces p by the rows; returns the combination of rows subtracted.
  std::vector<Rational> reduce(SparsePoly& p, bool full) const;

  std::vector<Row> rows_;
  std::map<Monomial, std::size_t> pivot_row_;
};

/// Exact rank of a dense matrix over a field type T (Rational or any type
/// with field operators and comparison with 0).
template <class T>
std::size_t matrix_rank(std::vector<std::vector<T>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == T(0)) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == T(0)) continue;
      T factor = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Nonzero rows of the reduced row echelon form of m: a basis of its row space.
std::vector<std::vector<Rational>> row_space_basis(std::vector<std::vector<Rational>> m);

/// Solves the square system a x = b exactly; nullopt when singular.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace apolar
