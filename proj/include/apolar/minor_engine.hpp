#pragma once

#include <cstddef>
#include <vector>

#include "apolar/circuit.hpp"
#include "apolar/combinatorics.hpp"
#include "apolar/polynomial.hpp"
#include "apolar/scalar.hpp"

namespace apolar {

/// Largest matrix dimension the minor engine accepts; binom(28, 14) slots.
inline constexpr int kMinorEngineMaxDim = 14;

/// Coefficient a of x_l in the entry (row, col) of a symbolic matrix.
struct EntryCoefficient {
  int row = 0;
  int col = 0;
  Rational value;
};

/// A d x d matrix whose entries are linear forms, with a per-variable index
/// of the entries each variable appears in.
class SymbolicMatrix {
 public:
  SymbolicMatrix() = default;
  explicit SymbolicMatrix(std::vector<std::vector<LinearForm>> entries);

  /// Entry (i, j) is x_{(i-1)d + j}.
  static SymbolicMatrix generic(int d);
  /// sum_i x_i A_i.
  static SymbolicMatrix pencil(const std::vector<RationalMatrix>& matrices);
  /// B diag(x_1..x_cols) B^T for a rows x cols matrix B.
  static SymbolicMatrix gram(const RationalMatrix& b);

  int dim() const { return static_cast<int>(entries_.size()); }
  int nvars() const { return nvars_; }
  const LinearForm& entry(int i, int j) const { return entries_.at(i - 1).at(j - 1); }
  const std::vector<std::vector<LinearForm>>& entries() const { return entries_; }
  /// Nonzero coefficients of x_l, ordered by (row, col). Empty if l is unused.
  const std::vector<EntryCoefficient>& coefficients(int var) const;
  bool is_integral() const;

  PolyMatrix to_poly_matrix() const;
  /// det X expanded by Leibniz; oracle use only.
  SparsePoly determinant_poly() const;

 private:
  std::vector<std::vector<LinearForm>> entries_;
  std::vector<std::vector<EntryCoefficient>> by_var_;
  int nvars_ = 0;
};

/// Coefficients over the minor basis {X[alpha|beta]}: block k holds
/// binom(d,k)^2 entries at colex_rank(alpha) * binom(d,k) + colex_rank(beta).
/// Block 0 is the scalar slot (the empty minor equals 1).
class MinorVector {
 public:
  MinorVector() = default;
  explicit MinorVector(int d);
  /// {X[1..d | 1..d] : 1}, the representation of det X.
  static MinorVector determinant(int d);

  int dim() const { return d_; }
  std::size_t length() const;
  std::vector<Rational>& block(int k) { return blocks_.at(k); }
  const std::vector<Rational>& block(int k) const { return blocks_.at(k); }
  Rational& at(const IndexSequence& rows, const IndexSequence& cols);
  const Rational& at(const IndexSequence& rows, const IndexSequence& cols) const;
  bool is_zero() const;

  /// sum c_{alpha,beta} X[alpha|beta] as an explicit polynomial.
  SparsePoly expand(const SymbolicMatrix& x) const;

  bool operator==(const MinorVector& o) const { return d_ == o.d_ && blocks_ == o.blocks_; }

 private:
  int d_ = 0;
  std::vector<std::vector<Rational>> blocks_;
};

/// d P / d x_l in the minor basis (cofactor expansion of every minor).
MinorVector minor_derivative(const SymbolicMatrix& x, const MinorVector& p, int var);

struct EvaluationStats {
  std::size_t basis_dim = 0;
  std::size_t gates = 0;
  std::size_t derivative_calls = 0;
};

/// <det X, g> for the polynomial g computed by a skew circuit of degree
/// X.dim(), keeping at every gate the minor-basis image of g_v(d) det X.
ExactScalar gendiff_evaluate(const SymbolicMatrix& x, const SkewCircuit& c,
                             const Arithmetic& arithmetic = Arithmetic::exact(), EvaluationStats* stats = nullptr);

}  // namespace apolar
