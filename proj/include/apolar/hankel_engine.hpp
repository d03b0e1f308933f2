#pragma once

#include <cstddef>
#include <vector>

#include "apolar/circuit.hpp"
#include "apolar/combinatorics.hpp"
#include "apolar/minor_engine.hpp"

namespace apolar {

inline constexpr int kHankelEngineMaxDim = 24;

/// The d x (2d-1) arrangement C_d with (C_d)_{i,j} = l_{i+j-1} for
/// i + j <= 2d and 0 otherwise. Its leading d x d block H_d is Hankel.
class HankelArrangement {
 public:
  HankelArrangement() = default;
  /// `forms` holds l_1 .. l_{2d-1}. nvars defaults to the largest variable used.
  HankelArrangement(int d, std::vector<LinearForm> forms, int nvars = 0);

  /// l_m = x_m.
  static HankelArrangement generic(int d);

  int dim() const { return d_; }
  int nvars() const { return nvars_; }
  const std::vector<LinearForm>& forms() const { return forms_; }
  const LinearForm& form(int m) const { return forms_.at(m - 1); }
  /// (C_d)_{i,j}; zero below the anti-diagonal i + j = 2d.
  LinearForm entry(int i, int j) const;
  /// Pairs (m, coefficient of x_var in l_m).
  const std::vector<std::pair<int, Rational>>& coefficients(int var) const;
  bool is_integral() const;

  /// H_d as a general symbolic matrix.
  SymbolicMatrix materialize() const;
  /// det C_d[rows | cols], expanded.
  SparsePoly minor_poly(const IndexSequence& rows, const IndexSequence& cols) const;

 private:
  int d_ = 0;
  int nvars_ = 0;
  std::vector<LinearForm> forms_;
  std::vector<std::vector<std::pair<int, Rational>>> by_var_;
};

/// sum_k binom(2d - k, k), the number of maximal minors of C_d.
std::size_t hankel_basis_size(int d);

/// Coefficients over the maximal minors [beta] = C_d[1..k | beta], with block
/// k dense over I(2d - k, k) in colex order. Block 0 is the empty minor.
class MaxMinorVector {
 public:
  MaxMinorVector() = default;
  explicit MaxMinorVector(int d);
  /// {[1..d] : 1}, which equals det H_d.
  static MaxMinorVector determinant(int d);

  int dim() const { return d_; }
  std::size_t length() const;
  std::vector<Rational>& block(int k) { return blocks_.at(k); }
  const std::vector<Rational>& block(int k) const { return blocks_.at(k); }
  Rational& at(const IndexSequence& beta);
  const Rational& at(const IndexSequence& beta) const;
  bool is_zero() const;

  SparsePoly expand(const HankelArrangement& h) const;

  bool operator==(const MaxMinorVector& o) const { return d_ == o.d_ && blocks_ == o.blocks_; }

 private:
  int d_ = 0;
  std::vector<std::vector<Rational>> blocks_;
};

/// Rewrites C_d[1..k without row i | beta] (beta in I(2d - k, k - 1)) as
/// sum over J subset of [k-1] with |J| = k - i of [beta + e(J)], skipping
/// non-increasing column sequences. Only block k - 1 of the result is set.
MaxMinorVector straighten_row_omitted(int d, int i, int k, const IndexSequence& beta);

/// d P / d x_var in the maximal-minor basis.
MaxMinorVector hankel_derivative(const HankelArrangement& h, const MaxMinorVector& p, int var);

/// <det H_d, g> for the polynomial g of a skew circuit of degree d.
ExactScalar hankeldiff_evaluate(const HankelArrangement& h, const SkewCircuit& c,
                                const Arithmetic& arithmetic = Arithmetic::exact(), EvaluationStats* stats = nullptr);

/// l_m = sum_{k=1}^n k^{m+1} x_k for m = 1..2d-1, so H_d = V diag(x) V^T with
/// V_{i,k} = k^i.
HankelArrangement vandermonde_hankel(int n, int d);

}  // namespace apolar
