#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "apolar/circuit.hpp"
#include "apolar/combinatorics.hpp"
#include "apolar/linalg.hpp"
#include "apolar/polynomial.hpp"

namespace apolar {

/// Sparse r x r x r tensor with exact entries. Entry (i, j, k) of a
/// structure tensor is the e_k coordinate of e_i * e_j.
class StructureTensor {
 public:
  using Key = std::tuple<std::size_t, std::size_t, std::size_t>;

  StructureTensor() = default;
  explicit StructureTensor(std::size_t dim, std::vector<std::string> labels = {});

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  void add(std::size_t i, std::size_t j, std::size_t k, const Rational& v);
  Rational get(std::size_t i, std::size_t j, std::size_t k) const;
  const std::map<Key, Rational>& entries() const { return entries_; }
  /// Number of (i, j) with a nonzero product.
  std::size_t nonzero_pairs() const;

  /// First entry where the tensors differ, as "(i,j,k): a vs b".
  std::optional<std::string> first_difference(const StructureTensor& o) const;
  bool operator==(const StructureTensor& o) const { return dim_ == o.dim_ && entries_ == o.entries_; }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::map<Key, Rational> entries_;
};

/// x (x) y (x) z.
struct SimpleTerm {
  std::vector<Rational> x, y, z;
};

struct TensorDecomposition {
  std::size_t dim = 0;
  std::vector<SimpleTerm> terms;

  std::size_t size() const { return terms.size(); }
  StructureTensor sum() const;
};

struct ApolarLimits {
  std::size_t max_derivatives = 200000;
};

/// The apolar algebra of a homogeneous f, presented by a monomial basis of
/// differential operators d^alpha whose images d^alpha f span Diff(f).
class ApolarAlgebra {
 public:
  /// Greedy basis: candidates d^alpha by degree ascending and, within a
  /// degree, lexicographically (x1 before x2); keeps each one whose image is
  /// independent of the images already kept.
  explicit ApolarAlgebra(const SparsePoly& f, const ApolarLimits& limits = {});
  /// A caller-chosen monomial basis; throws InvalidArgument unless the images
  /// are independent and span Diff(f).
  ApolarAlgebra(const SparsePoly& f, std::vector<Monomial> basis, const ApolarLimits& limits = {});

  const SparsePoly& polynomial() const { return f_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Monomial>& basis() const { return basis_; }
  const std::vector<SparsePoly>& images() const { return images_; }
  std::size_t unit() const { return unit_; }
  std::vector<std::size_t> degree_one() const;
  std::size_t top() const { return top_; }
  /// <f, x^q> for the top basis monomial q; equals the constant d^q f.
  const Rational& top_pairing() const { return top_pairing_; }
  std::string label(std::size_t i) const;
  std::vector<std::string> labels() const;

  /// Coordinates of a polynomial in Diff(f) over the basis images.
  std::vector<Rational> coordinates(const SparsePoly& p) const;
  /// Splits p into the span of the images plus a remainder; returns the
  /// coordinates of the span part (a projection fixing Diff(f)).
  std::vector<Rational> project(const SparsePoly& p) const;
  /// Element of the algebra represented by the operator d^alpha.
  std::vector<Rational> operator_element(const Monomial& alpha) const;
  /// Product of two elements, computed by differentiation.
  std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
  /// The polynomial h(d) f represented by an element.
  SparsePoly realize(const std::vector<Rational>& a) const;

 private:
  void finish();

  SparsePoly f_;
  std::vector<Monomial> basis_;
  std::vector<SparsePoly> images_;
  PolynomialSpan span_;
  std::size_t unit_ = 0;
  std::size_t top_ = 0;
  Rational top_pairing_;
};

/// e_i * e_j over all basis pairs, by differentiating the basis images.
StructureTensor structure_tensor(const ApolarAlgebra& a);

/// Product of two elements through a precomputed structure tensor.
std::vector<Rational> tensor_multiply(const StructureTensor& t, const std::vector<Rational>& a,
                                      const std::vector<Rational>& b);

/// <f, g> for the polynomial g of a circuit (skew or general) of degree
/// deg f, evaluated gate by gate inside the algebra. An input x_i becomes the
/// element of d/dx_i.
ExactScalar algebra_evaluate(const ApolarAlgebra& a, const SkewCircuit& c);
ExactScalar algebra_evaluate(const ApolarAlgebra& a, const StructureTensor& t, const SkewCircuit& c);

/// One term c * l^d of a Waring decomposition.
struct WaringTerm {
  Rational coefficient;
  LinearForm form;
};

/// Simple-term decomposition of the structure tensor of the apolar algebra
/// of f built from f = sum_i c_i l_i^d with 3d + 1 interpolation nodes per
/// term. Throws NotADecomposition when the sum differs from f and
/// VerificationFailure when the tensor does not match.
TensorDecomposition waring_to_tensor(const SparsePoly& f, const std::vector<WaringTerm>& decomposition);

/// A basis label (I | J) of the apolar algebra of det_n: the operator
/// d_{I_1 J_1} ... d_{I_k J_k}.
struct DetBasisLabel {
  IndexSequence rows;
  IndexSequence cols;

  bool operator==(const DetBasisLabel& o) const = default;
  std::string to_string() const;
};

struct SignedLabel {
  int sign = 0;  // 0 for the zero product
  DetBasisLabel label;
};

SignedLabel det_basis_product(const DetBasisLabel& p, const DetBasisLabel& q);

/// All (I | J) with |I| = |J| <= n, ordered by size, then colex rank of I,
/// then colex rank of J.
std::vector<DetBasisLabel> det_label_basis(int n);
std::size_t det_label_index(const DetBasisLabel& l, int n);
/// Variable index of x_{ij} in the generic n x n matrix.
inline int det_variable(int i, int j, int n) { return (i - 1) * n + j; }
Monomial det_label_monomial(const DetBasisLabel& l, int n);

/// Structure tensor of the apolar algebra of det_n in the (I | J) basis, from
/// the product rule.
StructureTensor det_label_tensor(int n);

}  // namespace apolar
