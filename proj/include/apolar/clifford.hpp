#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "apolar/apolar_algebra.hpp"
#include "apolar/scalar.hpp"

namespace apolar {

/// a + b i with rational parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(int r) : re(r), im(0) {}

  GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
  GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational operator*(const GaussianRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussianRational operator/(const GaussianRational& o) const;
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
  bool is_real() const { return im == 0; }
  std::string to_string() const;
};

using GaussianMatrix = std::vector<std::vector<GaussianRational>>;

/// Subsets of [n] are bitmasks; bit i - 1 stands for element i.
using SubsetMask = unsigned;

/// sgn(U, V): sign of sorting U ++ V with equal elements kept in order, so
/// X_U X_V = sgn(U, V) X_{U xor V} with x_i^2 = +1.
int clifford_sign(SubsetMask u, SubsetMask v);
IndexSequence mask_elements(SubsetMask m);

struct CliffordEntry {
  SubsetMask u = 0;
  SubsetMask v = 0;
  SubsetMask w = 0;  // u xor v
  int sign = 1;
};

/// Structure tensor of the Clifford algebra on n generators: all 4^n
/// products X_U X_V. Throws OddN for odd n.
std::vector<CliffordEntry> clifford_structure_tensor(int n);

/// Image of every X_U (indexed by mask) in 2^{n/2} x 2^{n/2} matrices, from
/// anticommuting generators built as Kronecker products of Pauli matrices.
/// Supports n = 2 and n = 4.
std::vector<GaussianMatrix> clifford_matrix_iso(int n);

struct CliffordIsoCheck {
  std::size_t pairs_checked = 0;
  bool homomorphism = false;
  bool independent = false;
};

/// Checks phi(X_U) phi(X_V) = sgn(U, V) phi(X_{U xor V}) on every basis pair
/// and that the images are linearly independent.
CliffordIsoCheck verify_clifford_iso(int n, const std::vector<GaussianMatrix>& images);

struct CliffordReport {
  int n = 0;
  std::size_t clifford_entries = 0;
  std::size_t iso_pairs_checked = 0;
  std::size_t matrix_terms = 0;     // simple terms of one Clifford factor
  std::size_t product_terms = 0;    // simple terms of the tensor square
  std::size_t nodes = 0;            // interpolation nodes
  std::size_t term_count = 0;       // simple terms of the final decomposition
  std::size_t algebra_dim = 0;
  int max_exponent = 0;
  std::size_t label_tensor_entries = 0;
};

/// Builds a decomposition of the structure tensor of the apolar algebra of
/// det_n in the (I | J) basis from the tensor square of the Clifford tensor:
/// X_U (x) X_V goes to (U | V) eps^{|U|+|V|} in the first two factors and to
/// (U | V) eps^{-|U|-|V|} in the third (zero when |U| != |V|), and the eps^0
/// part is isolated exactly. Verifies the Clifford isomorphism, the exponent
/// identity, the direct eps^0 extraction, and the interpolated decomposition
/// against both the product rule and differentiation of det_n. Throws
/// VerificationFailure naming the first mismatch. Supports n = 2.
CliffordReport clifford_det_decomposition(int n, TensorDecomposition* decomposition = nullptr);

}  // namespace apolar
