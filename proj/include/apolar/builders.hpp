#pragma once

#include <vector>

#include "apolar/circuit.hpp"
#include "apolar/graph.hpp"

namespace apolar {

/// A partition of [N] into parts of equal size k (1-based elements).
using Partition = std::vector<std::vector<int>>;

/// Throws BadPartition unless the parts are nonempty, of equal size, and
/// cover 1..N exactly once. Returns the part size k.
int validate_partition(const Partition& parts);

/// Skew circuit for tr(A_G^d), A_G(i,j) = x_i when i->j is an edge. Built as
/// a layered walk sum per start vertex; gates that cannot lie on a closed
/// walk of length d are never emitted. Size O(d n (n + m)).
SkewCircuit build_trace_power(const DirectedGraph& g, int d);

/// Sum over s->t walks visiting d vertices (counted with multiplicity) of
/// the product of their vertex variables.
SkewCircuit build_path_walks(const DirectedGraph& g, int s, int t, int d);

/// (sum_{S in parts} prod_{i in S} x_i)^m as m layered stages.
SkewCircuit build_part_product_power(const Partition& parts, int m);

/// Determinant of the d x d matrix of linear forms via clow sequences
/// (layered head/current/length construction), O(d^4) MulLin gates scaled
/// by the forms' support.
SkewCircuit build_mv_determinant(const std::vector<std::vector<LinearForm>>& entries);

/// prod_i forms[i]; with forms[i] = sum_j A_ij x_j this is P_A.
SkewCircuit build_linear_product(const std::vector<LinearForm>& forms);

/// c * x^alpha as a chain of single-variable products.
SkewCircuit build_monomial(const Monomial& alpha, const Rational& c = 1);

}  // namespace apolar
