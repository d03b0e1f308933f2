#pragma once

#include <string>
#include <vector>

#include "apolar/builders.hpp"
#include "apolar/graph.hpp"
#include "apolar/hankel_engine.hpp"
#include "apolar/minor_engine.hpp"

namespace apolar {

enum class Engine { general, hankel };

std::string to_string(Engine e);
/// "general" or "hankel"; throws InvalidArgument otherwise.
Engine parse_engine(std::string_view name);

struct DetectOptions {
  Engine engine = Engine::hankel;
  Arithmetic arithmetic = Arithmetic::exact();
};

/// Outcome of one reduction: the inner product that was evaluated and
/// whether it is nonzero.
struct DetectResult {
  bool found = false;
  ExactScalar value;
  EvaluationStats stats;
};

/// Simple directed cycle on exactly d vertices (d = 1 is a self-loop).
DetectResult detect_cycle(const DirectedGraph& g, int d, const DetectOptions& options = {});

/// Simple s -> t path on exactly d vertices.
DetectResult detect_path(const DirectedGraph& g, int s, int t, int d, const DetectOptions& options = {});

/// Whether the polynomial of c (degree d, variables in 1..n, nonnegative
/// coefficients) has a square-free monomial.
DetectResult detect_squarefree(const SkewCircuit& c, int d, int n, const DetectOptions& options = {});

/// Whether the span of the d x d matrices contains an invertible matrix.
DetectResult sing_decide(const std::vector<RationalMatrix>& matrices, const Arithmetic& arithmetic = Arithmetic::exact());

/// For a km x kn matrix b and a partition of its columns into n parts of
/// size k: whether some m parts have linearly independent union.
DetectResult matroid_parity_decide(const RationalMatrix& b, const Partition& parts,
                                   const Arithmetic& arithmetic = Arithmetic::exact());

/// Whether the linear matroids represented by equally sized matrices share a
/// common base.
DetectResult matroid_intersection_decide(const std::vector<RationalMatrix>& matrices,
                                         const Arithmetic& arithmetic = Arithmetic::exact());

}  // namespace apolar
