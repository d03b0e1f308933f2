#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "apolar/builders.hpp"
#include "apolar/graph.hpp"
#include "apolar/minor_engine.hpp"

namespace apolar {

// Whitespace-separated text formats. `#` starts a comment. Parse errors are
// Error{SyntaxError} (or a more specific kind) with a "line N: " prefix.

/// `n m`, then m lines `u v` (1-based, directed).
DirectedGraph parse_graph(std::string_view text);
std::string serialize_graph(const DirectedGraph& g);

/// `n d`, then n blocks of d rows of d rationals.
std::vector<RationalMatrix> parse_matrix_list(std::string_view text);
std::string serialize_matrix_list(const std::vector<RationalMatrix>& matrices);

struct MatroidInstance {
  RationalMatrix b;  // k*m x k*n
  Partition parts;   // n parts of size k over the columns
  int k = 0;
  int m = 0;

  bool operator==(const MatroidInstance&) const = default;
};

/// `rows cols k m` (rows = k*m), then rows lines of cols rationals, then
/// cols/k partition lines of k column indices.
MatroidInstance parse_matroid(std::string_view text);
std::string serialize_matroid(const MatroidInstance& inst);

/// `k rows cols`, then k blocks of rows lines of cols rationals.
std::vector<RationalMatrix> parse_matrix_family(std::string_view text);
std::string serialize_matrix_family(const std::vector<RationalMatrix>& matrices);

/// `d`, then d rows of d linear forms in `c:v,...` syntax (`0` for zero).
SymbolicMatrix parse_symbolic_matrix(std::string_view text);
std::string serialize_symbolic_matrix(const SymbolicMatrix& x);

/// `n`, then 2^n rationals for sigma and 2^n rationals for tau, indexed by
/// subset bitmask.
struct ConvolutionInput {
  int n = 0;
  std::vector<Rational> sigma;
  std::vector<Rational> tau;

  bool operator==(const ConvolutionInput&) const = default;
};
ConvolutionInput parse_convolution(std::string_view text);
std::string serialize_convolution(const ConvolutionInput& in);

/// Reads a whole file; throws InvalidArgument when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace apolar
