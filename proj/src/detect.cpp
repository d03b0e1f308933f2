#include "apolar/detect.hpp"

#include "apolar/linalg.hpp"

namespace apolar {

std::string to_string(Engine e) { return e == Engine::general ? "general" : "hankel"; }

Engine parse_engine(std::string_view name) {
  if (name == "general") return Engine::general;
  if (name == "hankel") return Engine::hankel;
  fail(ErrorKind::InvalidArgument, "unknown engine '" + std::string(name) + "' (expected general or hankel)");
}

namespace {

int circuit_max_variable(const SkewCircuit& c) {
  int top = 0;
  const auto live = c.live_gates();
  for (std::size_t g = 0; g < c.size(); ++g) {
    if (!live[g]) continue;
    const Gate& gate = c.gate(g);
    if (gate.kind == GateKind::Input) top = std::max(top, gate.var);
    if (gate.kind == GateKind::MulLin) top = std::max(top, gate.form.max_variable());
  }
  return top;
}

// <det H_d, g> for the Vandermonde-Hankel arrangement on n nodes. Every
// size-d column set of the Vandermonde matrix has a nonzero minor, so the
// value is a positive combination of the square-free coefficients of g.
DetectResult squarefree_pairing(const SkewCircuit& c, int n, int d, const DetectOptions& options) {
  const HankelArrangement h = vandermonde_hankel(n, d);
  DetectResult r;
  r.value = options.engine == Engine::hankel ? hankeldiff_evaluate(h, c, options.arithmetic, &r.stats)
                                             : gendiff_evaluate(h.materialize(), c, options.arithmetic, &r.stats);
  r.found = !r.value.is_zero();
  return r;
}

}  // namespace

DetectResult detect_cycle(const DirectedGraph& g, int d, const DetectOptions& options) {
  const int n = g.vertex_count();
  if (n < 1) fail(ErrorKind::EmptyGraph, "graph has no vertices");
  if (d < 1 || d > n) fail(ErrorKind::BadDims, "cycle length must satisfy 1 <= d <= n = " + std::to_string(n));
  return squarefree_pairing(build_trace_power(g, d), n, d, options);
}

DetectResult detect_path(const DirectedGraph& g, int s, int t, int d, const DetectOptions& options) {
  const int n = g.vertex_count();
  if (n < 1) fail(ErrorKind::EmptyGraph, "graph has no vertices");
  if (s < 1 || s > n || t < 1 || t > n) fail(ErrorKind::IndexOutOfRange, "endpoint outside 1.." + std::to_string(n));
  if (s == t) fail(ErrorKind::SameEndpoints, "path endpoints must differ");
  if (d < 2 || d > n) fail(ErrorKind::BadDims, "path length must satisfy 2 <= d <= n = " + std::to_string(n));
  return squarefree_pairing(build_path_walks(g, s, t, d), n, d, options);
}

DetectResult detect_squarefree(const SkewCircuit& c, int d, int n, const DetectOptions& options) {
  if (!c.has_output() || c.degree() != d) {
    fail(ErrorKind::DegreeMismatch, "circuit degree differs from d = " + std::to_string(d));
  }
  if (d < 1) fail(ErrorKind::BadDims, "degree must be positive");
  if (circuit_max_variable(c) > n) {
    fail(ErrorKind::IndexOutOfRange, "circuit uses a variable beyond n = " + std::to_string(n));
  }
  if (n < d) return {};  // no square-free monomial of degree d in fewer than d variables
  return squarefree_pairing(c, n, d, options);
}

DetectResult sing_decide(const std::vector<RationalMatrix>& matrices, const Arithmetic& arithmetic) {
  const SymbolicMatrix x = SymbolicMatrix::pencil(matrices);
  if (x.dim() > kMinorEngineMaxDim) {
    fail(ErrorKind::SizeLimit, "matrix size " + std::to_string(x.dim()) + " exceeds " +
                                   std::to_string(kMinorEngineMaxDim));
  }
  // <det X, det X> = sum_alpha c_alpha^2 alpha!, zero iff det X vanishes.
  const SkewCircuit c = build_mv_determinant(x.entries());
  DetectResult r;
  r.value = gendiff_evaluate(x, c, arithmetic, &r.stats);
  r.found = !r.value.is_zero();
  return r;
}

DetectResult matroid_parity_decide(const RationalMatrix& b, const Partition& parts, const Arithmetic& arithmetic) {
  const int k = validate_partition(parts);
  const std::size_t columns = static_cast<std::size_t>(k) * parts.size();
  if (b.empty()) fail(ErrorKind::BadDims, "representation matrix has no rows");
  for (const auto& row : b) {
    if (row.size() != columns) {
      fail(ErrorKind::BadDims, "matrix must have " + std::to_string(columns) + " columns to match the partition");
    }
  }
  if (b.size() % k != 0) fail(ErrorKind::BadDims, "row count must be a multiple of the part size");
  const int m = static_cast<int>(b.size()) / k;
  const SymbolicMatrix x = SymbolicMatrix::gram(b);
  const SkewCircuit c = build_part_product_power(parts, m);
  DetectResult r;
  r.value = gendiff_evaluate(x, c, arithmetic, &r.stats);
  r.found = !r.value.is_zero();
  return r;
}

DetectResult matroid_intersection_decide(const std::vector<RationalMatrix>& matrices, const Arithmetic& arithmetic) {
  if (matrices.empty()) fail(ErrorKind::BadDims, "need at least one matrix");
  const std::size_t rows = matrices[0].size();
  const std::size_t cols = rows ? matrices[0][0].size() : 0;
  if (cols == 0) fail(ErrorKind::BadDims, "matrices must be nonempty");
  for (const auto& m : matrices) {
    if (m.size() != rows) fail(ErrorKind::BadDims, "matrices differ in row count");
    for (const auto& row : m) {
      if (row.size() != cols) fail(ErrorKind::BadDims, "matrices differ in column count");
    }
  }
  // Bases of each matroid have size rank(B_i); replacing B_i by a basis of its
  // row space keeps the matroid and makes the direct sum square-friendly.
  std::vector<RationalMatrix> reduced;
  for (const auto& m : matrices) reduced.push_back(row_space_basis(m));
  const std::size_t rank = reduced[0].size();
  for (const auto& m : reduced) {
    if (m.size() != rank) return {};
  }
  if (rank == 0) return {true, ExactScalar(1), {}};

  const std::size_t k = reduced.size();
  RationalMatrix sum(k * rank, std::vector<Rational>(k * cols, Rational(0)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < rank; ++r) {
      for (std::size_t c = 0; c < cols; ++c) sum[i * rank + r][i * cols + c] = reduced[i][r][c];
    }
  }
  // Part j collects column j of every summand.
  Partition parts(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < k; ++i) parts[j].push_back(static_cast<int>(i * cols + j + 1));
  }
  return matroid_parity_decide(sum, parts, arithmetic);
}

}  // namespace apolar
