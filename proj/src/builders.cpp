#include "apolar/builders.hpp"

#include <optional>

namespace apolar {

namespace {

using BoolMatrix = std::vector<std::vector<char>>;

// walks[t][u][v] != 0 iff there is a walk of exactly t edges from u to v.
std::vector<BoolMatrix> walk_reachability(const DirectedGraph& g, int max_len) {
  const int n = g.vertex_count();
  std::vector<BoolMatrix> walks(max_len + 1, BoolMatrix(n + 1, std::vector<char>(n + 1, 0)));
  for (int v = 1; v <= n; ++v) walks[0][v][v] = 1;
  for (int t = 1; t <= max_len; ++t) {
    for (int u = 1; u <= n; ++u) {
      for (int w : g.out_neighbors(u)) {
        for (int v = 1; v <= n; ++v) walks[t][u][v] |= walks[t - 1][w][v];
      }
    }
  }
  return walks;
}

}  // namespace

int validate_partition(const Partition& parts) {
  if (parts.empty()) fail(ErrorKind::BadPartition, "partition has no parts");
  const std::size_t k = parts[0].size();
  if (k == 0) fail(ErrorKind::BadPartition, "empty part");
  const std::size_t total = k * parts.size();
  std::vector<char> seen(total + 1, 0);
  for (const auto& part : parts) {
    if (part.size() != k) fail(ErrorKind::BadPartition, "parts differ in size");
    for (int e : part) {
      if (e < 1 || static_cast<std::size_t>(e) > total) {
        fail(ErrorKind::BadPartition, "element " + std::to_string(e) + " outside 1.." + std::to_string(total));
      }
      if (seen[e]) fail(ErrorKind::BadPartition, "element " + std::to_string(e) + " appears twice");
      seen[e] = 1;
    }
  }
  return static_cast<int>(k);
}

SkewCircuit build_trace_power(const DirectedGraph& g, int d) {
  const int n = g.vertex_count();
  if (n < 1) fail(ErrorKind::EmptyGraph, "trace power needs at least one vertex");
  if (d < 1) fail(ErrorKind::BadDims, "trace power needs d >= 1");
  auto walks = walk_reachability(g, d);
  SkewCircuit c;
  c.set_nvars(n);
  std::vector<std::size_t> closed;
  for (int s = 1; s <= n; ++s) {
    if (!walks[d][s][s]) continue;
    // layer[j]: walks s = i_1 -> ... -> i_t = j, weighted x_{i_1} ... x_{i_t}.
    std::vector<std::optional<std::size_t>> layer(n + 1);
    layer[s] = c.input(s);
    for (int t = 2; t <= d; ++t) {
      std::vector<std::optional<std::size_t>> next(n + 1);
      for (int j = 1; j <= n; ++j) {
        if (!walks[d - t + 1][j][s]) continue;
        std::vector<std::size_t> preds;
        for (int i : g.in_neighbors(j)) {
          if (layer[i]) preds.push_back(*layer[i]);
        }
        if (preds.empty()) continue;
        next[j] = c.mul_linear(LinearForm::variable(j), c.add_all(preds));
      }
      layer = std::move(next);
    }
    std::vector<std::size_t> preds;
    for (int i : g.in_neighbors(s)) {
      if (layer[i]) preds.push_back(*layer[i]);
    }
    if (!preds.empty()) closed.push_back(c.add_all(preds));
  }
  c.set_output(closed.empty() ? c.zero(d) : c.add_all(closed));
  return c;
}

SkewCircuit build_path_walks(const DirectedGraph& g, int s, int t, int d) {
  const int n = g.vertex_count();
  if (n < 1) fail(ErrorKind::EmptyGraph, "path walks need at least one vertex");
  if (s < 1 || s > n || t < 1 || t > n) fail(ErrorKind::IndexOutOfRange, "endpoint out of range");
  if (d < 1) fail(ErrorKind::BadDims, "path walks need d >= 1");
  auto walks = walk_reachability(g, d - 1);
  SkewCircuit c;
  c.set_nvars(n);
  if (!walks[d - 1][s][t]) {
    c.set_output(c.zero(d));
    return c;
  }
  std::vector<std::optional<std::size_t>> layer(n + 1);
  layer[s] = c.input(s);
  for (int r = 2; r <= d; ++r) {
    std::vector<std::optional<std::size_t>> next(n + 1);
    for (int j = 1; j <= n; ++j) {
      if (!walks[d - r][j][t]) continue;
      std::vector<std::size_t> preds;
      for (int i : g.in_neighbors(j)) {
        if (layer[i]) preds.push_back(*layer[i]);
      }
      if (preds.empty()) continue;
      next[j] = c.mul_linear(LinearForm::variable(j), c.add_all(preds));
    }
    layer = std::move(next);
  }
  c.set_output(*layer[t]);
  return c;
}

SkewCircuit build_part_product_power(const Partition& parts, int m) {
  validate_partition(parts);
  if (m < 1) fail(ErrorKind::BadDims, "power m must be >= 1");
  SkewCircuit c;
  std::size_t stage = c.constant(1);
  for (int r = 0; r < m; ++r) {
    std::vector<std::size_t> terms;
    terms.reserve(parts.size());
    for (const auto& part : parts) {
      std::size_t g = stage;
      for (int v : part) g = c.mul_linear(LinearForm::variable(v), g);
      terms.push_back(g);
    }
    stage = c.add_all(terms);
  }
  c.set_output(stage);
  return c;
}

SkewCircuit build_mv_determinant(const std::vector<std::vector<LinearForm>>& entries) {
  const int d = static_cast<int>(entries.size());
  if (d < 1) fail(ErrorKind::BadDims, "determinant needs d >= 1");
  for (const auto& row : entries) {
    if (static_cast<int>(row.size()) != d) fail(ErrorKind::BadDims, "determinant needs a square matrix");
  }
  auto entry = [&](int i, int j) -> const LinearForm& { return entries[i - 1][j - 1]; };

  // A clow is a closed walk whose head (its least vertex) is visited once; a
  // clow sequence has strictly increasing heads and total length d, with sign
  // (-1)^(d + #clows). Node (h, u, i): current clow head h, current vertex u,
  // i edges used. Closing a clow contributes -l(u, h); the global (-1)^d is
  // folded into the final closing edge.
  SkewCircuit c;
  using Layer = std::vector<std::vector<std::vector<std::size_t>>>;  // [h][u] -> incoming terms
  auto fresh_layer = [&] { return Layer(d + 1, std::vector<std::vector<std::size_t>>(d + 1)); };
  std::vector<std::vector<std::optional<std::size_t>>> node(d + 1, std::vector<std::optional<std::size_t>>(d + 1));
  std::size_t one = c.constant(1);
  for (int h = 1; h <= d; ++h) node[h][h] = one;

  const Rational final_sign = (d % 2 == 0) ? Rational(-1) : Rational(1);
  std::vector<std::size_t> finals;
  for (int i = 0; i < d; ++i) {
    Layer incoming = fresh_layer();
    for (int h = 1; h <= d; ++h) {
      for (int u = h; u <= d; ++u) {
        if (!node[h][u]) continue;
        const std::size_t src = *node[h][u];
        const LinearForm& back = entry(u, h);
        if (i + 1 == d) {
          if (!back.is_zero()) finals.push_back(c.mul_linear(back * final_sign, src));
          continue;
        }
        for (int v = h + 1; v <= d; ++v) {
          const LinearForm& w = entry(u, v);
          if (!w.is_zero()) incoming[h][v].push_back(c.mul_linear(w, src));
        }
        if (!back.is_zero() && h < d) {
          std::size_t closed = c.mul_linear(-back, src);
          for (int h2 = h + 1; h2 <= d; ++h2) incoming[h2][h2].push_back(closed);
        }
      }
    }
    if (i + 1 == d) break;
    for (int h = 1; h <= d; ++h) {
      for (int u = 1; u <= d; ++u) {
        node[h][u] = incoming[h][u].empty() ? std::nullopt : std::optional(c.add_all(incoming[h][u]));
      }
    }
  }
  c.set_output(finals.empty() ? c.zero(d) : c.add_all(finals));
  int nvars = 0;
  for (const auto& row : entries) {
    for (const auto& f : row) nvars = std::max(nvars, f.max_variable());
  }
  c.set_nvars(nvars);
  return c;
}

SkewCircuit build_linear_product(const std::vector<LinearForm>& forms) {
  SkewCircuit c;
  std::size_t g = c.constant(1);
  for (const auto& f : forms) g = c.mul_linear(f, g);
  c.set_output(g);
  return c;
}

SkewCircuit build_monomial(const Monomial& alpha, const Rational& coeff) {
  SkewCircuit c;
  std::size_t g = c.constant(coeff);
  for (auto [v, e] : alpha.powers()) {
    for (int i = 0; i < e; ++i) g = c.mul_linear(LinearForm::variable(v), g);
  }
  c.set_output(g);
  return c;
}

}  // namespace apolar
