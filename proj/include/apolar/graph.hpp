#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "apolar/error.hpp"

namespace apolar {

/// Directed graph on vertices 1..n. Parallel edges collapse; loops allowed.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(int n) : n_(n), out_(n + 1), in_(n + 1) {
    if (n < 0) fail(ErrorKind::BadDims, "negative vertex count");
  }

  void add_edge(int u, int v) {
    if (u < 1 || u > n_ || v < 1 || v > n_) {
      fail(ErrorKind::IndexOutOfRange, "edge " + std::to_string(u) + "->" + std::to_string(v) + " out of range");
    }
    if (edges_.emplace(u, v).second) {
      out_[u].push_back(v);
      in_[v].push_back(u);
    }
  }

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::set<std::pair<int, int>>& edges() const { return edges_; }
  bool has_edge(int u, int v) const { return edges_.count({u, v}) != 0; }
  const std::vector<int>& out_neighbors(int u) const { return out_.at(u); }
  const std::vector<int>& in_neighbors(int v) const { return in_.at(v); }

  bool operator==(const DirectedGraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  int n_ = 0;
  std::set<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

}  // namespace apolar
