#ifndef D2SIM_GRAPH_HPP
#define D2SIM_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "d2sim/rational.hpp"

namespace d2sim {

inline constexpr int kLive = -1;  // color value of an uncolored node

// A node's color assignment; kLive marks uncolored nodes.
using Coloring = std::vector<int>;

// Immutable undirected simple graph in CSR form. Read-only after
// construction, safe for unrestricted concurrent reads.
class Graph {
 public:
  Graph(int node_count, const std::vector<std::pair<int, int>>& edges);

  int node_count() const { return n_; }
  int edge_count() const { return m_; }
  int max_degree() const { return max_degree_; }
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const int> neighbors(int v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  // Neighbors are sorted ascending.
  bool has_edge(int u, int v) const;

  // Port of v inside the adjacency list of its k-th neighbor.
  int twin_port(int v, int k) const { return twin_[offsets_[v] + k]; }

  // Palette size is max_degree()^2 + 1; colors live in [0, d2_palette()).
  int d2_palette() const { return max_degree_ * max_degree_ + 1; }

  // Text edge list: first line "n m", then one "u v" line per edge.
  static Graph read_edge_list(std::istream& in);
  void write_edge_list(std::ostream& out) const;

 private:
  int n_ = 0;
  int m_ = 0;
  int max_degree_ = 0;
  std::vector<int> offsets_;
  std::vector<int> adj_;
  std::vector<int> twin_;
};

// Nodes at distance exactly 1 or 2 from v, excluding v, sorted ascending.
std::vector<int> d2_neighbors(const Graph& g, int v);

// |N(u) ∩ N(v)|, the number of length-2 paths between distinct u and v.
int two_path_count(const Graph& g, int u, int v);

// Exact sparsity of v: (C(Δ²,2) − |E(G²[v])|) / Δ², with the square graph
// taken simple so parallel 2-paths count once.
Rational exact_sparsity(const Graph& g, int v);

// Slack of v under a partial coloring: (Δ²+1) minus the number of distinct
// colors among v's d2-neighbors minus the number of live d2-neighbors.
int slack(const Graph& g, int v, const Coloring& coloring);

// Eagerly computed distance-2 adjacency with 2-path multiplicities. The
// square graph is kept simple; multiplicities are stored separately because
// the proposal protocol samples paths, not neighbors.
class SquareView {
 public:
  explicit SquareView(const Graph& g);

  const Graph& base() const { return *base_; }
  std::span<const int> d2_neighbors(int v) const {
    return {nbrs_.data() + offsets_[v], nbrs_.data() + offsets_[v + 1]};
  }
  std::span<const int> path_multiplicities(int v) const {
    return {mult_.data() + offsets_[v], mult_.data() + offsets_[v + 1]};
  }
  int d2_degree(int v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
  bool d2_adjacent(int u, int v) const;
  int two_paths(int u, int v) const;  // 0 when not within distance 2

  Rational exact_sparsity(int v) const;
  int slack(int v, const Coloring& coloring) const;

 private:
  const Graph* base_;
  std::vector<std::int64_t> offsets_;
  std::vector<int> nbrs_;
  std::vector<int> mult_;
};

}  // namespace d2sim

#endif  // D2SIM_GRAPH_HPP
