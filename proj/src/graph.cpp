#include "d2sim/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace d2sim {

Graph::Graph(int node_count, const std::vector<std::pair<int, int>>& edges) : n_(node_count) {
  if (n_ <= 0) throw std::invalid_argument("graph: node count must be positive");
  std::vector<std::pair<int, int>> dir;
  dir.reserve(edges.size() * 2);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw std::invalid_argument("graph: endpoint out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop");
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) throw std::invalid_argument("graph: duplicate edge");
    dir.emplace_back(u, v);
    dir.emplace_back(v, u);
  }
  m_ = static_cast<int>(edges.size());
  offsets_.assign(n_ + 1, 0);
  for (auto [u, v] : dir) offsets_[u + 1]++;
  for (int v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
  adj_.resize(dir.size());
  std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
  std::sort(dir.begin(), dir.end());
  for (auto [u, v] : dir) adj_[cursor[u]++] = v;
  for (int v = 0; v < n_; ++v) max_degree_ = std::max(max_degree_, degree(v));

  twin_.resize(adj_.size());
  for (int v = 0; v < n_; ++v) {
    auto nb = neighbors(v);
    for (int k = 0; k < static_cast<int>(nb.size()); ++k) {
      auto back = neighbors(nb[k]);
      auto it = std::lower_bound(back.begin(), back.end(), v);
      twin_[offsets_[v] + k] = static_cast<int>(it - back.begin());
    }
  }
}

bool Graph::has_edge(int u, int v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::read_edge_list(std::istream& in) {
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw std::invalid_argument("graph file: missing header");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (int i = 0; i < m; ++i) {
    int u = 0, v = 0;
    if (!(in >> u >> v)) throw std::invalid_argument("graph file: truncated edge list");
    edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

void Graph::write_edge_list(std::ostream& out) const {
  out << n_ << " " << m_ << "\n";
  for (int v = 0; v < n_; ++v) {
    for (int u : neighbors(v)) {
      if (v < u) out << v << " " << u << "\n";
    }
  }
}

std::vector<int> d2_neighbors(const Graph& g, int v) {
  if (v < 0 || v >= g.node_count()) throw std::out_of_range("d2_neighbors: node out of range");
  std::vector<int> out;
  for (int u : g.neighbors(v)) {
    out.push_back(u);
    for (int w : g.neighbors(u)) {
      if (w != v) out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int two_path_count(const Graph& g, int u, int v) {
  if (u == v) throw std::invalid_argument("two_path_count: endpoints must differ");
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  int count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) { ++count; ++i; ++j; }
    else if (a[i] < b[j]) ++i;
    else ++j;
  }
  return count;
}

namespace {

std::int64_t square_neighborhood_edges(const Graph& g, const std::vector<int>& ball) {
  // Count pairs of ball members at distance <= 2, each pair once.
  std::int64_t edges = 0;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::size_t j = i + 1; j < ball.size(); ++j) {
      int a = ball[i], b = ball[j];
      if (g.has_edge(a, b) || two_path_count(g, a, b) > 0) ++edges;
    }
  }
  return edges;
}

}  // namespace

Rational exact_sparsity(const Graph& g, int v) {
  if (g.max_degree() < 1) throw std::invalid_argument("exact_sparsity: max degree must be >= 1");
  std::int64_t d2 = static_cast<std::int64_t>(g.max_degree()) * g.max_degree();
  auto ball = d2_neighbors(g, v);
  std::int64_t edges = square_neighborhood_edges(g, ball);
  return Rational(d2 * (d2 - 1) / 2 - edges, d2);
}

int slack(const Graph& g, int v, const Coloring& coloring) {
  auto ball = d2_neighbors(g, v);
  std::vector<int> colors;
  int live = 0;
  for (int u : ball) {
    if (coloring[u] == kLive) ++live;
    else colors.push_back(coloring[u]);
  }
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  return g.d2_palette() - static_cast<int>(colors.size()) - live;
}

SquareView::SquareView(const Graph& g) : base_(&g) {
  int n = g.node_count();
  offsets_.assign(n + 1, 0);
  std::vector<int> mult_of(n, 0);
  std::vector<int> touched;
  std::vector<std::vector<int>> nbrs(n);
  std::vector<std::vector<int>> mults(n);
  for (int v = 0; v < n; ++v) {
    touched.clear();
    for (int u : g.neighbors(v)) {
      for (int w : g.neighbors(u)) {
        if (w == v) continue;
        if (mult_of[w] == 0) touched.push_back(w);
        ++mult_of[w];
      }
    }
    for (int u : g.neighbors(v)) {
      if (mult_of[u] == 0) touched.push_back(u);  // direct neighbor without a 2-path
    }
    std::sort(touched.begin(), touched.end());
    nbrs[v].assign(touched.begin(), touched.end());
    mults[v].reserve(touched.size());
    for (int u : touched) mults[v].push_back(mult_of[u]);
    for (int u : touched) mult_of[u] = 0;
  }
  for (int v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + static_cast<std::int64_t>(nbrs[v].size());
  nbrs_.resize(offsets_[n]);
  mult_.resize(offsets_[n]);
  for (int v = 0; v < n; ++v) {
    std::copy(nbrs[v].begin(), nbrs[v].end(), nbrs_.begin() + offsets_[v]);
    std::copy(mults[v].begin(), mults[v].end(), mult_.begin() + offsets_[v]);
  }
}

bool SquareView::d2_adjacent(int u, int v) const {
  if (u == v) return false;
  auto nb = d2_neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

int SquareView::two_paths(int u, int v) const {
  auto nb = d2_neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return 0;
  return path_multiplicities(u)[it - nb.begin()];
}

Rational SquareView::exact_sparsity(int v) const {
  std::int64_t d2 = static_cast<std::int64_t>(base_->max_degree()) * base_->max_degree();
  auto ball = d2_neighbors(v);
  std::int64_t edges = 0;
  for (int a : ball) {
    auto nb = d2_neighbors(a);
    // count ball members adjacent to a, halved at the end
    for (int b : ball) {
      if (b != a && std::binary_search(nb.begin(), nb.end(), b)) ++edges;
    }
  }
  edges /= 2;
  return Rational(d2 * (d2 - 1) / 2 - edges, d2);
}

int SquareView::slack(int v, const Coloring& coloring) const {
  std::vector<int> colors;
  int live = 0;
  for (int u : d2_neighbors(v)) {
    if (coloring[u] == kLive) ++live;
    else colors.push_back(coloring[u]);
  }
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  return base_->d2_palette() - static_cast<int>(colors.size()) - live;
}

}  // namespace d2sim
