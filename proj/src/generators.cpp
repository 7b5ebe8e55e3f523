#include "d2sim/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "d2sim/rng.hpp"

namespace d2sim {
namespace gen {

Graph gnp(int n, double p, std::uint64_t seed) {
  if (n <= 0 || p < 0.0 || p > 1.0) throw std::invalid_argument("gnp: bad parameters");
  RandomStream rng(seed, 0x676e70 /* "gnp" */, static_cast<std::uint64_t>(n));
  std::vector<std::pair<int, int>> edges;
  const double scale = std::ldexp(1.0, -64);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (static_cast<double>(rng.next()) * scale < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

Graph ring(int n) {
  if (n < 3) throw std::invalid_argument("ring: need at least 3 nodes");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph(n, edges);
}

Graph grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid: bad dimensions");
  auto id = [cols](int r, int c) { return r * cols + c; };
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return Graph(rows * cols, edges);
}

Graph star(int leaves) {
  if (leaves < 1) throw std::invalid_argument("star: need at least one leaf");
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph(leaves + 1, edges);
}

Graph clique_union(int k, int s, int bridges, std::uint64_t seed) {
  if (k < 1 || s < 2) throw std::invalid_argument("clique_union: bad parameters");
  std::vector<std::pair<int, int>> edges;
  for (int c = 0; c < k; ++c) {
    int base = c * s;
    for (int i = 0; i < s; ++i) {
      for (int j = i + 1; j < s; ++j) edges.emplace_back(base + i, base + j);
    }
  }
  int n = k * s;
  RandomStream rng(seed, 0x636c71 /* "clq" */, static_cast<std::uint64_t>(n));
  std::set<std::pair<int, int>> used;
  int added = 0;
  std::int64_t attempts = 0;
  while (added < bridges && attempts < 1000LL * (bridges + 1)) {
    ++attempts;
    int u = static_cast<int>(rng.next_below(n));
    int v = static_cast<int>(rng.next_below(n));
    if (u / s == v / s) continue;
    auto key = std::minmax(u, v);
    if (!used.insert(key).second) continue;
    edges.emplace_back(key.first, key.second);
    ++added;
  }
  if (added < bridges) throw std::invalid_argument("clique_union: cannot place bridges");
  return Graph(n, edges);
}

namespace {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

}  // namespace

Graph polarity(int q) {
  if (!is_prime(q)) throw std::invalid_argument("polarity: q must be prime");
  // Canonical projective points: (1,a,b), (0,1,a), (0,0,1).
  std::vector<std::array<int, 3>> points;
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) points.push_back({1, a, b});
  }
  for (int a = 0; a < q; ++a) points.push_back({0, 1, a});
  points.push_back({0, 0, 1});
  int n = static_cast<int>(points.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      long long dot = 0;
      for (int t = 0; t < 3; ++t) dot += static_cast<long long>(points[i][t]) * points[j][t];
      if (dot % q == 0) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

Graph hamming(int m) {
  if (m < 1 || m > 20) throw std::invalid_argument("hamming: m out of range");
  int n = 1 << m;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) {
    for (int b = 0; b < m; ++b) {
      int u = v ^ (1 << b);
      if (v < u) edges.emplace_back(v, u);
    }
  }
  return Graph(n, edges);
}

Graph from_spec(const std::string& spec, std::uint64_t seed) {
  auto open = spec.find('(');
  auto close = spec.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw std::invalid_argument("generator spec: expected name(args)");
  }
  std::string name = spec.substr(0, open);
  std::vector<std::string> args;
  std::stringstream body(spec.substr(open + 1, close - open - 1));
  std::string item;
  while (std::getline(body, item, ',')) {
    if (!item.empty()) args.push_back(item);
  }
  auto want = [&](std::size_t k) {
    if (args.size() != k)
      throw std::invalid_argument("generator spec: " + name + " takes " + std::to_string(k) +
                                  " arguments");
  };
  if (name == "gnp") {
    want(2);
    return gnp(std::stoi(args[0]), std::stod(args[1]), seed);
  }
  if (name == "ring") { want(1); return ring(std::stoi(args[0])); }
  if (name == "grid") { want(2); return grid(std::stoi(args[0]), std::stoi(args[1])); }
  if (name == "star") { want(1); return star(std::stoi(args[0])); }
  if (name == "cliqueUnion") {
    want(3);
    return clique_union(std::stoi(args[0]), std::stoi(args[1]), std::stoi(args[2]), seed);
  }
  if (name == "polarity") { want(1); return polarity(std::stoi(args[0])); }
  if (name == "hamming") { want(1); return hamming(std::stoi(args[0])); }
  throw std::invalid_argument("generator spec: unknown generator " + name);
}

}  // namespace gen
}  // namespace d2sim
