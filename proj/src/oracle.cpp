#include "d2sim/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "d2sim/colorspace.hpp"

namespace d2sim {
namespace oracle {

namespace {

ValidationReport run_validate(const Graph& g, const Coloring& coloring, bool allow_live) {
  if (static_cast<int>(coloring.size()) != g.node_count())
    throw std::invalid_argument("validate: coloring size mismatch");
  ValidationReport report;
  int palette = g.d2_palette();
  for (int v = 0; v < g.node_count(); ++v) {
    if (coloring[v] == kLive) {
      if (!allow_live) report.uncolored.push_back(v);
      continue;
    }
    if (coloring[v] < 0 || coloring[v] >= palette) report.palette_violations.push_back(v);
  }
  for (int v = 0; v < g.node_count(); ++v) {
    if (coloring[v] == kLive) continue;
    for (int u : g.neighbors(v)) {
      if (u > v && coloring[u] == coloring[v]) {
        report.violations.push_back(ColorViolation{v, u, coloring[v], 1});
      }
    }
  }
  // distance-2 conflicts seen from the common neighbor
  for (int w = 0; w < g.node_count(); ++w) {
    auto nb = g.neighbors(w);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        int u = nb[i], v = nb[j];
        if (coloring[u] == kLive || coloring[u] != coloring[v]) continue;
        if (g.has_edge(u, v)) continue;  // already reported at distance 1
        report.violations.push_back(ColorViolation{u, v, coloring[u], 2});
      }
    }
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const ColorViolation& a, const ColorViolation& b) {
              return std::tie(a.u, a.v, a.color) < std::tie(b.u, b.v, b.color);
            });
  report.violations.erase(std::unique(report.violations.begin(), report.violations.end()),
                          report.violations.end());
  return report;
}

}  // namespace

ValidationReport validate(const Graph& g, const Coloring& coloring) {
  return run_validate(g, coloring, false);
}

ValidationReport partial_validate(const Graph& g, const Coloring& coloring) {
  return run_validate(g, coloring, true);
}

Coloring greedy_d2(const Graph& g, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != g.node_count())
    throw std::invalid_argument("greedy_d2: order must be a permutation of V");
  Coloring coloring(g.node_count(), kLive);
  std::vector<char> used(g.d2_palette() + 1, 0);
  for (int v : order) {
    auto ball = d2_neighbors(g, v);
    for (int u : ball) {
      if (coloring[u] != kLive) used[coloring[u]] = 1;
    }
    int c = 0;
    while (used[c]) ++c;
    coloring[v] = c;
    for (int u : ball) {
      if (coloring[u] != kLive) used[coloring[u]] = 0;
    }
  }
  return coloring;
}

std::vector<int> exact_palette(const Graph& g, const Coloring& coloring, int v) {
  if (coloring[v] != kLive) throw std::invalid_argument("exact_palette: node already colored");
  std::vector<char> used(g.d2_palette(), 0);
  for (int u : d2_neighbors(g, v)) {
    if (coloring[u] != kLive && coloring[u] < g.d2_palette()) used[coloring[u]] = 1;
  }
  std::vector<int> palette;
  for (int c = 0; c < g.d2_palette(); ++c) {
    if (!used[c]) palette.push_back(c);
  }
  return palette;
}

std::vector<int> decent_set(const SquareView& sq, const AcdResult& acd,
                            const std::vector<int>& active_set, int v) {
  int comp = acd.component_of.at(v);
  if (comp < 0) throw std::invalid_argument("decent_set: node has no component");
  const auto& members = acd.components[comp].members;
  std::vector<char> active(sq.base().node_count(), 0);
  std::int64_t phi = 0;
  for (int a : active_set) {
    if (acd.component_of[a] == comp && !active[a]) { active[a] = 1; ++phi; }
  }
  std::vector<int> out;
  for (int z : members) {
    if (active[z] || z == v) continue;
    std::int64_t paths_to_active = 0;
    auto nbrs = sq.d2_neighbors(z);
    auto mults = sq.path_multiplicities(z);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (active[nbrs[i]] && acd.component_of[nbrs[i]] == comp) paths_to_active += mults[i];
    }
    if (paths_to_active > 4 * phi) continue;
    if (sq.two_paths(z, v) != 1) continue;
    out.push_back(z);
  }
  return out;
}

namespace {

std::string pair_witness(int u, int v, const std::string& detail) {
  std::ostringstream out;
  out << "(" << u << "," << v << ") " << detail;
  return out.str();
}

}  // namespace

AcdReport verify_acd(const Graph& g, const AcdResult& acd, const AcdParams& params) {
  SquareView sq(g);
  return verify_acd(sq, acd, params);
}

AcdReport verify_acd(const SquareView& sq, const AcdResult& acd, const AcdParams& params) {
  const Graph& g = sq.base();
  AcdReport report;
  int n = g.node_count();
  std::int64_t d2 = std::int64_t{1} * g.max_degree() * g.max_degree();
  const Rational eps = params.epsilon;

  auto add = [&](const std::string& property, bool pass, const std::string& witness) {
    report.checks.push_back(AcdPropertyCheck{property, pass, pass ? "" : witness});
  };

  // Structural sanity: disjoint extended components covering V with V*.
  {
    std::vector<int> owner(n, -1);
    bool disjoint = true;
    std::string witness;
    for (int i = 0; i < static_cast<int>(acd.components.size()) && disjoint; ++i) {
      for (int v : acd.components[i].extended) {
        if (owner[v] != -1) {
          disjoint = false;
          witness = "node " + std::to_string(v) + " in two extended components";
          break;
        }
        owner[v] = i;
      }
    }
    if (!disjoint) throw std::invalid_argument("verify_acd: " + witness);
    std::vector<char> covered(n, 0);
    for (int v : acd.v_star) covered[v] = 1;
    for (const auto& c : acd.components) {
      for (int v : c.extended) covered[v] = 1;
    }
    bool cover = true;
    std::string cover_witness;
    for (int v = 0; v < n; ++v) {
      if (!covered[v]) { cover = false; cover_witness = "node " + std::to_string(v); break; }
    }
    add("cover", cover, cover_witness);
  }

  // Property 1: sparsity of V* nodes.
  {
    Rational bound = eps * eps * Rational(d2) / Rational(4);
    bool pass = true;
    std::string witness;
    for (int v : acd.v_star) {
      Rational zeta = sq.exact_sparsity(v);
      if (zeta < bound) {
        pass = false;
        witness = "node " + std::to_string(v) + " sparsity " + zeta.str() + " < " + bound.str();
        break;
      }
    }
    add("property1", pass, witness);
  }

  auto common_d2 = [&](int u, int v) {
    auto a = sq.d2_neighbors(u);
    auto b = sq.d2_neighbors(v);
    std::int64_t count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) { ++count; ++i; ++j; }
      else if (a[i] < b[j]) ++i;
      else ++j;
    }
    return count;
  };

  for (int ci = 0; ci < static_cast<int>(acd.components.size()); ++ci) {
    const auto& comp = acd.components[ci];
    std::string tag = "component" + std::to_string(comp.id);

    // 2(a) component size
    {
      Rational bound = (Rational(1) - Rational(2) * eps) * Rational(d2);
      bool pass = Rational(static_cast<std::int64_t>(comp.members.size())) >= bound;
      add(tag + ".2a", pass,
          "size " + std::to_string(comp.members.size()) + " < " + bound.str());
    }
    // 2(b) mutual 10eps-similarity inside the extended component
    {
      Rational bound = (Rational(1) - Rational(10) * eps) * Rational(d2);
      bool pass = true;
      std::string witness;
      for (std::size_t i = 0; i < comp.extended.size() && pass; ++i) {
        for (std::size_t j = i + 1; j < comp.extended.size(); ++j) {
          std::int64_t c = common_d2(comp.extended[i], comp.extended[j]);
          if (Rational(c) < bound) {
            pass = false;
            witness = pair_witness(comp.extended[i], comp.extended[j],
                                   "common " + std::to_string(c) + " < " + bound.str());
            break;
          }
        }
      }
      add(tag + ".2b", pass, witness);
    }
    // 2(c) few non-neighbors inside the extended component
    {
      Rational bound = Rational(28) * eps * Rational(d2);
      bool pass = true;
      std::string witness;
      for (int v : comp.extended) {
        std::int64_t non = 0;
        for (int u : comp.extended) {
          if (u != v && !sq.d2_adjacent(u, v)) ++non;
        }
        if (Rational(non) > bound) {
          pass = false;
          witness = "node " + std::to_string(v) + " has " + std::to_string(non) +
                    " non-neighbors > " + bound.str();
          break;
        }
      }
      add(tag + ".2c", pass, witness);
    }
    // 2(d) many d2-neighbors inside C_i
    {
      Rational bound = (Rational(1) - Rational(10) * eps) * Rational(d2);
      bool pass = true;
      std::string witness;
      std::vector<char> in_c(n, 0);
      for (int u : comp.members) in_c[u] = 1;
      for (int v : comp.extended) {
        std::int64_t inside = 0;
        for (int u : sq.d2_neighbors(v)) {
          if (in_c[u]) ++inside;
        }
        if (Rational(inside) < bound) {
          pass = false;
          witness = "node " + std::to_string(v) + " has " + std::to_string(inside) +
                    " C-neighbors < " + bound.str();
          break;
        }
      }
      add(tag + ".2d", pass, witness);
    }
    // 2(e) members are eps-dissimilar to everything outside the extended set
    {
      Rational bound = (Rational(1) - eps) * Rational(d2);
      bool pass = true;
      std::string witness;
      std::vector<char> in_ext(n, 0);
      for (int u : comp.extended) in_ext[u] = 1;
      for (int v : comp.members) {
        for (int u = 0; u < n && pass; ++u) {
          if (u == v || in_ext[u]) continue;
          std::int64_t c = common_d2(u, v);
          if (Rational(c) >= bound) {
            pass = false;
            witness = pair_witness(v, u, "common " + std::to_string(c) + " >= " + bound.str());
          }
        }
        if (!pass) break;
      }
      add(tag + ".2e", pass, witness);
    }
    // Degree bounds for dense nodes, expressed through each node's sparsity:
    // subgraph degree, non-neighbors inside the extended set, and the edge
    // count of the neighborhood inside the component graph.
    {
      std::vector<char> in_ext(n, 0);
      for (int u : comp.extended) in_ext[u] = 1;
      bool pass1 = true, pass2 = true, pass3 = true;
      std::string w1, w2, w3;
      for (int v : comp.extended) {
        Rational zeta = sq.exact_sparsity(v);
        std::int64_t hat_deg = 0;
        for (int u : sq.d2_neighbors(v)) {
          if (in_ext[u]) ++hat_deg;
        }
        Rational bound1 = Rational(d2) - (Rational(2) * zeta + Rational(1)) / eps;
        if (pass1 && Rational(hat_deg) < bound1) {
          pass1 = false;
          w1 = "node " + std::to_string(v) + " hat-degree " + std::to_string(hat_deg) +
               " < " + bound1.str();
        }
        std::int64_t missing = 0;
        for (int u : comp.extended) {
          if (u != v && !sq.d2_adjacent(u, v)) ++missing;
        }
        if (pass2 && Rational(missing) > Rational(3) * zeta) {
          pass2 = false;
          w2 = "node " + std::to_string(v) + " misses " + std::to_string(missing) + " > 3*" +
               zeta.str();
        }
        // edges of the extended-component subgraph restricted to v's neighborhood
        std::vector<int> hood;
        for (int u : sq.d2_neighbors(v)) {
          if (in_ext[u]) hood.push_back(u);
        }
        std::int64_t edges = 0;
        for (std::size_t i = 0; i < hood.size(); ++i) {
          for (std::size_t j = i + 1; j < hood.size(); ++j) {
            if (sq.d2_adjacent(hood[i], hood[j])) ++edges;
          }
        }
        Rational bound3 =
            Rational(d2 * (d2 - 1) / 2) - (Rational(2) / eps + Rational(1)) * zeta * Rational(d2);
        if (pass3 && Rational(edges) < bound3) {
          pass3 = false;
          w3 = "node " + std::to_string(v) + " neighborhood edges " + std::to_string(edges) +
               " < " + bound3.str();
        }
      }
      add(tag + ".hdeg1", pass1, w1);
      add(tag + ".hdeg2", pass2, w2);
      add(tag + ".hdeg3", pass3, w3);
    }
  }
  return report;
}

std::vector<std::uint32_t> brute_force_good_seeds(const std::vector<std::vector<int>>& lists,
                                                  std::uint32_t p, int d) {
  if (p > (1u << 16)) throw std::invalid_argument("brute_force_good_seeds: p above 2^16");
  ColorspaceReducer reducer(p, d, 0);
  std::vector<std::uint32_t> good;
  for (std::uint32_t e = 0; e < p; ++e) {
    bool ok = true;
    std::vector<char> seen(p, 0);
    for (const auto& list : lists) {
      std::vector<std::uint32_t> touched;
      for (int x : list) {
        std::uint32_t y = reducer.map_color(x, e);
        if (seen[y]) { ok = false; break; }
        seen[y] = 1;
        touched.push_back(y);
      }
      for (std::uint32_t y : touched) seen[y] = 0;
      if (!ok) break;
    }
    if (ok) good.push_back(e);
  }
  return good;
}

}  // namespace oracle
}  // namespace d2sim
