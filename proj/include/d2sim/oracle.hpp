#ifndef D2SIM_ORACLE_HPP
#define D2SIM_ORACLE_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "d2sim/acd.hpp"
#include "d2sim/graph.hpp"

namespace d2sim {
namespace oracle {

// Sequential full-information reference implementations. Deliberately
// unoptimized; clarity over speed. Intended for n up to 2^14.

struct ColorViolation {
  int u;
  int v;
  int color;
  int distance;  // 1 or 2
  bool operator==(const ColorViolation&) const = default;
};

struct ValidationReport {
  std::vector<ColorViolation> violations;
  std::vector<int> palette_violations;  // nodes colored outside [0, Δ²]
  std::vector<int> uncolored;           // only possible under partial_validate
  bool ok() const {
    return violations.empty() && palette_violations.empty() && uncolored.empty();
  }
};

// Exhaustive check of all distance <= 2 pairs and the color range. Rejects
// partial colorings; use partial_validate to permit live nodes.
ValidationReport validate(const Graph& g, const Coloring& coloring);
ValidationReport partial_validate(const Graph& g, const Coloring& coloring);

// Sequential greedy: each node takes the smallest color absent from its
// already-colored d2-neighbors. Uses at most Δ²+1 colors.
Coloring greedy_d2(const Graph& g, const std::vector<int>& order);

// {0..Δ²} minus the colors of colored d2-neighbors of live node v.
std::vector<int> exact_palette(const Graph& g, const Coloring& coloring, int v);

// Exact set of v-decent inactive nodes in v's component: at most 4φ 2-paths
// to active component nodes and exactly one 2-path to v.
std::vector<int> decent_set(const SquareView& sq, const AcdResult& acd,
                            const std::vector<int>& active_set, int v);

struct AcdPropertyCheck {
  std::string property;
  bool pass;
  std::string witness;  // empty when passing
};

struct AcdReport {
  std::vector<AcdPropertyCheck> checks;
  bool ok() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
  std::string first_failure() const {
    for (const auto& c : checks) {
      if (!c.pass) return c.property + ": " + c.witness;
    }
    return "";
  }
};

// Checks every decomposition property exactly, plus the per-dense-node
// degree bounds relative to the component subgraphs.
AcdReport verify_acd(const Graph& g, const AcdResult& acd, const AcdParams& params);
AcdReport verify_acd(const SquareView& sq, const AcdResult& acd, const AcdParams& params);

// All e in F_p whose digit-polynomial evaluation map is injective on every
// list. Enumeration oracle for the derandomized reduction; p <= 2^16.
std::vector<std::uint32_t> brute_force_good_seeds(const std::vector<std::vector<int>>& lists,
                                                  std::uint32_t p, int d);

}  // namespace oracle
}  // namespace d2sim

#endif  // D2SIM_ORACLE_HPP
