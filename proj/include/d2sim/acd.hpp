#ifndef D2SIM_ACD_HPP
#define D2SIM_ACD_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "d2sim/graph.hpp"
#include "d2sim/message.hpp"
#include "d2sim/rational.hpp"

namespace d2sim {

// Parameters of the almost-clique decomposition. The similarity scale is
// epsilon; sampling uses N = c10 * ceil(log2 n) targets; the exact-mode
// cutoff is Δ² <= c2 * ceil(log2 n).
struct AcdParams {
  Rational epsilon{1, 60};
  Rational c10{0};  // 0 = derive the concentration default from epsilon
  int c2 = 16;

  // Largest of the two appendix sampling-constant expressions, rounded up.
  static std::int64_t default_c10(const Rational& epsilon);

  Rational effective_c10() const {
    return c10 == Rational(0) ? Rational(default_c10(epsilon)) : c10;
  }
  Rational sample_target(int n) const {  // N
    return effective_c10() * Rational(std::max(1, BandwidthBudget::ceil_log2(n)));
  }
  bool exact_mode(int n, int max_degree) const {
    std::int64_t d2 = std::int64_t{1} * max_degree * max_degree;
    return d2 <= std::int64_t{1} * c2 * std::max(1, BandwidthBudget::ceil_log2(n));
  }
  void check() const;  // throws on epsilon > 1/60 or nonpositive values
};

// count >= (1 - sqrt(2) * level) * target, decided exactly by squaring.
bool similarity_threshold_met(std::int64_t count, const Rational& level,
                              const Rational& target);

// Per middle node: buddy verdicts for pairs of its immediate neighbors,
// plus per-node popularity flags for the same level.
struct BuddyVerdicts {
  Rational level;
  // at_middle[w] maps normalized pairs (u < v) of w's immediate neighbors
  // (or pairs (w, u) judged at an endpoint) to the verdict.
  std::vector<std::map<std::pair<int, int>, bool>> at_middle;
  std::vector<bool> popular;

  bool buddies(int u, int v) const {
    auto key = std::minmax(u, v);
    for (const auto& m : at_middle) {
      auto it = m.find(key);
      if (it != m.end() && it->second) return true;
    }
    return false;
  }
};

struct AcdComponent {
  int id = -1;      // id of the smallest-id ε/2-popular member
  int leader = -1;  // the node owning that id
  std::vector<int> members;   // C_i, sorted
  std::vector<int> extended;  // Ĉ_i ⊇ C_i, sorted
  // Depth-<=4 BFS tree in G rooted at the leader; includes relay nodes.
  // parent[node] = parent id, leader maps to -1.
  std::map<int, int> tree_parent;
};

struct AcdResult {
  int node_count = 0;
  std::vector<int> v_star;  // sorted
  std::vector<AcdComponent> components;

  // index into components, or -1 for V* / unassigned
  std::vector<int> component_of;  // by membership in C_i
  std::vector<int> extended_of;   // by membership in Ĉ_i

  void rebuild_index();

  void write(std::ostream& out) const;
  static AcdResult read(std::istream& in);
  bool operator==(const AcdResult& o) const;
};

enum class AggregateOp { kSum, kMin, kCount };

}  // namespace d2sim

#endif  // D2SIM_ACD_HPP
