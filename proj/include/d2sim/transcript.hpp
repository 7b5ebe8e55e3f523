#ifndef D2SIM_TRANSCRIPT_HPP
#define D2SIM_TRANSCRIPT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace d2sim {

struct AdoptionEvent {
  int round;
  int node;
  int color;
  bool operator==(const AdoptionEvent&) const = default;
};

struct RoundRecord {
  int round;
  int max_edge_bits;
  std::int64_t total_bits;
  int messages;
  std::string phase;
  int adoption_begin;  // index range into Transcript::adoptions
  int adoption_end;
  bool operator==(const RoundRecord&) const = default;
};

struct BudgetViolationRecord {
  int round;
  int from;
  int to;
  int bits;
  int tag;
  bool operator==(const BudgetViolationRecord&) const = default;
};

// Full per-round record of a run: bits per edge, adoptions, phase markers,
// violations. Immutable once the run ends.
struct Transcript {
  std::vector<RoundRecord> rounds;
  std::vector<AdoptionEvent> adoptions;
  std::vector<BudgetViolationRecord> violations;
  std::vector<std::pair<int, std::string>> phase_markers;  // (first round, phase)

  int total_rounds() const { return static_cast<int>(rounds.size()); }
  int max_edge_bits() const;
  // Rounds spent in phases whose name starts with the given prefix.
  int rounds_in_phase(const std::string& prefix) const;

  // Line-delimited structured text, one record per round.
  void write(std::ostream& out) const;
  std::string to_text() const;

  bool operator==(const Transcript&) const = default;
};

}  // namespace d2sim

#endif  // D2SIM_TRANSCRIPT_HPP
