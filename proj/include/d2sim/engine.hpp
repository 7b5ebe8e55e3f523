#ifndef D2SIM_ENGINE_HPP
#define D2SIM_ENGINE_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2sim/graph.hpp"
#include "d2sim/message.hpp"
#include "d2sim/rng.hpp"
#include "d2sim/transcript.hpp"

namespace d2sim {

struct EngineConfig {
  int budget_multiplier = 8;  // c_B
  std::int64_t round_cap = 0;  // 0 = default 64 * ceil(log2 n) * 32
  std::uint64_t seed = 1;

  std::int64_t effective_round_cap(int n) const {
    if (round_cap > 0) return round_cap;
    return 64LL * std::max(1, BandwidthBudget::ceil_log2(n)) * (24 + 8);
  }
};

class BudgetViolationError : public std::runtime_error {
 public:
  BudgetViolationError(const BudgetViolationRecord& record)
      : std::runtime_error("bandwidth budget exceeded: " + std::to_string(record.bits) +
                           " bits on edge (" + std::to_string(record.from) + "," +
                           std::to_string(record.to) + ") at round " +
                           std::to_string(record.round)),
        record_(record) {}
  const BudgetViolationRecord& record() const { return record_; }

 private:
  BudgetViolationRecord record_;
};

class RoundCapExceededError : public std::runtime_error {
 public:
  explicit RoundCapExceededError(std::int64_t cap)
      : std::runtime_error("round cap exceeded: " + std::to_string(cap)) {}
};

struct Inbound {
  int port;  // index of the sender inside the receiver's adjacency
  Message msg;
};

class Engine;

// What a node handler may see: its own id, the round, global parameters,
// its per-round random stream, and (on receive) its incident messages.
class NodeCtx {
 public:
  NodeCtx(Engine& engine, int node, RandomStream& rng)
      : engine_(&engine), node_(node), rng_(&rng) {}

  int node() const { return node_; }
  int round() const;
  int n() const;
  int max_degree() const;
  int degree() const;
  RandomStream& rng() { return *rng_; }

  // Send the message over the given port (at most one per port per round).
  void emit(int port, Message msg);
  // Record a semantic adoption event in the transcript.
  void note_adoption(int color);

 private:
  Engine* engine_;
  int node_;
  RandomStream* rng_;
};

// A per-node synchronous program. The engine calls send() for every node at
// the start of a round and receive() once messages are exchanged. Handlers
// for distinct nodes must not share mutable state; determinism comes from
// the per-(node, round) random streams, never from evaluation order.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual void send(NodeCtx& ctx) = 0;
  virtual void receive(NodeCtx& ctx, std::span<const Inbound> inbox) = 0;
  // Engine-level termination probe, evaluated between rounds.
  virtual bool finished() const = 0;
};

enum class RunStatus { kFinished, kRoundCap };

class Engine {
 public:
  Engine(const Graph& g, const EngineConfig& config);

  const Graph& graph() const { return *graph_; }
  const BandwidthBudget& budget() const { return budget_; }
  const EngineConfig& config() const { return config_; }
  int round() const { return round_; }
  Transcript& transcript() { return transcript_; }
  const Transcript& transcript() const { return transcript_; }

  // Runs the program until it reports finished. Appends to the transcript
  // under the given phase label. Throws BudgetViolationError /
  // RoundCapExceededError; max_rounds < 0 means no per-phase limit.
  RunStatus run_phase(NodeProgram& program, const std::string& phase,
                      std::int64_t max_rounds = -1);

  // True when no messages were exchanged in the previous round.
  bool quiescent() const { return last_round_messages_ == 0; }

 private:
  friend class NodeCtx;

  void deliver(int from, int port, Message msg);

  const Graph* graph_;
  EngineConfig config_;
  BandwidthBudget budget_;
  Transcript transcript_;
  int round_ = 0;
  std::int64_t last_round_messages_ = 0;

  // per-round scratch
  std::vector<std::vector<Inbound>> inbox_;
  std::vector<std::vector<Inbound>> next_inbox_;
  std::vector<int> edge_sent_round_;  // per directed edge slot
  std::vector<std::int64_t> edge_slot_offset_;
  bool in_send_phase_ = false;
  int round_max_bits_ = 0;
  std::int64_t round_total_bits_ = 0;
  std::int64_t round_messages_ = 0;
};

// Convenience wrapper: run a single program on a fresh engine.
Transcript simulate(const Graph& g, NodeProgram& program, const EngineConfig& config,
                    const std::string& phase = "RUN");

}  // namespace d2sim

#endif  // D2SIM_ENGINE_HPP
