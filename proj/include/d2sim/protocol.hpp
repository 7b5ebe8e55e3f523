#ifndef D2SIM_PROTOCOL_HPP
#define D2SIM_PROTOCOL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "d2sim/acd.hpp"
#include "d2sim/engine.hpp"
#include "d2sim/graph.hpp"
#include "d2sim/message.hpp"

namespace d2sim {

// Algorithm parameters shared by the logarithmic and sublogarithmic
// pipelines. Iteration counts are multiples of ceil(log2 n) or
// ceil(log2 (Δ+1)); the analysis constants of the source bounds are far
// outside desk scale, so the multipliers are pinned by reference runs.
struct AlgoConfig {
  AcdParams acd;
  int oneshot_mult = 48;       // uninformed-trial iterations per log2 n
  int reduce_mult = 2;         // full Reduce-Phase iterations per log2 n
  int eta = 4;                 // hashed ids live in [eta * Δ^4]
  int c_low = 4;               // LOW/HIGH uncolored-degree threshold constant
  int k_parallel = 4;          // cap on parallel Reduce-Phase instances
  int shatter_mult = 8;        // informed-trial iterations per log2(Δ̂+1)
  int sublog_trial_mult = 8;   // sublog uninformed iterations per log2(Δ+1)
  int multitrial_q_mult = 6;   // sparse batch size q per log2 n
  int degree_reduce_mult = 2;  // sublog Reduce-Phase iterations per log2(Δ+1)
  int learn_walk_mult = 4;     // color walks per (Δ²/P) log2 n
  int learn_fanout = 0;        // P; 0 = Δ * ceil(sqrt(Δ * log2 n))
  int list_exact_bound_mult = 8;  // exact list path when |T_v| <= mult * log2 n
  int cluster_size_bound = 512;
  std::uint32_t p_field = 0;   // 0 = smallest prime >= 17 covering the palette rule
  int d_max = 4;
  bool ideal_palette = false;  // load exact palettes instead of the routed learn
  int small_delta_mult = 1;    // small-degree branch when Δ <= mult * ceil(log2 n)
  int large_delta_mult = 2;    // large-degree branch when mult*log2(Δ+1) >= log2 n

  void check(int n) const;
};

// One node's view of an immediate neighbor, maintained exclusively through
// announcements received over the shared edge.
struct NeighborEntry {
  int id = -1;
  int color = kLive;
  int component = -1;
  int ext_component = -1;
  int local_id = -1;
  bool high_degree_mark = false;
};

struct TreeEntry {
  int comp = -1;
  int parent_port = -1;  // -1 at the root
  int depth = 0;
};

// Driver-owned blackboard of per-node protocol state. Every phase reads and
// writes only the slices owned by the node whose handler is running.
struct ProtocolState {
  const Graph* g = nullptr;
  AlgoConfig cfg;
  Widths widths;
  int palette = 0;
  int log2n = 1;

  std::vector<int> color;
  std::vector<int> component;      // C_i index by id, -1 = V*/none
  std::vector<int> ext_component;  // Ĉ_i id, -1 = none
  std::vector<int> local_id;
  std::vector<std::uint64_t> hashed_id;
  std::vector<std::vector<NeighborEntry>> nbr;          // [v][port]
  std::vector<boost::container::small_vector<TreeEntry, 2>> trees;
  std::vector<std::vector<int>> learned_palette;

  void init(const Graph& g, const AlgoConfig& cfg);
  bool live(int v) const { return color[v] == kLive; }
  int live_count() const;
  const TreeEntry* tree_entry(int v, int comp) const;

  // Installs a decomposition into node state (components, extended
  // membership, local ids, trees) as the distributed construction would
  // leave it; used by the honest builder and by test injection.
  void install_acd(const AcdResult& acd);
  // Refreshes every node's neighbor table fields from current state, as an
  // announcement exchange would.
  void refresh_neighbor_tables();
};

// Per-port FIFO of whole-message atoms for pipelined transfers. An atom is
// a short field group that never splits across messages.
class PortQueues {
 public:
  using Atom = boost::container::small_vector<Field, 4>;

  void init(const Graph& g);
  void push(int v, int port, Atom atom);
  bool pending(int v) const;
  bool all_empty() const { return pending_total_ == 0; }

  // Packs atoms for one port into the message until the budget is reached.
  // Returns the number of atoms packed.
  int pack(int v, int port, Message& msg, int budget_bits);
  bool port_pending(int v, int port) const { return !queues_[v][port].empty(); }

 private:
  std::vector<std::vector<std::vector<Atom>>> queues_;  // [v][port] FIFO
  std::vector<std::vector<std::size_t>> heads_;
  std::int64_t pending_total_ = 0;
};

// Base for phase programs: tick bookkeeping, quiescence tracking, and the
// shared blackboard.
class PhaseProgram : public NodeProgram {
 public:
  PhaseProgram(ProtocolState& st, Engine& engine) : st(st), engine(engine) {}

  void send(NodeCtx& ctx) final;
  void receive(NodeCtx& ctx, std::span<const Inbound> inbox) final;
  bool finished() const final { return done_; }

 protected:
  virtual void tick_begin() {}  // before node 0 sends
  virtual void node_send(NodeCtx& ctx) = 0;
  virtual void node_receive(NodeCtx& ctx, std::span<const Inbound> inbox) = 0;
  virtual void tick_end() {}  // after the last node received

  int tick() const { return tick_; }
  bool idle_round() const { return !last_round_activity_; }
  void finish_phase() { done_ = true; }
  int payload_budget() const;  // budget minus tag bits

  ProtocolState& st;
  Engine& engine;

 private:
  int tick_ = -1;
  bool done_ = false;
  bool round_activity_ = false;
  bool last_round_activity_ = false;
};

// Synchronized validate+contest color trials embedded in phase schedules.
// A slot spans four ticks: ask/answer validation, ask/answer contest; the
// adoption decision lands at the end of the fourth tick and the adoption
// announcement must ride a later tick's broadcast.
class TrySlots {
 public:
  void init(ProtocolState& st);

  // Tick 0: the node starts trying the color.
  void start(int v, int color);
  bool trying(int v) const { return trying_[v] != -1; }
  int tried_color(int v) const { return trying_[v]; }

  // Adoption announcements ride the next slot-0 broadcast; the phase clears
  // them once emitted.
  int pending_announce(int v) const { return pending_announce_[v]; }
  void clear_announcements(int v);

  // Fields appended to the broadcast message of each slot tick (offsets
  // 0..3). Handlers must feed every received message back through on_*.
  void add_slot0_fields(ProtocolState& st, int v, Message& msg) const;
  int on_slot0(ProtocolState& st, int v, int port, std::span<const Field> fields, int at);
  // Validation asks recorded at slot 0, answered at slot 1.
  const std::vector<std::pair<int, int>>& asks(int v) const { return asks_[v]; }
  bool answer_validation(ProtocolState& st, int v, int port, int color) const;
  void on_validation_answer(int v, bool conflict);
  bool contesting(int v) const { return trying_[v] != -1 && !validate_fail_[v]; }
  void add_slot2_fields(ProtocolState& st, int v, Message& msg) const;
  void on_slot2(int v, int port, int color);
  const std::vector<std::pair<int, int>>& heard_contests(int v) const {
    return heard_contests_[v];
  }
  bool answer_contest(ProtocolState& st, int v, int port, int color) const;
  void on_contest_answer(int v, bool conflict);
  // End of slot 3: returns the adopted color or -1 and resets slot state;
  // adoption is written into the blackboard and the transcript.
  int settle(ProtocolState& st, NodeCtx& ctx, int v);

  bool validation_failed(int v) const { return validate_fail_[v]; }

 private:
  std::vector<int> trying_;
  std::vector<std::uint8_t> validate_fail_;
  std::vector<std::uint8_t> contest_fail_;
  std::vector<std::vector<std::pair<int, int>>> heard_contests_;  // [v] (port, color)
  std::vector<std::vector<std::pair<int, int>>> asks_;            // [v] (port, color)
  std::vector<int> pending_announce_;
};

// Message tags. Each protocol tick uses a tag of its own so layouts stay
// self-describing.
enum Tag : std::uint8_t {
  kTagIdAnnounce = 1,
  kTagStatusAnnounce,
  kTagTrySlot0,
  kTagTrySlot1,
  kTagTrySlot2,
  kTagTrySlot3,
  kTagFloodList,
  kTagSFlag,
  kTagSForward,
  kTagSList,
  kTagTFlag,
  kTagTForward,
  kTagTList,
  kTagTListAnswer,
  kTagPopFlag,
  kTagCompCarry,
  kTagCompRelay,
  kTagExtAnnounce,
  kTagExtRelay,
  kTagBfsFlood,
  kTagTreeUp,
  kTagTreeDown,
  kTagReduceR0,
  kTagReduceCounts,
  kTagReduceHelp,
  kTagReduceEndpoint,
  kTagReduceUniq,
  kTagReduceUniqAns,
  kTagReducePropose,
  kTagReduceQuery,
  kTagReduceP4,
  kTagReduceQ5,
  kTagReduceCheckD2,
  kTagReduceCheckAns,
  kTagReduceR6,
  kTagReduceR6F,
  kTagReduceR6FF,
  kTagReduceP7,
  kTagLearnLive,
  kTagLearnLiveList,
  kTagLearnCounts,
  kTagLearnReg,
  kTagLearnHReg,
  kTagLearnZReg,
  kTagLearnZReg2,
  kTagLearnWalk,
  kTagLearnCFwd,
  kTagLearnCFwd2,
  kTagLearnRet,
  kTagLearnStrip,
  kTagLearnStripAns,
  kTagLearnSample,
  kTagFinishSlot0,
  kTagHashAnnounce,
  kTagHashForward,
  kTagMultiBatch,
  kTagMultiAnswer,
  kTagSplitMark,
  kTagSplitValue,
  kTagSplitForward,
  kTagParallelReduce,
  kTagShatterTry,
  kTagShatterAnswer,
  kTagShatterNotify,
  kTagSteinerReport,
  kTagSteinerSelect,
  kTagClusterFlood,
  kTagClusterUp,
  kTagClusterDown,
  kTagClusterGather,
  kTagClusterAssign,
  kTagClusterRefine,
  kTagClusterRefineBack,
  kTagInformedFlood,
  kTagAdversary,
};

// 2 ticks: nodes announce their ids; tables gain neighbor ids.
void run_id_announce(Engine& engine, ProtocolState& st);
// 1 tick: nodes announce (color, component, ext component, local id).
void run_status_announce(Engine& engine, ProtocolState& st, const std::string& phase);

// Distributed aggregate over one component's spanning tree: 4 ticks up,
// 4 ticks down. Values indexed by node; only members of the component
// contribute. Returns per-node results (nodes outside the tree keep 0 /
// identity).
std::vector<std::int64_t> run_tree_aggregate(Engine& engine, ProtocolState& st, int comp,
                                             AggregateOp op,
                                             const std::vector<std::int64_t>& value,
                                             const std::string& phase);

}  // namespace d2sim

#endif  // D2SIM_PROTOCOL_HPP
