#include "d2sim/protocol.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace d2sim {

void AlgoConfig::check(int n) const {
  acd.check();
  if (n < 1) throw std::invalid_argument("config: empty graph");
  if (oneshot_mult < 1 || reduce_mult < 0 || shatter_mult < 1 || sublog_trial_mult < 1 ||
      multitrial_q_mult < 1 || degree_reduce_mult < 0) {
    throw std::invalid_argument("config: iteration multipliers must be positive");
  }
  if (eta < 4) throw std::invalid_argument("config: eta must be at least 4");
  if (k_parallel < 1) throw std::invalid_argument("config: k_parallel must be positive");
  if (cluster_size_bound < 1) throw std::invalid_argument("config: cluster bound");
  if (d_max < 0 || d_max > 4) throw std::invalid_argument("config: d_max in [0,4]");
}

void ProtocolState::init(const Graph& graph, const AlgoConfig& config) {
  g = &graph;
  cfg = config;
  int n = graph.node_count();
  cfg.check(n);
  log2n = std::max(1, BandwidthBudget::ceil_log2(n));
  widths = Widths::from_graph(n, graph.max_degree(), cfg.eta);
  palette = graph.d2_palette();
  color.assign(n, kLive);
  component.assign(n, -1);
  ext_component.assign(n, -1);
  local_id.assign(n, -1);
  hashed_id.assign(n, 0);
  nbr.assign(n, {});
  trees.assign(n, {});
  learned_palette.assign(n, {});
  for (int v = 0; v < n; ++v) nbr[v].resize(graph.degree(v));
}

int ProtocolState::live_count() const {
  int count = 0;
  for (int c : color) count += (c == kLive);
  return count;
}

const TreeEntry* ProtocolState::tree_entry(int v, int comp) const {
  for (const auto& t : trees[v]) {
    if (t.comp == comp) return &t;
  }
  return nullptr;
}

void ProtocolState::install_acd(const AcdResult& acd) {
  int n = g->node_count();
  component.assign(n, -1);
  ext_component.assign(n, -1);
  for (auto& t : trees) t.clear();
  for (const auto& comp : acd.components) {
    for (int v : comp.members) component[v] = comp.id;
    for (int v : comp.extended) ext_component[v] = comp.id;
    // tree entries from the recorded parent map
    std::map<int, int> depth;
    std::queue<int> frontier;
    depth[comp.leader] = 0;
    frontier.push(comp.leader);
    std::multimap<int, int> children;  // parent -> child
    for (auto [node, parent] : comp.tree_parent) {
      if (parent >= 0) children.emplace(parent, node);
    }
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      auto range = children.equal_range(v);
      for (auto it = range.first; it != range.second; ++it) {
        depth[it->second] = depth[v] + 1;
        frontier.push(it->second);
      }
    }
    for (auto [node, parent] : comp.tree_parent) {
      int parent_port = -1;
      if (parent >= 0) {
        auto nbrs = g->neighbors(node);
        auto it = std::lower_bound(nbrs.begin(), nbrs.end(), parent);
        if (it == nbrs.end() || *it != parent)
          throw std::invalid_argument("install_acd: tree edge not in graph");
        parent_port = static_cast<int>(it - nbrs.begin());
      }
      trees[node].push_back(TreeEntry{comp.id, parent_port, depth.count(node) ? depth[node] : 0});
    }
  }
}

void ProtocolState::refresh_neighbor_tables() {
  int n = g->node_count();
  for (int v = 0; v < n; ++v) {
    auto nbrs = g->neighbors(v);
    for (int k = 0; k < static_cast<int>(nbrs.size()); ++k) {
      int u = nbrs[k];
      nbr[v][k].id = u;
      nbr[v][k].color = color[u];
      nbr[v][k].component = component[u];
      nbr[v][k].ext_component = ext_component[u];
      nbr[v][k].local_id = local_id[u];
    }
  }
}

void PortQueues::init(const Graph& g) {
  int n = g.node_count();
  queues_.assign(n, {});
  heads_.assign(n, {});
  for (int v = 0; v < n; ++v) {
    queues_[v].resize(g.degree(v));
    heads_[v].assign(g.degree(v), 0);
  }
  pending_total_ = 0;
}

void PortQueues::push(int v, int port, Atom atom) {
  queues_[v][port].push_back(std::move(atom));
  ++pending_total_;
}

bool PortQueues::pending(int v) const {
  for (std::size_t port = 0; port < queues_[v].size(); ++port) {
    if (heads_[v][port] < queues_[v][port].size()) return true;
  }
  return false;
}

int PortQueues::pack(int v, int port, Message& msg, int budget_bits) {
  auto& queue = queues_[v][port];
  auto& head = heads_[v][port];
  int packed = 0;
  int used = msg.total_bits();
  while (head < queue.size()) {
    const Atom& atom = queue[head];
    int bits = 0;
    for (const Field& f : atom) bits += f.width;
    if (used + bits > budget_bits) break;
    for (const Field& f : atom) msg.add(f.role, f.value, f.width);
    used += bits;
    ++head;
    ++packed;
    --pending_total_;
  }
  if (head == queue.size()) {
    queue.clear();
    head = 0;
  }
  return packed;
}

void PhaseProgram::send(NodeCtx& ctx) {
  if (ctx.node() == 0) {
    ++tick_;
    tick_begin();
  }
  if (done_) return;
  node_send(ctx);
}

void PhaseProgram::receive(NodeCtx& ctx, std::span<const Inbound> inbox) {
  if (done_) return;
  if (!inbox.empty()) round_activity_ = true;
  node_receive(ctx, inbox);
  if (ctx.node() == st.g->node_count() - 1) {
    last_round_activity_ = round_activity_;
    round_activity_ = false;
    tick_end();
  }
}

int PhaseProgram::payload_budget() const {
  return engine.budget().bits_per_edge_per_round;
}

void TrySlots::init(ProtocolState& st) {
  int n = st.g->node_count();
  trying_.assign(n, -1);
  validate_fail_.assign(n, 0);
  contest_fail_.assign(n, 0);
  heard_contests_.assign(n, {});
  asks_.assign(n, {});
  pending_announce_.assign(n, -1);
}

void TrySlots::start(int v, int color) {
  trying_[v] = color;
  validate_fail_[v] = 0;
  contest_fail_[v] = 0;
}

void TrySlots::add_slot0_fields(ProtocolState& st, int v, Message& msg) const {
  if (pending_announce_[v] != -1) {
    msg.add("ann", 1, 1);
    msg.add("ann_color", static_cast<std::uint64_t>(pending_announce_[v]), st.widths.color);
  } else {
    msg.add("ann", 0, 1);
  }
  if (trying_[v] != -1) {
    msg.add("try", 1, 1);
    msg.add("try_color", static_cast<std::uint64_t>(trying_[v]), st.widths.color);
  } else {
    msg.add("try", 0, 1);
  }
}

int TrySlots::on_slot0(ProtocolState& st, int v, int port, std::span<const Field> fields,
                       int at) {
  if (fields[at].value) {
    st.nbr[v][port].color = static_cast<int>(fields[at + 1].value);
    at += 2;
  } else {
    at += 1;
  }
  if (fields[at].value) {
    asks_[v].emplace_back(port, static_cast<int>(fields[at + 1].value));
    at += 2;
  } else {
    at += 1;
  }
  return at;
}

void TrySlots::clear_announcements(int v) { pending_announce_[v] = -1; }

bool TrySlots::answer_validation(ProtocolState& st, int v, int port, int color) const {
  (void)port;
  if (st.color[v] == color) return true;
  for (const auto& entry : st.nbr[v]) {
    if (entry.color == color) return true;
  }
  return false;
}

void TrySlots::on_validation_answer(int v, bool conflict) {
  if (conflict) validate_fail_[v] = 1;
}

void TrySlots::add_slot2_fields(ProtocolState& st, int v, Message& msg) const {
  msg.add("contest_color", static_cast<std::uint64_t>(trying_[v]), st.widths.color);
}

void TrySlots::on_slot2(int v, int port, int color) {
  heard_contests_[v].emplace_back(port, color);
}

bool TrySlots::answer_contest(ProtocolState& st, int v, int port, int color) const {
  (void)st;
  if (contesting(v) && trying_[v] == color) return true;
  for (const auto& [other_port, other_color] : heard_contests_[v]) {
    if (other_port != port && other_color == color) return true;
  }
  return false;
}

void TrySlots::on_contest_answer(int v, bool conflict) {
  if (conflict) contest_fail_[v] = 1;
}

int TrySlots::settle(ProtocolState& st, NodeCtx& ctx, int v) {
  int adopted = -1;
  if (trying_[v] != -1 && !validate_fail_[v] && !contest_fail_[v]) {
    adopted = trying_[v];
    st.color[v] = adopted;
    ctx.note_adoption(adopted);
    pending_announce_[v] = adopted;
  }
  trying_[v] = -1;
  validate_fail_[v] = 0;
  contest_fail_[v] = 0;
  heard_contests_[v].clear();
  asks_[v].clear();
  return adopted;
}

namespace {

class IdAnnounceProgram : public PhaseProgram {
 public:
  using PhaseProgram::PhaseProgram;

 protected:
  void node_send(NodeCtx& ctx) override {
    if (tick() != 0) return;
    for (int port = 0; port < ctx.degree(); ++port) {
      Message msg(kTagIdAnnounce);
      msg.add("id", static_cast<std::uint64_t>(ctx.node()), st.widths.id);
      ctx.emit(port, std::move(msg));
    }
  }
  void node_receive(NodeCtx& ctx, std::span<const Inbound> inbox) override {
    for (const auto& in : inbox) {
      st.nbr[ctx.node()][in.port].id = static_cast<int>(in.msg.value(0));
    }
  }
  void tick_end() override {
    if (tick() >= 1) finish_phase();
  }
};

class StatusAnnounceProgram : public PhaseProgram {
 public:
  using PhaseProgram::PhaseProgram;

 protected:
  void node_send(NodeCtx& ctx) override {
    if (tick() != 0) return;
    int v = ctx.node();
    for (int port = 0; port < ctx.degree(); ++port) {
      Message msg(kTagStatusAnnounce);
      bool colored = st.color[v] != kLive;
      msg.add("colored", colored ? 1 : 0, 1);
      if (colored) msg.add("color", static_cast<std::uint64_t>(st.color[v]), st.widths.color);
      bool has_comp = st.component[v] != -1;
      msg.add("has_comp", has_comp ? 1 : 0, 1);
      if (has_comp)
        msg.add("comp", static_cast<std::uint64_t>(st.component[v]), st.widths.id);
      bool has_ext = st.ext_component[v] != -1;
      msg.add("has_ext", has_ext ? 1 : 0, 1);
      if (has_ext)
        msg.add("ext", static_cast<std::uint64_t>(st.ext_component[v]), st.widths.id);
      bool has_lid = st.local_id[v] != -1;
      msg.add("has_lid", has_lid ? 1 : 0, 1);
      if (has_lid)
        msg.add("lid", static_cast<std::uint64_t>(st.local_id[v]), st.widths.local_id);
      ctx.emit(port, std::move(msg));
    }
  }
  void node_receive(NodeCtx& ctx, std::span<const Inbound> inbox) override {
    int v = ctx.node();
    for (const auto& in : inbox) {
      auto fields = in.msg.fields();
      NeighborEntry& entry = st.nbr[v][in.port];
      int at = 0;
      if (fields[at].value) { entry.color = static_cast<int>(fields[at + 1].value); at += 2; }
      else { entry.color = kLive; at += 1; }
      if (fields[at].value) { entry.component = static_cast<int>(fields[at + 1].value); at += 2; }
      else { entry.component = -1; at += 1; }
      if (fields[at].value) { entry.ext_component = static_cast<int>(fields[at + 1].value); at += 2; }
      else { entry.ext_component = -1; at += 1; }
      if (fields[at].value) { entry.local_id = static_cast<int>(fields[at + 1].value); }
      else { entry.local_id = -1; }
    }
  }
  void tick_end() override {
    if (tick() >= 0) finish_phase();
  }
};

class TreeAggregateProgram : public PhaseProgram {
 public:
  TreeAggregateProgram(ProtocolState& st, Engine& engine, int comp, AggregateOp op,
                       const std::vector<std::int64_t>& value, int value_width)
      : PhaseProgram(st, engine), comp_(comp), op_(op), width_(value_width) {
    int n = st.g->node_count();
    acc_.assign(n, identity());
    result_.assign(n, identity());
    for (int v = 0; v < n; ++v) {
      if (st.tree_entry(v, comp) != nullptr) acc_[v] = combine(acc_[v], value[v]);
    }
  }

  std::vector<std::int64_t> take_result() { return std::move(result_); }

 protected:
  std::int64_t identity() const {
    return op_ == AggregateOp::kMin ? std::numeric_limits<std::int64_t>::max() : 0;
  }
  std::int64_t combine(std::int64_t a, std::int64_t b) const {
    return op_ == AggregateOp::kMin ? std::min(a, b) : a + b;
  }

  void node_send(NodeCtx& ctx) override {
    int v = ctx.node();
    const TreeEntry* entry = st.tree_entry(v, comp_);
    if (entry == nullptr) return;
    int t = tick();
    if (t < 4) {
      // upward: depth 4-t sends its subtree partial to the parent
      if (entry->depth == 4 - t && entry->parent_port >= 0) {
        Message msg(kTagTreeUp);
        msg.add("comp", static_cast<std::uint64_t>(comp_), st.widths.id);
        msg.add("value", encode(acc_[v]), width_);
        ctx.emit(entry->parent_port, std::move(msg));
      }
    } else if (t < 8) {
      // downward: depth t-4 broadcasts the final value
      if (entry->depth == t - 4 && (entry->depth > 0 || entry->parent_port == -1)) {
        if (entry->depth == 0) result_[v] = acc_[v];
        for (int port = 0; port < ctx.degree(); ++port) {
          Message msg(kTagTreeDown);
          msg.add("comp", static_cast<std::uint64_t>(comp_), st.widths.id);
          msg.add("value", encode(result_[v]), width_);
          ctx.emit(port, std::move(msg));
        }
      }
    }
  }

  void node_receive(NodeCtx& ctx, std::span<const Inbound> inbox) override {
    int v = ctx.node();
    const TreeEntry* entry = st.tree_entry(v, comp_);
    if (entry == nullptr) return;
    for (const auto& in : inbox) {
      if (in.msg.tag() == kTagTreeUp) {
        acc_[v] = combine(acc_[v], decode(in.msg.value(1)));
      } else if (in.msg.tag() == kTagTreeDown) {
        // accept only from the tree parent
        if (in.port == entry->parent_port) result_[v] = decode(in.msg.value(1));
      }
    }
  }

  void tick_end() override {
    if (tick() >= 7) finish_phase();
  }

 private:
  std::uint64_t encode(std::int64_t x) const {
    if (op_ == AggregateOp::kMin && x == std::numeric_limits<std::int64_t>::max()) {
      return (std::uint64_t{1} << width_) - 1;  // sentinel: no value yet
    }
    return static_cast<std::uint64_t>(x);
  }
  std::int64_t decode(std::uint64_t x) const {
    if (op_ == AggregateOp::kMin && x == (std::uint64_t{1} << width_) - 1) {
      return std::numeric_limits<std::int64_t>::max();
    }
    return static_cast<std::int64_t>(x);
  }

  int comp_;
  AggregateOp op_;
  int width_;
  std::vector<std::int64_t> acc_;
  std::vector<std::int64_t> result_;
};

}  // namespace

void run_id_announce(Engine& engine, ProtocolState& st) {
  IdAnnounceProgram program(st, engine);
  engine.run_phase(program, "IDS");
}

void run_status_announce(Engine& engine, ProtocolState& st, const std::string& phase) {
  StatusAnnounceProgram program(st, engine);
  engine.run_phase(program, phase);
}

std::vector<std::int64_t> run_tree_aggregate(Engine& engine, ProtocolState& st, int comp,
                                             AggregateOp op,
                                             const std::vector<std::int64_t>& value,
                                             const std::string& phase) {
  int width = std::min(48, st.widths.local_id + st.widths.id + 2);
  TreeAggregateProgram program(st, engine, comp, op, value, width);
  engine.run_phase(program, phase);
  return program.take_result();
}

}  // namespace d2sim
