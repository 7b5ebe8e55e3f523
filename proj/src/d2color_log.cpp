#include "d2sim/d2color_log.hpp"

#include <algorithm>
#include <stdexcept>

#include "d2sim/acd_build.hpp"

namespace d2sim {

namespace {

// Iterated 4-tick try windows. Subclasses pick the proposal at each window
// start; announcements of window k ride the slot-0 broadcast of window k+1
// and a final flush tick.
class TryWindowProgram : public PhaseProgram {
 public:
  TryWindowProgram(ProtocolState& st, Engine& engine, int iterations)
      : PhaseProgram(st, engine), iterations_(iterations) {
    slots_.init(st);
  }

 protected:
  // Return the color to try this window, or -1 to stay quiet.
  virtual int pick_color(NodeCtx& ctx, int v) = 0;
  virtual void window_done(int v, int adopted) { (void)v; (void)adopted; }
  // Extra fields appended after the slot-0 prefix (mirrored by on_extra).
  virtual void add_extra_slot0(int v, int port, Message& msg) { (void)v; (void)port; (void)msg; }
  virtual void on_extra_slot0(int v, int port, std::span<const Field> fields, int at) {
    (void)v; (void)port; (void)fields; (void)at;
  }
  virtual bool quiet(int v) { (void)v; return false; }

  void node_send(NodeCtx& ctx) override {
    int v = ctx.node();
    int slot = tick() % 4;
    int window = tick() / 4;
    switch (slot) {
      case 0: {
        if (window < iterations_ && st.live(v) && !quiet(v)) {
          int c = pick_color(ctx, v);
          if (c >= 0) slots_.start(v, c);
        }
        bool content = slots_.trying(v) || slots_.pending_announce(v) != -1;
        for (int port = 0; port < ctx.degree(); ++port) {
          Message msg(kTagTrySlot0);
          slots_.add_slot0_fields(st, v, msg);
          add_extra_slot0(v, port, msg);
          if (content || msg.field_count() > 2) ctx.emit(port, std::move(msg));
        }
        slots_.clear_announcements(v);
        break;
      }
      case 1: {
        for (const auto& [port, color] : slots_.asks(v)) {
          Message msg(kTagTrySlot1);
          msg.add("conflict", slots_.answer_validation(st, v, port, color) ? 1 : 0, 1);
          ctx.emit(port, std::move(msg));
        }
        break;
      }
      case 2: {
        if (slots_.contesting(v)) {
          for (int port = 0; port < ctx.degree(); ++port) {
            Message msg(kTagTrySlot2);
            slots_.add_slot2_fields(st, v, msg);
            ctx.emit(port, std::move(msg));
          }
        }
        break;
      }
      case 3: {
        for (const auto& [port, color] : slots_.heard_contests(v)) {
          Message msg(kTagTrySlot3);
          msg.add("conflict", slots_.answer_contest(st, v, port, color) ? 1 : 0, 1);
          ctx.emit(port, std::move(msg));
        }
        break;
      }
    }
  }

  void node_receive(NodeCtx& ctx, std::span<const Inbound> inbox) override {
    int v = ctx.node();
    int slot = tick() % 4;
    for (const auto& in : inbox) {
      switch (in.msg.tag()) {
        case kTagTrySlot0: {
          int at = slots_.on_slot0(st, v, in.port, in.msg.fields(), 0);
          on_extra_slot0(v, in.port, in.msg.fields(), at);
          break;
        }
        case kTagTrySlot1:
          slots_.on_validation_answer(v, in.msg.value(0) != 0);
          break;
        case kTagTrySlot2:
          slots_.on_slot2(v, in.port, static_cast<int>(in.msg.value(0)));
          break;
        case kTagTrySlot3:
          slots_.on_contest_answer(v, in.msg.value(0) != 0);
          break;
        default:
          break;
      }
    }
    if (slot == 3) {
      int adopted = slots_.settle(st, ctx, v);
      window_done(v, adopted);
    }
  }

  void tick_end() override {
    // one flush tick after the last window lands its announcements
    if (tick() >= iterations_ * 4) finish_phase();
  }

  TrySlots slots_;
  int iterations_;
};

class SingleTryProgram : public TryWindowProgram {
 public:
  SingleTryProgram(ProtocolState& st, Engine& engine, const std::vector<int>& proposals)
      : TryWindowProgram(st, engine, 1), proposals_(proposals) {
    adopted_.assign(st.g->node_count(), -1);
  }
  std::vector<int> take_adopted() { return std::move(adopted_); }

 protected:
  int pick_color(NodeCtx&, int v) override { return proposals_[v]; }
  void window_done(int v, int adopted) override { adopted_[v] = adopted; }

 private:
  const std::vector<int>& proposals_;
  std::vector<int> adopted_;
};

class OneShotProgram : public TryWindowProgram {
 public:
  using TryWindowProgram::TryWindowProgram;

 protected:
  int pick_color(NodeCtx& ctx, int v) override {
    (void)v;
    return static_cast<int>(ctx.rng().next_below(st.palette));
  }
};

// Flood-and-finish setup: colored nodes push their colors two hops so every
// node can subtract its d2-ball from the full palette.
class SmallFloodProgram : public PhaseProgram {
 public:
  SmallFloodProgram(ProtocolState& st, Engine& engine) : PhaseProgram(st, engine) {
    queues_.init(*st.g);
    palette_used_.assign(st.g->node_count(), std::vector<char>(st.palette, 0));
  }

 protected:
  void node_send(NodeCtx& ctx) override {
    int v = ctx.node();
    if (tick() == 0) {
      if (st.color[v] == kLive) return;
      for (int port = 0; port < ctx.degree(); ++port) {
        Message msg(kTagFloodList);
        msg.add("color", static_cast<std::uint64_t>(st.color[v]), st.widths.color);
        ctx.emit(port, std::move(msg));
      }
      return;
    }
    for (int port = 0; port < ctx.degree(); ++port) {
      if (!queues_.port_pending(v, port)) continue;
      Message msg(kTagFloodList);
      queues_.pack(v, port, msg, payload_budget());
      ctx.emit(port, std::move(msg));
    }
  }

  void node_receive(NodeCtx& ctx, std::span<const Inbound> inbox) override {
    int v = ctx.node();
    for (const auto& in : inbox) {
      for (const Field& f : in.msg.fields()) {
        int c = static_cast<int>(f.value);
        palette_used_[v][c] = 1;
        if (tick() == 0) {
          // first hop: relay to every other port
          for (int port = 0; port < ctx.degree(); ++port) {
            if (port != in.port) queues_.push(v, port, {Field{"color", f.value,
                                                              static_cast<std::uint8_t>(st.widths.color)}});
          }
        }
      }
    }
  }

  void tick_end() override {
    if (tick() >= 1 && idle_round() && queues_.all_empty()) {
      for (int v = 0; v < st.g->node_count(); ++v) {
        if (!st.live(v)) continue;
        st.learned_palette[v].clear();
        for (int c = 0; c < st.palette; ++c) {
          if (!palette_used_[v][c]) st.learned_palette[v].push_back(c);
        }
      }
      finish_phase();
    }
  }

 private:
  PortQueues queues_;
  std::vector<std::vector<char>> palette_used_;
};

// Informed finishing with pipelined notifications and busy back-pressure.
class FinishProgram : public PhaseProgram {
 public:
  FinishProgram(ProtocolState& st, Engine& engine) : PhaseProgram(st, engine) {
    slots_.init(st);
    forward_.init(*st.g);
    int n = st.g->node_count();
    neighbor_busy_.assign(n, std::vector<char>{});
    for (int v = 0; v < n; ++v) neighbor_busy_[v].assign(st.g->degree(v), 0);
    self_busy_.assign(n, 0);
  }

 protected:
  void node_send(NodeCtx& ctx) override {
    int v = ctx.node();
    int slot = tick() % 4;
    switch (slot) {
      case 0: {
        bool busy = forward_.pending(v);
        bool neighbor_wait = self_busy_[v] || busy;
        for (char b : neighbor_busy_[v]) neighbor_wait |= (b != 0);
        if (st.live(v) && !neighbor_wait && !st.learned_palette[v].empty() &&
            ctx.rng().coin()) {
          int idx = static_cast<int>(ctx.rng().next_below(st.learned_palette[v].size()));
          slots_.start(v, st.learned_palette[v][idx]);
        }
        for (int port = 0; port < ctx.degree(); ++port) {
          Message msg(kTagFinishSlot0);
          slots_.add_slot0_fields(st, v, msg);
          msg.add("busy", busy ? 1 : 0, 1);
          forward_.pack(v, port, msg, payload_budget());
          ctx.emit(port, std::move(msg));
        }
        self_busy_[v] = forward_.pending(v);
        slots_.clear_announcements(v);
        break;
      }
      case 1: {
        for (const auto& [port, color] : slots_.asks(v)) {
          Message msg(kTagTrySlot1);
          msg.add("conflict", slots_.answer_validation(st, v, port, color) ? 1 : 0, 1);
          ctx.emit(port, std::move(msg));
        }
        break;
      }
      case 2: {
        if (slots_.contesting(v)) {
          for (int port = 0; port < ctx.degree(); ++port) {
            Message msg(kTagTrySlot2);
            slots_.add_slot2_fields(st, v, msg);
            ctx.emit(port, std::move(msg));
          }
        }
        break;
      }
      case 3: {
        for (const auto& [port, color] : slots_.heard_contests(v)) {
          Message msg(kTagTrySlot3);
          msg.add("conflict", slots_.answer_contest(st, v, port, color) ? 1 : 0, 1);
          ctx.emit(port, std::move(msg));
        }
        break;
      }
    }
  }

  void node_receive(NodeCtx& ctx, std::span<const Inbound> inbox) override {
    int v = ctx.node();
    for (const auto& in : inbox) {
      switch (in.msg.tag()) {
        case kTagFinishSlot0: {
          auto fields = in.msg.fields();
          int at = slots_.on_slot0(st, v, in.port, fields, 0);
          if (fields[at - 1].role == std::string("try_color") || true) {
            // at now points to the busy flag
          }
          // the fixed prefix ends with the busy flag
          bool announced = fields[0].value != 0;
          if (announced) {
            int c = static_cast<int>(fields[1].value);
            strip(v, c);
            // forward the fresh adoption to every other port
            for (int port = 0; port < ctx.degree(); ++port) {
              if (port != in.port) {
                forward_.push(v, port, {Field{"fwd_color", static_cast<std::uint64_t>(c),
                                              static_cast<std::uint8_t>(st.widths.color)}});
              }
            }
          }
          neighbor_busy_[v][in.port] = fields[at].value != 0;
          for (int i = at + 1; i < static_cast<int>(fields.size()); ++i) {
            strip(v, static_cast<int>(fields[i].value));  // second-hop notification
          }
          break;
        }
        case kTagTrySlot1: {
          bool conflict = in.msg.value(0) != 0;
          if (conflict) {
            // a validation refusal proves the color is held nearby
            strip(v, slots_.tried_color(v));
          }
          slots_.on_validation_answer(v, conflict);
          break;
        }
        case kTagTrySlot2:
          slots_.on_slot2(v, in.port, static_cast<int>(in.msg.value(0)));
          break;
        case kTagTrySlot3:
          slots_.on_contest_answer(v, in.msg.value(0) != 0);
          break;
        default:
          break;
      }
    }
    if (tick() % 4 == 3) {
      int adopted = slots_.settle(st, ctx, v);
      if (adopted != -1) st.learned_palette[v].clear();
    }
  }

  void tick_end() override {
    if (tick() % 4 == 3) {
      if (st.live_count() == 0) drain_ = true;
    }
    if (drain_ && tick() % 4 == 0 && idle_round() && !pending_announcements()) {
      finish_phase();
    }
  }

 private:
  bool pending_announcements() const {
    for (int v = 0; v < st.g->node_count(); ++v) {
      if (slots_.pending_announce(v) != -1 || forward_.pending(v)) return true;
    }
    return false;
  }

  void strip(int v, int c) {
    auto& pal = st.learned_palette[v];
    pal.erase(std::remove(pal.begin(), pal.end(), c), pal.end());
  }

  TrySlots slots_;
  PortQueues forward_;
  std::vector<std::vector<char>> neighbor_busy_;
  std::vector<char> self_busy_;
  bool drain_ = false;
};

}  // namespace

std::vector<int> run_try_color(Engine& engine, ProtocolState& st,
                               const std::vector<int>& proposals, const std::string& phase) {
  SingleTryProgram program(st, engine, proposals);
  engine.run_phase(program, phase);
  return program.take_adopted();
}

void run_oneshot(Engine& engine, ProtocolState& st, int iterations, const std::string& phase) {
  OneShotProgram program(st, engine, iterations);
  engine.run_phase(program, phase);
}

void run_finish(Engine& engine, ProtocolState& st, const std::string& phase) {
  FinishProgram program(st, engine);
  engine.run_phase(program, phase);
}

void run_small_flood(Engine& engine, ProtocolState& st, const std::string& phase) {
  SmallFloodProgram program(st, engine);
  engine.run_phase(program, phase);
}

ColoredRun d2_color(const Graph& g, const AlgoConfig& cfg, const EngineConfig& engine_cfg) {
  Engine engine(g, engine_cfg);
  ProtocolState st;
  st.init(g, cfg);
  run_id_announce(engine, st);
  std::int64_t d2 = std::int64_t{1} * g.max_degree() * g.max_degree();
  bool big = d2 >= std::int64_t{1} * cfg.acd.c2 * st.log2n;
  ColoredRun run;
  if (!big) {
    run_status_announce(engine, st, "SETUP");
    run_small_flood(engine, st, "SETUP");
    run_finish(engine, st, "FINISH");
  } else {
    run.acd = build_acd(engine, st, "ACD");
    run.used_acd = true;
    run_status_announce(engine, st, "ACD");
    run_oneshot(engine, st, cfg.oneshot_mult * st.log2n, "ONESHOT");
    if (st.live_count() > 0 || !run.acd.components.empty()) {
      int iterations = cfg.reduce_mult * st.log2n;
      for (int i = 0; i < iterations; ++i) {
        if (st.live_count() == 0) break;
        run_reduce(engine, st, 1, ReduceOptions{}, "REDUCE(" + std::to_string(i) + ")");
      }
    }
    if (st.live_count() > 0) {
      run_learn_palette(engine, st, "LEARN");
      run_finish(engine, st, "FINISH");
    }
  }
  run.coloring = st.color;
  run.transcript = std::move(engine.transcript());
  return run;
}

}  // namespace d2sim
