#include "d2sim/engine.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace d2sim {

int Transcript::max_edge_bits() const {
  int best = 0;
  for (const auto& r : rounds) best = std::max(best, r.max_edge_bits);
  return best;
}

int Transcript::rounds_in_phase(const std::string& prefix) const {
  int count = 0;
  for (const auto& r : rounds) {
    if (r.phase.rfind(prefix, 0) == 0) ++count;
  }
  return count;
}

void Transcript::write(std::ostream& out) const {
  for (const auto& r : rounds) {
    out << "round " << r.round << " phase " << r.phase << " maxbits " << r.max_edge_bits
        << " totalbits " << r.total_bits << " msgs " << r.messages << " adopt";
    for (int i = r.adoption_begin; i < r.adoption_end; ++i) {
      out << " " << adoptions[i].node << ":" << adoptions[i].color;
    }
    out << "\n";
  }
  for (const auto& v : violations) {
    out << "violation round " << v.round << " edge " << v.from << "-" << v.to << " bits "
        << v.bits << " tag " << v.tag << "\n";
  }
}

std::string Transcript::to_text() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

Engine::Engine(const Graph& g, const EngineConfig& config)
    : graph_(&g),
      config_(config),
      budget_(BandwidthBudget::for_graph(g.node_count(), config.budget_multiplier)) {
  int n = g.node_count();
  inbox_.resize(n);
  next_inbox_.resize(n);
  edge_slot_offset_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) edge_slot_offset_[v + 1] = edge_slot_offset_[v] + g.degree(v);
  edge_sent_round_.assign(edge_slot_offset_[n], -1);
}

void Engine::deliver(int from, int port, Message msg) {
  if (!in_send_phase_) {
    throw std::logic_error("messages may only be emitted from the send handler");
  }
  std::int64_t slot = edge_slot_offset_[from] + port;
  if (edge_sent_round_[slot] == round_) {
    throw std::logic_error("node program sent two messages over one edge in one round");
  }
  edge_sent_round_[slot] = round_;
  int to = graph_->neighbors(from)[port];
  int bits = msg.total_bits();
  if (check_budget(msg, budget_) == BudgetVerdict::kViolation) {
    BudgetViolationRecord record{round_, from, to, bits, msg.tag()};
    transcript_.violations.push_back(record);
    throw BudgetViolationError(record);
  }
  round_max_bits_ = std::max(round_max_bits_, bits);
  round_total_bits_ += bits;
  ++round_messages_;
  next_inbox_[to].push_back(Inbound{graph_->twin_port(from, port), std::move(msg)});
}

RunStatus Engine::run_phase(NodeProgram& program, const std::string& phase,
                            std::int64_t max_rounds) {
  int n = graph_->node_count();
  std::int64_t cap = config_.effective_round_cap(n);
  std::int64_t phase_rounds = 0;
  transcript_.phase_markers.emplace_back(round_, phase);
  std::vector<RandomStream> streams;
  streams.reserve(n);
  while (!program.finished()) {
    if (round_ >= cap) throw RoundCapExceededError(cap);
    if (max_rounds >= 0 && phase_rounds >= max_rounds) break;
    round_max_bits_ = 0;
    round_total_bits_ = 0;
    round_messages_ = 0;
    int adoption_begin = static_cast<int>(transcript_.adoptions.size());

    streams.clear();
    for (int v = 0; v < n; ++v) {
      streams.emplace_back(config_.seed, static_cast<std::uint64_t>(v),
                           static_cast<std::uint64_t>(round_));
    }
    in_send_phase_ = true;
    for (int v = 0; v < n; ++v) {
      NodeCtx ctx(*this, v, streams[v]);
      program.send(ctx);
    }
    in_send_phase_ = false;
    // Exchange: this round's messages become visible only now.
    for (int v = 0; v < n; ++v) {
      inbox_[v].clear();
      std::swap(inbox_[v], next_inbox_[v]);
    }
    for (int v = 0; v < n; ++v) {
      NodeCtx ctx(*this, v, streams[v]);
      program.receive(ctx, {inbox_[v].data(), inbox_[v].size()});
    }

    transcript_.rounds.push_back(RoundRecord{round_, round_max_bits_, round_total_bits_,
                                             static_cast<int>(round_messages_), phase,
                                             adoption_begin,
                                             static_cast<int>(transcript_.adoptions.size())});
    last_round_messages_ = round_messages_;
    ++round_;
    ++phase_rounds;
  }
  return RunStatus::kFinished;
}

int NodeCtx::round() const { return engine_->round(); }
int NodeCtx::n() const { return engine_->graph().node_count(); }
int NodeCtx::max_degree() const { return engine_->graph().max_degree(); }
int NodeCtx::degree() const { return engine_->graph().degree(node_); }

void NodeCtx::emit(int port, Message msg) {
  engine_->deliver(node_, port, std::move(msg));
}

void NodeCtx::note_adoption(int color) {
  engine_->transcript_.adoptions.push_back(AdoptionEvent{engine_->round_, node_, color});
}

Transcript simulate(const Graph& g, NodeProgram& program, const EngineConfig& config,
                    const std::string& phase) {
  Engine engine(g, config);
  engine.run_phase(program, phase);
  return std::move(engine.transcript());
}

}  // namespace d2sim
