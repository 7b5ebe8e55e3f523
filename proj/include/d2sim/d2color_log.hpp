#ifndef D2SIM_D2COLOR_LOG_HPP
#define D2SIM_D2COLOR_LOG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "d2sim/acd.hpp"
#include "d2sim/engine.hpp"
#include "d2sim/protocol.hpp"

namespace d2sim {

struct ColoredRun {
  Coloring coloring;
  Transcript transcript;
  AcdResult acd;
  bool used_acd = false;
};

// One synchronized validate+contest window for the given per-node proposals
// (-1 = stay quiet), plus the announcement flush. Five ticks.
std::vector<int> run_try_color(Engine& engine, ProtocolState& st,
                               const std::vector<int>& proposals, const std::string& phase);

// Uninformed trials: every live node draws a uniform color from the full
// palette and tries it, for the given number of iterations.
void run_oneshot(Engine& engine, ProtocolState& st, int iterations, const std::string& phase);

struct ReduceOptions {
  bool local_ids = false;  // compress node references to component-local ids
  int instances = 1;       // parallel instances sharing each message
};

// Computes the largest instance count whose combined payload fits the
// budget, capped by the configuration.
int max_reduce_instances(const ProtocolState& st, const BandwidthBudget& budget,
                         bool local_ids);

// The 24-round helper-mediated proposal protocol; `iterations` full cycles
// plus a two-tick tail that lands the pipelined final window.
void run_reduce(Engine& engine, ProtocolState& st, int iterations, const ReduceOptions& options,
                const std::string& phase);

// Cooperative palette learning through block helpers and random 2-path
// walks; fills st.learned_palette for live nodes. With cfg.ideal_palette
// the routed protocol is skipped and exact palettes are loaded.
void run_learn_palette(Engine& engine, ProtocolState& st, const std::string& phase);

// Informed finishing: coin-gated informed trials with pipelined adoption
// notifications and busy back-pressure. Requires learned palettes.
void run_finish(Engine& engine, ProtocolState& st, const std::string& phase);

// Small-degree setup: floods colored-neighbor colors two hops and loads the
// full palette into every live node.
void run_small_flood(Engine& engine, ProtocolState& st, const std::string& phase);

// Assigns component-local ids in [2Δ²] within each extended component via
// tree convergecast of member counts and range splitting.
void run_local_ids(Engine& engine, ProtocolState& st, const std::string& phase);

// Algorithm selection: the full O(log n) pipeline when Δ² is large enough,
// otherwise flood-and-finish.
ColoredRun d2_color(const Graph& g, const AlgoConfig& cfg, const EngineConfig& engine_cfg);

}  // namespace d2sim

#endif  // D2SIM_D2COLOR_LOG_HPP
