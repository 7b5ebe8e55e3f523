#ifndef D2SIM_GENERATORS_HPP
#define D2SIM_GENERATORS_HPP

#include <cstdint>
#include <string>

#include "d2sim/graph.hpp"

namespace d2sim {
namespace gen {

// All generators are deterministic for a given (spec, seed).

Graph gnp(int n, double p, std::uint64_t seed);
Graph ring(int n);
Graph grid(int rows, int cols);
Graph star(int leaves);
// k cliques of s nodes each plus `bridges` distinct random inter-clique edges.
Graph clique_union(int k, int s, int bridges, std::uint64_t seed);
// Erdos-Renyi polarity graph of PG(2,q): vertices are projective points over
// F_q, edge iff the dot product vanishes and the points are distinct.
// Diameter 2, degree q or q+1, n = q^2+q+1. q must be prime.
Graph polarity(int q);
// Hypercube on 2^m vertices.
Graph hamming(int m);

// Parses "name(arg1,arg2,...)" specs, e.g. "gnp(1024,0.0078125)", "ring(5)",
// "polarity(13)", "cliqueUnion(4,8,6)", "grid(8,16)", "star(16)", "hamming(6)".
Graph from_spec(const std::string& spec, std::uint64_t seed);

}  // namespace gen
}  // namespace d2sim

#endif  // D2SIM_GENERATORS_HPP
