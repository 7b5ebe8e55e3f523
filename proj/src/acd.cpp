#include "d2sim/acd.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace d2sim {

std::int64_t AcdParams::default_c10(const Rational& epsilon) {
  double eps = epsilon.to_double();
  double root2 = std::sqrt(2.0);
  double a = 10.0 / ((2.0 - root2) * (2.0 - root2) * eps * eps * (1.0 - eps));
  double b = 20.0 / ((1.0 - root2 * eps) * (2.0 - root2) * (2.0 - root2) * eps * eps);
  return static_cast<std::int64_t>(std::ceil(std::max(a, b)));
}

void AcdParams::check() const {
  if (epsilon <= Rational(0) || epsilon > Rational(1, 60)) {
    throw std::invalid_argument("acd: epsilon must lie in (0, 1/60]");
  }
  if (c10 < Rational(0)) throw std::invalid_argument("acd: c10 must be nonnegative");
  if (c2 < 1) throw std::invalid_argument("acd: c2 must be positive");
}

bool similarity_threshold_met(std::int64_t count, const Rational& level,
                              const Rational& target) {
  Rational gap = target - Rational(count);
  if (gap <= Rational(0)) return true;
  return gap * gap <= Rational(2) * level * level * target * target;
}

void AcdResult::rebuild_index() {
  component_of.assign(node_count, -1);
  extended_of.assign(node_count, -1);
  for (int i = 0; i < static_cast<int>(components.size()); ++i) {
    for (int v : components[i].members) component_of[v] = i;
    for (int v : components[i].extended) extended_of[v] = i;
  }
}

void AcdResult::write(std::ostream& out) const {
  out << "acd " << node_count << " components " << components.size() << "\n";
  out << "vstar " << v_star.size();
  for (int v : v_star) out << " " << v;
  out << "\n";
  for (const auto& c : components) {
    out << "component " << c.id << " leader " << c.leader << "\n";
    out << "members " << c.members.size();
    for (int v : c.members) out << " " << v;
    out << "\n";
    out << "extended " << c.extended.size();
    for (int v : c.extended) out << " " << v;
    out << "\n";
    out << "tree " << c.tree_parent.size();
    for (auto [node, parent] : c.tree_parent) out << " " << node << ":" << parent;
    out << "\n";
  }
}

AcdResult AcdResult::read(std::istream& in) {
  AcdResult acd;
  std::string word;
  std::size_t k = 0;
  if (!(in >> word >> acd.node_count) || word != "acd")
    throw std::invalid_argument("acd file: bad header");
  if (!(in >> word >> k) || word != "components")
    throw std::invalid_argument("acd file: bad header");
  std::size_t count = 0;
  if (!(in >> word >> count) || word != "vstar")
    throw std::invalid_argument("acd file: missing vstar");
  acd.v_star.resize(count);
  for (auto& v : acd.v_star) in >> v;
  acd.components.resize(k);
  for (auto& c : acd.components) {
    if (!(in >> word >> c.id) || word != "component")
      throw std::invalid_argument("acd file: missing component");
    if (!(in >> word >> c.leader) || word != "leader")
      throw std::invalid_argument("acd file: missing leader");
    if (!(in >> word >> count) || word != "members")
      throw std::invalid_argument("acd file: missing members");
    c.members.resize(count);
    for (auto& v : c.members) in >> v;
    if (!(in >> word >> count) || word != "extended")
      throw std::invalid_argument("acd file: missing extended");
    c.extended.resize(count);
    for (auto& v : c.extended) in >> v;
    if (!(in >> word >> count) || word != "tree")
      throw std::invalid_argument("acd file: missing tree");
    for (std::size_t i = 0; i < count; ++i) {
      std::string pair;
      in >> pair;
      auto colon = pair.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("acd file: bad tree entry");
      c.tree_parent[std::stoi(pair.substr(0, colon))] = std::stoi(pair.substr(colon + 1));
    }
  }
  if (!in) throw std::invalid_argument("acd file: truncated");
  acd.rebuild_index();
  return acd;
}

bool AcdResult::operator==(const AcdResult& o) const {
  if (node_count != o.node_count || v_star != o.v_star ||
      components.size() != o.components.size())
    return false;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& a = components[i];
    const auto& b = o.components[i];
    if (a.id != b.id || a.leader != b.leader || a.members != b.members ||
        a.extended != b.extended || a.tree_parent != b.tree_parent)
      return false;
  }
  return true;
}

}  // namespace d2sim
