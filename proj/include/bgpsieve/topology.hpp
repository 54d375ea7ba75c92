#pragma once

#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bgpsieve/events.hpp"
#include "bgpsieve/prefix_tree.hpp"
#include "bgpsieve/verdict.hpp"

namespace bgpsieve {

/// The AS paths relevant to one event: every stored path toward the
/// victim prefix, the attacker subprefix, or any prefix covering either.
/// Paths are collapsed of consecutive repeats and observer-first.
struct PathSet {
  std::set<std::vector<Asn>> paths;
  std::string source;  // rib snapshot tag
};

inline PathSet collect_paths(const PrefixTree& tree, const SubMoasEvent& e,
                             std::string source_tag = {}) {
  PathSet ps;
  ps.source = std::move(source_tag);
  for (const auto& p : tree.paths_covering(e.victim_prefix)) ps.paths.insert(p);
  for (const auto& p : tree.paths_covering(e.attacker_subprefix)) ps.paths.insert(p);
  return ps;
}

inline std::string format_path(const std::vector<Asn>& path) {
  std::ostringstream os;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) os << ' ';
    os << path[i].value();
  }
  return os.str();
}

/// Rules out an attack when the suspected attacker sits downstream of the
/// victim: some observed path contains both ASes with the victim closer to
/// the observer. An attacker would not hijack its own upstream, which
/// could simply filter the forged updates out.
///
/// If the victim appears more than once on a path (a route-leak artifact),
/// every occurrence must precede the attacker for that path to witness.
inline FilterVerdict topology_filter(const PathSet& ps, Asn victim, Asn attacker) {
  if (victim == attacker)
    throw std::invalid_argument("victim and attacker must differ; not a conflict");
  if (ps.paths.empty()) return {VerdictKind::NotCovered, "no AS paths available"};

  bool saw_both = false;
  size_t multi_victim_paths = 0;
  for (const auto& path : ps.paths) {
    size_t victim_last = 0, attacker_first = path.size();
    size_t victim_count = 0;
    bool has_attacker = false;
    for (size_t i = 0; i < path.size(); ++i) {
      if (path[i] == victim) {
        victim_last = i;
        ++victim_count;
      } else if (path[i] == attacker && !has_attacker) {
        attacker_first = i;
        has_attacker = true;
      }
    }
    if (victim_count == 0 || !has_attacker) continue;
    saw_both = true;
    if (victim_count > 1) ++multi_victim_paths;
    if (victim_last < attacker_first)
      return {VerdictKind::Legitimate, "witness path: " + format_path(path)};
  }

  std::string note = saw_both ? "attacker never downstream of victim on shared paths"
                              : "no path contains both ASes";
  if (multi_victim_paths)
    note += " (" + std::to_string(multi_victim_paths) + " path(s) with repeated victim AS)";
  return {VerdictKind::Inconclusive, note};
}

}  // namespace bgpsieve
