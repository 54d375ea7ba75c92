#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bgpsieve/events.hpp"
#include "bgpsieve/rpsl.hpp"
#include "bgpsieve/verdict.hpp"

namespace bgpsieve {

enum class IrrRelation { MaintainedBy, Org, Origin, Import, MapsTo };

inline const char* to_string(IrrRelation r) {
  switch (r) {
    case IrrRelation::MaintainedBy: return "maintained_by";
    case IrrRelation::Org: return "org";
    case IrrRelation::Origin: return "origin";
    case IrrRelation::Import: return "import";
    case IrrRelation::MapsTo: return "maps_to";
  }
  return "?";
}

/// Expected endpoint kinds per relation; used when replaying paths.
inline bool relation_type_checks(IrrRelation r, IrrKind from, IrrKind to) {
  switch (r) {
    case IrrRelation::MaintainedBy: return to == IrrKind::Mntner;
    case IrrRelation::Org: return to == IrrKind::Organisation;
    case IrrRelation::Origin: return from == IrrKind::Route && to == IrrKind::AutNum;
    case IrrRelation::Import: return from == IrrKind::AutNum && to == IrrKind::AutNum;
    case IrrRelation::MapsTo: return from == IrrKind::Route && to == IrrKind::Inetnum;
  }
  return false;
}

struct IrrEdge {
  uint32_t from = 0;
  uint32_t to = 0;  // meaningless when orphaned
  IrrRelation relation;
  bool orphaned = false;
  std::string unresolved_key;  // literal target key for orphaned edges

  friend bool operator==(const IrrEdge& a, const IrrEdge& b) {
    return a.from == b.from && a.to == b.to && a.relation == b.relation &&
           a.orphaned == b.orphaned && a.unresolved_key == b.unresolved_key;
  }
};

/// A path of legitimizing relations. Edges are traversed in either
/// direction; `forward[i]` records whether edge i was walked from→to.
struct LegitimizingPath {
  uint32_t start = 0;
  uint32_t end = 0;
  std::vector<uint32_t> edges;
  std::vector<bool> forward;
};

/// Typed graph over registry objects. Nodes from different source
/// registries are distinct; edges never cross registries. Immutable after
/// build; queries are read-only and safe to run concurrently.
class IrrGraph {
 public:
  struct BuildStats {
    std::vector<std::string> diagnostics;
    size_t duplicate_objects = 0;
    size_t orphaned_edges = 0;
  };

  const std::vector<IrrObject>& nodes() const { return nodes_; }
  const std::vector<IrrEdge>& edges() const { return edges_; }
  const BuildStats& stats() const { return stats_; }

  const IrrObject& node(uint32_t id) const { return nodes_[id]; }

  std::vector<uint32_t> autnum_nodes(Asn a) const {
    return find_all(IrrKind::AutNum, to_string(a));
  }
  std::vector<uint32_t> route_nodes(Prefix p, std::optional<Asn> origin = {}) const {
    std::vector<uint32_t> out;
    auto it = routes_by_prefix_.find(p);
    if (it == routes_by_prefix_.end()) return out;
    for (uint32_t id : it->second)
      if (!origin || route_origin_.at(id) == *origin) out.push_back(id);
    return out;
  }

  /// Most specific INETNUM containing `p`, per registry.
  std::vector<uint32_t> most_specific_inetnums(Prefix p) const {
    AddressRange want{p.first_address(), p.last_address()};
    std::map<std::string, uint32_t> best;
    for (const auto& [id, range] : inetnum_ranges_) {
      if (!range.contains(want)) continue;
      auto [it, fresh] = best.try_emplace(nodes_[id].source_registry, id);
      if (!fresh && range.size() < inetnum_ranges_.at(it->second).size()) it->second = id;
    }
    std::vector<uint32_t> out;
    for (const auto& [reg, id] : best) out.push_back(id);
    return out;
  }

  bool prefix_registered(Prefix p) const {
    if (routes_by_prefix_.count(p)) return true;
    AddressRange want{p.first_address(), p.last_address()};
    for (const auto& [id, range] : inetnum_ranges_)
      if (range.contains(want)) return true;
    return false;
  }
  bool as_registered(Asn a) const { return !autnum_nodes(a).empty(); }

  /// Undirected breadth-first search over non-orphaned legitimizing
  /// relations, at most `max_depth` edges. A nonzero-length result must use
  /// at least one relation besides maps_to: a derived containment alone
  /// documents no right to use.
  std::optional<LegitimizingPath> shortest_path(const std::vector<uint32_t>& starts,
                                                const std::set<uint32_t>& targets,
                                                int max_depth) const {
    if (starts.empty() || targets.empty()) return std::nullopt;
    for (uint32_t s : starts)
      if (targets.count(s)) {
        LegitimizingPath p;
        p.start = p.end = s;
        return p;
      }

    // state: node x whether the path so far is anchored (has a
    // non-maps_to edge)
    struct State {
      uint32_t node;
      bool anchored;
    };
    auto idx = [&](uint32_t node, bool anchored) { return node * 2 + (anchored ? 1 : 0); };
    std::vector<int32_t> prev_edge(nodes_.size() * 2, -1);
    std::vector<uint32_t> prev_state(nodes_.size() * 2, 0);
    std::vector<int16_t> depth(nodes_.size() * 2, -1);
    std::deque<State> queue;
    for (uint32_t s : starts) {
      if (depth[idx(s, false)] != -1) continue;
      depth[idx(s, false)] = 0;
      queue.push_back({s, false});
    }
    while (!queue.empty()) {
      State st = queue.front();
      queue.pop_front();
      int d = depth[idx(st.node, st.anchored)];
      if (d >= max_depth) continue;
      for (uint32_t eid : adjacency_[st.node]) {
        const IrrEdge& e = edges_[eid];
        uint32_t next = e.from == st.node ? e.to : e.from;
        bool anchored = st.anchored || e.relation != IrrRelation::MapsTo;
        uint32_t ni = idx(next, anchored);
        if (depth[ni] != -1) continue;
        depth[ni] = d + 1;
        prev_edge[ni] = int32_t(eid);
        prev_state[ni] = idx(st.node, st.anchored);
        if (anchored && targets.count(next)) return reconstruct(ni, prev_edge, prev_state);
        queue.push_back({next, anchored});
      }
    }
    return std::nullopt;
  }

  std::string describe(const LegitimizingPath& path) const {
    std::string out = label(path.start);
    for (size_t i = 0; i < path.edges.size(); ++i) {
      const IrrEdge& e = edges_[path.edges[i]];
      out += path.forward[i] ? std::string(" -") + to_string(e.relation) + "-> "
                             : std::string(" <-") + to_string(e.relation) + "- ";
      out += label(path.forward[i] ? e.to : e.from);
    }
    out += " [" + nodes_[path.start].source_registry + "]";
    return out;
  }

  /// Node/edge CSV export for inspection.
  void export_csv(std::ostream& nodes_os, std::ostream& edges_os) const {
    nodes_os << "id,kind,key,registry\n";
    for (uint32_t i = 0; i < nodes_.size(); ++i)
      nodes_os << i << ',' << to_string(nodes_[i].kind) << ",\"" << nodes_[i].key << "\","
               << nodes_[i].source_registry << '\n';
    edges_os << "from,to,relation,orphaned,unresolved_key\n";
    for (const auto& e : edges_) {
      edges_os << e.from << ',';
      if (e.orphaned)
        edges_os << "-";
      else
        edges_os << e.to;
      edges_os << ',' << to_string(e.relation) << ',' << (e.orphaned ? 1 : 0) << ",\""
               << e.unresolved_key << "\"\n";
    }
  }

  friend IrrGraph build_graph(const std::vector<IrrObject>& objects);

 private:
  std::string label(uint32_t id) const {
    return std::string(to_string(nodes_[id].kind)) + "(" + nodes_[id].key + ")";
  }

  std::vector<uint32_t> find_all(IrrKind kind, const std::string& key) const {
    std::vector<uint32_t> out;
    auto lo = index_.lower_bound({kind, key, ""});
    for (; lo != index_.end() && std::get<0>(lo->first) == kind && std::get<1>(lo->first) == key;
         ++lo)
      out.push_back(lo->second);
    return out;
  }

  std::optional<LegitimizingPath> reconstruct(uint32_t goal_state,
                                              const std::vector<int32_t>& prev_edge,
                                              const std::vector<uint32_t>& prev_state) const {
    LegitimizingPath path;
    path.end = goal_state / 2;
    uint32_t st = goal_state;
    while (prev_edge[st] >= 0) {
      uint32_t eid = uint32_t(prev_edge[st]);
      uint32_t from_state = prev_state[st];
      path.edges.push_back(eid);
      path.forward.push_back(edges_[eid].from == from_state / 2);
      st = from_state;
    }
    path.start = st / 2;
    std::reverse(path.edges.begin(), path.edges.end());
    std::reverse(path.forward.begin(), path.forward.end());
    return path;
  }

  std::vector<IrrObject> nodes_;
  std::vector<IrrEdge> edges_;
  std::vector<std::vector<uint32_t>> adjacency_;
  // (kind, key, registry) -> node, ordered so all registries for one key
  // are adjacent
  std::map<std::tuple<IrrKind, std::string, std::string>, uint32_t> index_;
  std::map<uint32_t, AddressRange> inetnum_ranges_;
  std::map<Prefix, std::vector<uint32_t>> routes_by_prefix_;
  std::map<uint32_t, Asn> route_origin_;
  BuildStats stats_;
};

/// Builds the typed graph. Duplicate (kind, key) within one registry is
/// last-writer-wins with a diagnostic. Unresolvable references become
/// orphaned edges that keep their literal key; they are reported but never
/// traversed. ROUTE nodes get a derived maps_to edge to the most specific
/// INETNUM of the same registry containing their prefix.
inline IrrGraph build_graph(const std::vector<IrrObject>& objects) {
  IrrGraph g;

  for (const auto& obj : objects) {
    auto key = std::tuple(obj.kind, obj.key, obj.source_registry);
    auto it = g.index_.find(key);
    if (it != g.index_.end()) {
      g.stats_.diagnostics.push_back("duplicate " + std::string(to_string(obj.kind)) + " '" +
                                     obj.key + "' in " + obj.source_registry +
                                     "; keeping the later object");
      ++g.stats_.duplicate_objects;
      g.nodes_[it->second] = obj;
      continue;
    }
    uint32_t id = uint32_t(g.nodes_.size());
    g.index_.emplace(std::move(key), id);
    g.nodes_.push_back(obj);
  }

  g.adjacency_.assign(g.nodes_.size(), {});
  for (uint32_t id = 0; id < g.nodes_.size(); ++id) {
    const IrrObject& obj = g.nodes_[id];
    if (obj.kind == IrrKind::Inetnum) {
      if (auto range = parse_address_range(obj.key)) g.inetnum_ranges_.emplace(id, *range);
    } else if (obj.kind == IrrKind::Route) {
      auto prefix = Prefix::parse(obj.key.substr(0, obj.key.find(' ')));
      auto origin = parse_as_token(obj.key.substr(obj.key.find(' ') + 1));
      if (prefix && origin) {
        g.routes_by_prefix_[*prefix].push_back(id);
        g.route_origin_.emplace(id, *origin);
      }
    }
  }

  auto resolve = [&](const std::string& registry, IrrKind kind,
                     const std::string& key) -> std::optional<uint32_t> {
    auto it = g.index_.find({kind, key, registry});
    if (it == g.index_.end()) return std::nullopt;
    return it->second;
  };
  auto add_edge = [&](uint32_t from, std::optional<uint32_t> to, IrrRelation rel,
                      const std::string& literal) {
    IrrEdge e;
    e.from = from;
    e.relation = rel;
    if (to) {
      e.to = *to;
    } else {
      e.orphaned = true;
      e.unresolved_key = literal;
      ++g.stats_.orphaned_edges;
    }
    uint32_t eid = uint32_t(g.edges_.size());
    g.edges_.push_back(std::move(e));
    if (to) {
      g.adjacency_[from].push_back(eid);
      if (*to != from) g.adjacency_[*to].push_back(eid);
    }
  };

  for (uint32_t id = 0; id < g.nodes_.size(); ++id) {
    const IrrObject& obj = g.nodes_[id];
    const std::string& reg = obj.source_registry;
    for (const auto& [name, value] : obj.attributes) {
      if (name == "mnt-by") {
        for (auto part : util::split(value, ',')) {
          auto t = util::trim(part);
          if (t.empty()) continue;
          std::string target = util::to_upper(t);
          add_edge(id, resolve(reg, IrrKind::Mntner, target), IrrRelation::MaintainedBy, target);
        }
      } else if (name == "org") {
        std::string target = util::to_upper(util::trim(value));
        if (!target.empty())
          add_edge(id, resolve(reg, IrrKind::Organisation, target), IrrRelation::Org, target);
      } else if (name == "origin" && obj.kind == IrrKind::Route) {
        if (auto asn = parse_as_token(value)) {
          std::string target = to_string(*asn);
          add_edge(id, resolve(reg, IrrKind::AutNum, target), IrrRelation::Origin, target);
        }
      } else if (name == "import" && obj.kind == IrrKind::AutNum) {
        for (Asn peer : import_peers(value)) {
          std::string target = to_string(peer);
          add_edge(id, resolve(reg, IrrKind::AutNum, target), IrrRelation::Import, target);
        }
      }
    }
  }

  // derived maps_to: route prefix -> most specific containing inetnum of
  // the same registry
  for (const auto& [prefix, route_ids] : g.routes_by_prefix_) {
    AddressRange want{prefix.first_address(), prefix.last_address()};
    for (uint32_t rid : route_ids) {
      std::optional<uint32_t> best;
      for (const auto& [iid, range] : g.inetnum_ranges_) {
        if (g.nodes_[iid].source_registry != g.nodes_[rid].source_registry) continue;
        if (!range.contains(want)) continue;
        if (!best || range.size() < g.inetnum_ranges_.at(*best).size()) best = iid;
      }
      if (best) add_edge(rid, best, IrrRelation::MapsTo, g.nodes_[*best].key);
    }
  }
  return g;
}

/// Query (a): a legitimizing path between the AUT-NUM objects of two ASes
/// documents a business or organisational relationship.
inline std::optional<LegitimizingPath> check_business_relation(const IrrGraph& g, Asn as1,
                                                               Asn as2, int max_depth = 4) {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  auto starts = g.autnum_nodes(as1);
  auto target_list = g.autnum_nodes(as2);
  std::set<uint32_t> targets(target_list.begin(), target_list.end());
  return g.shortest_path(starts, targets, max_depth);
}

/// Query (b): a legitimizing path from the prefix's resource objects (its
/// ROUTE objects, or the most specific INETNUM containing it) to AUT-NUM
/// of `a` documents resource holdership. A ROUTE object keyed (p, a)
/// qualifies on its own: creating it required credentials on both
/// resources.
inline std::optional<LegitimizingPath> check_resource_holdership(const IrrGraph& g, Prefix p,
                                                                 Asn a, int max_depth = 4) {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  std::vector<uint32_t> starts = g.route_nodes(p);
  for (uint32_t id : g.most_specific_inetnums(p)) starts.push_back(id);
  auto target_list = g.autnum_nodes(a);
  std::set<uint32_t> targets(target_list.begin(), target_list.end());
  if (auto path = g.shortest_path(starts, targets, max_depth)) return path;
  // The ROUTE key itself proves holdership even when the AUT-NUM object is
  // gone and the origin edge cannot be replayed.
  for (uint32_t rid : g.route_nodes(p, a)) {
    LegitimizingPath path;
    path.start = path.end = rid;
    return path;
  }
  return std::nullopt;
}

/// The IRR filter: strictly searches for legitimizing relationships and
/// draws no conclusion from their absence.
inline FilterVerdict irr_filter(const IrrGraph& g, const SubMoasEvent& e, int max_depth = 4) {
  if (auto path = check_business_relation(g, e.attacker_as, e.victim_as, max_depth))
    return {VerdictKind::Legitimate, "business relation: " + g.describe(*path)};
  if (auto path = check_resource_holdership(g, e.attacker_subprefix, e.attacker_as, max_depth))
    return {VerdictKind::Legitimate, "resource holdership: " + g.describe(*path)};

  bool registered = g.as_registered(e.victim_as) || g.as_registered(e.attacker_as) ||
                    g.prefix_registered(e.victim_prefix) ||
                    g.prefix_registered(e.attacker_subprefix);
  if (!registered)
    return {VerdictKind::NotCovered, "no registry covers the affected resources"};
  return {VerdictKind::Inconclusive, "resources registered but no legitimizing path"};
}

}  // namespace bgpsieve
