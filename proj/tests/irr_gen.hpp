#pragma once

// Random IRR object-set generator plus independent start/target derivation
// for the query oracles.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"

namespace test {

using namespace bgpsieve;

struct IrrWorld {
  std::vector<IrrObject> objects;
  std::vector<Asn> asns;
  std::vector<Prefix> prefixes;
};

inline IrrWorld random_irr_world(Rng& rng, size_t approx_nodes) {
  IrrWorld world;
  std::vector<std::string> registries{"RIPE"};
  if (rng.chance(0.4)) registries.push_back("ARIN");

  size_t n_mnt = std::max<size_t>(1, approx_nodes / 8);
  size_t n_org = std::max<size_t>(1, approx_nodes / 10);
  size_t n_as = std::max<size_t>(2, approx_nodes / 3);
  size_t n_inet = std::max<size_t>(1, approx_nodes / 5);
  size_t n_route = approx_nodes - std::min(approx_nodes, n_mnt + n_org + n_as + n_inet);

  for (uint32_t i = 0; i < n_as; ++i) world.asns.push_back(Asn(64500 + i));
  for (uint32_t i = 0; i < n_inet + 4; ++i) {
    uint32_t base = (10u << 24) | (rng.pick(0, 200) << 16) | (rng.pick(0, 1) << 15);
    world.prefixes.push_back(Prefix::truncated(base, int(rng.pick(12, 24))));
  }

  auto registry = [&] { return registries[rng.pick(0, uint32_t(registries.size() - 1))]; };
  auto mnt_name = [&](bool maybe_missing) {
    uint32_t hi = uint32_t(n_mnt - 1) + (maybe_missing ? 3 : 0);
    return "MNT-" + std::to_string(rng.pick(0, hi));
  };
  auto org_name = [&](bool maybe_missing) {
    uint32_t hi = uint32_t(n_org - 1) + (maybe_missing ? 2 : 0);
    return "ORG-" + std::to_string(rng.pick(0, hi));
  };
  auto any_asn = [&] { return world.asns[rng.pick(0, uint32_t(world.asns.size() - 1))]; };
  auto any_prefix = [&] {
    return world.prefixes[rng.pick(0, uint32_t(world.prefixes.size() - 1))];
  };

  for (size_t i = 0; i < n_mnt; ++i) {
    IrrObject o;
    o.kind = IrrKind::Mntner;
    o.key = "MNT-" + std::to_string(i);
    o.attributes = {{"mntner", o.key}};
    o.source_registry = registry();
    world.objects.push_back(o);
  }
  for (size_t i = 0; i < n_org; ++i) {
    IrrObject o;
    o.kind = IrrKind::Organisation;
    o.key = "ORG-" + std::to_string(i);
    o.attributes = {{"organisation", o.key}};
    if (rng.chance(0.5)) o.attributes.push_back({"mnt-by", mnt_name(true)});
    o.source_registry = registry();
    world.objects.push_back(o);
  }
  for (size_t i = 0; i < n_as; ++i) {
    IrrObject o;
    o.kind = IrrKind::AutNum;
    o.key = to_string(world.asns[i]);
    o.attributes = {{"aut-num", o.key}};
    if (rng.chance(0.7)) o.attributes.push_back({"mnt-by", mnt_name(true)});
    if (rng.chance(0.4)) o.attributes.push_back({"org", org_name(true)});
    int imports = int(rng.pick(0, 2));
    for (int k = 0; k < imports; ++k)
      o.attributes.push_back(
          {"import", "from " + to_string(any_asn()) + " accept ANY"});
    if (rng.chance(0.1))
      o.attributes.push_back({"import", "from AS" + std::to_string(65000 + rng.pick(0, 99)) +
                                            " accept ANY"});  // likely orphan
    o.source_registry = registry();
    world.objects.push_back(o);
  }
  for (size_t i = 0; i < n_inet; ++i) {
    Prefix p = any_prefix();
    IrrObject o;
    o.kind = IrrKind::Inetnum;
    o.key = AddressRange{p.first_address(), p.last_address()}.to_string();
    o.attributes = {{"inetnum", o.key}};
    if (rng.chance(0.8)) o.attributes.push_back({"mnt-by", mnt_name(true)});
    if (rng.chance(0.3)) o.attributes.push_back({"org", org_name(true)});
    o.source_registry = registry();
    world.objects.push_back(o);
  }
  for (size_t i = 0; i < n_route; ++i) {
    Prefix p = any_prefix();
    Asn origin = any_asn();
    IrrObject o;
    o.kind = IrrKind::Route;
    o.key = p.to_string() + " " + to_string(origin);
    o.attributes = {{"route", p.to_string()}, {"origin", to_string(origin)}};
    if (rng.chance(0.6)) o.attributes.push_back({"mnt-by", mnt_name(true)});
    o.source_registry = registry();
    world.objects.push_back(o);
  }
  return world;
}

// independent derivation of query endpoints straight from the node dump
inline std::vector<uint32_t> oracle_autnum_nodes(const IrrGraph& g, Asn a) {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < g.nodes().size(); ++i)
    if (g.nodes()[i].kind == IrrKind::AutNum && g.nodes()[i].key == to_string(a))
      out.push_back(i);
  return out;
}

inline std::vector<uint32_t> oracle_holdership_starts(const IrrGraph& g, Prefix p) {
  std::vector<uint32_t> out;
  std::string route_prefix = p.to_string() + " ";
  for (uint32_t i = 0; i < g.nodes().size(); ++i)
    if (g.nodes()[i].kind == IrrKind::Route &&
        g.nodes()[i].key.substr(0, route_prefix.size()) == route_prefix)
      out.push_back(i);

  std::map<std::string, std::pair<uint64_t, uint32_t>> best;  // registry -> (size, id)
  for (uint32_t i = 0; i < g.nodes().size(); ++i) {
    if (g.nodes()[i].kind != IrrKind::Inetnum) continue;
    auto range = parse_address_range(g.nodes()[i].key);
    if (!range || !range->contains({p.first_address(), p.last_address()})) continue;
    auto [it, fresh] =
        best.try_emplace(g.nodes()[i].source_registry, std::pair(range->size(), i));
    if (!fresh && range->size() < it->second.first) it->second = {range->size(), i};
  }
  for (const auto& [reg, sized] : best) out.push_back(sized.second);
  return out;
}

inline bool path_replays(const IrrGraph& g, const LegitimizingPath& p) {
  if (p.edges.size() != p.forward.size()) return false;
  uint32_t cur = p.start;
  for (size_t i = 0; i < p.edges.size(); ++i) {
    if (p.edges[i] >= g.edges().size()) return false;
    const IrrEdge& e = g.edges()[p.edges[i]];
    if (e.orphaned) return false;
    uint32_t from = p.forward[i] ? e.from : e.to;
    uint32_t to = p.forward[i] ? e.to : e.from;
    if (from != cur) return false;
    if (!relation_type_checks(e.relation, g.node(e.from).kind, g.node(e.to).kind)) return false;
    cur = to;
  }
  return cur == p.end;
}

inline bool anchored_or_empty(const IrrGraph& g, const LegitimizingPath& p) {
  if (p.edges.empty()) return true;
  for (uint32_t eid : p.edges)
    if (g.edges()[eid].relation != IrrRelation::MapsTo) return true;
  return false;
}

}  // namespace test
