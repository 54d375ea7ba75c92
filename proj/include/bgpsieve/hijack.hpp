#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "bgpsieve/rib_view.hpp"

namespace bgpsieve {

using AsPath = std::vector<Asn>;

namespace detail {

inline std::vector<Route> forge_routes(Asn attacker, const std::set<Asn>& attacker_upstreams,
                                       const std::vector<Prefix>& targets,
                                       const std::vector<AsPath>& observer_subpaths) {
  if (attacker_upstreams.empty())
    throw std::invalid_argument("attacker needs at least one upstream");
  // An empty subpath set means the observation point sits at the upstream
  // itself (w is the empty word).
  std::vector<AsPath> subpaths = observer_subpaths;
  if (subpaths.empty()) subpaths.push_back({});
  std::vector<Route> forged;
  for (Prefix target : targets) {
    for (const AsPath& w : subpaths) {
      for (Asn u : attacker_upstreams) {
        AsPath path = w;
        path.push_back(u);
        path.push_back(attacker);
        forged.emplace_back(std::move(path), target);
      }
    }
  }
  return forged;
}

}  // namespace detail

/// Forged routes for a prefix hijack: the attacker originates the victim's
/// exact prefix behind each of its upstreams, observed via each subpath.
/// The rib is untouched; callers merge the result themselves.
inline std::vector<Route> inject_prefix_hijack(const RibView&, Asn attacker,
                                               const std::set<Asn>& attacker_upstreams,
                                               Prefix victim_prefix,
                                               const std::vector<AsPath>& observer_subpaths) {
  return detail::forge_routes(attacker, attacker_upstreams, {victim_prefix},
                              observer_subpaths);
}

/// Forged routes for a covering subprefix hijack: the victim's prefix is
/// split into all 2^split_depth subprefixes of length+split_depth, each
/// originated by the attacker. The forged prefixes' union equals the
/// victim prefix's range exactly.
inline std::vector<Route> inject_subprefix_hijack(const RibView&, Asn attacker,
                                                  const std::set<Asn>& attacker_upstreams,
                                                  Prefix victim_prefix, int split_depth,
                                                  const std::vector<AsPath>& observer_subpaths) {
  return detail::forge_routes(attacker, attacker_upstreams,
                              split_prefix(victim_prefix, split_depth), observer_subpaths);
}

}  // namespace bgpsieve
