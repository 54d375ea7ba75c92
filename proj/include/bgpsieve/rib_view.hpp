#pragma once

#include <set>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "bgpsieve/route.hpp"

namespace bgpsieve {

/// How a candidate announcement conflicts with the active route set.
/// StrictSubMoas dominates SubMoas dominates Moas when several apply.
enum class ConflictClass { NoConflict, Moas, SubMoas, StrictSubMoas };

inline const char* to_string(ConflictClass c) {
  switch (c) {
    case ConflictClass::NoConflict: return "NoConflict";
    case ConflictClass::Moas: return "Moas";
    case ConflictClass::SubMoas: return "SubMoas";
    case ConflictClass::StrictSubMoas: return "StrictSubMoas";
  }
  return "?";
}

/// Which of the three impact conditions a set of forged routes meets
/// against a given route set.
struct ImpactReport {
  bool unrivaled = false;
  bool globally_shortest = false;
  bool most_specific = false;
};

/// A finite set of active routes (the global set or an observation-point
/// subset). Set semantics: inserting a duplicate route is a no-op.
/// Immutable once populated; all queries are read-only.
class RibView {
 public:
  RibView() = default;
  explicit RibView(const std::vector<Route>& routes) {
    for (const auto& r : routes) insert(r);
  }

  bool insert(Route r) { return routes_.insert(std::move(r)).second; }
  bool contains(const Route& r) const { return routes_.count(r) > 0; }
  size_t size() const { return routes_.size(); }
  bool empty() const { return routes_.empty(); }

  const std::unordered_set<Route>& routes() const { return routes_; }

 private:
  std::unordered_set<Route> routes_;
};

/// Origin ASes that announce exactly `p`.
inline std::set<Asn> origins(const RibView& rib, Prefix p) {
  std::set<Asn> out;
  for (const auto& r : rib.routes())
    if (r.prefix() == p) out.insert(r.origin());
  return out;
}

/// Origin ASes whose announcements cover `p`: announcers of `p` itself and
/// of every less specific prefix. Routes to less specifics also reach `p`.
inline std::set<Asn> origins_covering(const RibView& rib, Prefix p) {
  std::set<Asn> out;
  for (const auto& r : rib.routes())
    if (covers(r.prefix(), p)) out.insert(r.origin());
  return out;
}

/// Upstream neighbors of origin `o`: the AS adjacent to `o` on any route
/// it originates. Origin-only paths contribute nothing.
inline std::set<Asn> upstreams(const RibView& rib, Asn o) {
  std::set<Asn> out;
  for (const auto& r : rib.routes()) {
    const auto& path = r.path();
    if (path.size() >= 2 && path.back() == o) out.insert(path[path.size() - 2]);
  }
  return out;
}

/// Classifies a candidate route (not yet in `rib`) against the active set.
inline ConflictClass classify_conflict(const RibView& rib, const Route& candidate) {
  const Prefix cp = candidate.prefix();
  const Asn origin = candidate.origin();

  std::set<Asn> exact = origins(rib, cp);
  bool moas = !exact.empty() && exact.count(origin) == 0;

  // SubMOAS: some announced strictly-less-specific prefix whose covering
  // origin set does not include the candidate's origin.
  bool submoas = false;
  std::set<Prefix> seen;
  for (const auto& r : rib.routes()) {
    Prefix p = r.prefix();
    if (!is_subprefix(cp, p) || !seen.insert(p).second) continue;
    if (origins_covering(rib, p).count(origin) == 0) {
      submoas = true;
      break;
    }
  }

  if (submoas) {
    // Strict: nobody announces the candidate's prefix itself yet.
    return exact.empty() ? ConflictClass::StrictSubMoas : ConflictClass::SubMoas;
  }
  return moas ? ConflictClass::Moas : ConflictClass::NoConflict;
}

/// Evaluates the three impact conditions for forged routes that all target
/// one prefix. Rejects forged sets spanning multiple prefixes.
inline ImpactReport impact_conditions(const RibView& rib, const std::vector<Route>& forged) {
  if (forged.empty()) throw std::invalid_argument("forged route set must be non-empty");
  const Prefix target = forged.front().prefix();
  for (const auto& f : forged)
    if (f.prefix() != target)
      throw std::invalid_argument("forged routes must share one target prefix");

  ImpactReport report;
  report.unrivaled = origins_covering(rib, target).empty();

  size_t longest_forged = 0;
  for (const auto& f : forged) longest_forged = std::max(longest_forged, f.path().size());
  report.globally_shortest = true;
  report.most_specific = true;
  for (const auto& r : rib.routes()) {
    if (covers(r.prefix(), target) && r.path().size() <= longest_forged)
      report.globally_shortest = false;
    if (r.prefix() == target || is_subprefix(r.prefix(), target))
      report.most_specific = false;
  }
  return report;
}

/// Best-path bound validator: from a single observation point, the number
/// of distinct routes to any prefix cannot exceed the observer's upstream
/// neighbor count. Returns the prefixes violating the bound instead of
/// silently accepting the input.
inline std::vector<Prefix> best_path_violations(const RibView& observer_rib, Asn observer,
                                                const RibView& global_rib) {
  size_t bound = upstreams(global_rib, observer).size();
  std::set<Prefix> prefixes;
  for (const auto& r : observer_rib.routes()) prefixes.insert(r.prefix());
  std::vector<Prefix> violations;
  for (Prefix p : prefixes) {
    size_t n = 0;
    for (const auto& r : observer_rib.routes())
      if (r.prefix() == p) ++n;
    if (n > bound) violations.push_back(p);
  }
  return violations;
}

}  // namespace bgpsieve
