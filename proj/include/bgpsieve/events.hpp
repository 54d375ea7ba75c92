#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <tuple>
#include <vector>

#include "bgpsieve/asn.hpp"
#include "bgpsieve/prefix.hpp"
#include "bgpsieve/update.hpp"

namespace bgpsieve {

/// Identity of a strict subMOAS conflict: who allegedly hijacks what from
/// whom. Timestamps are tracked alongside but do not take part in identity.
struct EventKey {
  Asn victim_as{1};
  Prefix victim_prefix{0, 0};
  Asn attacker_as{1};
  Prefix attacker_subprefix{0, 0};

  friend bool operator==(const EventKey& a, const EventKey& b) {
    return a.victim_as == b.victim_as && a.victim_prefix == b.victim_prefix &&
           a.attacker_as == b.attacker_as && a.attacker_subprefix == b.attacker_subprefix;
  }
  friend bool operator<(const EventKey& a, const EventKey& b) {
    return std::tuple(a.victim_as, a.victim_prefix, a.attacker_as, a.attacker_subprefix) <
           std::tuple(b.victim_as, b.victim_prefix, b.attacker_as, b.attacker_subprefix);
  }
};

/// One strict subMOAS event. The attacker announces a strict subprefix of
/// the victim's prefix without covering legitimacy, and nobody else
/// announces that subprefix.
struct SubMoasEvent {
  Asn victim_as{1};
  Prefix victim_prefix{0, 0};
  Asn attacker_as{1};
  Prefix attacker_subprefix{0, 0};
  Timestamp first_seen = 0;
  Timestamp last_seen = 0;
  uint64_t occurrence_count = 1;

  EventKey key() const { return {victim_as, victim_prefix, attacker_as, attacker_subprefix}; }

  friend std::ostream& operator<<(std::ostream& os, const SubMoasEvent& e) {
    return os << e.victim_as << ' ' << e.victim_prefix << " <- " << e.attacker_as << ' '
              << e.attacker_subprefix;
  }
};

/// Collapses recurrences of the identical 4-tuple into one record:
/// occurrence counts add up, first_seen takes the minimum, last_seen the
/// maximum. Order of first appearance is preserved.
inline std::vector<SubMoasEvent> dedupe_events(const std::vector<SubMoasEvent>& events) {
  std::vector<SubMoasEvent> out;
  std::map<EventKey, size_t> index;
  for (const auto& e : events) {
    auto [it, fresh] = index.try_emplace(e.key(), out.size());
    if (fresh) {
      out.push_back(e);
    } else {
      auto& agg = out[it->second];
      agg.occurrence_count += e.occurrence_count;
      agg.first_seen = std::min(agg.first_seen, e.first_seen);
      agg.last_seen = std::max(agg.last_seen, e.last_seen);
    }
  }
  return out;
}

struct RecurrenceStats {
  double mean = 0.0;
  uint64_t max = 0;
};

/// Mean and maximum occurrence count over deduplicated events.
inline RecurrenceStats recurrence_stats(const std::vector<SubMoasEvent>& deduped) {
  RecurrenceStats s;
  if (deduped.empty()) return s;
  uint64_t total = 0;
  for (const auto& e : deduped) {
    total += e.occurrence_count;
    s.max = std::max(s.max, e.occurrence_count);
  }
  s.mean = double(total) / double(deduped.size());
  return s;
}

}  // namespace bgpsieve
