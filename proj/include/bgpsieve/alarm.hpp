#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "bgpsieve/events.hpp"
#include "bgpsieve/util.hpp"

namespace bgpsieve {

/// An externally reported suspicion of subprefix hijacking: the victim's
/// announcement and the conflicting more-specific one.
struct Alarm {
  Asn victim_as{1};
  Prefix victim_prefix{0, 0};
  Asn attacker_as{1};
  Prefix attacker_subprefix{0, 0};
  Timestamp reported_at = 0;
  std::string source;

  EventKey key() const { return {victim_as, victim_prefix, attacker_as, attacker_subprefix}; }
};

struct AlarmReject {
  std::string reason;
};

using AlarmParse = std::variant<Alarm, AlarmReject>;

/// Parses one alarm record:
///   <victim_as> <victim_prefix> <attacker_as> <attacker_subprefix> <ts> <source>
/// Records whose prefix pair is not a strict subprefix relation are
/// rejected with a reason; rejections are counted, not fatal.
inline AlarmParse parse_alarm(std::string_view record) {
  auto fields = util::split_ws(util::trim(record));
  if (fields.size() != 6)
    return AlarmReject{"expected 6 fields: victim_as victim_prefix attacker_as "
                       "attacker_subprefix ts source"};
  auto victim_as = util::parse_int<uint32_t>(fields[0]);
  auto victim_prefix = Prefix::parse(fields[1]);
  auto attacker_as = util::parse_int<uint32_t>(fields[2]);
  auto attacker_subprefix = Prefix::parse(fields[3]);
  auto ts = util::parse_int<Timestamp>(fields[4]);
  if (!victim_as || *victim_as == 0) return AlarmReject{"bad victim AS"};
  if (!victim_prefix) return AlarmReject{"bad victim prefix"};
  if (!attacker_as || *attacker_as == 0) return AlarmReject{"bad attacker AS"};
  if (!attacker_subprefix) return AlarmReject{"bad attacker subprefix"};
  if (!ts) return AlarmReject{"bad timestamp"};
  if (*victim_as == *attacker_as) return AlarmReject{"victim and attacker AS are identical"};
  if (*attacker_subprefix == *victim_prefix)
    return AlarmReject{"prefixes are equal; not a strict subMOAS"};
  if (!is_subprefix(*attacker_subprefix, *victim_prefix))
    return AlarmReject{"attacker prefix is not a strict subprefix of the victim prefix"};
  return Alarm{Asn(*victim_as),   *victim_prefix, Asn(*attacker_as),
               *attacker_subprefix, *ts,          std::string(fields[5])};
}

inline std::string format_alarm(const Alarm& a) {
  return std::to_string(a.victim_as.value()) + " " + a.victim_prefix.to_string() + " " +
         std::to_string(a.attacker_as.value()) + " " + a.attacker_subprefix.to_string() + " " +
         std::to_string(a.reported_at) + " " + a.source;
}

}  // namespace bgpsieve
