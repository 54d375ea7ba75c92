#pragma once

#include <string>

namespace bgpsieve {

/// Outcome of one filter for one alarm. Filters legitimize; they never
/// convict. Discarded is specific to scan-based filters whose measurement
/// window turned out to be invalid.
enum class VerdictKind { Legitimate, Inconclusive, NotCovered, Discarded };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Legitimate: return "Legitimate";
    case VerdictKind::Inconclusive: return "Inconclusive";
    case VerdictKind::NotCovered: return "NotCovered";
    case VerdictKind::Discarded: return "Discarded";
  }
  return "?";
}

struct FilterVerdict {
  VerdictKind kind = VerdictKind::NotCovered;
  std::string evidence;  // human-readable witness, kept for manual inspection

  bool legitimate() const { return kind == VerdictKind::Legitimate; }
  bool covered() const { return kind != VerdictKind::NotCovered; }
};

}  // namespace bgpsieve
