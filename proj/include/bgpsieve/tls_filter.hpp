#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "bgpsieve/scanner.hpp"
#include "bgpsieve/verdict.hpp"

namespace bgpsieve {

struct TlsFilterConfig {
  Timestamp per_target_timeout = 10;   // seconds
  Timestamp scan_budget = 15 * 60;     // whole-event budget, seconds
  Timestamp probe_cost = 1;            // virtual time per answered probe
  Timestamp scan_delay = 0;            // offset from first_seen to scan start
};

/// Compares keys observed during an event against ground truth. One stable
/// matching key on any affected host legitimizes the event; a scan whose
/// window overlaps any instability of the event is discarded wholesale.
///
/// Targets are the ground-truth entries inside the attacker subprefix,
/// HTTPS first (it validates the overwhelming majority of covered events),
/// then by address; the scan stops at the first match.
inline FilterVerdict tls_filter(const GroundTruth& gt, const Scanner& scanner,
                                const SubMoasEvent& e, const RibEngine& engine,
                                TlsFilterConfig config = {}) {
  struct Target {
    HostPort hp;
    GroundTruth::Entry entry;
  };
  std::vector<Target> targets;
  for (const auto& [hp, entry] : gt.entries)
    if (e.attacker_subprefix.contains(hp.address)) targets.push_back({hp, entry});
  if (targets.empty())
    return {VerdictKind::NotCovered, "no ground-truth hosts inside " +
                                         e.attacker_subprefix.to_string()};
  std::stable_partition(targets.begin(), targets.end(),
                        [](const Target& t) { return t.entry.protocol == "https"; });

  const Timestamp scan_start = e.first_seen + config.scan_delay;
  Timestamp elapsed = 0;
  size_t matches = 0, mismatches = 0, closed = 0, failed = 0, timeouts = 0, probed = 0;
  std::string witness;

  for (const auto& t : targets) {
    if (elapsed >= config.scan_budget) break;
    ProbeRequest req{t.hp.address, t.hp.port, t.entry.protocol, config.per_target_timeout, 0};
    ProbeResult res = scanner.probe(req);
    ++probed;
    elapsed += res.outcome == ProbeOutcome::Timeout ? config.per_target_timeout
                                                    : config.probe_cost;
    switch (res.outcome) {
      case ProbeOutcome::Key:
        if (res.key && *res.key == t.entry.fingerprint) {
          ++matches;
          witness = format_ipv4(t.hp.address) + ":" + std::to_string(t.hp.port) + " (" +
                    t.entry.protocol + ") presented its ground-truth key";
        } else {
          ++mismatches;
        }
        break;
      case ProbeOutcome::PortClosed: ++closed; break;
      case ProbeOutcome::HandshakeFailed: ++failed; break;
      case ProbeOutcome::Timeout: ++timeouts; break;
    }
    if (matches) break;
  }

  const Timestamp scan_end = scan_start + elapsed;
  bool stable;
  try {
    stable = engine.stable_during(e.key(), scan_start, scan_end);
  } catch (const JournalGapError&) {
    return {VerdictKind::Discarded, "scan window outside journal coverage"};
  }
  if (!stable)
    return {VerdictKind::Discarded, "event changed or vanished during the scan window"};
  if (matches) return {VerdictKind::Legitimate, witness};

  std::string detail = std::to_string(probed) + " host(s) scanned: " +
                       std::to_string(mismatches) + " different key(s), " +
                       std::to_string(closed) + " closed, " + std::to_string(failed) +
                       " failed handshake(s), " + std::to_string(timeouts) + " timeout(s)";
  return {VerdictKind::Inconclusive, detail};
}

}  // namespace bgpsieve
