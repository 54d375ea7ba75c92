#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "bgpsieve/prefix.hpp"
#include "bgpsieve/rib_engine.hpp"
#include "bgpsieve/util.hpp"

namespace bgpsieve {

/// 32-byte digest of the DER-encoded subject public key. The store never
/// holds certificates, only digests.
using Fingerprint = std::array<uint8_t, 32>;

inline std::optional<Fingerprint> parse_fingerprint(std::string_view hex) {
  if (hex.size() != 64) return std::nullopt;
  Fingerprint fp{};
  for (size_t i = 0; i < 32; ++i) {
    auto hi = util::hex_nibble(hex[2 * i]);
    auto lo = util::hex_nibble(hex[2 * i + 1]);
    if (!hi || !lo) return std::nullopt;
    fp[i] = uint8_t((*hi << 4) | *lo);
  }
  return fp;
}

inline std::string format_fingerprint(const Fingerprint& fp) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (uint8_t b : fp) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

/// The scanned protocol set. Labels are closed; anything else is a parse
/// error in ground-truth or fixture files.
inline const std::vector<std::pair<std::string, uint16_t>>& protocol_table() {
  static const std::vector<std::pair<std::string, uint16_t>> table = {
      {"https", 443},
      {"smtps", 465},
      {"imaps", 993},
      {"pop3s", 995},
      {"ftps", 990},
      {"ldaps", 636},
      {"xmpps-client", 5223},
      {"xmpps-server", 5270},
      {"ircs", 6697},
      {"ftp-starttls", 21},
      {"smtp-starttls", 25},
      {"pop3-starttls", 110},
      {"imap-starttls", 143},
      {"submission-starttls", 587},
  };
  return table;
}

inline bool valid_protocol(const std::string& label) {
  for (const auto& [name, port] : protocol_table())
    if (name == label) return true;
  return false;
}

/// One observed (host, port, protocol, key) tuple from a scan.
struct KeyObservation {
  uint32_t address = 0;
  uint16_t port = 0;
  std::string protocol;
  Fingerprint key_fingerprint{};
  Timestamp observed_at = 0;
};

struct HostPort {
  uint32_t address = 0;
  uint16_t port = 0;
  friend bool operator<(const HostPort& a, const HostPort& b) {
    return a.address != b.address ? a.address < b.address : a.port < b.port;
  }
  friend bool operator==(const HostPort& a, const HostPort& b) {
    return a.address == b.address && a.port == b.port;
  }
};

/// Known-correct host/port -> public-key mapping built before any event.
/// Invariant: a fingerprint appears on at most one address (the same key
/// may serve several ports of that one host).
struct GroundTruth {
  struct Entry {
    Fingerprint fingerprint{};
    std::string protocol;
    Timestamp observed_at = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  std::map<HostPort, Entry> entries;
  Timestamp built_at = 0;
  size_t excluded_duplicates = 0;
  size_t removed_unstable = 0;  // filled by sanitize
};

/// Builds the store from raw observations. A later observation of the same
/// (address, port) replaces an earlier one. Fingerprints spanning multiple
/// addresses are default-certificate suspects: every entry carrying such a
/// key is dropped and counted.
inline GroundTruth build_ground_truth(const std::vector<KeyObservation>& observations) {
  GroundTruth gt;
  for (const auto& obs : observations) {
    HostPort hp{obs.address, obs.port};
    auto it = gt.entries.find(hp);
    if (it == gt.entries.end() || it->second.observed_at <= obs.observed_at)
      gt.entries[hp] = {obs.key_fingerprint, obs.protocol, obs.observed_at};
    gt.built_at = std::max(gt.built_at, obs.observed_at);
  }

  std::map<Fingerprint, std::set<uint32_t>> addresses_by_key;
  for (const auto& [hp, e] : gt.entries) addresses_by_key[e.fingerprint].insert(hp.address);
  for (auto it = gt.entries.begin(); it != gt.entries.end();) {
    if (addresses_by_key[it->second.fingerprint].size() > 1) {
      ++gt.excluded_duplicates;
      it = gt.entries.erase(it);
    } else {
      ++it;
    }
  }
  return gt;
}

/// Full-store check of the uniqueness invariant.
inline bool ground_truth_unique(const GroundTruth& gt) {
  std::map<Fingerprint, std::set<uint32_t>> addresses_by_key;
  for (const auto& [hp, e] : gt.entries) addresses_by_key[e.fingerprint].insert(hp.address);
  for (const auto& [fp, addrs] : addresses_by_key)
    if (addrs.size() > 1) return false;
  return true;
}

/// Drops entries whose host sat inside a subMOAS-affected subprefix while
/// it was being observed; such keys may not belong to the legitimate
/// holder. The journal must cover the whole ground-truth build window.
inline GroundTruth sanitize_ground_truth(const GroundTruth& gt, const RibEngine& engine) {
  if (gt.entries.empty()) return gt;
  Timestamp lo = gt.entries.begin()->second.observed_at, hi = lo;
  for (const auto& [hp, e] : gt.entries) {
    lo = std::min(lo, e.observed_at);
    hi = std::max(hi, e.observed_at);
  }
  if (!engine.has_updates() || lo < engine.coverage_start() || hi > engine.coverage_end())
    throw JournalGapError("journal does not cover the ground-truth build window");

  GroundTruth out = gt;
  for (auto it = out.entries.begin(); it != out.entries.end();) {
    bool affected = false;
    for (const auto& rec : engine.event_records()) {
      Timestamp closed = rec.closed_at.value_or(engine.coverage_end());
      if (it->second.observed_at >= rec.opened_at && it->second.observed_at <= closed &&
          rec.key.attacker_subprefix.contains(it->first.address)) {
        affected = true;
        break;
      }
    }
    if (affected) {
      ++out.removed_unstable;
      it = out.entries.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

struct GroundTruthParseResult {
  std::vector<KeyObservation> observations;
  std::vector<std::string> diagnostics;
};

/// Parses the ground-truth line format:
///   <ipv4> <port> <protocol-label> <hex-fingerprint> <unix_ts>
inline GroundTruthParseResult parse_ground_truth_file(std::istream& in) {
  GroundTruthParseResult out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto sv = util::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    auto fields = util::split_ws(sv);
    auto fail = [&](const std::string& m) {
      out.diagnostics.push_back("line " + std::to_string(lineno) + ": " + m);
    };
    if (fields.size() != 5) {
      fail("expected: <ipv4> <port> <protocol> <fingerprint> <ts>");
      continue;
    }
    auto addr = parse_ipv4(fields[0]);
    auto port = util::parse_int<uint16_t>(fields[1]);
    std::string protocol(fields[2]);
    auto fp = parse_fingerprint(fields[3]);
    auto ts = util::parse_int<Timestamp>(fields[4]);
    if (!addr) { fail("bad address"); continue; }
    if (!port || *port == 0) { fail("bad port"); continue; }
    if (!valid_protocol(protocol)) { fail("unknown protocol '" + protocol + "'"); continue; }
    if (!fp) { fail("bad fingerprint"); continue; }
    if (!ts) { fail("bad timestamp"); continue; }
    out.observations.push_back({*addr, *port, protocol, *fp, *ts});
  }
  return out;
}

inline void write_ground_truth_line(std::ostream& os, const KeyObservation& obs) {
  os << format_ipv4(obs.address) << ' ' << obs.port << ' ' << obs.protocol << ' '
     << format_fingerprint(obs.key_fingerprint) << ' ' << obs.observed_at << '\n';
}

}  // namespace bgpsieve
