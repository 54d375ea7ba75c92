#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bgpsieve/tls.hpp"

namespace bgpsieve {

enum class ProbeOutcome { Key, PortClosed, HandshakeFailed, Timeout };

inline const char* to_string(ProbeOutcome o) {
  switch (o) {
    case ProbeOutcome::Key: return "key";
    case ProbeOutcome::PortClosed: return "closed";
    case ProbeOutcome::HandshakeFailed: return "failed";
    case ProbeOutcome::Timeout: return "timeout";
  }
  return "?";
}

struct ProbeRequest {
  uint32_t address = 0;
  uint16_t port = 0;
  std::string protocol;
  Timestamp deadline_seconds = 10;
  // probes of the same target are numbered within one scan session, so
  // scripted scanners can stay pure and order-independent across alarms
  size_t attempt = 0;
};

struct ProbeResult {
  ProbeOutcome outcome = ProbeOutcome::PortClosed;
  std::optional<Fingerprint> key;  // set iff outcome == Key
};

/// Behavioral contract for validation scans. Implementations must be pure
/// with respect to the ground-truth store; a real network prober is an
/// optional adapter behind this same interface.
class Scanner {
 public:
  virtual ~Scanner() = default;
  virtual ProbeResult probe(const ProbeRequest& request) const = 0;
};

/// Desk-scale scanner: replies come from a fixture script instead of the
/// network. Each (address, port) maps to a response sequence; the n-th
/// probe of a target within one scan session receives the n-th response
/// (the last one repeats). Unscripted targets answer PortClosed.
class SimulatedScanner : public Scanner {
 public:
  struct ScriptStep {
    ProbeOutcome outcome = ProbeOutcome::PortClosed;
    std::optional<Fingerprint> key;
  };

  void add_step(uint32_t address, uint16_t port, ScriptStep step) {
    scripts_[{address, port}].push_back(std::move(step));
  }

  ProbeResult probe(const ProbeRequest& request) const override {
    auto it = scripts_.find({request.address, request.port});
    if (it == scripts_.end() || it->second.empty()) return {ProbeOutcome::PortClosed, {}};
    const auto& steps = it->second;
    const auto& step = steps[std::min(request.attempt, steps.size() - 1)];
    return {step.outcome, step.key};
  }

 private:
  std::map<HostPort, std::vector<ScriptStep>> scripts_;
};

struct ScannerFixtureParseResult {
  SimulatedScanner scanner;
  std::vector<std::string> diagnostics;
};

/// Parses the scanner fixture format, the ground-truth columns plus a
/// scripted outcome:
///   <ipv4> <port> <protocol-label> <hex-fingerprint|-> <unix_ts> <outcome>
/// with outcome one of key | closed | failed | timeout. Lines for the same
/// (address, port) script successive responses.
inline ScannerFixtureParseResult parse_scanner_fixture(std::istream& in) {
  ScannerFixtureParseResult out;
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
    if (fields.size() != 6) {
      fail("expected: <ipv4> <port> <protocol> <fingerprint|-> <ts> <outcome>");
      continue;
    }
    auto addr = parse_ipv4(fields[0]);
    auto port = util::parse_int<uint16_t>(fields[1]);
    std::string protocol(fields[2]);
    auto ts = util::parse_int<Timestamp>(fields[4]);
    std::string outcome(fields[5]);
    if (!addr || !port || *port == 0) { fail("bad address/port"); continue; }
    if (!valid_protocol(protocol)) { fail("unknown protocol '" + protocol + "'"); continue; }
    if (!ts) { fail("bad timestamp"); continue; }

    SimulatedScanner::ScriptStep step;
    if (outcome == "key") {
      auto fp = parse_fingerprint(fields[3]);
      if (!fp) { fail("key outcome needs a fingerprint"); continue; }
      step = {ProbeOutcome::Key, *fp};
    } else if (outcome == "closed") {
      step = {ProbeOutcome::PortClosed, {}};
    } else if (outcome == "failed") {
      step = {ProbeOutcome::HandshakeFailed, {}};
    } else if (outcome == "timeout") {
      step = {ProbeOutcome::Timeout, {}};
    } else {
      fail("unknown outcome '" + outcome + "'");
      continue;
    }
    out.scanner.add_step(*addr, *port, std::move(step));
  }
  return out;
}

}  // namespace bgpsieve
