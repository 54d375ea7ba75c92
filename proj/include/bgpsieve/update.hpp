#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bgpsieve/asn.hpp"
#include "bgpsieve/prefix.hpp"
#include "bgpsieve/util.hpp"

namespace bgpsieve {

using Timestamp = int64_t;  // seconds since epoch

/// One BGP message as seen by a collector peer.
struct BgpUpdate {
  enum class Kind { Announce, Withdraw };

  Timestamp timestamp = 0;
  Kind kind = Kind::Announce;
  Prefix prefix{0, 0};
  std::vector<Asn> path;  // observer-first, origin last; empty for withdraws
  Asn peer{1};

  static BgpUpdate announce(Timestamp ts, Prefix p, Asn peer, std::vector<Asn> path) {
    if (path.empty()) throw std::invalid_argument("announce needs a path");
    return {ts, Kind::Announce, p, std::move(path), peer};
  }
  static BgpUpdate withdraw(Timestamp ts, Prefix p, Asn peer) {
    return {ts, Kind::Withdraw, p, {}, peer};
  }
};

struct FeedDiagnostic {
  size_t line = 0;
  std::string message;
};

struct ParsedFeed {
  std::vector<BgpUpdate> updates;
  std::vector<FeedDiagnostic> diagnostics;
};

/// Parses the line-oriented feed format:
///   <unix_ts> <A|W> <prefix> <peer_asn> [<asn> <asn> ...]
/// Path order is observer-first. Table dumps are the same format with only
/// A records. Malformed lines are skipped and reported, never fatal.
/// AS_SET path segments ({...}) have no meaning in the model and reject
/// the whole record.
inline ParsedFeed parse_feed(std::istream& in) {
  ParsedFeed out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = util::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    auto fields = util::split_ws(sv);
    auto fail = [&](std::string msg) {
      out.diagnostics.push_back({lineno, std::move(msg)});
    };
    if (fields.size() < 4) {
      fail("expected: <ts> <A|W> <prefix> <peer> [path...]");
      continue;
    }
    auto ts = util::parse_int<Timestamp>(fields[0]);
    if (!ts) {
      fail("bad timestamp '" + std::string(fields[0]) + "'");
      continue;
    }
    auto prefix = Prefix::parse(fields[2]);
    if (!prefix) {
      fail("bad prefix '" + std::string(fields[2]) + "'");
      continue;
    }
    auto peer = util::parse_int<uint32_t>(fields[3]);
    if (!peer || *peer == 0) {
      fail("bad peer ASN '" + std::string(fields[3]) + "'");
      continue;
    }
    if (fields[1] == "A") {
      std::vector<Asn> path;
      bool ok = true;
      for (size_t i = 4; i < fields.size(); ++i) {
        if (fields[i].find('{') != std::string_view::npos) {
          fail("AS_SET segments are not supported");
          ok = false;
          break;
        }
        auto asn = util::parse_int<uint32_t>(fields[i]);
        if (!asn || *asn == 0) {
          fail("bad path ASN '" + std::string(fields[i]) + "'");
          ok = false;
          break;
        }
        path.push_back(Asn(*asn));
      }
      if (!ok) continue;
      if (path.empty()) {
        fail("announce without a path");
        continue;
      }
      out.updates.push_back(BgpUpdate::announce(*ts, *prefix, Asn(*peer), std::move(path)));
    } else if (fields[1] == "W") {
      if (fields.size() > 4) {
        fail("withdraw must not carry a path");
        continue;
      }
      out.updates.push_back(BgpUpdate::withdraw(*ts, *prefix, Asn(*peer)));
    } else {
      fail("unknown record kind '" + std::string(fields[1]) + "'");
    }
  }
  return out;
}

inline void write_feed_line(std::ostream& os, const BgpUpdate& u) {
  os << u.timestamp << ' ' << (u.kind == BgpUpdate::Kind::Announce ? 'A' : 'W') << ' '
     << u.prefix.to_string() << ' ' << u.peer.value();
  for (Asn a : u.path) os << ' ' << a.value();
  os << '\n';
}

}  // namespace bgpsieve
