// snapshot_diff: synthesize an update stream from two table exports, for
// feeds that only come as periodic snapshots. Announcements present only
// in the new dump become A records, ones that disappeared become W
// records, and per-peer path changes re-announce.

#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "bgpsieve/io.hpp"
#include "bgpsieve/update.hpp"

using namespace bgpsieve;

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: snapshot_diff <old-dump> <new-dump>\n";
    return 1;
  }
  try {
    auto load = [](const std::string& path) {
      std::istringstream in(read_file_maybe_gzip(path));
      auto parsed = parse_feed(in);
      for (const auto& d : parsed.diagnostics)
        std::cerr << path << ":" << d.line << ": " << d.message << "\n";
      std::map<std::pair<Prefix, Asn>, BgpUpdate> routes;
      Timestamp max_ts = 0;
      for (const auto& u : parsed.updates) {
        if (u.kind != BgpUpdate::Kind::Announce) {
          std::cerr << path << ": ignoring withdraw record in a table dump\n";
          continue;
        }
        routes[{u.prefix, u.peer}] = u;
        max_ts = std::max(max_ts, u.timestamp);
      }
      return std::pair(routes, max_ts);
    };

    auto [old_routes, old_ts] = load(argv[1]);
    auto [new_routes, new_ts] = load(argv[2]);
    Timestamp ts = std::max(new_ts, old_ts + 1);

    for (const auto& [key, u] : old_routes)
      if (!new_routes.count(key))
        write_feed_line(std::cout, BgpUpdate::withdraw(ts, key.first, key.second));
    for (const auto& [key, u] : new_routes) {
      auto it = old_routes.find(key);
      if (it != old_routes.end() && it->second.path == u.path) continue;
      BgpUpdate a = u;
      a.timestamp = std::max(a.timestamp, ts);
      write_feed_line(std::cout, a);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
