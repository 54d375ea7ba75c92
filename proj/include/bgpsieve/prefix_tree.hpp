#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bgpsieve/update.hpp"
#include "bgpsieve/route.hpp"

namespace bgpsieve {

/// Binary prefix tree over the current announcement state. A node at depth
/// d corresponds to a /d prefix; it carries a record only while at least
/// one collector peer announces that exact prefix. Withdrawn origins are
/// removed, so the tree reflects exactly the applied update sequence.
///
/// Per-peer semantics follow BGP: a peer's announce for a prefix replaces
/// that peer's previous route for it, a withdraw removes it.
class PrefixTree {
 public:
  struct StoredRoute {
    Asn origin{1};
    std::vector<Asn> raw_path;
    std::vector<Asn> path;  // collapsed
    Timestamp announced_at = 0;

    friend bool operator==(const StoredRoute& a, const StoredRoute& b) {
      return a.origin == b.origin && a.raw_path == b.raw_path &&
             a.announced_at == b.announced_at;
    }
  };

  struct Entry {
    Prefix prefix{0, 0};
    Asn peer{1};
    StoredRoute route;
    friend bool operator==(const Entry& a, const Entry& b) {
      return a.prefix == b.prefix && a.peer == b.peer && a.route == b.route;
    }
  };

  struct OriginInfo {
    Timestamp first_seen = 0;
    Timestamp last_seen = 0;
    std::set<std::vector<Asn>> paths;  // distinct collapsed paths
  };

  struct Snapshot {
    std::vector<Entry> entries;
    std::vector<std::tuple<Prefix, Asn, Timestamp>> origin_first_seen;
    friend bool operator==(const Snapshot& a, const Snapshot& b) {
      return a.entries == b.entries && a.origin_first_seen == b.origin_first_seen;
    }
  };

  PrefixTree() : root_(std::make_unique<Node>()) {}

  PrefixTree(PrefixTree&&) = default;
  PrefixTree& operator=(PrefixTree&&) = default;

  /// Applies an announce. Returns true iff the node's exact origin set
  /// changed (an origin appeared or disappeared).
  bool announce(Prefix prefix, Asn peer, const std::vector<Asn>& raw_path, Timestamp ts) {
    Node* node = descend(prefix, true);
    auto before = exact_origin_set(*node);
    StoredRoute stored{raw_path.back(), raw_path, collapse_path(raw_path), ts};
    // collapse_path keeps the origin last, so stored.origin must come from
    // the collapsed view to survive prepended origins
    stored.origin = stored.path.back();
    node->peer_routes[peer] = std::move(stored);
    auto after = exact_origin_set(*node);
    for (Asn o : after)
      if (node->origin_first_seen.find(o) == node->origin_first_seen.end())
        node->origin_first_seen[o] = ts;
    for (auto it = node->origin_first_seen.begin(); it != node->origin_first_seen.end();)
      it = after.count(it->first) ? std::next(it) : node->origin_first_seen.erase(it);
    return before != after;
  }

  /// Applies a withdraw. Returns std::nullopt for a never-announced
  /// (prefix, peer) pair, otherwise whether the exact origin set changed.
  std::optional<bool> withdraw(Prefix prefix, Asn peer, Timestamp) {
    Node* node = descend(prefix, false);
    if (!node) return std::nullopt;
    auto it = node->peer_routes.find(peer);
    if (it == node->peer_routes.end()) return std::nullopt;
    auto before = exact_origin_set(*node);
    node->peer_routes.erase(it);
    auto after = exact_origin_set(*node);
    for (auto fit = node->origin_first_seen.begin(); fit != node->origin_first_seen.end();)
      fit = after.count(fit->first) ? std::next(fit) : node->origin_first_seen.erase(fit);
    prune(prefix);
    return before != after;
  }

  bool announced(Prefix p) const {
    const Node* n = descend_const(p);
    return n && !n->peer_routes.empty();
  }

  /// Origin ASes announcing exactly `p`.
  std::set<Asn> origins_exact(Prefix p) const {
    const Node* n = descend_const(p);
    return n ? exact_origin_set(*n) : std::set<Asn>{};
  }

  /// Origins of `p` and of every announced less specific prefix.
  std::set<Asn> origins_covering(Prefix p) const {
    std::set<Asn> out;
    walk_ancestors(p, [&](Prefix, const Node& n) {
      auto o = exact_origin_set(n);
      out.insert(o.begin(), o.end());
    });
    return out;
  }

  /// Announced prefixes strictly covering `p`, outermost first.
  std::vector<Prefix> announced_ancestors(Prefix p) const {
    std::vector<Prefix> out;
    walk_ancestors(p, [&](Prefix q, const Node&) {
      if (q != p) out.push_back(q);
    });
    return out;
  }

  /// Announced prefixes inside `p`'s range, including `p` itself.
  std::vector<Prefix> announced_within(Prefix p) const {
    std::vector<Prefix> out;
    const Node* n = descend_const(p);
    if (n) collect_announced(*n, p.base(), p.length(), out);
    return out;
  }

  /// Per-origin record at `p` (first/last seen, distinct collapsed paths).
  std::map<Asn, OriginInfo> origin_records(Prefix p) const {
    std::map<Asn, OriginInfo> out;
    const Node* n = descend_const(p);
    if (!n) return out;
    for (const auto& [peer, r] : n->peer_routes) {
      auto& info = out[r.origin];
      info.paths.insert(r.path);
      info.last_seen = std::max(info.last_seen, r.announced_at);
    }
    for (auto& [origin, info] : out) {
      auto it = n->origin_first_seen.find(origin);
      info.first_seen = it != n->origin_first_seen.end() ? it->second : info.last_seen;
    }
    return out;
  }

  /// Distinct collapsed paths stored for exactly `p`.
  std::set<std::vector<Asn>> paths_exact(Prefix p) const {
    std::set<std::vector<Asn>> out;
    const Node* n = descend_const(p);
    if (n)
      for (const auto& [peer, r] : n->peer_routes) out.insert(r.path);
    return out;
  }

  /// Distinct collapsed paths stored for `p` and all its announced covers.
  std::set<std::vector<Asn>> paths_covering(Prefix p) const {
    std::set<std::vector<Asn>> out;
    walk_ancestors(p, [&](Prefix, const Node& n) {
      for (const auto& [peer, r] : n.peer_routes) out.insert(r.path);
    });
    return out;
  }

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    collect_entries(*root_, 0, 0, out);
    return out;
  }

  Snapshot snapshot() const {
    Snapshot s;
    s.entries = entries();
    collect_first_seen(*root_, 0, 0, s.origin_first_seen);
    return s;
  }

  size_t announced_prefix_count() const {
    size_t n = 0;
    count_announced(*root_, n);
    return n;
  }

 private:
  struct Node {
    std::unique_ptr<Node> child[2];
    std::map<Asn, StoredRoute> peer_routes;       // keyed by collector peer
    std::map<Asn, Timestamp> origin_first_seen;    // survives path churn
  };

  static std::set<Asn> exact_origin_set(const Node& n) {
    std::set<Asn> out;
    for (const auto& [peer, r] : n.peer_routes) out.insert(r.origin);
    return out;
  }

  static int bit_at(uint32_t base, int depth) { return (base >> (31 - depth)) & 1; }

  Node* descend(Prefix p, bool create) {
    Node* n = root_.get();
    for (int d = 0; d < p.length(); ++d) {
      int b = bit_at(p.base(), d);
      if (!n->child[b]) {
        if (!create) return nullptr;
        n->child[b] = std::make_unique<Node>();
      }
      n = n->child[b].get();
    }
    return n;
  }

  const Node* descend_const(Prefix p) const {
    const Node* n = root_.get();
    for (int d = 0; d < p.length(); ++d) {
      n = n->child[bit_at(p.base(), d)].get();
      if (!n) return nullptr;
    }
    return n;
  }

  template <typename F>
  void walk_ancestors(Prefix p, F&& f) const {
    const Node* n = root_.get();
    uint32_t base = 0;
    for (int d = 0; d <= p.length(); ++d) {
      if (!n->peer_routes.empty()) f(Prefix(base, d), *n);
      if (d == p.length()) break;
      int b = bit_at(p.base(), d);
      n = n->child[b].get();
      if (!n) break;
      if (b) base |= 1u << (31 - d);
    }
  }

  static void collect_announced(const Node& n, uint32_t base, int depth,
                                std::vector<Prefix>& out) {
    if (!n.peer_routes.empty()) out.push_back(Prefix(base, depth));
    for (int b = 0; b < 2; ++b)
      if (n.child[b])
        collect_announced(*n.child[b], b ? base | (1u << (31 - depth)) : base, depth + 1, out);
  }

  static void collect_entries(const Node& n, uint32_t base, int depth,
                              std::vector<Entry>& out) {
    for (const auto& [peer, r] : n.peer_routes) out.push_back({Prefix(base, depth), peer, r});
    for (int b = 0; b < 2; ++b)
      if (n.child[b])
        collect_entries(*n.child[b], b ? base | (1u << (31 - depth)) : base, depth + 1, out);
  }

  static void collect_first_seen(const Node& n, uint32_t base, int depth,
                                 std::vector<std::tuple<Prefix, Asn, Timestamp>>& out) {
    for (const auto& [origin, ts] : n.origin_first_seen)
      out.push_back({Prefix(base, depth), origin, ts});
    for (int b = 0; b < 2; ++b)
      if (n.child[b])
        collect_first_seen(*n.child[b], b ? base | (1u << (31 - depth)) : base, depth + 1, out);
  }

  static void count_announced(const Node& n, size_t& count) {
    if (!n.peer_routes.empty()) ++count;
    for (int b = 0; b < 2; ++b)
      if (n.child[b]) count_announced(*n.child[b], count);
  }

  /// Removes the now-empty chain under `p`, keeping interior nodes that
  /// still lead to announcements.
  void prune(Prefix p) {
    prune_rec(root_.get(), p, 0);
  }

  static bool prunable(const Node& n) {
    return n.peer_routes.empty() && !n.child[0] && !n.child[1];
  }

  static void prune_rec(Node* n, Prefix p, int depth) {
    if (depth == p.length()) return;
    int b = bit_at(p.base(), depth);
    Node* c = n->child[b].get();
    if (!c) return;
    prune_rec(c, p, depth + 1);
    if (prunable(*c)) n->child[b].reset();
  }

  std::unique_ptr<Node> root_;
};

struct TableLoadResult {
  PrefixTree tree;
  std::vector<FeedDiagnostic> diagnostics;
  size_t error_count = 0;
};

/// Builds a tree from a full table export (announce records only).
/// Duplicate records are idempotent; anything that is not an announce is
/// skipped with a per-record diagnostic and counted.
inline TableLoadResult load_table_dump(const std::vector<BgpUpdate>& records) {
  TableLoadResult out;
  size_t idx = 0;
  for (const auto& u : records) {
    ++idx;
    if (u.kind != BgpUpdate::Kind::Announce) {
      out.diagnostics.push_back({idx, "table dump record is not an announce"});
      ++out.error_count;
      continue;
    }
    out.tree.announce(u.prefix, u.peer, u.path, u.timestamp);
  }
  return out;
}

}  // namespace bgpsieve
