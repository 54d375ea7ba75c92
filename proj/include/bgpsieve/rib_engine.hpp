#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bgpsieve/events.hpp"
#include "bgpsieve/prefix_tree.hpp"

namespace bgpsieve {

/// Thrown when a stability query asks about a window the update journal
/// does not cover; the caller must discard the associated scan.
struct JournalGapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Replays a BGP feed against the prefix tree and maintains the set of
/// open strict subMOAS events.
///
/// An event (v, p, a, p') is open while all of these hold:
///   - a is the sole origin announcing exactly p',
///   - v announces p, with p' a strict subprefix of p,
///   - a has no covering legitimacy at p (a not among the origins of p or
///     any less specific prefix).
/// Any update that breaks a condition closes the event; updates can also
/// open events (including withdraws, e.g. when an attacker drops the
/// covering route that used to legitimize it).
///
/// Single-writer: one actor applies updates; readers consume snapshots and
/// the immutable event history between updates.
class RibEngine {
 public:
  struct Config {
    Timestamp retention_seconds = 72 * 3600;  // journal window, feed time
  };

  struct EventRecord {
    uint64_t id = 0;
    EventKey key;
    Timestamp opened_at = 0;
    std::optional<Timestamp> closed_at;
    std::set<std::vector<Asn>> paths_at_open;  // event-specific AS topology
  };

  struct OpenedEvent {
    uint64_t id = 0;
    SubMoasEvent event;
  };

  struct ApplyResult {
    std::vector<OpenedEvent> opened;
    std::vector<uint64_t> closed;
    std::vector<std::string> diagnostics;
  };

  RibEngine() : RibEngine(Config{}) {}
  explicit RibEngine(Config config) : config_(config) {}

  struct SeedSummary {
    std::vector<FeedDiagnostic> diagnostics;
    size_t error_count = 0;
  };

  /// Seeds the tree from a table export without extracting events;
  /// conflicts already present in the dump are not "new".
  SeedSummary seed_table(const std::vector<BgpUpdate>& records) {
    auto result = load_table_dump(records);
    tree_ = std::move(result.tree);
    return {std::move(result.diagnostics), result.error_count};
  }

  ApplyResult apply(const BgpUpdate& u) {
    ApplyResult result;
    bool origin_changed = false;
    if (u.kind == BgpUpdate::Kind::Announce) {
      origin_changed = tree_.announce(u.prefix, u.peer, u.path, u.timestamp);
    } else {
      auto changed = tree_.withdraw(u.prefix, u.peer, u.timestamp);
      if (!changed) {
        result.diagnostics.push_back("withdraw of never-announced " + u.prefix.to_string() +
                                     " from peer " + std::to_string(u.peer.value()));
        note_update(u);
        return result;
      }
      origin_changed = *changed;
    }
    if (origin_changed) origin_changes_[u.prefix].push_back(u.timestamp);

    reevaluate(u.prefix, u.timestamp, result);
    note_update(u);
    return result;
  }

  const PrefixTree& tree() const { return tree_; }

  std::vector<EventKey> open_event_keys() const {
    std::vector<EventKey> out;
    for (const auto& [key, idx] : open_by_key_) out.push_back(key);
    return out;
  }

  const std::vector<EventRecord>& event_records() const { return records_; }

  const EventRecord* find_record(uint64_t id) const {
    return id < records_.size() ? &records_[id] : nullptr;
  }

  /// First record (chronologically) for a given conflict tuple, if any.
  const EventRecord* first_record(const EventKey& key) const {
    auto it = records_by_key_.find(key);
    if (it == records_by_key_.end() || it->second.empty()) return nullptr;
    return &records_[it->second.front()];
  }

  /// One SubMoasEvent per open interval, in id order. Open intervals use
  /// the latest feed time as last_seen.
  std::vector<SubMoasEvent> event_history() const {
    std::vector<SubMoasEvent> out;
    out.reserve(records_.size());
    for (const auto& r : records_) {
      out.push_back({r.key.victim_as, r.key.victim_prefix, r.key.attacker_as,
                     r.key.attacker_subprefix, r.opened_at,
                     r.closed_at.value_or(last_ts_), 1});
    }
    return out;
  }

  /// True iff the tuple held continuously over [t0, t1]: one open interval
  /// contains the window and neither prefix saw its exact origin set
  /// change inside (t0, t1]. The opening announcement itself (at t0) does
  /// not count against stability.
  bool stable_during(const EventKey& key, Timestamp t0, Timestamp t1) const {
    if (t0 > t1) throw std::invalid_argument("bad stability interval");
    if (!has_updates_) throw JournalGapError("journal is empty");
    if (t0 < coverage_start() || t1 > last_ts_)
      throw JournalGapError("interval outside journal coverage");

    auto it = records_by_key_.find(key);
    bool contained = false;
    if (it != records_by_key_.end()) {
      for (size_t idx : it->second) {
        const auto& r = records_[idx];
        if (r.opened_at <= t0 && (!r.closed_at || *r.closed_at > t1)) {
          contained = true;
          break;
        }
      }
    }
    if (!contained) return false;
    return !changed_within(key.victim_prefix, t0, t1) &&
           !changed_within(key.attacker_subprefix, t0, t1);
  }

  bool has_updates() const { return has_updates_; }
  Timestamp coverage_start() const {
    return std::max(first_ts_, last_ts_ - config_.retention_seconds);
  }
  Timestamp coverage_end() const { return last_ts_; }

  const std::deque<BgpUpdate>& journal() const { return journal_; }

 private:
  void note_update(const BgpUpdate& u) {
    if (!has_updates_) {
      first_ts_ = u.timestamp;
      has_updates_ = true;
    }
    last_ts_ = std::max(last_ts_, u.timestamp);
    journal_.push_back(u);
    Timestamp cutoff = last_ts_ - config_.retention_seconds;
    while (!journal_.empty() && journal_.front().timestamp < cutoff) journal_.pop_front();
  }

  bool changed_within(Prefix p, Timestamp t0, Timestamp t1) const {
    auto it = origin_changes_.find(p);
    if (it == origin_changes_.end()) return false;
    const auto& ts = it->second;
    auto lo = std::upper_bound(ts.begin(), ts.end(), t0);
    return lo != ts.end() && *lo <= t1;
  }

  /// Valid conflict tuples whose attacker subprefix is exactly `sub`.
  std::vector<EventKey> valid_tuples(Prefix sub) const {
    std::vector<EventKey> out;
    auto exact = tree_.origins_exact(sub);
    if (exact.size() != 1) return out;
    Asn attacker = *exact.begin();
    for (Prefix p : tree_.announced_ancestors(sub)) {
      if (tree_.origins_covering(p).count(attacker)) continue;
      for (Asn victim : tree_.origins_exact(p))
        out.push_back({victim, p, attacker, sub});
    }
    return out;
  }

  void reevaluate(Prefix changed, Timestamp ts, ApplyResult& result) {
    // Conflict tuples can only have appeared or vanished where the changed
    // prefix participates: at itself or anywhere in its subtree (covering
    // sets of descendants include it; ancestors enter through their
    // descendants' tuples).
    std::set<Prefix> affected;
    for (Prefix p : tree_.announced_within(changed)) affected.insert(p);
    for (const auto& [key, idx] : open_by_key_)
      if (covers(changed, key.attacker_subprefix)) affected.insert(key.attacker_subprefix);

    for (Prefix sub : affected) {
      std::set<EventKey> valid;
      for (const auto& key : valid_tuples(sub)) valid.insert(key);

      // close first, then open: ids stay ordered by transition time
      std::vector<EventKey> to_close;
      for (const auto& [key, idx] : open_by_key_) {
        if (key.attacker_subprefix != sub) continue;
        if (!valid.count(key)) to_close.push_back(key);
      }
      for (const auto& key : to_close) {
        size_t idx = open_by_key_.at(key);
        records_[idx].closed_at = ts;
        open_by_key_.erase(key);
        result.closed.push_back(records_[idx].id);
      }
      for (const auto& key : valid) {
        if (open_by_key_.count(key)) continue;
        EventRecord rec;
        rec.id = records_.size();
        rec.key = key;
        rec.opened_at = ts;
        rec.paths_at_open = tree_.paths_covering(key.attacker_subprefix);
        open_by_key_[key] = records_.size();
        records_by_key_[key].push_back(records_.size());
        result.opened.push_back(
            {rec.id, SubMoasEvent{key.victim_as, key.victim_prefix, key.attacker_as,
                                  key.attacker_subprefix, ts, ts, 1}});
        records_.push_back(std::move(rec));
      }
    }
  }

  Config config_;
  PrefixTree tree_;

  std::deque<BgpUpdate> journal_;
  bool has_updates_ = false;
  Timestamp first_ts_ = 0;
  Timestamp last_ts_ = 0;

  std::map<Prefix, std::vector<Timestamp>> origin_changes_;
  std::vector<EventRecord> records_;
  std::map<EventKey, size_t> open_by_key_;
  std::map<EventKey, std::vector<size_t>> records_by_key_;
};

}  // namespace bgpsieve
