#pragma once

#include <future>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bgpsieve/alarm.hpp"
#include "bgpsieve/irr_graph.hpp"
#include "bgpsieve/report.hpp"
#include "bgpsieve/rib_engine.hpp"
#include "bgpsieve/tls_filter.hpp"
#include "bgpsieve/topology.hpp"

namespace bgpsieve {

enum class Cumulative { Legitimate, Suspicious, NotCovered };

inline const char* to_string(Cumulative c) {
  switch (c) {
    case Cumulative::Legitimate: return "Legitimate";
    case Cumulative::Suspicious: return "Suspicious";
    case Cumulative::NotCovered: return "NotCovered";
  }
  return "?";
}

/// Per-alarm result: the three independent filter verdicts plus the
/// cumulative one. Legitimate as soon as any filter finds evidence;
/// NotCovered only when no data source knew anything; the strongest
/// negative statement is Suspicious - assessment legitimizes, it never
/// convicts.
struct Assessment {
  Alarm alarm;
  uint64_t occurrences = 1;
  FilterVerdict irr;
  FilterVerdict topology;
  FilterVerdict tls;
  Cumulative cumulative = Cumulative::NotCovered;
  std::vector<std::string> evidence;
};

inline Cumulative combine(const FilterVerdict& irr, const FilterVerdict& topology,
                          const FilterVerdict& tls) {
  if (irr.legitimate() || topology.legitimate() || tls.legitimate())
    return Cumulative::Legitimate;
  if (!irr.covered() && !topology.covered() && !tls.covered()) return Cumulative::NotCovered;
  return Cumulative::Suspicious;
}

/// Read-only inputs shared by every assessment. Any store may be missing;
/// the corresponding filter then reports NotCovered and the run continues.
struct Stores {
  const RibEngine* engine = nullptr;
  const IrrGraph* irr = nullptr;
  const GroundTruth* ground_truth = nullptr;
  const Scanner* scanner = nullptr;
};

struct AssessConfig {
  int max_depth = 4;
  TlsFilterConfig tls;
};

/// Runs the three filters independently over the read-only stores. Filters
/// are pure functions of (stores, alarm), so their evaluation order never
/// matters.
inline Assessment assess(const Alarm& alarm, const Stores& stores,
                         const AssessConfig& config = {}) {
  Assessment out;
  out.alarm = alarm;

  SubMoasEvent event{alarm.victim_as,        alarm.victim_prefix, alarm.attacker_as,
                     alarm.attacker_subprefix, alarm.reported_at,   alarm.reported_at, 1};
  const RibEngine::EventRecord* record = nullptr;
  if (stores.engine) {
    record = stores.engine->first_record(alarm.key());
    if (record) {
      event.first_seen = record->opened_at;
      event.last_seen = record->closed_at.value_or(stores.engine->coverage_end());
    }
  }

  if (stores.irr) {
    out.irr = irr_filter(*stores.irr, event, config.max_depth);
  } else {
    out.irr = {VerdictKind::NotCovered, "no IRR snapshot loaded"};
  }

  if (stores.engine) {
    PathSet ps;
    if (record) {
      ps.paths = record->paths_at_open;
      ps.source = "event open time";
    } else {
      ps = collect_paths(stores.engine->tree(), event, "current rib");
    }
    out.topology = topology_filter(ps, alarm.victim_as, alarm.attacker_as);
  } else {
    out.topology = {VerdictKind::NotCovered, "no BGP feed loaded"};
  }

  if (!stores.ground_truth || !stores.scanner || !stores.engine) {
    out.tls = {VerdictKind::NotCovered, "no ground truth or scanner available"};
  } else if (!record) {
    // retrospective alarms never had targeted scans
    out.tls = {VerdictKind::NotCovered, "event unknown to the rib; no targeted scan data"};
  } else {
    out.tls = tls_filter(*stores.ground_truth, *stores.scanner, event, *stores.engine,
                         config.tls);
  }

  out.cumulative = combine(out.irr, out.topology, out.tls);
  auto note = [&](const char* name, const FilterVerdict& v) {
    if (!v.evidence.empty())
      out.evidence.push_back(std::string(name) + ": " + to_string(v.kind) + ": " + v.evidence);
  };
  note("irr", out.irr);
  note("topology", out.topology);
  note("tls", out.tls);
  return out;
}

inline nlohmann::ordered_json assessment_to_json(const Assessment& a) {
  nlohmann::ordered_json j;
  j["alarm"] = nlohmann::ordered_json{
      {"victim_as", a.alarm.victim_as.value()},
      {"victim_prefix", a.alarm.victim_prefix.to_string()},
      {"attacker_as", a.alarm.attacker_as.value()},
      {"attacker_subprefix", a.alarm.attacker_subprefix.to_string()},
      {"reported_at", a.alarm.reported_at},
      {"source", a.alarm.source},
  };
  j["occurrences"] = a.occurrences;
  j["verdicts"] = nlohmann::ordered_json{{"irr", to_string(a.irr.kind)},
                                         {"topology", to_string(a.topology.kind)},
                                         {"tls", to_string(a.tls.kind)}};
  j["cumulative"] = to_string(a.cumulative);
  j["evidence"] = a.evidence;
  return j;
}

struct RunBatchInputs {
  std::vector<BgpUpdate> feed;
  std::optional<std::vector<IrrObject>> irr_objects;
  std::optional<std::vector<KeyObservation>> ground_truth;
  const Scanner* scanner = nullptr;
  // one of: explicit alarm records, or self-detection from the feed
  std::optional<std::vector<std::string>> alarm_lines;
  bool self_detect = false;
  AssessConfig config;
  RibEngine::Config engine_config;
  uint64_t seed = 0;
  int jobs = 1;
};

struct RunBatchResult {
  RunReport report;
  std::vector<Assessment> assessments;
  std::vector<std::string> diagnostics;
};

/// The full pipeline: replay the feed, build the stores, assess every
/// alarm (or every self-detected strict subMOAS), aggregate the report.
/// Identical inputs produce identical results; alarm-level parallelism
/// only splits the loop, aggregation stays in alarm order.
inline RunBatchResult run_batch(const RunBatchInputs& in) {
  if (!in.alarm_lines.has_value() && !in.self_detect)
    throw std::invalid_argument("need an alarm source: alarm records or self-detect");

  RunBatchResult out;
  out.report.seed = in.seed;

  RibEngine engine(in.engine_config);
  for (const auto& u : in.feed) {
    auto r = engine.apply(u);
    for (auto& d : r.diagnostics) out.diagnostics.push_back("feed: " + d);
  }

  std::optional<IrrGraph> graph;
  if (in.irr_objects) {
    graph = build_graph(*in.irr_objects);
    for (const auto& d : graph->stats().diagnostics) out.diagnostics.push_back("irr: " + d);
  }

  std::optional<GroundTruth> gt;
  if (in.ground_truth) {
    gt = build_ground_truth(*in.ground_truth);
    if (!gt->entries.empty() && engine.has_updates()) {
      *gt = sanitize_ground_truth(*gt, engine);
      if (gt->removed_unstable)
        out.diagnostics.push_back("ground truth: removed " +
                                  std::to_string(gt->removed_unstable) +
                                  " host(s) affected by subMOAS events during their scan");
    }
  }

  // Recurring alarms are assessed once and carry their occurrence count.
  std::vector<Alarm> alarms;
  std::vector<uint64_t> occurrences;
  std::map<EventKey, size_t> alarm_index;
  auto add_alarm = [&](const Alarm& a, uint64_t count) {
    auto [it, fresh] = alarm_index.try_emplace(a.key(), alarms.size());
    if (fresh) {
      alarms.push_back(a);
      occurrences.push_back(count);
    } else {
      occurrences[it->second] += count;
      alarms[it->second].reported_at = std::min(alarms[it->second].reported_at, a.reported_at);
    }
  };

  if (in.self_detect) {
    for (const auto& e : dedupe_events(engine.event_history())) {
      add_alarm(Alarm{e.victim_as, e.victim_prefix, e.attacker_as, e.attacker_subprefix,
                      e.first_seen, "self-detect"},
                e.occurrence_count);
    }
  } else {
    for (const auto& line : *in.alarm_lines) {
      auto sv = util::trim(line);
      if (sv.empty() || sv.front() == '#') continue;
      auto parsed = parse_alarm(sv);
      if (auto* reject = std::get_if<AlarmReject>(&parsed)) {
        ++out.report.rejected_alarms;
        out.diagnostics.push_back("alarm rejected: " + reject->reason + ": " + std::string(sv));
        continue;
      }
      add_alarm(std::get<Alarm>(parsed), 1);
    }
  }

  Stores stores{engine.has_updates() ? &engine : nullptr,
                graph ? &*graph : nullptr,
                gt ? &*gt : nullptr,
                in.scanner};

  out.assessments.resize(alarms.size());
  int jobs = std::max(1, in.jobs);
  auto worker = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      out.assessments[i] = assess(alarms[i], stores, in.config);
      out.assessments[i].occurrences = occurrences[i];
    }
  };
  if (jobs == 1 || alarms.size() < 2) {
    worker(0, alarms.size());
  } else {
    size_t chunk = (alarms.size() + jobs - 1) / jobs;
    std::vector<std::future<void>> futures;
    for (size_t begin = 0; begin < alarms.size(); begin += chunk)
      futures.push_back(std::async(std::launch::async, worker, begin,
                                   std::min(begin + chunk, alarms.size())));
    for (auto& f : futures) f.get();
  }

  // aggregate; cumulative distinct re-derived by set union as a cross-check
  auto& rep = out.report;
  rep.total_events = alarms.size();
  std::set<size_t> legit_irr, legit_topology, legit_tls;
  std::vector<uint64_t> recurrence_counts;
  for (size_t i = 0; i < out.assessments.size(); ++i) {
    const auto& a = out.assessments[i];
    rep.irr.covered += a.irr.covered();
    rep.topology.covered += a.topology.covered();
    rep.tls.covered += a.tls.covered();
    if (a.irr.legitimate()) legit_irr.insert(i);
    if (a.topology.legitimate()) legit_topology.insert(i);
    if (a.tls.legitimate()) legit_tls.insert(i);
    if (a.cumulative == Cumulative::Suspicious) ++rep.suspicious;
    if (a.cumulative == Cumulative::NotCovered) ++rep.not_covered;
    recurrence_counts.push_back(a.occurrences);
  }
  rep.irr.legitimate = legit_irr.size();
  rep.topology.legitimate = legit_topology.size();
  rep.tls.legitimate = legit_tls.size();

  std::set<size_t> legit_union = legit_irr;
  legit_union.insert(legit_topology.begin(), legit_topology.end());
  legit_union.insert(legit_tls.begin(), legit_tls.end());
  rep.cumulative_legitimate_distinct = legit_union.size();
  uint64_t direct_count = 0;
  for (const auto& a : out.assessments)
    if (a.cumulative == Cumulative::Legitimate) ++direct_count;
  if (direct_count != rep.cumulative_legitimate_distinct)
    throw std::logic_error("cumulative accounting mismatch");

  for (size_t i : legit_union) {
    int sources = int(legit_irr.count(i)) + int(legit_topology.count(i)) +
                  int(legit_tls.count(i));
    if (sources == 1) {
      if (legit_irr.count(i)) ++rep.irr_unique;
      else if (legit_topology.count(i)) ++rep.topology_unique;
      else ++rep.tls_unique;
    }
  }

  uint64_t covered_any = 0;
  for (const auto& a : out.assessments)
    if (a.irr.covered() || a.topology.covered() || a.tls.covered()) ++covered_any;
  rep.coverage = rep.total_events ? double(covered_any) / double(rep.total_events) : 0.0;

  uint64_t total_occurrences = 0;
  for (uint64_t c : recurrence_counts) {
    total_occurrences += c;
    rep.recurrence_max = std::max(rep.recurrence_max, c);
  }
  rep.recurrence_mean =
      recurrence_counts.empty() ? 0.0 : double(total_occurrences) / double(recurrence_counts.size());
  return out;
}

}  // namespace bgpsieve
