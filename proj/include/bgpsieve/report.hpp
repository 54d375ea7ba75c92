#pragma once

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace bgpsieve {

struct FilterCounts {
  uint64_t covered = 0;
  uint64_t legitimate = 0;
  friend bool operator==(const FilterCounts&, const FilterCounts&) = default;
};

/// Batch statistics over one run: per-filter contributions, the distinct
/// cumulative result, and the unique contribution of each filter.
struct RunReport {
  uint64_t total_events = 0;
  uint64_t rejected_alarms = 0;
  FilterCounts irr;
  FilterCounts topology;
  FilterCounts tls;
  uint64_t cumulative_legitimate_distinct = 0;
  uint64_t irr_unique = 0;
  uint64_t topology_unique = 0;
  uint64_t tls_unique = 0;
  uint64_t suspicious = 0;
  uint64_t not_covered = 0;
  double recurrence_mean = 0.0;
  uint64_t recurrence_max = 0;
  double coverage = 0.0;  // events covered by any data source / total
  uint64_t seed = 0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline std::string format_percent(uint64_t part, uint64_t total) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << (total ? 100.0 * double(part) / double(total) : 0.0)
     << '%';
  return os.str();
}

/// Plain-text table, one row per filter plus the cumulative row.
/// Percentages are printed to two decimals.
inline std::string emit_report_table(const RunReport& r) {
  std::ostringstream os;
  auto row = [&](const std::string& label, uint64_t value, const std::string& pct) {
    os << std::left << std::setw(34) << label << std::right << std::setw(10) << value
       << std::setw(10) << pct << '\n';
  };
  row("All subMOAS events", r.total_events, format_percent(r.total_events, r.total_events));
  row("  covered (any source)",
      uint64_t(r.coverage * double(r.total_events) + 0.5),
      format_percent(uint64_t(r.coverage * double(r.total_events) + 0.5), r.total_events));
  row("IRR analysis", r.irr.legitimate, format_percent(r.irr.legitimate, r.total_events));
  row("topology reasoning", r.topology.legitimate,
      format_percent(r.topology.legitimate, r.total_events));
  row("SSL/TLS scans", r.tls.legitimate, format_percent(r.tls.legitimate, r.total_events));
  row("Legitimate events (cum.)", r.cumulative_legitimate_distinct,
      format_percent(r.cumulative_legitimate_distinct, r.total_events));
  row("  single-filter unique: IRR", r.irr_unique, format_percent(r.irr_unique, r.total_events));
  row("  single-filter unique: topology", r.topology_unique,
      format_percent(r.topology_unique, r.total_events));
  row("  single-filter unique: SSL/TLS", r.tls_unique,
      format_percent(r.tls_unique, r.total_events));
  row("Suspicious events", r.suspicious, format_percent(r.suspicious, r.total_events));
  row("Not covered", r.not_covered, format_percent(r.not_covered, r.total_events));
  os << "rejected alarms: " << r.rejected_alarms << ", recurrence mean: " << std::fixed
     << std::setprecision(2) << r.recurrence_mean << ", recurrence max: " << r.recurrence_max
     << ", seed: " << r.seed << '\n';
  return os.str();
}

/// Structured form; parse_report(emit_report_structured(r)) == r.
inline std::string emit_report_structured(const RunReport& r) {
  nlohmann::ordered_json j;
  j["total_events"] = r.total_events;
  j["rejected_alarms"] = r.rejected_alarms;
  j["filters"] = nlohmann::ordered_json{
      {"irr", {{"covered", r.irr.covered}, {"legitimate", r.irr.legitimate}}},
      {"topology", {{"covered", r.topology.covered}, {"legitimate", r.topology.legitimate}}},
      {"tls", {{"covered", r.tls.covered}, {"legitimate", r.tls.legitimate}}},
  };
  j["cumulative_legitimate_distinct"] = r.cumulative_legitimate_distinct;
  j["single_filter_unique"] = nlohmann::ordered_json{
      {"irr", r.irr_unique}, {"topology", r.topology_unique}, {"tls", r.tls_unique}};
  j["suspicious"] = r.suspicious;
  j["not_covered"] = r.not_covered;
  j["recurrence"] = nlohmann::ordered_json{{"mean", r.recurrence_mean}, {"max", r.recurrence_max}};
  j["coverage"] = r.coverage;
  j["seed"] = r.seed;
  return j.dump(2) + "\n";
}

inline RunReport parse_report(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  RunReport r;
  r.total_events = j.at("total_events").get<uint64_t>();
  r.rejected_alarms = j.at("rejected_alarms").get<uint64_t>();
  const auto& f = j.at("filters");
  r.irr = {f.at("irr").at("covered").get<uint64_t>(), f.at("irr").at("legitimate").get<uint64_t>()};
  r.topology = {f.at("topology").at("covered").get<uint64_t>(),
                f.at("topology").at("legitimate").get<uint64_t>()};
  r.tls = {f.at("tls").at("covered").get<uint64_t>(), f.at("tls").at("legitimate").get<uint64_t>()};
  r.cumulative_legitimate_distinct = j.at("cumulative_legitimate_distinct").get<uint64_t>();
  const auto& u = j.at("single_filter_unique");
  r.irr_unique = u.at("irr").get<uint64_t>();
  r.topology_unique = u.at("topology").get<uint64_t>();
  r.tls_unique = u.at("tls").get<uint64_t>();
  r.suspicious = j.at("suspicious").get<uint64_t>();
  r.not_covered = j.at("not_covered").get<uint64_t>();
  r.recurrence_mean = j.at("recurrence").at("mean").get<double>();
  r.recurrence_max = j.at("recurrence").at("max").get<uint64_t>();
  r.coverage = j.at("coverage").get<double>();
  r.seed = j.at("seed").get<uint64_t>();
  return r;
}

}  // namespace bgpsieve
