// assess: replay a BGP feed, build the IRR / ground-truth stores, and
// classify hijacking alarms as legitimate, suspicious, or not covered.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <CLI11.hpp>

#include "bgpsieve/bgpsieve.hpp"

namespace {

using namespace bgpsieve;

struct Options {
  std::string feed;
  std::string feed_format = "text";
  std::vector<std::string> irr_files;
  std::string ground_truth;
  std::string scanner_fixture;
  std::string alarms;  // "-" reads line-delimited records from stdin
  bool self_detect = false;
  std::string report_format = "table";
  int max_depth = 4;
  uint64_t seed = 0;
  int jobs = 1;
  int retention_hours = 72;
  bool print_assessments = false;
  std::string listen_socket;
  std::string export_graph;
};

std::vector<BgpUpdate> load_feed(const Options& opt, std::vector<std::string>& diagnostics) {
  std::string bytes = read_file_maybe_gzip(opt.feed);
  std::istringstream in(bytes);
  if (opt.feed_format == "mrt") {
    auto result = mrt::parse(in);
    for (auto& d : result.diagnostics) diagnostics.push_back("mrt: " + d);
    return std::move(result.updates);
  }
  auto result = parse_feed(in);
  for (auto& d : result.diagnostics)
    diagnostics.push_back("feed line " + std::to_string(d.line) + ": " + d.message);
  return std::move(result.updates);
}

int serve_socket(const std::string& path, const Stores& stores, const AssessConfig& config) {
  ::unlink(path.c_str());
  int listener = ::socket(AF_UNIX, SOCK_STREAM, 0);
  if (listener < 0) {
    std::cerr << "error: cannot create socket\n";
    return 1;
  }
  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  if (path.size() >= sizeof addr.sun_path) {
    std::cerr << "error: socket path too long\n";
    return 1;
  }
  std::snprintf(addr.sun_path, sizeof addr.sun_path, "%s", path.c_str());
  if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
      ::listen(listener, 8) != 0) {
    std::cerr << "error: cannot bind " << path << "\n";
    ::close(listener);
    return 1;
  }
  std::cerr << "listening on " << path << " (one alarm record per line)\n";
  for (;;) {
    int conn = ::accept(listener, nullptr, nullptr);
    if (conn < 0) break;
    std::string pending;
    char buf[4096];
    ssize_t n;
    while ((n = ::read(conn, buf, sizeof buf)) > 0) {
      pending.append(buf, size_t(n));
      size_t pos;
      while ((pos = pending.find('\n')) != std::string::npos) {
        std::string line = pending.substr(0, pos);
        pending.erase(0, pos + 1);
        std::string reply;
        auto parsed = parse_alarm(line);
        if (auto* reject = std::get_if<AlarmReject>(&parsed)) {
          reply = nlohmann::ordered_json{{"error", reject->reason}}.dump() + "\n";
        } else {
          reply = assessment_to_json(assess(std::get<Alarm>(parsed), stores, config)).dump() +
                  "\n";
        }
        if (::write(conn, reply.data(), reply.size()) < 0) break;
      }
    }
    ::close(conn);
  }
  ::close(listener);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"assessment engine for BGP subprefix hijacking alarms"};
  app.add_option("--feed", opt.feed, "BGP feed file (text format, gzip ok)")->required();
  app.add_option("--feed-format", opt.feed_format, "feed format: text or mrt")
      ->check(CLI::IsMember({"text", "mrt"}));
  app.add_option("--irr", opt.irr_files, "RPSL registry snapshot(s), repeatable");
  app.add_option("--ground-truth", opt.ground_truth, "ground-truth key file");
  app.add_option("--scanner-fixture", opt.scanner_fixture, "scripted scanner responses");
  app.add_option("--alarms", opt.alarms, "alarm file, or - for stdin records");
  app.add_flag("--self-detect", opt.self_detect,
               "treat every strict subMOAS in the feed as an alarm");
  app.add_option("--report", opt.report_format, "report format: table or structured")
      ->check(CLI::IsMember({"table", "structured"}));
  app.add_option("--max-depth", opt.max_depth, "IRR query depth limit")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "seed recorded in the report");
  app.add_option("--jobs", opt.jobs, "alarm-level parallelism")->check(CLI::PositiveNumber);
  app.add_option("--retention-hours", opt.retention_hours, "journal retention window")
      ->check(CLI::PositiveNumber);
  app.add_flag("--assessments", opt.print_assessments, "print one record per alarm");
  app.add_option("--listen", opt.listen_socket,
                 "serve assessments on a unix socket instead of batch alarms");
  app.add_option("--export-graph", opt.export_graph,
                 "write <name>.nodes.csv and <name>.edges.csv of the IRR graph");
  CLI11_PARSE(app, argc, argv);

  const bool stdin_alarms = opt.alarms == "-";
  const bool service = !opt.listen_socket.empty();
  int alarm_sources = int(!opt.alarms.empty()) + int(opt.self_detect) + int(service);
  if (alarm_sources != 1) {
    std::cerr << "error: need exactly one of --alarms, --self-detect, --listen\n";
    return 1;
  }

  try {
    std::vector<std::string> diagnostics;

    RunBatchInputs inputs;
    inputs.feed = load_feed(opt, diagnostics);
    inputs.self_detect = opt.self_detect;
    inputs.seed = opt.seed;
    inputs.jobs = opt.jobs;
    inputs.config.max_depth = opt.max_depth;
    inputs.engine_config.retention_seconds = Timestamp(opt.retention_hours) * 3600;

    if (!opt.irr_files.empty()) {
      std::vector<IrrObject> objects;
      for (const auto& file : opt.irr_files) {
        std::istringstream in(read_file_maybe_gzip(file));
        std::string stem = file.substr(file.find_last_of('/') + 1);
        stem = stem.substr(0, stem.find('.'));
        auto parsed = parse_rpsl(in, util::to_upper(stem));
        for (auto& d : parsed.diagnostics)
          diagnostics.push_back(file + ":" + std::to_string(d.line) + ": " + d.message);
        for (auto& o : parsed.objects) objects.push_back(std::move(o));
      }
      inputs.irr_objects = std::move(objects);
    }

    if (!opt.ground_truth.empty()) {
      std::istringstream in(read_file_maybe_gzip(opt.ground_truth));
      auto parsed = parse_ground_truth_file(in);
      for (auto& d : parsed.diagnostics) diagnostics.push_back(opt.ground_truth + ": " + d);
      inputs.ground_truth = std::move(parsed.observations);
    }

    SimulatedScanner scanner;
    if (!opt.scanner_fixture.empty()) {
      std::istringstream in(read_file_maybe_gzip(opt.scanner_fixture));
      auto parsed = parse_scanner_fixture(in);
      for (auto& d : parsed.diagnostics) diagnostics.push_back(opt.scanner_fixture + ": " + d);
      scanner = std::move(parsed.scanner);
      inputs.scanner = &scanner;
    }

    if (stdin_alarms || service) {
      // build stores once, then assess record by record
      RibEngine engine(inputs.engine_config);
      for (const auto& u : inputs.feed) engine.apply(u);
      std::optional<IrrGraph> graph;
      if (inputs.irr_objects) graph = build_graph(*inputs.irr_objects);
      std::optional<GroundTruth> gt;
      if (inputs.ground_truth) {
        gt = build_ground_truth(*inputs.ground_truth);
        if (!gt->entries.empty() && engine.has_updates())
          *gt = sanitize_ground_truth(*gt, engine);
      }
      if (!opt.export_graph.empty() && graph) {
        std::ofstream nodes(opt.export_graph + ".nodes.csv");
        std::ofstream edges(opt.export_graph + ".edges.csv");
        graph->export_csv(nodes, edges);
      }
      Stores stores{engine.has_updates() ? &engine : nullptr, graph ? &*graph : nullptr,
                    gt ? &*gt : nullptr, inputs.scanner};
      AssessConfig config;
      config.max_depth = opt.max_depth;
      if (service) return serve_socket(opt.listen_socket, stores, config);

      std::string line;
      while (std::getline(std::cin, line)) {
        if (util::trim(line).empty()) continue;
        auto parsed = parse_alarm(line);
        if (auto* reject = std::get_if<AlarmReject>(&parsed)) {
          std::cout << nlohmann::ordered_json{{"error", reject->reason}}.dump() << "\n";
          continue;
        }
        std::cout << assessment_to_json(assess(std::get<Alarm>(parsed), stores, config)).dump()
                  << "\n";
      }
      return 0;
    }

    if (!opt.alarms.empty()) {
      inputs.alarm_lines = read_lines(opt.alarms);
    }

    auto result = run_batch(inputs);
    for (const auto& d : diagnostics) std::cerr << d << "\n";
    for (const auto& d : result.diagnostics) std::cerr << d << "\n";

    if (!opt.export_graph.empty() && inputs.irr_objects) {
      auto graph = build_graph(*inputs.irr_objects);
      std::ofstream nodes(opt.export_graph + ".nodes.csv");
      std::ofstream edges(opt.export_graph + ".edges.csv");
      graph.export_csv(nodes, edges);
    }

    if (opt.report_format == "structured") {
      nlohmann::ordered_json doc;
      doc["assessments"] = nlohmann::ordered_json::array();
      for (const auto& a : result.assessments)
        doc["assessments"].push_back(assessment_to_json(a));
      doc["report"] = nlohmann::ordered_json::parse(emit_report_structured(result.report));
      std::cout << doc.dump(2) << "\n";
    } else {
      if (opt.print_assessments)
        for (const auto& a : result.assessments)
          std::cout << assessment_to_json(a).dump() << "\n";
      std::cout << emit_report_table(result.report);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
