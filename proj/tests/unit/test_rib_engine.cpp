#include <catch2/catch_amalgamated.hpp>

#include "../helpers.hpp"
#include "../oracles.hpp"

using namespace bgpsieve;
using test::pfx;
using namespace test::cast;

namespace {

BgpUpdate ann(Timestamp ts, const std::string& prefix, uint32_t peer,
              std::initializer_list<uint32_t> path) {
  return BgpUpdate::announce(ts, pfx(prefix), Asn(peer), test::path(path));
}
BgpUpdate wdr(Timestamp ts, const std::string& prefix, uint32_t peer) {
  return BgpUpdate::withdraw(ts, pfx(prefix), Asn(peer));
}

}  // namespace

TEST_CASE("apply_update opens and closes the worked-example event") {
  RibEngine engine;
  engine.apply(ann(100, "10.1.0.0/16", kObserverK, {kObserverK, kCarol, kAlice}));

  auto r = engine.apply(ann(200, "10.1.0.0/17", kObserverM, {kObserverM, kOscar, kMallory}));
  REQUIRE(r.opened.size() == 1);
  const auto& e = r.opened[0].event;
  CHECK(e.victim_as == Asn(kAlice));
  CHECK(e.victim_prefix == pfx("10.1.0.0/16"));
  CHECK(e.attacker_as == Asn(kMallory));
  CHECK(e.attacker_subprefix == pfx("10.1.0.0/17"));
  CHECK(e.first_seen == 200);

  SECTION("withdrawing the forged announcement closes it") {
    auto r2 = engine.apply(wdr(300, "10.1.0.0/17", kObserverM));
    CHECK(r2.opened.empty());
    REQUIRE(r2.closed.size() == 1);
    CHECK(r2.closed[0] == r.opened[0].id);
    CHECK(engine.open_event_keys().empty());
    CHECK(engine.event_records()[0].closed_at == 300);
  }
  SECTION("the victim announcing the subprefix itself also closes it (no longer strict)") {
    auto r2 = engine.apply(ann(300, "10.1.0.0/17", kObserverK, {kObserverK, kCarol, kAlice}));
    CHECK(r2.opened.empty());
    REQUIRE(r2.closed.size() == 1);
  }
  SECTION("a covering announcement by the attacker closes it (legitimacy gained)") {
    auto r2 = engine.apply(ann(300, "10.0.0.0/8", kObserverM, {kObserverM, kOscar, kMallory}));
    REQUIRE(r2.closed.size() == 1);
    SECTION("and withdrawing that covering route reopens it") {
      auto r3 = engine.apply(wdr(400, "10.0.0.0/8", kObserverM));
      REQUIRE(r3.opened.size() == 1);
      CHECK(r3.opened[0].event.first_seen == 400);
    }
  }
}

TEST_CASE("same-origin subprefix announcements produce no event") {
  RibEngine engine;
  engine.apply(ann(100, "10.1.0.0/16", kObserverK, {kObserverK, kCarol, kAlice}));
  auto r = engine.apply(ann(200, "10.1.0.0/17", kObserverK, {kObserverK, kCarol, kAlice}));
  CHECK(r.opened.empty());
  CHECK(r.closed.empty());
}

TEST_CASE("withdraw of a never-announced prefix is a diagnosed no-op") {
  RibEngine engine;
  auto r = engine.apply(wdr(100, "10.1.0.0/16", kObserverK));
  CHECK(r.opened.empty());
  CHECK(r.closed.empty());
  REQUIRE(r.diagnostics.size() == 1);
}

TEST_CASE("one event per covering (victim_prefix, victim_as) pair") {
  RibEngine engine;
  engine.apply(ann(100, "10.0.0.0/8", kObserverK, {kObserverK, 64520}));
  engine.apply(ann(110, "10.1.0.0/16", kObserverK, {kObserverK, kAlice}));
  auto r = engine.apply(ann(200, "10.1.0.0/17", kObserverM, {kObserverM, kOscar, kMallory}));
  REQUIRE(r.opened.size() == 2);
  std::set<Prefix> victims;
  for (const auto& o : r.opened) victims.insert(o.event.victim_prefix);
  CHECK(victims == std::set<Prefix>{pfx("10.0.0.0/8"), pfx("10.1.0.0/16")});
}

TEST_CASE("a second announcer of the subprefix suspends strictness") {
  RibEngine engine;
  engine.apply(ann(100, "10.1.0.0/16", kObserverK, {kObserverK, kAlice}));
  auto r1 = engine.apply(ann(200, "10.1.0.0/17", kObserverM, {kObserverM, kMallory}));
  REQUIRE(r1.opened.size() == 1);

  // another origin on the subprefix: the conflict is a plain subMOAS now
  auto r2 = engine.apply(ann(300, "10.1.0.0/17", kObserverL, {kObserverL, 64530}));
  CHECK(r2.opened.empty());
  REQUIRE(r2.closed.size() == 1);

  // and it returns to strict when that announcer leaves
  auto r3 = engine.apply(wdr(400, "10.1.0.0/17", kObserverL));
  REQUIRE(r3.opened.size() == 1);
  CHECK(r3.opened[0].event.attacker_as == Asn(kMallory));
}

TEST_CASE("event history, dedupe and recurrence") {
  RibEngine engine;
  engine.apply(ann(100, "10.1.0.0/16", kObserverK, {kObserverK, kAlice}));
  for (int i = 0; i < 3; ++i) {
    engine.apply(ann(200 + 10 * i, "10.1.0.0/17", kObserverM, {kObserverM, kMallory}));
    engine.apply(wdr(205 + 10 * i, "10.1.0.0/17", kObserverM));
  }
  auto history = engine.event_history();
  REQUIRE(history.size() == 3);

  auto deduped = dedupe_events(history);
  REQUIRE(deduped.size() == 1);
  CHECK(deduped[0].occurrence_count == 3);
  CHECK(deduped[0].first_seen == 200);
  CHECK(deduped[0].last_seen == 225);

  auto stats = recurrence_stats(deduped);
  CHECK(stats.mean == 3.0);
  CHECK(stats.max == 3);
}

TEST_CASE("event_stable_during") {
  RibEngine::Config config;
  config.retention_seconds = 1000000;
  RibEngine engine(config);
  engine.apply(ann(100, "10.1.0.0/16", kObserverK, {kObserverK, kAlice}));
  auto r = engine.apply(ann(200, "10.1.0.0/17", kObserverM, {kObserverM, kMallory}));
  REQUIRE(r.opened.size() == 1);
  EventKey key = r.opened[0].event.key();
  engine.apply(ann(500, "192.0.2.0/24", kObserverK, {kObserverK, 64599}));  // advances time

  SECTION("open through the whole interval") {
    CHECK(engine.stable_during(key, 200, 400));
    CHECK(engine.stable_during(key, 250, 500));
  }
  SECTION("withdraw then re-announce inside the interval breaks stability") {
    engine.apply(wdr(600, "10.1.0.0/17", kObserverM));
    engine.apply(ann(700, "10.1.0.0/17", kObserverM, {kObserverM, kMallory}));
    engine.apply(ann(900, "192.0.2.0/24", kObserverK, {kObserverK, 64599}));
    CHECK_FALSE(engine.stable_during(key, 550, 650));
    CHECK_FALSE(engine.stable_during(key, 550, 800));
    CHECK(engine.stable_during(key, 710, 900));
  }
  SECTION("origin churn on the victim prefix breaks stability without closing") {
    engine.apply(ann(600, "10.1.0.0/16", kObserverL, {kObserverL, 64531}));
    CHECK(engine.open_event_keys().size() == 2);  // new victim pair opens, old stays
    CHECK_FALSE(engine.stable_during(key, 250, 700));
    CHECK(engine.stable_during(key, 250, 500));
  }
  SECTION("interval outside journal coverage is an error") {
    CHECK_THROWS_AS(engine.stable_during(key, 50, 300), JournalGapError);
    CHECK_THROWS_AS(engine.stable_during(key, 300, 9000), JournalGapError);
  }
  SECTION("retention prunes coverage") {
    RibEngine::Config tight;
    tight.retention_seconds = 100;
    RibEngine small(tight);
    small.apply(ann(100, "10.1.0.0/16", kObserverK, {kObserverK, kAlice}));
    small.apply(ann(500, "10.2.0.0/16", kObserverK, {kObserverK, kAlice}));
    CHECK(small.coverage_start() == 400);
    CHECK_THROWS_AS(small.stable_during(key, 100, 450), JournalGapError);
  }
}

TEST_CASE("replay determinism") {
  std::vector<BgpUpdate> feed;
  test::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    Prefix p = Prefix::truncated(rng.pick(0, 30) << 24, int(rng.pick(8, 20)));
    if (rng.chance(0.3)) {
      feed.push_back(wdr(1000 + i, p.to_string(), 65000 + rng.pick(0, 2)));
    } else {
      feed.push_back(BgpUpdate::announce(
          1000 + i, p, Asn(65000 + rng.pick(0, 2)),
          test::path({65000 + rng.pick(0, 2), rng.pick(1, 9)})));
    }
  }
  RibEngine a, b;
  std::vector<uint64_t> ids_a, ids_b;
  for (const auto& u : feed) {
    for (auto& o : a.apply(u).opened) ids_a.push_back(o.id);
    for (auto& o : b.apply(u).opened) ids_b.push_back(o.id);
  }
  CHECK(a.tree().snapshot() == b.tree().snapshot());
  CHECK(ids_a == ids_b);
  CHECK(a.open_event_keys() == b.open_event_keys());
}

TEST_CASE("open events match the brute-force state recomputation") {
  test::Rng rng(4242);
  RibEngine engine;
  for (int i = 0; i < 800; ++i) {
    uint32_t block = rng.pick(0, 3);
    Prefix p = Prefix::truncated((10u << 24) | (block << 20) | (rng.pick(0, 3) << 15),
                                 int(rng.pick(12, 20)));
    uint32_t peer = 65000 + rng.pick(0, 2);
    if (rng.chance(0.35)) {
      engine.apply(wdr(1000 + i, p.to_string(), peer));
    } else {
      engine.apply(BgpUpdate::announce(1000 + i, p, Asn(peer),
                                       test::path({peer, rng.pick(1, 6) + 64000})));
    }
    if (i % 50 == 0) {
      std::vector<std::pair<Prefix, Asn>> state;
      for (const auto& entry : engine.tree().entries())
        state.push_back({entry.prefix, entry.route.origin});
      auto expected = oracle::open_events(state);
      auto open = engine.open_event_keys();
      std::set<EventKey> actual(open.begin(), open.end());
      REQUIRE(actual == expected);
    }
  }
}
