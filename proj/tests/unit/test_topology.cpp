#include <catch2/catch_amalgamated.hpp>

#include "../helpers.hpp"

using namespace bgpsieve;
using test::pfx;
using namespace test::cast;

namespace {

PathSet make_paths(std::initializer_list<std::initializer_list<uint32_t>> paths) {
  PathSet ps;
  for (auto p : paths) ps.paths.insert(collapse_path(test::path(p)));
  return ps;
}

SubMoasEvent example_event() {
  return {Asn(kAlice), pfx("10.1.0.0/16"), Asn(kMallory), pfx("10.1.0.0/17"), 100, 200, 1};
}

}  // namespace

TEST_CASE("collect_paths gathers paths to both prefixes and their covers") {
  PrefixTree tree;
  tree.announce(pfx("10.1.0.0/16"), Asn(kObserverK), test::path({kObserverK, kCarol, kAlice}),
                100);
  tree.announce(pfx("10.1.0.0/16"), Asn(kObserverL), test::path({kObserverL, kDave, kAlice}),
                100);
  tree.announce(pfx("10.1.0.0/17"), Asn(kObserverM), test::path({kObserverM, kOscar, kMallory}),
                200);
  auto ps = collect_paths(tree, example_event());
  CHECK(ps.paths.size() == 3);

  SECTION("a covering /8 route is included too") {
    tree.announce(pfx("10.0.0.0/8"), Asn(kObserverK), test::path({kObserverK, 64520}), 100);
    CHECK(collect_paths(tree, example_event()).paths.size() == 4);
  }
  SECTION("an empty tree gives an empty path set") {
    CHECK(collect_paths(PrefixTree{}, example_event()).paths.empty());
  }
}

TEST_CASE("topology_filter: attacker downstream of the victim legitimizes") {
  auto v = topology_filter(make_paths({{kObserverK, kAlice, kMallory}}), Asn(kAlice),
                           Asn(kMallory));
  CHECK(v.kind == VerdictKind::Legitimate);
  CHECK(v.evidence.find("witness path") != std::string::npos);
}

TEST_CASE("topology_filter: attacker upstream only is inconclusive") {
  auto v = topology_filter(make_paths({{kObserverK, kMallory, kAlice}}), Asn(kAlice),
                           Asn(kMallory));
  CHECK(v.kind == VerdictKind::Inconclusive);
}

TEST_CASE("topology_filter: no common path is inconclusive, no paths is not covered") {
  auto separate = make_paths({{kObserverK, kCarol, kAlice}, {kObserverM, kOscar, kMallory}});
  CHECK(topology_filter(separate, Asn(kAlice), Asn(kMallory)).kind ==
        VerdictKind::Inconclusive);
  CHECK(topology_filter(PathSet{}, Asn(kAlice), Asn(kMallory)).kind == VerdictKind::NotCovered);
}

TEST_CASE("topology_filter: victim == attacker is an error") {
  CHECK_THROWS_AS(topology_filter(make_paths({{1, 2}}), Asn(kAlice), Asn(kAlice)),
                  std::invalid_argument);
}

TEST_CASE("topology_filter: every victim occurrence must precede the attacker") {
  // route-leak artifact: victim appears before and after the attacker
  auto leaked = make_paths({{kObserverK, kAlice, kMallory, 64520, kAlice}});
  auto v = topology_filter(leaked, Asn(kAlice), Asn(kMallory));
  CHECK(v.kind == VerdictKind::Inconclusive);
  CHECK(v.evidence.find("repeated victim") != std::string::npos);

  // both occurrences ahead of the attacker: witness stands
  auto fine = make_paths({{kObserverK, kAlice, 64520, kAlice, kMallory}});
  CHECK(topology_filter(fine, Asn(kAlice), Asn(kMallory)).kind == VerdictKind::Legitimate);
}

TEST_CASE("topology_filter: prepending never changes the verdict") {
  test::Rng rng(77);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<uint32_t> base;
    size_t len = rng.pick(2, 6);
    for (size_t i = 0; i < len; ++i) base.push_back(60000 + rng.pick(0, 5));
    PathSet plain, padded;
    std::vector<Asn> p1, p2;
    for (uint32_t a : base) {
      p1.push_back(Asn(a));
      int repeats = int(rng.pick(1, 3));
      for (int r = 0; r < repeats; ++r) p2.push_back(Asn(a));
    }
    plain.paths.insert(collapse_path(p1));
    padded.paths.insert(collapse_path(p2));
    Asn victim(60000), attacker(60001);
    auto a = topology_filter(plain, victim, attacker);
    auto b = topology_filter(padded, victim, attacker);
    CHECK(a.kind == b.kind);
  }
}

TEST_CASE("topology_filter: antisymmetry on wrong-order path sets") {
  test::Rng rng(78);
  for (int iter = 0; iter < 100; ++iter) {
    PathSet ps;
    size_t n = rng.pick(1, 4);
    for (size_t i = 0; i < n; ++i) {
      std::vector<Asn> p{Asn(60010 + rng.pick(0, 3))};
      p.push_back(Asn(60001));  // attacker always first...
      size_t mid = rng.pick(0, 2);
      for (size_t j = 0; j < mid; ++j) p.push_back(Asn(60020 + rng.pick(0, 3)));
      p.push_back(Asn(60000));  // ...victim always behind it
      ps.paths.insert(collapse_path(p));
    }
    CHECK(topology_filter(ps, Asn(60000), Asn(60001)).kind != VerdictKind::Legitimate);
  }
}
