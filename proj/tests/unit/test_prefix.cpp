#include <catch2/catch_amalgamated.hpp>

#include "../helpers.hpp"

using namespace bgpsieve;
using test::pfx;

TEST_CASE("ipv4 parsing and formatting") {
  CHECK(parse_ipv4("10.1.0.0") == 0x0a010000u);
  CHECK(parse_ipv4("255.255.255.255") == 0xffffffffu);
  CHECK(parse_ipv4("0.0.0.0") == 0u);
  CHECK_FALSE(parse_ipv4("10.1.0").has_value());
  CHECK_FALSE(parse_ipv4("10.1.0.256").has_value());
  CHECK_FALSE(parse_ipv4("10.1.0.0.1").has_value());
  CHECK_FALSE(parse_ipv4("10.01.0.0x").has_value());
  CHECK(format_ipv4(0x0a018000u) == "10.1.128.0");
}

TEST_CASE("prefix invariants") {
  CHECK(pfx("10.1.0.0/16").length() == 16);
  CHECK(pfx("10.1.0.0/16").last_address() == parse_ipv4("10.1.255.255"));
  CHECK_THROWS_AS(Prefix(0x0a010001u, 16), std::invalid_argument);  // host bits set
  CHECK_THROWS_AS(Prefix(0, 33), std::invalid_argument);
  CHECK(Prefix::truncated(0x0a010001u, 16) == pfx("10.1.0.0/16"));
  CHECK_FALSE(Prefix::parse("10.1.0.1/16").has_value());
  CHECK_FALSE(Prefix::parse("10.1.0.0/33").has_value());
  CHECK_FALSE(Prefix::parse("10.1.0.0").has_value());
  CHECK(Prefix::parse("0.0.0.0/0").has_value());
  CHECK(pfx("10.1.0.0/16").to_string() == "10.1.0.0/16");
}

TEST_CASE("is_subprefix is strict containment") {
  CHECK(is_subprefix(pfx("10.1.0.0/17"), pfx("10.1.0.0/16")));
  CHECK_FALSE(is_subprefix(pfx("10.1.0.0/16"), pfx("10.1.0.0/16")));  // equality excluded
  CHECK_FALSE(is_subprefix(pfx("10.2.0.0/17"), pfx("10.1.0.0/16")));  // disjoint
  CHECK_FALSE(is_subprefix(pfx("10.1.0.0/16"), pfx("10.1.0.0/17")));  // reversed
  CHECK(is_subprefix(pfx("10.1.2.0/24"), pfx("10.0.0.0/8")));
  CHECK(is_subprefix(pfx("10.1.128.0/17"), pfx("10.1.0.0/16")));
}

TEST_CASE("split_prefix covers the range exactly") {
  auto halves = split_prefix(pfx("10.1.0.0/16"), 1);
  REQUIRE(halves.size() == 2);
  CHECK(halves[0] == pfx("10.1.0.0/17"));
  CHECK(halves[1] == pfx("10.1.128.0/17"));

  auto quarters = split_prefix(pfx("10.1.0.0/16"), 2);
  REQUIRE(quarters.size() == 4);
  uint64_t covered = 0;
  for (auto q : quarters) {
    CHECK(is_subprefix(q, pfx("10.1.0.0/16")));
    covered += uint64_t(q.last_address()) - q.first_address() + 1;
  }
  CHECK(covered == uint64_t(1) << 16);
  CHECK(quarters.front().first_address() == pfx("10.1.0.0/16").first_address());
  CHECK(quarters.back().last_address() == pfx("10.1.0.0/16").last_address());

  CHECK_THROWS_AS(split_prefix(pfx("10.1.0.0/32"), 1), std::invalid_argument);
  CHECK_THROWS_AS(split_prefix(pfx("10.1.0.0/16"), 17), std::invalid_argument);
  CHECK_THROWS_AS(split_prefix(pfx("10.1.0.0/16"), 0), std::invalid_argument);
}

TEST_CASE("asn rejects zero") {
  CHECK_THROWS_AS(Asn(0), std::invalid_argument);
  CHECK(Asn(64500).value() == 64500);
}

TEST_CASE("route collapses prepending but keeps the raw path") {
  Route r(test::path({100, 200, 200, 200, 300}), pfx("10.1.0.0/16"));
  CHECK(r.path() == test::path({100, 200, 300}));
  CHECK(r.raw_path().size() == 5);
  CHECK(r.origin() == Asn(300));
  CHECK_THROWS_AS(Route({}, pfx("10.1.0.0/16")), std::invalid_argument);

  // identity uses the collapsed path
  Route plain(test::path({100, 200, 300}), pfx("10.1.0.0/16"));
  CHECK(r == plain);
  CHECK(std::hash<Route>{}(r) == std::hash<Route>{}(plain));
}
