#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "../helpers.hpp"

using namespace bgpsieve;
using test::pfx;

TEST_CASE("rpsl: aut-num with import policy") {
  std::istringstream in(
      "aut-num:    AS64500\n"
      "as-name:    EXAMPLE-NET\n"
      "import:     from AS3320 accept ANY\n"
      "import:     from AS64501 action pref=100; accept AS64501\n"
      "mnt-by:     EXAMPLE-MNT\n"
      "source:     RIPE\n"
      "\n");
  auto result = parse_rpsl(in, "TEST");
  CHECK(result.diagnostics.empty());
  REQUIRE(result.objects.size() == 1);
  const auto& obj = result.objects[0];
  CHECK(obj.kind == IrrKind::AutNum);
  CHECK(obj.key == "AS64500");
  CHECK(obj.source_registry == "RIPE");

  std::vector<Asn> peers;
  for (const auto& [name, value] : obj.attributes)
    if (name == "import")
      for (Asn a : import_peers(value)) peers.push_back(a);
  CHECK(peers == test::path({3320, 64501}));
}

TEST_CASE("rpsl: route object with origin") {
  std::istringstream in(
      "route:   10.1.0.0/16\n"
      "descr:   example route\n"
      "origin:  AS64500\n"
      "mnt-by:  EXAMPLE-MNT\n"
      "\n");
  auto result = parse_rpsl(in, "TEST");
  REQUIRE(result.objects.size() == 1);
  CHECK(result.objects[0].kind == IrrKind::Route);
  CHECK(result.objects[0].key == "10.1.0.0/16 AS64500");
  CHECK(result.objects[0].source_registry == "TEST");
}

TEST_CASE("rpsl: comments and blank lines produce nothing") {
  std::istringstream in(
      "# a full-line comment\n"
      "\n"
      "   \n"
      "# another\n");
  auto result = parse_rpsl(in, "TEST");
  CHECK(result.objects.empty());
  CHECK(result.diagnostics.empty());
}

TEST_CASE("rpsl: continuation lines and inline comments") {
  std::istringstream in(
      "mntner:  EXAMPLE-MNT\n"
      "descr:   multi # trailing comment\n"
      "+        line\n"
      "# comment inside the object does not terminate it\n"
      "admin-c: XX1-TEST\n"
      "\n");
  auto result = parse_rpsl(in, "TEST");
  REQUIRE(result.objects.size() == 1);
  const auto& obj = result.objects[0];
  CHECK(obj.key == "EXAMPLE-MNT");
  CHECK(*obj.first_attr("descr") == "multi line");
  CHECK(obj.first_attr("admin-c").has_value());
}

TEST_CASE("rpsl: unterminated object at end of stream is dropped") {
  std::istringstream in(
      "mntner: COMPLETE-MNT\n"
      "\n"
      "mntner: PARTIAL-MNT\n"
      "descr:  cut off");
  auto result = parse_rpsl(in, "TEST");
  REQUIRE(result.objects.size() == 1);
  CHECK(result.objects[0].key == "COMPLETE-MNT");
  REQUIRE(result.diagnostics.size() == 1);
  CHECK(result.diagnostics[0].message.find("unterminated") != std::string::npos);
}

TEST_CASE("rpsl: unsupported classes are counted and skipped") {
  std::istringstream in(
      "person:  John Doe\n"
      "nic-hdl: JD1-TEST\n"
      "\n"
      "inetnum: 10.1.0.0 - 10.1.255.255\n"
      "netname: EXAMPLE\n"
      "\n");
  auto result = parse_rpsl(in, "TEST");
  REQUIRE(result.objects.size() == 1);
  CHECK(result.objects[0].kind == IrrKind::Inetnum);
  CHECK(result.objects[0].key == "10.1.0.0 - 10.1.255.255");
  CHECK(result.skipped_classes.at("person") == 1);
}

TEST_CASE("rpsl: malformed keys and lines are diagnosed") {
  std::istringstream in(
      "aut-num: not-an-asn\n"
      "\n"
      "route: 10.1.0.0/16\n"
      "descr: no origin\n"
      "\n"
      "inetnum: 10.1.0.0 - 10.0.0.0\n"
      "\n"
      "mntner: OK-MNT\n"
      "this line has no colon prefix!\n"
      "\n");
  auto result = parse_rpsl(in, "TEST");
  REQUIRE(result.objects.size() == 1);
  CHECK(result.objects[0].key == "OK-MNT");
  CHECK(result.diagnostics.size() == 4);
}

TEST_CASE("rpsl: inetnum accepts prefix notation too") {
  std::istringstream in("inetnum: 10.1.0.0/16\n\n");
  auto result = parse_rpsl(in, "TEST");
  REQUIRE(result.objects.size() == 1);
  CHECK(result.objects[0].key == "10.1.0.0 - 10.1.255.255");
}

TEST_CASE("address ranges") {
  auto r = parse_address_range("10.1.0.0 - 10.1.255.255");
  REQUIRE(r.has_value());
  CHECK(r->contains(parse_ipv4("10.1.42.1").value()));
  CHECK_FALSE(r->contains(parse_ipv4("10.2.0.0").value()));
  CHECK(r->size() == 65536);
  CHECK_FALSE(parse_address_range("10.2.0.0 - 10.1.0.0").has_value());
}
