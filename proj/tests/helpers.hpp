#pragma once

#include <random>
#include <string>
#include <vector>

#include "bgpsieve/bgpsieve.hpp"

namespace test {

using namespace bgpsieve;

inline Prefix pfx(const std::string& s) {
  auto p = Prefix::parse(s);
  if (!p) throw std::runtime_error("bad test prefix " + s);
  return *p;
}

inline std::vector<Asn> path(std::initializer_list<uint32_t> asns) {
  std::vector<Asn> out;
  for (uint32_t a : asns) out.push_back(Asn(a));
  return out;
}

inline Route route(std::initializer_list<uint32_t> asns, const std::string& prefix) {
  return Route(path(asns), pfx(prefix));
}

// the worked-example topology: Alice announces via Carol and Dave,
// Mallory attacks via Oscar, observers sit behind collector ASes
namespace cast {
constexpr uint32_t kAlice = 64500;
constexpr uint32_t kCarol = 64501;
constexpr uint32_t kDave = 64502;
constexpr uint32_t kMallory = 64666;
constexpr uint32_t kOscar = 64503;
constexpr uint32_t kObserverK = 64601;
constexpr uint32_t kObserverL = 64602;
constexpr uint32_t kObserverM = 64603;
}  // namespace cast

inline RibView example_legitimate_rib() {
  RibView rib;
  rib.insert(route({cast::kObserverK, cast::kCarol, cast::kAlice}, "10.1.0.0/16"));
  rib.insert(route({cast::kObserverL, cast::kDave, cast::kAlice}, "10.1.0.0/16"));
  return rib;
}

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(uint64_t seed) : engine(seed) {}

  uint32_t pick(uint32_t lo, uint32_t hi) {  // inclusive
    return std::uniform_int_distribution<uint32_t>(lo, hi)(engine);
  }
  bool chance(double p) { return std::uniform_real_distribution<>(0.0, 1.0)(engine) < p; }
};

}  // namespace test
