#pragma once

#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bgpsieve/asn.hpp"
#include "bgpsieve/prefix.hpp"
#include "bgpsieve/util.hpp"

namespace bgpsieve {

/// Collapses consecutive repeats (path prepending) out of an AS path.
inline std::vector<Asn> collapse_path(const std::vector<Asn>& raw) {
  std::vector<Asn> out;
  out.reserve(raw.size());
  for (Asn a : raw)
    if (out.empty() || out.back() != a) out.push_back(a);
  return out;
}

/// A route: an AS path paired with a prefix. The path is stored
/// observer-nearest first with the origin last. Prepending is collapsed on
/// construction; the raw path is kept for display only. Identity and all
/// origin/upstream computations use the collapsed path.
class Route {
 public:
  Route(std::vector<Asn> raw_path, Prefix prefix)
      : raw_path_(std::move(raw_path)), path_(collapse_path(raw_path_)), prefix_(prefix) {
    if (path_.empty()) throw std::invalid_argument("route path must be non-empty");
  }

  const std::vector<Asn>& path() const { return path_; }
  const std::vector<Asn>& raw_path() const { return raw_path_; }
  Prefix prefix() const { return prefix_; }

  Asn origin() const { return path_.back(); }

  friend bool operator==(const Route& a, const Route& b) {
    return a.prefix_ == b.prefix_ && a.path_ == b.path_;
  }
  friend bool operator!=(const Route& a, const Route& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Route& r) {
    for (size_t i = 0; i < r.raw_path_.size(); ++i) {
      if (i) os << ' ';
      os << r.raw_path_[i].value();
    }
    return os << " << " << r.prefix_;
  }

 private:
  std::vector<Asn> raw_path_;
  std::vector<Asn> path_;
  Prefix prefix_;
};

}  // namespace bgpsieve

template <>
struct std::hash<bgpsieve::Route> {
  size_t operator()(const bgpsieve::Route& r) const noexcept {
    size_t seed = std::hash<bgpsieve::Prefix>{}(r.prefix());
    for (bgpsieve::Asn a : r.path())
      bgpsieve::util::hash_combine(seed, std::hash<bgpsieve::Asn>{}(a));
    return seed;
  }
};
