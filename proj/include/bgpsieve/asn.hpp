#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bgpsieve {

/// An autonomous system number. Zero is reserved and never a valid origin,
/// so construction rejects it.
class Asn {
 public:
  explicit constexpr Asn(uint32_t value) : value_(value) {
    if (value == 0) throw std::invalid_argument("ASN must be nonzero");
  }

  constexpr uint32_t value() const { return value_; }

  friend constexpr bool operator==(Asn a, Asn b) { return a.value_ == b.value_; }
  friend constexpr bool operator!=(Asn a, Asn b) { return a.value_ != b.value_; }
  friend constexpr bool operator<(Asn a, Asn b) { return a.value_ < b.value_; }

  friend std::ostream& operator<<(std::ostream& os, Asn a) {
    return os << "AS" << a.value_;
  }

 private:
  uint32_t value_;
};

inline std::string to_string(Asn a) { return "AS" + std::to_string(a.value()); }

}  // namespace bgpsieve

template <>
struct std::hash<bgpsieve::Asn> {
  size_t operator()(bgpsieve::Asn a) const noexcept {
    return std::hash<uint32_t>{}(a.value());
  }
};
