#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bgpsieve/util.hpp"

namespace bgpsieve {

/// Dotted-quad helpers for host-order IPv4 addresses.
inline std::optional<uint32_t> parse_ipv4(std::string_view s) {
  uint32_t addr = 0;
  int octets = 0;
  size_t i = 0;
  while (octets < 4) {
    size_t j = i;
    uint32_t v = 0;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') {
      v = v * 10 + (s[j] - '0');
      if (v > 255 || j - i >= 3) return std::nullopt;
      ++j;
    }
    if (j == i) return std::nullopt;
    addr = (addr << 8) | v;
    ++octets;
    i = j;
    if (octets < 4) {
      if (i >= s.size() || s[i] != '.') return std::nullopt;
      ++i;
    }
  }
  if (i != s.size()) return std::nullopt;
  return addr;
}

inline std::string format_ipv4(uint32_t addr) {
  return std::to_string((addr >> 24) & 0xff) + "." + std::to_string((addr >> 16) & 0xff) +
         "." + std::to_string((addr >> 8) & 0xff) + "." + std::to_string(addr & 0xff);
}

/// An IPv4 prefix. Invariant: all host bits below `length` are zero.
class Prefix {
 public:
  constexpr Prefix(uint32_t base, int length) : base_(base), length_(length) {
    if (length < 0 || length > 32) throw std::invalid_argument("prefix length out of range");
    if ((base & ~mask_for(length)) != 0)
      throw std::invalid_argument("prefix has nonzero host bits");
  }

  /// Masks stray host bits instead of rejecting them.
  static constexpr Prefix truncated(uint32_t base, int length) {
    if (length < 0 || length > 32) throw std::invalid_argument("prefix length out of range");
    return Prefix(base & mask_for(length), length);
  }

  static std::optional<Prefix> parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return std::nullopt;
    auto addr = parse_ipv4(s.substr(0, slash));
    auto len = util::parse_int<int>(s.substr(slash + 1));
    if (!addr || !len || *len < 0 || *len > 32) return std::nullopt;
    if ((*addr & ~mask_for(*len)) != 0) return std::nullopt;
    return Prefix(*addr, *len);
  }

  constexpr uint32_t base() const { return base_; }
  constexpr int length() const { return length_; }
  constexpr uint32_t mask() const { return mask_for(length_); }

  /// First and last address of the covered range, inclusive.
  constexpr uint32_t first_address() const { return base_; }
  constexpr uint32_t last_address() const { return base_ | ~mask_for(length_); }

  constexpr bool contains(uint32_t addr) const { return (addr & mask()) == base_; }

  std::string to_string() const { return format_ipv4(base_) + "/" + std::to_string(length_); }

  friend constexpr bool operator==(Prefix a, Prefix b) {
    return a.base_ == b.base_ && a.length_ == b.length_;
  }
  friend constexpr bool operator!=(Prefix a, Prefix b) { return !(a == b); }
  friend constexpr bool operator<(Prefix a, Prefix b) {
    return a.base_ != b.base_ ? a.base_ < b.base_ : a.length_ < b.length_;
  }

  friend std::ostream& operator<<(std::ostream& os, Prefix p) { return os << p.to_string(); }

 private:
  static constexpr uint32_t mask_for(int length) {
    return length == 0 ? 0u : ~uint32_t{0} << (32 - length);
  }

  uint32_t base_;
  int length_;
};

/// True iff `child` covers a strictly smaller range inside `parent`.
constexpr bool is_subprefix(Prefix child, Prefix parent) {
  return child.length() > parent.length() && parent.contains(child.base());
}

/// Covering relation including equality: every address of `inner` lies in `outer`.
constexpr bool covers(Prefix outer, Prefix inner) {
  return outer == inner || is_subprefix(inner, outer);
}

/// All 2^depth subprefixes of `p` with length p.length()+depth, in address order.
/// Their union is exactly p's range.
inline std::vector<Prefix> split_prefix(Prefix p, int depth) {
  if (depth < 1) throw std::invalid_argument("split depth must be >= 1");
  if (p.length() + depth > 32) throw std::invalid_argument("split exceeds 32-bit prefix length");
  int len = p.length() + depth;
  std::vector<Prefix> out;
  out.reserve(size_t{1} << depth);
  uint32_t step = 1u << (32 - len);
  uint32_t count = 1u << depth;
  for (uint32_t i = 0; i < count; ++i) out.push_back(Prefix(p.base() + i * step, len));
  return out;
}

}  // namespace bgpsieve

template <>
struct std::hash<bgpsieve::Prefix> {
  size_t operator()(bgpsieve::Prefix p) const noexcept {
    return std::hash<uint64_t>{}((uint64_t{p.base()} << 6) | uint64_t(p.length()));
  }
};
