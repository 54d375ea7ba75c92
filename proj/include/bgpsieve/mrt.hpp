#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bgpsieve/update.hpp"

namespace bgpsieve {

/// Minimal MRT reader for the optional binary ingestion path. Supported:
/// TABLE_DUMP_V2 (PEER_INDEX_TABLE + RIB_IPV4_UNICAST) and BGP4MP(_ET)
/// MESSAGE / MESSAGE_AS4 update messages, IPv4 only. Unsupported records
/// are skipped with a diagnostic; AS_SET path segments reject the record.
/// The line-oriented text format stays the canonical fixture format.
namespace mrt {

constexpr uint16_t kTableDumpV2 = 13;
constexpr uint16_t kBgp4mp = 16;
constexpr uint16_t kBgp4mpEt = 17;

constexpr uint16_t kPeerIndexTable = 1;
constexpr uint16_t kRibIpv4Unicast = 2;

constexpr uint16_t kBgp4mpMessage = 1;
constexpr uint16_t kBgp4mpMessageAs4 = 4;

struct Result {
  std::vector<BgpUpdate> updates;
  std::vector<std::string> diagnostics;
  size_t records_skipped = 0;
};

namespace detail {

class Cursor {
 public:
  Cursor(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  bool ok() const { return ok_; }
  size_t remaining() const { return size_ - pos_; }

  uint8_t u8() { return ok_ && need(1) ? data_[pos_++] : fail(); }
  uint16_t u16() {
    if (!ok_ || !need(2)) return fail();
    uint16_t v = uint16_t(data_[pos_] << 8) | data_[pos_ + 1];
    pos_ += 2;
    return v;
  }
  uint32_t u32() {
    if (!ok_ || !need(4)) return uint32_t(fail());
    uint32_t v = (uint32_t(data_[pos_]) << 24) | (uint32_t(data_[pos_ + 1]) << 16) |
                 (uint32_t(data_[pos_ + 2]) << 8) | uint32_t(data_[pos_ + 3]);
    pos_ += 4;
    return v;
  }
  void skip(size_t n) {
    if (!need(n)) { fail(); return; }
    pos_ += n;
  }
  const uint8_t* take(size_t n) {
    if (!ok_ || !need(n)) { fail(); return nullptr; }
    const uint8_t* p = data_ + pos_;
    pos_ += n;
    return p;
  }

 private:
  bool need(size_t n) const { return pos_ + n <= size_; }
  uint8_t fail() {
    ok_ = false;
    return 0;
  }

  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
  bool ok_ = true;
};

inline std::optional<Prefix> read_nlri_prefix(Cursor& c) {
  uint8_t len = c.u8();
  if (!c.ok() || len > 32) return std::nullopt;
  uint32_t base = 0;
  size_t bytes = (len + 7) / 8;
  const uint8_t* p = c.take(bytes);
  if (!p) return std::nullopt;
  for (size_t i = 0; i < bytes; ++i) base |= uint32_t(p[i]) << (24 - 8 * i);
  if ((base & ~(len == 0 ? 0u : ~uint32_t{0} << (32 - len))) != 0) return std::nullopt;
  return Prefix(base, len);
}

/// AS_PATH attribute payload -> path, or nullopt on AS_SET / malformed.
inline std::optional<std::vector<Asn>> read_as_path(const uint8_t* data, size_t size,
                                                    size_t as_size) {
  Cursor c(data, size);
  std::vector<Asn> path;
  while (c.remaining() > 0) {
    uint8_t seg_type = c.u8();
    uint8_t count = c.u8();
    if (!c.ok()) return std::nullopt;
    if (seg_type != 2) return std::nullopt;  // AS_SEQUENCE only
    for (uint8_t i = 0; i < count; ++i) {
      uint32_t asn = as_size == 2 ? c.u16() : c.u32();
      if (!c.ok() || asn == 0) return std::nullopt;
      path.push_back(Asn(asn));
    }
  }
  return path;
}

struct Attributes {
  std::optional<std::vector<Asn>> as_path;
  bool saw_as_set = false;
  bool ok = true;
};

inline Attributes read_attributes(Cursor& c, size_t attr_len, size_t as_size) {
  Attributes out;
  const uint8_t* block = c.take(attr_len);
  if (!block) {
    out.ok = false;
    return out;
  }
  Cursor a(block, attr_len);
  while (a.remaining() > 0) {
    uint8_t flags = a.u8();
    uint8_t type = a.u8();
    size_t len = (flags & 0x10) ? a.u16() : a.u8();
    const uint8_t* payload = a.take(len);
    if (!a.ok() || !payload) {
      out.ok = false;
      return out;
    }
    if (type == 2) {  // AS_PATH
      auto path = read_as_path(payload, len, as_size);
      if (!path) {
        out.saw_as_set = true;
        out.ok = false;
        return out;
      }
      out.as_path = std::move(path);
    }
  }
  return out;
}

}  // namespace detail

inline Result parse(std::istream& in) {
  Result out;
  std::vector<uint8_t> buffer;
  std::map<uint16_t, Asn> peer_table;  // index -> peer AS

  size_t record_no = 0;
  auto diag = [&](const std::string& m) {
    out.diagnostics.push_back("record " + std::to_string(record_no) + ": " + m);
    ++out.records_skipped;
  };

  for (;;) {
    uint8_t header[12];
    in.read(reinterpret_cast<char*>(header), sizeof header);
    if (in.gcount() == 0) break;
    ++record_no;
    if (in.gcount() != sizeof header) {
      out.diagnostics.push_back("truncated MRT header at end of stream");
      ++out.records_skipped;
      break;
    }
    uint32_t ts = (uint32_t(header[0]) << 24) | (uint32_t(header[1]) << 16) |
                  (uint32_t(header[2]) << 8) | header[3];
    uint16_t type = uint16_t(header[4] << 8) | header[5];
    uint16_t subtype = uint16_t(header[6] << 8) | header[7];
    uint32_t length = (uint32_t(header[8]) << 24) | (uint32_t(header[9]) << 16) |
                      (uint32_t(header[10]) << 8) | header[11];
    buffer.resize(length);
    in.read(reinterpret_cast<char*>(buffer.data()), length);
    if (size_t(in.gcount()) != length) {
      out.diagnostics.push_back("truncated MRT record at end of stream");
      ++out.records_skipped;
      break;
    }

    detail::Cursor c(buffer.data(), buffer.size());
    if (type == kBgp4mpEt) c.skip(4);  // microsecond timestamp extension

    if (type == kTableDumpV2 && subtype == kPeerIndexTable) {
      c.skip(4);  // collector BGP id
      uint16_t name_len = c.u16();
      c.skip(name_len);
      uint16_t count = c.u16();
      for (uint16_t i = 0; i < count && c.ok(); ++i) {
        uint8_t peer_type = c.u8();
        c.skip(4);                                   // peer BGP id
        c.skip((peer_type & 0x1) ? 16 : 4);          // peer address
        uint32_t asn = (peer_type & 0x2) ? c.u32() : c.u16();
        if (c.ok() && asn != 0) peer_table.emplace(i, Asn(asn));
      }
      if (!c.ok()) diag("malformed peer index table");
      continue;
    }

    if (type == kTableDumpV2 && subtype == kRibIpv4Unicast) {
      c.skip(4);  // sequence number
      auto prefix = detail::read_nlri_prefix(c);
      if (!prefix) {
        diag("malformed RIB prefix");
        continue;
      }
      uint16_t entry_count = c.u16();
      for (uint16_t i = 0; i < entry_count && c.ok(); ++i) {
        uint16_t peer_index = c.u16();
        uint32_t originated = c.u32();
        uint16_t attr_len = c.u16();
        auto attrs = detail::read_attributes(c, attr_len, 4);
        if (!attrs.ok) {
          diag(attrs.saw_as_set ? "AS_SET segment rejected" : "malformed attributes");
          continue;
        }
        auto peer = peer_table.find(peer_index);
        if (peer == peer_table.end()) {
          diag("RIB entry references unknown peer index " + std::to_string(peer_index));
          continue;
        }
        if (!attrs.as_path || attrs.as_path->empty()) {
          diag("RIB entry without AS_PATH");
          continue;
        }
        out.updates.push_back(
            BgpUpdate::announce(Timestamp(originated), *prefix, peer->second, *attrs.as_path));
      }
      if (!c.ok()) diag("malformed RIB entry list");
      continue;
    }

    if ((type == kBgp4mp || type == kBgp4mpEt) &&
        (subtype == kBgp4mpMessage || subtype == kBgp4mpMessageAs4)) {
      size_t as_size = subtype == kBgp4mpMessageAs4 ? 4 : 2;
      uint32_t peer_as = as_size == 4 ? c.u32() : c.u16();
      c.skip(as_size);  // local AS
      c.skip(2);        // interface index
      uint16_t afi = c.u16();
      if (afi != 1) {
        diag("non-IPv4 BGP4MP message");
        continue;
      }
      c.skip(4);  // peer address
      c.skip(4);  // local address
      c.skip(16); // BGP marker
      c.skip(2);  // BGP message length
      uint8_t msg_type = c.u8();
      if (!c.ok()) {
        diag("malformed BGP message");
        continue;
      }
      if (msg_type != 2) continue;  // OPEN/KEEPALIVE/NOTIFICATION carry no routes
      if (peer_as == 0) {
        diag("zero peer AS");
        continue;
      }
      Asn peer(peer_as);

      uint16_t withdrawn_len = c.u16();
      {
        const uint8_t* block = c.take(withdrawn_len);
        if (!block) {
          diag("malformed withdrawn routes");
          continue;
        }
        detail::Cursor w(block, withdrawn_len);
        bool bad = false;
        while (w.remaining() > 0) {
          auto prefix = detail::read_nlri_prefix(w);
          if (!prefix) {
            bad = true;
            break;
          }
          out.updates.push_back(BgpUpdate::withdraw(Timestamp(ts), *prefix, peer));
        }
        if (bad) {
          diag("malformed withdrawn NLRI");
          continue;
        }
      }

      uint16_t attr_len = c.u16();
      auto attrs = detail::read_attributes(c, attr_len, as_size);
      if (!attrs.ok) {
        diag(attrs.saw_as_set ? "AS_SET segment rejected" : "malformed attributes");
        continue;
      }
      bool bad_nlri = false;
      std::vector<Prefix> announced;
      while (c.ok() && c.remaining() > 0) {
        auto prefix = detail::read_nlri_prefix(c);
        if (!prefix) {
          bad_nlri = true;
          break;
        }
        announced.push_back(*prefix);
      }
      if (bad_nlri || !c.ok()) {
        diag("malformed announce NLRI");
        continue;
      }
      if (!announced.empty()) {
        if (!attrs.as_path || attrs.as_path->empty()) {
          diag("announce without AS_PATH");
          continue;
        }
        for (Prefix p : announced)
          out.updates.push_back(BgpUpdate::announce(Timestamp(ts), p, peer, *attrs.as_path));
      }
      continue;
    }

    diag("unsupported MRT type " + std::to_string(type) + "/" + std::to_string(subtype));
  }
  return out;
}

}  // namespace mrt
}  // namespace bgpsieve
