#pragma once

#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bgpsieve/asn.hpp"
#include "bgpsieve/prefix.hpp"
#include "bgpsieve/util.hpp"

namespace bgpsieve {

enum class IrrKind { Mntner, Organisation, AutNum, Inetnum, Route };

inline const char* to_string(IrrKind k) {
  switch (k) {
    case IrrKind::Mntner: return "MNTNER";
    case IrrKind::Organisation: return "ORGANISATION";
    case IrrKind::AutNum: return "AUT-NUM";
    case IrrKind::Inetnum: return "INETNUM";
    case IrrKind::Route: return "ROUTE";
  }
  return "?";
}

/// One registry object: class, canonical key, raw attribute lines in
/// original order, and the registry the snapshot came from.
struct IrrObject {
  IrrKind kind;
  std::string key;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string source_registry;

  std::optional<std::string> first_attr(std::string_view name) const {
    for (const auto& [n, v] : attributes)
      if (n == name) return v;
    return std::nullopt;
  }
};

/// An inclusive IPv4 address range, the INETNUM key form.
struct AddressRange {
  uint32_t start = 0;
  uint32_t end = 0;

  bool contains(uint32_t a) const { return start <= a && a <= end; }
  bool contains(const AddressRange& o) const { return start <= o.start && o.end <= end; }
  uint64_t size() const { return uint64_t(end) - start + 1; }

  std::string to_string() const { return format_ipv4(start) + " - " + format_ipv4(end); }
};

inline std::optional<AddressRange> parse_address_range(std::string_view s) {
  auto dash = s.find('-');
  if (dash != std::string_view::npos) {
    auto a = parse_ipv4(util::trim(s.substr(0, dash)));
    auto b = parse_ipv4(util::trim(s.substr(dash + 1)));
    if (!a || !b || *a > *b) return std::nullopt;
    return AddressRange{*a, *b};
  }
  if (auto p = Prefix::parse(util::trim(s)))
    return AddressRange{p->first_address(), p->last_address()};
  return std::nullopt;
}

inline std::optional<Asn> parse_as_token(std::string_view s) {
  s = util::trim(s);
  if (s.size() < 3 || (s[0] != 'A' && s[0] != 'a') || (s[1] != 'S' && s[1] != 's'))
    return std::nullopt;
  auto v = util::parse_int<uint32_t>(s.substr(2));
  if (!v || *v == 0) return std::nullopt;
  return Asn(*v);
}

/// `from AS<k>` peer ASes named in an import policy value.
inline std::vector<Asn> import_peers(std::string_view value) {
  std::vector<Asn> out;
  auto tokens = util::split_ws(value);
  for (size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (util::to_lower(tokens[i]) != "from") continue;
    if (auto asn = parse_as_token(tokens[i + 1])) out.push_back(*asn);
  }
  return out;
}

struct RpslDiagnostic {
  size_t line = 0;
  std::string message;
};

struct RpslParseResult {
  std::vector<IrrObject> objects;
  std::vector<RpslDiagnostic> diagnostics;
  std::map<std::string, size_t> skipped_classes;
};

/// Parses a paragraph-separated RPSL snapshot. Objects are blank-line
/// delimited `attr: value` paragraphs; `+` continues the previous value;
/// `#` starts a comment. Comment-only lines do not terminate a paragraph.
/// A paragraph cut off by end of stream is dropped with a diagnostic.
/// The registry label comes from each object's `source:` attribute,
/// falling back to `fallback_registry`.
inline RpslParseResult parse_rpsl(std::istream& in, const std::string& fallback_registry) {
  RpslParseResult out;

  std::vector<std::pair<std::string, std::string>> attrs;
  size_t paragraph_line = 0;

  auto flush = [&](bool terminated, size_t) {
    if (attrs.empty()) return;
    auto take = std::move(attrs);
    attrs.clear();
    if (!terminated) {
      out.diagnostics.push_back({paragraph_line, "unterminated object at end of stream"});
      return;
    }
    const std::string cls = util::to_lower(take.front().first);
    IrrKind kind;
    if (cls == "mntner") kind = IrrKind::Mntner;
    else if (cls == "organisation") kind = IrrKind::Organisation;
    else if (cls == "aut-num") kind = IrrKind::AutNum;
    else if (cls == "inetnum") kind = IrrKind::Inetnum;
    else if (cls == "route") kind = IrrKind::Route;
    else {
      ++out.skipped_classes[cls];
      return;
    }

    IrrObject obj;
    obj.kind = kind;
    obj.attributes = std::move(take);
    std::string class_value = util::to_upper(util::trim(obj.attributes.front().second));
    switch (kind) {
      case IrrKind::Mntner:
      case IrrKind::Organisation:
        if (class_value.empty()) {
          out.diagnostics.push_back({paragraph_line, cls + " with empty key"});
          return;
        }
        obj.key = class_value;
        break;
      case IrrKind::AutNum: {
        auto asn = parse_as_token(class_value);
        if (!asn) {
          out.diagnostics.push_back({paragraph_line, "bad aut-num key '" + class_value + "'"});
          return;
        }
        obj.key = to_string(*asn);
        break;
      }
      case IrrKind::Inetnum: {
        auto range = parse_address_range(obj.attributes.front().second);
        if (!range) {
          out.diagnostics.push_back({paragraph_line, "bad inetnum range '" + class_value + "'"});
          return;
        }
        obj.key = range->to_string();
        break;
      }
      case IrrKind::Route: {
        auto prefix = Prefix::parse(util::trim(obj.attributes.front().second));
        auto origin_attr = obj.first_attr("origin");
        if (!prefix) {
          out.diagnostics.push_back({paragraph_line, "bad route prefix '" + class_value + "'"});
          return;
        }
        if (!origin_attr) {
          out.diagnostics.push_back({paragraph_line, "route object without origin"});
          return;
        }
        auto origin = parse_as_token(*origin_attr);
        if (!origin) {
          out.diagnostics.push_back({paragraph_line, "bad route origin '" + *origin_attr + "'"});
          return;
        }
        obj.key = prefix->to_string() + " " + to_string(*origin);
        break;
      }
    }
    if (auto src = obj.first_attr("source"))
      obj.source_registry = util::to_upper(util::trim(*src));
    else
      obj.source_registry = fallback_registry;
    out.objects.push_back(std::move(obj));
  };

  std::string raw;
  size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    bool raw_blank = util::trim(raw).empty();
    if (raw_blank) {
      flush(true, lineno);
      continue;
    }
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (util::trim(line).empty()) continue;  // comment-only line

    if (line.front() == '+') {
      if (attrs.empty()) {
        out.diagnostics.push_back({lineno, "continuation line outside an object"});
        continue;
      }
      auto more = util::trim(line.substr(1));
      if (!more.empty()) {
        auto& value = attrs.back().second;
        if (!value.empty()) value += ' ';
        value += std::string(more);
      }
      continue;
    }

    auto colon = line.find(':');
    if (colon == std::string_view::npos || colon == 0) {
      out.diagnostics.push_back({lineno, "malformed attribute line"});
      continue;
    }
    std::string name = util::to_lower(util::trim(line.substr(0, colon)));
    bool name_ok = !name.empty();
    for (char c : name)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')) name_ok = false;
    if (!name_ok) {
      out.diagnostics.push_back({lineno, "malformed attribute name"});
      continue;
    }
    if (attrs.empty()) paragraph_line = lineno;
    attrs.emplace_back(std::move(name), std::string(util::trim(line.substr(colon + 1))));
  }
  flush(false, lineno);
  return out;
}

}  // namespace bgpsieve
