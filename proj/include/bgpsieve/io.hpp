#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <zlib.h>

namespace bgpsieve {

/// Reads a whole file, transparently inflating gzip content (registry
/// snapshots are often shipped compressed).
inline std::string read_file_maybe_gzip(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string out;
  char buf[1 << 16];
  int n;
  while ((n = gzread(f, buf, sizeof buf)) > 0) out.append(buf, size_t(n));
  bool bad = n < 0;
  gzclose(f);
  if (bad) throw std::runtime_error("error while reading " + path);
  return out;
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(read_file_maybe_gzip(path));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace bgpsieve
