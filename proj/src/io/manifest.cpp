#include "hopkit/io/manifest.hpp"

#include <cstdio>
#include <set>

#include "hopkit/io/json_util.hpp"

namespace hopkit::io {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string checksum_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string manifest_to_json(const DatasetManifest& m) {
  Json j;
  j["format_version"] = 1;
  j["root"] = m.root;
  Json entries = Json::array();
  for (const ManifestEntry& e : m.entries) {
    Json x;
    x["file"] = e.file;
    x["skills"] = e.skills;
    x["object"] = e.object;
    x["seed"] = e.seed;
    x["frames"] = e.frames;
    x["checksum"] = e.checksum;
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

DatasetManifest parse_manifest(std::string_view text) {
  DatasetManifest m;
  try {
    const Json j = Json::parse(text);
    m.root = require(j, "root", "").get<std::string>();
    const Json& entries = require(j, "entries", "");
    if (!entries.is_array()) throw ParseError("entries", "expected an array");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string path = "entries[" + std::to_string(i) + "]";
      const Json& x = entries[i];
      ManifestEntry e;
      e.file = require(x, "file", path).get<std::string>();
      e.skills = require(x, "skills", path).get<std::vector<std::string>>();
      e.object = require(x, "object", path).get<std::string>();
      e.seed = require(x, "seed", path).get<std::uint64_t>();
      e.frames = require(x, "frames", path).get<std::size_t>();
      e.checksum = require(x, "checksum", path).get<std::string>();
      m.entries.push_back(std::move(e));
    }
  } catch (const Json::exception& e) {
    throw ParseError("", std::string("malformed manifest: ") + e.what());
  }
  return m;
}

std::vector<Issue> verify_manifest(const DatasetManifest& m, const std::filesystem::path& root) {
  std::vector<Issue> issues;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    const ManifestEntry& e = m.entries[i];
    const long idx = static_cast<long>(i);
    if (!seen.insert(e.file).second) {
      issues.push_back({idx, "duplicate entry " + e.file});
      continue;
    }
    try {
      const std::string sum = checksum_hex(read_file(root / e.file));
      if (sum != e.checksum) {
        issues.push_back({idx, e.file + ": checksum " + sum + " != recorded " + e.checksum});
      }
    } catch (const std::exception& ex) {
      issues.push_back({idx, ex.what()});
    }
  }
  return issues;
}

}  // namespace hopkit::io
