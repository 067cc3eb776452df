#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hopkit/error.hpp"

namespace hopkit::io {

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);
std::string checksum_hex(std::string_view bytes);

struct ManifestEntry {
  std::string file;  // relative to the manifest root
  std::vector<std::string> skills;
  std::string object;
  std::uint64_t seed = 0;
  std::size_t frames = 0;
  std::string checksum;
};

struct DatasetManifest {
  std::string root;
  std::vector<ManifestEntry> entries;
};

std::string manifest_to_json(const DatasetManifest& m);
DatasetManifest parse_manifest(std::string_view text);

// Duplicate paths, missing files and checksum mismatches.
std::vector<Issue> verify_manifest(const DatasetManifest& m, const std::filesystem::path& root);

}  // namespace hopkit::io
