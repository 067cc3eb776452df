#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hopkit/synth/frame.hpp"

namespace hopkit::io {

inline constexpr int kFormatVersion = 1;
// First 12 bytes of a binary trajectory; a little-endian u32 version follows.
inline constexpr std::string_view kBinaryMagic{"HOPKIT_TRAJ\0", 12};

std::string encode_json(const Trajectory& t);
std::string encode_binary(const Trajectory& t);
// Decoders throw ParseError; its index() is the offending frame, if any.
Trajectory decode_json(std::string_view text);
Trajectory decode_binary(std::string_view bytes);

bool looks_binary(std::string_view bytes);
// Picks the decoder from the leading bytes.
Trajectory decode_trajectory(std::string_view bytes);

enum class Format { json, binary };
// ".bin" selects binary, anything else JSON.
Format format_for(const std::filesystem::path& path);

Trajectory load_trajectory(const std::filesystem::path& path);
void save_trajectory(const std::filesystem::path& path, const Trajectory& t);

}  // namespace hopkit::io
