#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hopkit/geom/pose.hpp"

namespace hopkit::io {

using Json = nlohmann::ordered_json;

// Readers throw ParseError naming `path` on arity or type problems.
double read_number(const Json& j, const std::string& path);
Vec3 read_vec3(const Json& j, const std::string& path);
// Quaternion as [w, x, y, z]; must be unit within `tol`, then normalized.
UnitQuaternion read_quaternion(const Json& j, const std::string& path, double tol = 1e-6);
Pose read_pose(const Json& j, const std::string& path);
PointList read_points(const Json& j, const std::string& path);
std::vector<double> read_numbers(const Json& j, const std::string& path);
const Json& require(const Json& j, const std::string& key, const std::string& path);

Json write_vec3(const Vec3& v);
Json write_quaternion(const UnitQuaternion& q);
Json write_pose(const Pose& p);
Json write_points(const PointList& pts);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace hopkit::io
