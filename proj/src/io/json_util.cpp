#include "hopkit/io/json_util.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hopkit/error.hpp"

namespace hopkit::io {

const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

double read_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "number is not finite");
  return v;
}

Vec3 read_vec3(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw ParseError(path, "expected 3 numbers");
  return {read_number(j[0], path + "[0]"), read_number(j[1], path + "[1]"),
          read_number(j[2], path + "[2]")};
}

UnitQuaternion read_quaternion(const Json& j, const std::string& path, double tol) {
  if (!j.is_array() || j.size() != 4) throw ParseError(path, "expected 4 numbers [w, x, y, z]");
  const double w = read_number(j[0], path + "[0]");
  const double x = read_number(j[1], path + "[1]");
  const double y = read_number(j[2], path + "[2]");
  const double z = read_number(j[3], path + "[3]");
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (std::abs(n - 1.0) > tol) {
    throw ParseError(path, "quaternion norm " + std::to_string(n) + " is not unit");
  }
  return UnitQuaternion::from_stored(w, x, y, z);
}

Pose read_pose(const Json& j, const std::string& path) {
  return {read_vec3(require(j, "p", path), path + ".p"),
          read_quaternion(require(j, "q", path), path + ".q")};
}

PointList read_points(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of 3-vectors");
  PointList out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(read_vec3(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<double> read_numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(read_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json write_vec3(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Json write_quaternion(const UnitQuaternion& q) {
  return Json::array({q.w(), q.x(), q.y(), q.z()});
}

Json write_pose(const Pose& p) {
  Json j;
  j["p"] = write_vec3(p.position);
  j["q"] = write_quaternion(p.orientation);
  return j;
}

Json write_points(const PointList& pts) {
  Json a = Json::array();
  for (const Vec3& p : pts) a.push_back(write_vec3(p));
  return a;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

}  // namespace hopkit::io
