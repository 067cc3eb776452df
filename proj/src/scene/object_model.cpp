#include "hopkit/scene/object_model.hpp"
#include "hopkit/error.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hopkit {

ObjectModel::ObjectModel(std::string id, PointList keypoints, PointList hull_points, Vec3 com,
                         std::optional<RotatableRegion> region, std::optional<Vec3> axis)
    : id_(std::move(id)),
      keypoints_(std::move(keypoints)),
      hull_points_(std::move(hull_points)),
      hull_(ConvexHull::build(hull_points_)),
      com_(com),
      region_(std::move(region)),
      axis_(axis) {
  if (keypoints_.size() < 4) {
    throw std::invalid_argument("object '" + id_ + "' needs at least 4 keypoints");
  }
  if (region_ && !axis_) {
    throw std::invalid_argument("object '" + id_ + "' has a rotatable region but no axis");
  }
  if (axis_) {
    if (!axis_->allFinite() || axis_->norm() == 0.0) {
      throw std::invalid_argument("object '" + id_ + "' rotation axis is degenerate");
    }
    axis_->normalize();
  }
  if (region_ && region_->kind == RotatableRegion::Kind::points && region_->points.empty()) {
    throw std::invalid_argument("object '" + id_ + "' rotatable point region is empty");
  }
}

double ObjectModel::distance_to_region(const Vec3& p) const {
  if (!region_) throw std::logic_error("object '" + id_ + "' has no rotatable region");
  const RotatableRegion& r = *region_;
  if (r.kind == RotatableRegion::Kind::points) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& q : r.points) best = std::min(best, (p - q).norm());
    return best;
  }
  const Vec3 w = p - r.center;
  const double along = w.dot(*axis_);
  const double radial = (w - along * *axis_).norm();
  const double beyond = std::max(std::abs(along) - r.half_length, 0.0);
  return std::hypot(beyond, radial - r.radius);
}

ObjectModel apply_scale(const ObjectModel& obj, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument("object scale must be positive");
  }
  auto scaled = [s](const PointList& pts) {
    PointList out;
    out.reserve(pts.size());
    for (const Vec3& p : pts) out.push_back(s * p);
    return out;
  };
  std::optional<RotatableRegion> region = obj.region_;
  if (region) {
    region->points = scaled(region->points);
    region->center *= s;
    region->radius *= s;
    region->half_length *= s;
  }
  ObjectModel out(obj.id_, scaled(obj.keypoints_), scaled(obj.hull_points_), s * obj.com_,
                  region, obj.axis_);
  out.scale_ = obj.scale_ * s;
  return out;
}

namespace {

Vec3 vec3_at(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument("object field '" + field + "' must be a 3-vector");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

PointList points_at(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array()) throw std::invalid_argument("object field '" + field + "' must be an array");
  PointList out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(vec3_at(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

namespace {

ObjectModel parse_object_model_impl(const std::string& json_text) {
  const auto doc = nlohmann::json::parse(json_text);
  std::optional<RotatableRegion> region;
  if (doc.contains("rotatable") && !doc["rotatable"].is_null()) {
    const auto& r = doc["rotatable"];
    RotatableRegion reg;
    if (r.contains("points")) {
      reg.kind = RotatableRegion::Kind::points;
      reg.points = points_at(r["points"], "rotatable.points");
      if (r.contains("center")) reg.center = vec3_at(r["center"], "rotatable.center");
    } else {
      reg.kind = RotatableRegion::Kind::cylinder;
      reg.center = vec3_at(r.at("center"), "rotatable.center");
      reg.radius = r.at("radius").get<double>();
      reg.half_length = r.at("half_length").get<double>();
    }
    region = reg;
  }
  std::optional<Vec3> axis;
  if (doc.contains("axis") && !doc["axis"].is_null()) axis = vec3_at(doc["axis"], "axis");
  return ObjectModel(doc.at("id").get<std::string>(), points_at(doc.at("keypoints"), "keypoints"),
                     points_at(doc.at("hull"), "hull"), vec3_at(doc.at("com"), "com"), region,
                     axis);
}

}  // namespace

ObjectModel parse_object_model(const std::string& json_text) {
  try {
    return parse_object_model_impl(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("", std::string("malformed object model: ") + e.what());
  }
}

ObjectModel load_object_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open object file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_object_model(ss.str());
}

std::string object_model_to_json(const ObjectModel& obj) {
  nlohmann::ordered_json doc;
  doc["id"] = obj.id();
  auto arr = [](const PointList& pts) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const Vec3& p : pts) a.push_back({p.x(), p.y(), p.z()});
    return a;
  };
  doc["keypoints"] = arr(obj.keypoints());
  doc["hull"] = arr(obj.hull_points());
  doc["com"] = {obj.com().x(), obj.com().y(), obj.com().z()};
  if (const auto& r = obj.rotatable_region()) {
    nlohmann::ordered_json jr;
    if (r->kind == RotatableRegion::Kind::points) {
      jr["points"] = arr(r->points);
      jr["center"] = {r->center.x(), r->center.y(), r->center.z()};
    } else {
      jr["center"] = {r->center.x(), r->center.y(), r->center.z()};
      jr["radius"] = r->radius;
      jr["half_length"] = r->half_length;
    }
    doc["rotatable"] = jr;
  }
  if (const auto& a = obj.rotation_axis()) doc["axis"] = {a->x(), a->y(), a->z()};
  return doc.dump(2);
}

void Workspace::validate() const {
  if (!(lo.array() < hi.array()).all()) {
    throw std::invalid_argument("workspace bounds must satisfy min < max on every axis");
  }
}

}  // namespace hopkit
