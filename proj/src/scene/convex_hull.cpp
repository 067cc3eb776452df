#include "hopkit/scene/convex_hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace hopkit {
namespace {

struct Triangle {
  int a, b, c;
  Vec3 normal;
  double offset;
};

Triangle make_triangle(const PointList& p, int a, int b, int c) {
  Vec3 n = (p[b] - p[a]).cross(p[c] - p[a]);
  n.normalize();
  return {a, b, c, n, n.dot(p[a])};
}

}  // namespace

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

ConvexHull ConvexHull::build(const PointList& input) {
  if (input.size() < 4) {
    throw std::invalid_argument("convex hull needs at least 4 points");
  }
  for (const Vec3& v : input) {
    if (!v.allFinite()) throw std::invalid_argument("convex hull point is not finite");
  }
  double extent = 0.0;
  for (const Vec3& v : input) extent = std::max(extent, v.cwiseAbs().maxCoeff());
  const double eps = 1e-10 * std::max(1.0, extent);

  // Initial tetrahedron from extreme points.
  const int n = static_cast<int>(input.size());
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    if (input[i].x() < input[i0].x()) i0 = i;
  }
  int i1 = i0;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = (input[i] - input[i0]).norm();
    if (d > best) best = d, i1 = i;
  }
  if (best <= eps) throw std::invalid_argument("degenerate hull: points coincide");
  int i2 = i0;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double line = (input[i] - input[i0]).cross(input[i1] - input[i0]).norm() /
                        (input[i1] - input[i0]).norm();
    if (line > best) best = line, i2 = i;
  }
  if (best <= eps) throw std::invalid_argument("degenerate hull: points are collinear");
  const Vec3 base_n = (input[i1] - input[i0]).cross(input[i2] - input[i0]).normalized();
  int i3 = i0;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(base_n.dot(input[i] - input[i0]));
    if (d > best) best = d, i3 = i;
  }
  if (best <= eps) throw std::invalid_argument("degenerate hull: points are coplanar");

  const Vec3 inner = (input[i0] + input[i1] + input[i2] + input[i3]) / 4.0;
  std::vector<Triangle> tris;
  auto add_oriented = [&](int a, int b, int c) {
    Triangle t = make_triangle(input, a, b, c);
    if (t.normal.dot(inner) - t.offset > 0.0) t = make_triangle(input, a, c, b);
    tris.push_back(t);
  };
  add_oriented(i0, i1, i2);
  add_oriented(i0, i1, i3);
  add_oriented(i0, i2, i3);
  add_oriented(i1, i2, i3);

  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    const Vec3& q = input[p];
    std::vector<bool> visible(tris.size(), false);
    bool any = false;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (tris[t].normal.dot(q) - tris[t].offset > eps) visible[t] = any = true;
    }
    if (!any) continue;
    std::set<std::pair<int, int>> edges;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (!visible[t]) continue;
      edges.insert({tris[t].a, tris[t].b});
      edges.insert({tris[t].b, tris[t].c});
      edges.insert({tris[t].c, tris[t].a});
    }
    std::vector<Triangle> next;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (!visible[t]) next.push_back(tris[t]);
    }
    for (const auto& [a, b] : edges) {
      if (edges.count({b, a}) == 0) next.push_back(make_triangle(input, a, b, p));
    }
    tris = std::move(next);
  }

  // Merge coplanar triangles into polygonal faces and compact the vertices.
  ConvexHull hull;
  std::map<int, int> remap;
  auto vertex_id = [&](int original) {
    const auto [it, inserted] = remap.try_emplace(original, static_cast<int>(hull.vertices_.size()));
    if (inserted) hull.vertices_.push_back(input[original]);
    return it->second;
  };
  std::vector<std::set<int>> face_sets;
  for (const Triangle& t : tris) {
    std::size_t f = 0;
    for (; f < hull.faces_.size(); ++f) {
      const HullFace& face = hull.faces_[f];
      if (face.normal.dot(t.normal) > 1.0 - 1e-9 && std::abs(face.offset - t.offset) < 1e3 * eps) break;
    }
    if (f == hull.faces_.size()) {
      hull.faces_.push_back({t.normal, t.offset, {}});
      face_sets.emplace_back();
    }
    face_sets[f].insert({vertex_id(t.a), vertex_id(t.b), vertex_id(t.c)});
  }
  for (std::size_t f = 0; f < hull.faces_.size(); ++f) {
    HullFace& face = hull.faces_[f];
    std::vector<int> ids(face_sets[f].begin(), face_sets[f].end());
    Vec3 c = Vec3::Zero();
    for (int id : ids) c += hull.vertices_[id];
    c /= static_cast<double>(ids.size());
    const Vec3 e1 = (hull.vertices_[ids[0]] - c).normalized();
    const Vec3 e2 = face.normal.cross(e1);
    std::vector<std::pair<double, int>> order;
    for (int id : ids) {
      const Vec3 d = hull.vertices_[id] - c;
      order.push_back({std::atan2(d.dot(e2), d.dot(e1)), id});
    }
    std::sort(order.begin(), order.end());
    for (const auto& [angle, id] : order) face.vertices.push_back(id);
    // Offset re-derived from the merged vertex set.
    double off = 0.0;
    for (int id : ids) off += face.normal.dot(hull.vertices_[id]);
    face.offset = off / static_cast<double>(ids.size());
    hull.planes_.add(face.normal, face.offset);
  }
  hull.planes_.finalize();

  Vec3 mean = Vec3::Zero();
  for (const Vec3& v : hull.vertices_) mean += v;
  mean /= static_cast<double>(hull.vertices_.size());
  double volume = 0.0;
  Vec3 weighted = Vec3::Zero();
  for (const HullFace& face : hull.faces_) {
    const Vec3& a = hull.vertices_[face.vertices[0]];
    for (std::size_t k = 1; k + 1 < face.vertices.size(); ++k) {
      const Vec3& b = hull.vertices_[face.vertices[k]];
      const Vec3& c = hull.vertices_[face.vertices[k + 1]];
      const double v = std::abs((a - mean).dot((b - mean).cross(c - mean))) / 6.0;
      volume += v;
      weighted += v * (mean + a + b + c) / 4.0;
    }
  }
  if (volume <= eps) throw std::invalid_argument("degenerate hull: zero volume");
  hull.volume_ = volume;
  hull.centroid_ = weighted / volume;
  return hull;
}

double ConvexHull::distance_to_face(const Vec3& p, std::size_t f) const {
  const HullFace& face = faces_[f];
  const double h = face.normal.dot(p) - face.offset;
  const Vec3 q = p - h * face.normal;
  bool inside = true;
  const std::size_t m = face.vertices.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Vec3& a = vertices_[face.vertices[k]];
    const Vec3& b = vertices_[face.vertices[(k + 1) % m]];
    if (face.normal.dot((b - a).cross(q - a)) < 0.0) {
      inside = false;
      break;
    }
  }
  if (inside) return std::abs(h);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < m; ++k) {
    best = std::min(best, point_segment_distance(p, vertices_[face.vertices[k]],
                                                 vertices_[face.vertices[(k + 1) % m]]));
  }
  return best;
}

double ConvexHull::signed_distance(const Vec3& p) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const HullFace& face : faces_) worst = std::max(worst, face.normal.dot(p) - face.offset);
  if (worst <= 0.0) return worst;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < faces_.size(); ++f) best = std::min(best, distance_to_face(p, f));
  return best;
}

}  // namespace hopkit
