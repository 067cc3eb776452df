#pragma once

#include <vector>

#include "hopkit/geom/types.hpp"
#include "hopkit/simd/kernels.hpp"

namespace hopkit {

// One planar facet: n . x = offset with n the outward unit normal. Vertex
// indices are ordered counter-clockwise when viewed from outside.
struct HullFace {
  Vec3 normal;
  double offset = 0.0;
  std::vector<int> vertices;
};

class ConvexHull {
 public:
  ConvexHull() = default;

  // Incremental construction. Throws std::invalid_argument when the points
  // span no volume (fewer than 4 points, or coplanar within tolerance).
  static ConvexHull build(const PointList& points);

  // Points referenced by the faces; extra input points that are not
  // hull vertices are dropped.
  const PointList& vertices() const { return vertices_; }
  const std::vector<HullFace>& faces() const { return faces_; }
  const simd::PlaneSet& planes() const { return planes_; }

  double volume() const { return volume_; }
  Vec3 centroid() const { return centroid_; }

  // Euclidean signed distance to the hull boundary; negative inside.
  double signed_distance(const Vec3& p) const;
  // Exact distance from p to the polygon of face f.
  double distance_to_face(const Vec3& p, std::size_t f) const;

 private:
  PointList vertices_;
  std::vector<HullFace> faces_;
  simd::PlaneSet planes_;
  double volume_ = 0.0;
  Vec3 centroid_ = Vec3::Zero();
};

// Distance from p to segment [a, b].
double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);

}  // namespace hopkit
