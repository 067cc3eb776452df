#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <span>

#include "hopkit/io/json_util.hpp"
#include "support.hpp"

using namespace hopkit;

namespace {

io::Json fixture_doc(const std::string& name) {
  return io::Json::parse(io::read_file(test::data("grasps/" + name + ".json")));
}

}  // namespace

TEST_CASE("fixture grasp sets satisfy their invariants") {
  for (const char* name : {"cube", "bottle", "tetrahedron", "rod"}) {
    test::Fixture f("mano", name);
    CHECK(f.grasps.size() > 0);
    for (const auto& g : f.grasps.grasps) CHECK(check_grasp(g, f.hand, f.obj).empty());
  }
  test::Fixture shadow("shadow", "cube");
  test::Fixture allegro("allegro", "cube");
  CHECK(shadow.grasps[0].theta.size() == 20);
  CHECK(allegro.grasps[0].theta.size() == 16);
}

TEST_CASE("grasp set round-trips through JSON") {
  test::Fixture f("mano", "cube");
  const auto again = parse_grasp_set(grasp_set_to_json(f.grasps), f.hand, f.obj).set;
  REQUIRE(again.size() == f.grasps.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(test::same_pose(again[i].wrist, f.grasps[i].wrist));
    CHECK(again[i].theta == f.grasps[i].theta);
    CHECK(again[i].joints == f.grasps[i].joints);
  }
}

TEST_CASE("strict loading rejects and lenient loading drops bad entries") {
  test::Fixture f("mano", "cube");
  io::Json doc = fixture_doc("mano_cube");
  doc["grasps"][1]["theta"][0] = 100.0;
  doc["grasps"][2]["obj_kp"][0][0] = 5.0;
  const std::string text = doc.dump();
  try {
    parse_grasp_set(text, f.hand, f.obj);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    bool saw1 = false, saw2 = false;
    for (const Issue& i : e.issues()) {
      saw1 = saw1 || i.index == 1;
      saw2 = saw2 || i.index == 2;
    }
    CHECK(saw1);
    CHECK(saw2);
  }
  const auto lenient = parse_grasp_set(text, f.hand, f.obj, LoadMode::lenient);
  CHECK(lenient.set.size() == f.grasps.size() - 2);
  CHECK_FALSE(lenient.dropped.empty());
}

TEST_CASE("schema and emptiness errors") {
  test::Fixture f("mano", "cube");
  CHECK_THROWS_AS(parse_grasp_set("{", f.hand, f.obj), ParseError);
  CHECK_THROWS_AS(parse_grasp_set(R"({"hand_model":"mano","object":"cube"})", f.hand, f.obj),
                  ParseError);
  CHECK_THROWS_AS(parse_grasp_set(R"({"hand_model":"mano","object":"cube","grasps":[]})", f.hand,
                                  f.obj),
                  ValidationError);
  io::Json doc = fixture_doc("mano_cube");
  doc["grasps"][0].erase("wrist");
  try {
    parse_grasp_set(doc.dump(), f.hand, f.obj);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field().find("grasps[0]") != std::string::npos);
  }
  // Every entry invalid: lenient mode still reports an empty set.
  io::Json bad = fixture_doc("mano_cube");
  for (auto& g : bad["grasps"]) g["theta"][0] = 100.0;
  CHECK_THROWS_AS(parse_grasp_set(bad.dump(), f.hand, f.obj, LoadMode::lenient), ValidationError);
}

TEST_CASE("mismatched hand or object is reported") {
  test::Fixture f("mano", "cube");
  const auto bottle = load_object_model(test::data("objects/bottle.json"));
  GraspConfiguration g = f.grasps[0];
  CHECK_FALSE(check_grasp(g, f.hand, bottle).empty());
  g.theta.pop_back();
  CHECK_FALSE(check_grasp(g, f.hand, f.obj).empty());
}

TEST_CASE("retargeting is rigid") {
  test::Fixture f("mano", "cube");
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const GraspConfiguration& g = f.grasps[rng.index(f.grasps.size())];
    const Pose target = test::random_pose(rng);
    const GraspConfiguration r = retarget_grasp(g, target);
    CHECK(test::same_pose(r.object, target));
    const Pose a = wrist_in_object(g), b = wrist_in_object(r);
    CHECK((a.position - b.position).norm() < 1e-12);
    CHECK(a.orientation.angle_to(b.orientation) < 1e-7);
    CHECK(r.theta == g.theta);
    CHECK(check_grasp(r, f.hand, f.obj).empty());
    CHECK(grasp_distance(g, r) < 1e-6);
  }
  CHECK(test::same_pose(retarget_grasp(f.grasps[0], f.grasps[0].object).wrist, f.grasps[0].wrist));
}

TEST_CASE("grasp distance is a symmetric weighted sum") {
  test::Fixture f("mano", "cube");
  const GraspConfiguration& a = f.grasps[0];
  GraspConfiguration b = a;
  CHECK(grasp_distance(a, b) == 0.0);
  b.theta[0] += 0.45;
  CHECK(grasp_distance(a, b) == doctest::Approx(0.45 / 45.0));
  b = a;
  b.wrist = Pose{a.wrist.position + a.object.orientation.rotate(Vec3(0.1, 0, 0)), a.wrist.orientation};
  CHECK(grasp_distance(a, b, {2.0, 1.0, 1.0}) == doctest::Approx(0.2));
  b = a;
  b.wrist.orientation = a.object.orientation * UnitQuaternion::from_axis_angle(Vec3::UnitZ(), 0.5) *
                        a.object.orientation.inverse() * a.wrist.orientation;
  CHECK(grasp_distance(a, b, {1.0, 3.0, 1.0}) == doctest::Approx(1.5));
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto& x = f.grasps[rng.index(f.grasps.size())];
    const auto& y = f.grasps[rng.index(f.grasps.size())];
    CHECK(grasp_distance(x, y) == doctest::Approx(grasp_distance(y, x)));
  }
  GraspConfiguration short_theta = a;
  short_theta.theta.pop_back();
  CHECK_THROWS_AS(grasp_distance(a, short_theta), std::invalid_argument);
}

TEST_CASE("nearest grasp with ties and masks") {
  test::Fixture f("mano", "cube");
  GraspSet pool = f.grasps;
  pool.grasps.insert(pool.grasps.begin(), pool.grasps[2]);
  // Entry 0 and entry 3 are identical; the lower index wins.
  auto [i, d] = nearest_grasp(pool[3], pool);
  CHECK(i == 0);
  CHECK(d == 0.0);
  std::unique_ptr<bool[]> raw(new bool[pool.size()]);
  for (std::size_t k = 0; k < pool.size(); ++k) raw[k] = k != 0;
  CHECK(nearest_grasp(pool[3], pool, {}, std::span<const bool>(raw.get(), pool.size())).first == 3);
  for (std::size_t k = 0; k < pool.size(); ++k) raw[k] = false;
  CHECK_THROWS_AS(nearest_grasp(pool[3], pool, {}, std::span<const bool>(raw.get(), pool.size())),
                  std::invalid_argument);
  CHECK_THROWS_AS(nearest_grasp(pool[3], pool, {}, std::span<const bool>(raw.get(), 1)),
                  std::invalid_argument);
  // Brute force agreement.
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const GraspConfiguration q = retarget_grasp(f.grasps[rng.index(f.grasps.size())], test::random_pose(rng));
    const auto [best, dist] = nearest_grasp(q, f.grasps);
    for (std::size_t k = 0; k < f.grasps.size(); ++k) CHECK(grasp_distance(q, f.grasps[k]) >= dist);
    CHECK(grasp_distance(q, f.grasps[best]) == dist);
  }
}

TEST_CASE("rotatable region contact") {
  test::Fixture bottle("mano", "bottle");
  test::Fixture cube("mano", "cube");
  CHECK_THROWS_AS(contacts_rotatable_region(cube.grasps[0], cube.hand, cube.obj), std::logic_error);
  int touching = 0;
  for (const auto& g : bottle.grasps.grasps) touching += contacts_rotatable_region(g, bottle.hand, bottle.obj);
  CHECK(touching > 0);
  // Moving the hand away breaks every contact; retargeting preserves it.
  for (const auto& g : bottle.grasps.grasps) {
    GraspConfiguration far = transform_grasp(g, Pose{Vec3(0, 0, 0.5), UnitQuaternion::identity()});
    far.object = g.object;
    far.object_keypoints = g.object_keypoints;
    CHECK_FALSE(contacts_rotatable_region(far, bottle.hand, bottle.obj));
    const auto moved = retarget_grasp(g, Pose{Vec3(0.3, -0.2, 0.4), UnitQuaternion::from_axis_angle(Vec3::UnitX(), 1.0)});
    CHECK(contacts_rotatable_region(moved, bottle.hand, bottle.obj) ==
          contacts_rotatable_region(g, bottle.hand, bottle.obj));
  }
  ContactCriteria none{0.008, 100};
  CHECK_FALSE(contacts_rotatable_region(bottle.grasps[0], bottle.hand, bottle.obj, none));
}
