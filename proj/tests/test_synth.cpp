#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <memory>
#include <set>

#include "support.hpp"

using namespace hopkit;

namespace {

const test::Fixture& cube() {
  static const test::Fixture f("mano", "cube");
  return f;
}

const test::Fixture& bottle() {
  static const test::Fixture f("mano", "bottle");
  return f;
}

SynthConfig config(std::uint64_t seed) {
  SynthConfig c;
  c.seed = seed;
  return c;
}

void check_valid(const Trajectory& t, const test::Fixture& f) {
  const auto issues = check_trajectory(t, f.hand, &f.obj, config(0).limits);
  for (const Issue& i : issues) INFO(i.index << ": " << i.message);
  CHECK(issues.empty());
}

bool all_phase(const Trajectory& t, Phase p) {
  for (const Frame& f : t.frames) {
    if (f.phase != p) return false;
  }
  return true;
}

bool all_contact(const Frame& f, bool v) {
  for (bool c : f.contact) {
    if (c != v) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("config validation") {
  SynthConfig c;
  CHECK_NOTHROW(c.validate());
  c.clip_frames = 1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.cone_r_min = 0.5;
  c.cone_r_max = 0.1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.contact_frames = 100;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.fps = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("replication count") {
  CHECK(replication_count(0.5, 40.0, 5) == 20);
  CHECK(replication_count(1.0, 40.0, 5) == 40);
  CHECK(replication_count(2.0, 40.0, 5) == 80);
  CHECK(replication_count(0.0, 40.0, 5) == 5);
  CHECK(replication_count(0.1, 40.0, 5) == 5);
  CHECK(replication_count(0.15, 40.0, 5) == 6);
}

TEST_CASE("phase names") {
  for (int i = 0; i <= static_cast<int>(Phase::transition); ++i) {
    const Phase p = static_cast<Phase>(i);
    CHECK(phase_from_name(phase_name(p)) == p);
  }
  CHECK_THROWS_AS(phase_from_name("dance"), std::invalid_argument);
}

TEST_CASE("check_frame catches tampering") {
  const auto& f = cube();
  Rng rng(1);
  Frame fr = test::random_frame(f.hand, f.obj, rng);
  CHECK(check_frame(fr, f.hand, &f.obj).empty());
  Frame bad = fr;
  bad.joints[3].x() += 0.01;
  CHECK_FALSE(check_frame(bad, f.hand, &f.obj).empty());
  bad = fr;
  bad.object_keypoints[0].z() += 0.01;
  CHECK_FALSE(check_frame(bad, f.hand, &f.obj).empty());
  bad = fr;
  bad.contact.pop_back();
  CHECK_FALSE(check_frame(bad, f.hand, &f.obj).empty());
  bad = fr;
  bad.object.reset();
  CHECK_FALSE(check_frame(bad, f.hand, &f.obj).empty());
  bad = fr;
  bad.theta.pop_back();
  CHECK_FALSE(check_frame(bad, f.hand, &f.obj).empty());
}

TEST_CASE("free move") {
  const auto& f = cube();
  Rng rng(2);
  const SynthConfig c = config(2);
  const Trajectory t = synth_free_move(c, f.hand, rng);
  CHECK(t.size() == static_cast<std::size_t>(c.clip_frames));
  CHECK(all_phase(t, Phase::free_move));
  CHECK(check_trajectory(t, f.hand, nullptr).empty());
  for (const Frame& fr : t.frames) {
    CHECK_FALSE(fr.object.has_value());
    CHECK(fr.object_keypoints.empty());
    CHECK(all_contact(fr, false));
    CHECK(c.workspace.contains(fr.wrist.position));
  }
}

TEST_CASE("grasp clips") {
  const auto& f = cube();
  const SynthConfig c = config(3);
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(s);
    const Trajectory t = synth_grasp(c, f.in, rng);
    check_valid(t, f);
    CHECK(all_phase(t, Phase::grasp));
    CHECK(t.meta.skills == std::vector<std::string>{"grasp"});
    const Frame& last = t.frames.back();
    // Object rests on the ground and never moves.
    double lowest = 1e9;
    for (const Vec3& v : f.obj.hull().vertices()) lowest = std::min(lowest, last.object->apply(v).z());
    CHECK(std::abs(lowest) < 1e-9);
    for (const Frame& fr : t.frames) {
      CHECK(test::same_pose(*fr.object, *last.object));
      CHECK(ground_penetration(fr.joints) == 0.0);
    }
    // Approach starts in the cone shell with an open hand.
    const Vec3 center = last.object->apply(f.obj.com());
    const double r = (t.frames.front().wrist.position - center).norm();
    CHECK(r >= c.cone_r_min - 1e-12);
    CHECK(r <= c.cone_r_max + 1e-12);
    CHECK(t.frames.front().theta == f.hand.clamp_to_limits(std::vector<double>(f.hand.dof(), 0.0)));
    CHECK(all_contact(last, true));
    CHECK(all_contact(t.frames[t.size() - 2], false));
    // The final frame is one of the library grasps, rigidly placed.
    const GraspConfiguration g{last.wrist, last.theta, last.joints, *last.object,
                               last.object_keypoints, "mano", "cube"};
    CHECK(nearest_grasp(g, f.grasps).second < 1e-6);
  }
}

TEST_CASE("place and throw are exact reversals") {
  const auto& f = cube();
  for (std::uint64_t s = 0; s < 10; ++s) {
    const SynthConfig c = config(s);
    Rng a(s), b(s), d(s), e(s);
    const Trajectory g = synth_grasp(c, f.in, a);
    const Trajectory p = synth_place(c, f.in, b);
    const Trajectory ca = synth_catch(c, f.in, d);
    const Trajectory th = synth_throw(c, f.in, e);
    REQUIRE(g.size() == p.size());
    REQUIRE(ca.size() == th.size());
    const std::size_t T = g.size() - 1;
    for (std::size_t t = 0; t <= T; ++t) {
      CHECK(test::same_frame(p.frames[t], g.frames[T - t]));
      CHECK(test::same_frame(th.frames[t], ca.frames[T - t]));
    }
    CHECK(all_phase(p, Phase::place));
    CHECK(all_phase(th, Phase::throw_));
    CHECK(p.meta.skills == std::vector<std::string>{"place"});
    CHECK(th.meta.skills == std::vector<std::string>{"throw"});
  }
  const Trajectory g = synth_grasp(config(0), f.in, *std::make_unique<Rng>(7));
  const Trajectory twice = reversed(reversed(g, Phase::place), Phase::grasp);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(test::same_frame(twice.frames[i], g.frames[i]));
}

TEST_CASE("move keeps the grasp rigid") {
  const auto& f = cube();
  const SynthConfig c = config(4);
  Rng rng(4);
  for (int n = 0; n < 20; ++n) {
    const Trajectory t = synth_move(c, f.in, rng);
    check_valid(t, f);
    const Pose rel0 = t.frames[0].object->inverse() * t.frames[0].wrist;
    for (const Frame& fr : t.frames) {
      const Pose rel = fr.object->inverse() * fr.wrist;
      CHECK(position_distance(rel, rel0) < 1e-9);
      CHECK(rotation_distance(rel, rel0) < 1e-9);
      CHECK(fr.theta == t.frames[0].theta);
      CHECK(all_contact(fr, true));
    }
  }
}

TEST_CASE("move with pinned boundaries") {
  const auto& f = cube();
  const SynthConfig c = config(5);
  Rng rng(5);
  const Trajectory g = synth_grasp(c, f.in, rng);
  const Frame& start = g.frames.back();
  const Trajectory m = synth_move(c, f.in, rng, {&start, nullptr, true});
  CHECK(test::same_pose(m.frames.front().wrist, start.wrist));
  CHECK(test::same_pose(*m.frames.front().object, *start.object));
  CHECK(m.frames.back().object->position.z() == doctest::Approx(start.object->position.z()));
  const Vec3 up0 = start.object->orientation.inverse().rotate(Vec3::UnitZ());
  const Vec3 up1 = m.frames.back().object->orientation.inverse().rotate(Vec3::UnitZ());
  CHECK((up0 - up1).norm() < 1e-9);
  const Trajectory m2 = synth_move(c, f.in, rng, {&start, &m.frames.back(), false});
  CHECK(test::same_pose(*m2.frames.back().object, *m.frames.back().object));
  // Boundaries holding different grasps are rejected.
  const Trajectory other = synth_grasp(c, f.in, rng);
  Frame different = other.frames.back();
  if (nearest_grasp({different.wrist, different.theta, different.joints, *different.object,
                     different.object_keypoints, "mano", "cube"},
                    f.grasps)
              .first !=
      nearest_grasp({start.wrist, start.theta, start.joints, *start.object, start.object_keypoints,
                     "mano", "cube"},
                    f.grasps)
              .first) {
    CHECK_THROWS_AS(synth_move(c, f.in, rng, {&start, &different, false}), SynthesisError);
  }
  Frame no_obj = start;
  no_obj.object.reset();
  CHECK_THROWS_AS(synth_move(c, f.in, rng, {&no_obj, nullptr, false}), SynthesisError);
}

TEST_CASE("simple rotate turns the object about its axis") {
  const auto& f = bottle();
  const SynthConfig c = config(6);
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(s);
    const Trajectory t = synth_rotate_simple(c, f.in, rng);
    check_valid(t, f);
    CHECK(all_phase(t, Phase::rotate));
    const Frame& f0 = t.frames.front();
    const Vec3 axis = f0.object->orientation.rotate(*f.obj.rotation_axis());
    const Vec3 pivot = f0.object->apply(f.obj.rotatable_region()->center);
    std::size_t holds = 0, total = 0;
    Pose prev = *f0.object;
    std::size_t run = 0;
    for (std::size_t i = 0; i <= t.size(); ++i) {
      if (i < t.size() && test::same_pose(*t.frames[i].object, prev)) {
        ++run;
        continue;
      }
      // One run of replicated keyframes ends at i.
      const Pose& key = *t.frames[i - 1].object;
      CHECK(run >= static_cast<std::size_t>(c.replication_min));
      total += run;
      ++holds;
      CHECK((key.apply(f.obj.rotatable_region()->center) - pivot).norm() < 1e-9);
      const Vec3 a = key.orientation.rotate(*f.obj.rotation_axis());
      CHECK((a - axis).norm() < 1e-9);
      if (i < t.size()) {
        const double step = key.orientation.angle_to(t.frames[i].object->orientation);
        const std::size_t next_run = [&] {
          std::size_t r = 0;
          for (std::size_t j = i; j < t.size() && test::same_pose(*t.frames[j].object, *t.frames[i].object); ++j) ++r;
          return r;
        }();
        CHECK(next_run == static_cast<std::size_t>(replication_count(step, c.replication_gain, c.replication_min)));
        prev = *t.frames[i].object;
      }
      run = 1;
    }
    CHECK(total == t.size());
    CHECK(holds <= static_cast<std::size_t>(c.rotate_keyframes));
    for (const Frame& fr : t.frames) {
      CHECK(test::same_pose(fr.wrist, f0.wrist));
      CHECK(fr.theta == f0.theta);
    }
  }
  CHECK_THROWS_AS(synth_rotate_simple(c, cube().in, *std::make_unique<Rng>(1)), SynthesisError);
}

TEST_CASE("greedy chain") {
  const auto& f = cube();
  const auto chain = greedy_chain(f.grasps, 2, 4, {});
  CHECK(chain.size() == 5);
  CHECK(chain.front() == 2);
  CHECK(std::set<std::size_t>(chain.begin(), chain.end()).size() == chain.size());
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const double d = grasp_distance(f.grasps[chain[i - 1]], f.grasps[chain[i]]);
    for (std::size_t k = 0; k < f.grasps.size(); ++k) {
      if (std::find(chain.begin(), chain.begin() + static_cast<long>(i), k) != chain.begin() + static_cast<long>(i)) continue;
      CHECK(grasp_distance(f.grasps[chain[i - 1]], f.grasps[k]) >= d);
    }
  }
  CHECK(greedy_chain(f.grasps, 0, 0, {}).size() == 1);
  CHECK_THROWS_AS(greedy_chain(f.grasps, 0, static_cast<int>(f.grasps.size()), {}), SynthesisError);
  CHECK_THROWS_AS(greedy_chain(f.grasps, 0, -1, {}), std::invalid_argument);
}

TEST_CASE("general rotate holds the wrist, regrasp holds the object") {
  const auto& f = cube();
  const SynthConfig c = config(7);
  for (int k : {0, 1, 3}) {
    Rng a(k), b(k);
    const Trajectory r = synth_rotate_general(c, f.in, a, k);
    const Trajectory g = synth_regrasp(c, f.in, b, k);
    check_valid(r, f);
    check_valid(g, f);
    const std::size_t n = static_cast<std::size_t>((k + 1) * c.chain_hold_frames);
    CHECK(r.size() == n);
    CHECK(g.size() == n);
    CHECK(all_phase(r, Phase::rotate));
    CHECK(all_phase(g, Phase::regrasp));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(test::same_pose(r.frames[i].wrist, r.frames[0].wrist));
      CHECK(test::same_pose(*g.frames[i].object, *g.frames[0].object));
    }
  }
  Rng rng(1);
  CHECK_THROWS_AS(synth_regrasp(c, f.in, rng, static_cast<int>(f.grasps.size())), SynthesisError);
  CHECK_THROWS_AS(synth_rotate_general(c, f.in, rng, -1), std::invalid_argument);
}

TEST_CASE("catch follows a ballistic arc into a grasp") {
  const auto& f = cube();
  const SynthConfig c = config(8);
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(s);
    const Trajectory t = synth_catch(c, f.in, rng);
    check_valid(t, f);
    CHECK(t.size() == static_cast<std::size_t>(c.clip_frames));
    const double dt = 1.0 / c.fps;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
      const Vec3 acc = (t.frames[i + 1].object->position - 2.0 * t.frames[i].object->position +
                        t.frames[i - 1].object->position) / (dt * dt);
      CHECK(acc.x() == doctest::Approx(0.0).epsilon(1e-6).scale(1.0));
      CHECK(acc.z() == doctest::Approx(-c.gravity).epsilon(1e-6));
      CHECK(test::same_pose(t.frames[i].wrist, t.frames[0].wrist));
      CHECK(hand_object_clearance(t.frames[i].joints, f.obj, *t.frames[i].object) >=
            c.catch_clearance_threshold);
    }
    const Frame& last = t.frames.back();
    const GraspConfiguration g{last.wrist, last.theta, last.joints, *last.object,
                               last.object_keypoints, "mano", "cube"};
    CHECK(nearest_grasp(g, f.grasps).second < 1e-6);
  }
}

TEST_CASE("compose") {
  const auto& f = cube();
  const SynthConfig c = config(9);
  Rng rng(9);
  const Trajectory t = synth_grasp_move_place(c, f.in, rng);
  check_valid(t, f);
  CHECK(t.size() == static_cast<std::size_t>(3 * c.clip_frames - 2));
  CHECK(t.meta.skills == std::vector<std::string>{"grasp", "move", "place"});
  // Object ends resting on the ground.
  double lowest = 1e9;
  for (const Vec3& v : f.obj.hull().vertices()) lowest = std::min(lowest, t.frames.back().object->apply(v).z());
  CHECK(std::abs(lowest) < 1e-9);

  Rng r1(1), r2(2);
  const Trajectory a = synth_grasp(c, f.in, r1);
  const Trajectory b = synth_grasp(c, f.in, r2);
  const std::vector<Trajectory> bad{a, b};
  CHECK_THROWS_AS(compose(bad), SynthesisError);
  Trajectory other_fps = a;
  other_fps.fps = 30.0;
  const std::vector<Trajectory> fps{a, other_fps};
  CHECK_THROWS_AS(compose(fps), SynthesisError);
  CHECK_THROWS_AS(compose(std::span<const Trajectory>{}), std::invalid_argument);
  const std::vector<Trajectory> one{a};
  CHECK(compose(one).size() == a.size());
  // Tolerance edges: 0.9 mm passes, 1.1 mm fails.
  Trajectory shifted = reversed(a, Phase::place);
  const std::vector<Trajectory> exact{a, shifted};
  CHECK(compose(exact).size() == 2 * a.size() - 1);
  for (double d : {0.0009, 0.0011}) {
    Trajectory s = shifted;
    s.frames.front().wrist.position.x() += d;
    const std::vector<Trajectory> pair{a, s};
    if (d < 0.001) CHECK_NOTHROW(compose(pair));
    else CHECK_THROWS_AS(compose(pair), SynthesisError);
  }
}

TEST_CASE("synthesis is deterministic in the seed") {
  const auto& f = cube();
  const SynthConfig c = config(10);
  Rng a(42), b(42), d(43);
  const Trajectory x = synth_grasp_move_place(c, f.in, a);
  const Trajectory y = synth_grasp_move_place(c, f.in, b);
  const Trajectory z = synth_grasp_move_place(c, f.in, d);
  REQUIRE(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(test::same_frame(x.frames[i], y.frames[i]));
  CHECK_FALSE(test::same_frame(x.frames[0], z.frames[0]));
}

TEST_CASE("other hands") {
  for (const char* hand : {"shadow", "allegro"}) {
    const test::Fixture f(hand, "cube");
    const SynthConfig c = config(11);
    Rng rng(11);
    check_valid(synth_grasp_move_place(c, f.in, rng), f);
    check_valid(synth_catch(c, f.in, rng), f);
    check_valid(synth_regrasp(c, f.in, rng, 2), f);
  }
}

TEST_CASE("missing inputs") {
  const auto& f = cube();
  const SynthConfig c = config(12);
  Rng rng(1);
  SkillInputs none;
  CHECK_THROWS_AS(synth_grasp(c, none, rng), std::invalid_argument);
  GraspSet empty;
  SkillInputs no_grasps = SkillInputs::make(f.hand, f.obj, empty);
  CHECK_THROWS_AS(synth_grasp(c, no_grasps, rng), SynthesisError);
  CHECK_THROWS_AS(synth_catch(c, no_grasps, rng), SynthesisError);
  SynthConfig tiny = c;
  tiny.resample_budget = 1;
  tiny.catch_clearance_threshold = 1.0;  // unreachable
  CHECK_THROWS_AS(synth_catch(tiny, f.in, rng), SynthesisError);
}
