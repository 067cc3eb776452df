// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hopkit/io/json_util.hpp"
#include "hopkit/io/trajectory_codec.hpp"
#include "hopkit/plan/plan.hpp"
#include "hopkit/reward/reward.hpp"
#include "hopkit/training/training.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hopkit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Largest absolute difference over every pose-valued field of two frames.
double frame_gap(const Frame& a, const Frame& b) {
  double g = 0.0;
  auto pose = [&](const Pose& p, const Pose& q) {
    g = std::max(g, (p.position - q.position).cwiseAbs().maxCoeff());
    g = std::max(g, std::abs(p.orientation.w() - q.orientation.w()));
    g = std::max(g, (p.orientation.vec() - q.orientation.vec()).cwiseAbs().maxCoeff());
  };
  pose(a.wrist, b.wrist);
  if (a.object.has_value() != b.object.has_value()) return INFINITY;
  if (a.object) pose(*a.object, *b.object);
  if (a.theta.size() != b.theta.size() || a.joints.size() != b.joints.size()) return INFINITY;
  for (std::size_t i = 0; i < a.theta.size(); ++i) g = std::max(g, std::abs(a.theta[i] - b.theta[i]));
  for (std::size_t i = 0; i < a.joints.size(); ++i) {
    g = std::max(g, (a.joints[i] - b.joints[i]).cwiseAbs().maxCoeff());
  }
  for (std::size_t i = 0; i < a.object_keypoints.size(); ++i) {
    g = std::max(g, (a.object_keypoints[i] - b.object_keypoints[i]).cwiseAbs().maxCoeff());
  }
  return g;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const test::Fixture& cube() {
  static const test::Fixture f("mano", "cube");
  return f;
}

Outcome reversal() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& f = cube();
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SynthConfig c;
    c.seed = seed;
    Rng a(seed), b(seed), d(seed), e(seed);
    const Trajectory grasp = synth_grasp(c, f.in, a);
    const Trajectory place = synth_place(c, f.in, b);
    const Trajectory katch = synth_catch(c, f.in, d);
    const Trajectory thrw = synth_throw(c, f.in, e);
    if (grasp.size() != place.size() || katch.size() != thrw.size()) return {false, "length mismatch"};
    const std::size_t T = grasp.size() - 1, U = katch.size() - 1;
    for (std::size_t t = 0; t <= T; ++t) worst = std::max(worst, frame_gap(place.frames[t], grasp.frames[T - t]));
    for (std::size_t t = 0; t <= U; ++t) worst = std::max(worst, frame_gap(thrw.frames[t], katch.frames[U - t]));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-12 && secs < 10.0, fmt("max deviation %.3g over 100 seeds, %.2f s", worst, secs)};
}

Outcome move_rigidity() {
  const auto& f = cube();
  double dp = 0.0, dr = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SynthConfig c;
    c.seed = seed;
    Rng rng(seed);
    const Trajectory t = synth_move(c, f.in, rng);
    const Pose rel0 = t.frames[0].object->inverse() * t.frames[0].wrist;
    for (const Frame& fr : t.frames) {
      const Pose rel = fr.object->inverse() * fr.wrist;
      dp = std::max(dp, position_distance(rel, rel0));
      dr = std::max(dr, rotation_distance(rel, rel0));
    }
  }
  return {dp < 1e-9 && dr < 1e-9, fmt("max drift %.3g m, %.3g rad over 100 clips", dp, dr)};
}

Outcome grasp_safety() {
  const auto& f = cube();
  std::size_t bad = 0, frames = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    SynthConfig c;
    c.seed = derive_seed(3, 1, i);
    Rng rng(c.seed);
    const Trajectory t = synth_grasp(c, f.in, rng);
    for (const Frame& fr : t.frames) {
      ++frames;
      bad += ground_penetration(fr.joints) > 0.0;
    }
  }
  return {bad == 0, fmt("%.0f penetrating frames of %.0f", static_cast<double>(bad), static_cast<double>(frames))};
}

Outcome replication() {
  const int a = replication_count(0.5, 40.0, 5);
  const int b = replication_count(1.0, 40.0, 5);
  const int c = replication_count(2.0, 40.0, 5);
  const int z = replication_count(0.0, 40.0, 5);
  char buf[128];
  std::snprintf(buf, sizeof buf, "counts (%d, %d, %d), floor %d", a, b, c, z);
  return {a == 20 && b == 40 && c == 80 && z == 5, buf};
}

Outcome reward_sanity() {
  const auto& f = cube();
  Rng rng(5);
  bool perfect = true;
  for (int i = 0; i < 1000; ++i) {
    const Frame fr = test::random_frame(f.hand, f.obj, rng, i % 4 == 0 ? Phase::regrasp : Phase::move);
    perfect = perfect && frame_reward(fr, fr, {}).total == 1.0;
  }
  const Frame ref = test::random_frame(f.hand, f.obj, rng);
  Frame off = ref;
  off.object->position += Vec3(0.02, 0.0, 0.0);
  const double r_op = frame_reward(off, ref, {}).component(Term::op);
  const double op_err = std::abs(r_op - std::exp(-1.0));
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Frame a = test::random_frame(f.hand, f.obj, rng);
    Frame b = a;
    b.wrist.position += 0.02 * rng.unit_vector();
    b.object = Pose{a.object->position + 0.02 * rng.unit_vector(),
                    UnitQuaternion::from_axis_angle(rng.unit_vector(), 0.1) * a.object->orientation};
    b = make_frame(f.hand, &f.obj, b.wrist, test::random_theta(f.hand, rng), b.object, rng.bernoulli(0.5),
                   Phase::move);
    const FrameReward r = frame_reward(b, a, {});
    double sum = 0.0;
    for (double c : r.components) sum += std::log(c);
    worst = std::max(worst, std::abs(std::log(r.total) - sum));
  }
  return {perfect && op_err <= 1e-9 && worst <= 1e-9,
          std::string(perfect ? "perfect tracking = 1" : "perfect tracking != 1") +
              fmt(", |r_op - 1/e| %.3g, ln-product gap %.3g", op_err, worst)};
}

Outcome adaptive_sampling() {
  const std::vector<double> r{0.5, 1.0};
  const auto u = sampling_probabilities(r, 0.0);
  const bool uniform = u[0] == 0.5 && u[1] == 0.5;
  const double p1 = sampling_probabilities(r, 10.0)[0];
  const double err = std::abs(p1 - 1.0 / (1.0 + std::exp(-5.0)));
  Rng rng(6);
  std::vector<double> big(1000000);
  for (double& v : big) v = rng.uniform();
  double worst_sum = 0.0;
  bool finite = true;
  for (double lambda : {0.0, 10.0, 1e3, 1e6}) {
    double sum = 0.0;
    for (double p : sampling_probabilities(big, lambda)) {
      finite = finite && std::isfinite(p);
      sum += p;
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
  }
  const auto uu = sampling_probabilities(big, 0.0);
  for (double p : uu) finite = finite && p == uu[0];
  return {uniform && err <= 1e-12 && finite && worst_sum < 1e-9,
          fmt("|p1 - 1/(1+e^-5)| %.3g, N=1e6 sum error %.3g", err, worst_sum)};
}

Outcome curriculum() {
  const CurriculumConfig c;
  Rng rng(7);
  bool stage1 = true;
  for (int i = 0; i < 100000; ++i) stage1 = stage1 && sample_object_scale(c, rng, 1) == 1.0;
  int scaled = 0;
  bool support = true;
  for (int i = 0; i < 100000; ++i) {
    const double s = sample_object_scale(c, rng, 2);
    if (s != 1.0) {
      ++scaled;
      support = support && s >= 0.75 && s <= 1.5;
    }
  }
  const double frac = scaled / 1e5;
  return {stage1 && support && std::abs(frac - 0.2) <= 0.01,
          fmt("non-unit fraction %.4f", frac) + (support ? ", support in [0.75, 1.5]" : ", support violated") +
              (stage1 ? ", stage-1 all 1.0" : ", stage-1 scaled")};
}

Outcome distillation() {
  const DistillConfig c;
  bool ok = true;
  for (long e = 0; e < 500; ++e) ok = ok && distill_schedule({e, {}}, c).teacher_probability == 1.0;
  const double mid = distill_schedule({2750, {}}, c).teacher_probability;
  ok = ok && mid == 0.5;
  for (long e = 5000; e <= 20000; ++e) ok = ok && distill_schedule({e, {}}, c).teacher_probability == 0.0;
  // Every reading sequence of length <= 8 over {0.6, 0.61}: the gate opens
  // exactly when three consecutive readings exceed 0.6.
  bool gate = true;
  for (int len = 0; len <= 8; ++len) {
    for (int bits = 0; bits < (1 << len); ++bits) {
      std::vector<double> ev;
      int run = 0, best = 0;
      for (int i = 0; i < len; ++i) {
        const bool high = (bits >> i) & 1;
        ev.push_back(high ? 0.61 : 0.6);
        run = high ? run + 1 : 0;
        best = std::max(best, run);
      }
      const bool expect = best >= 3;
      gate = gate && ev_gate_open(ev, c) == expect &&
             distill_schedule({6000, ev}, c).policy_gradient_active == expect;
    }
  }
  return {ok && gate, fmt("p(0..499)=1, p(2750)=%.3g, p(>=5000)=0", mid) +
                          (gate ? ", gate table ok" : ", gate table wrong")};
}

Outcome stable_poses() {
  auto check = [](const ObjectModel& o, std::size_t expect, std::string& note) {
    const auto poses = enumerate_stable_poses(o);
    const auto normals = test::oracle_stable_normals(o.hull_points(), o.com());
    bool ok = poses.size() == expect && normals.size() == expect;
    for (const StablePose& p : poses) {
      const Vec3 down = p.pose.orientation.inverse().rotate(-Vec3::UnitZ());
      bool found = false;
      for (const Vec3& n : normals) found = found || (n - down).norm() < 1e-9;
      ok = ok && found;
    }
    note += " " + o.id() + "=" + std::to_string(poses.size());
    return ok;
  };
  std::string note;
  const ObjectModel cube_obj = load_object_model(test::data("objects/cube.json"));
  const ObjectModel tet = load_object_model(test::data("objects/tetrahedron.json"));
  const PointList bevel = test::beveled_cube(0.03, 0.006);
  const ObjectModel centered("beveled", bevel, bevel, Vec3::Zero());
  const ObjectModel shifted("beveled_com_shifted", bevel, bevel, Vec3(0, 0, -0.01));
  bool ok = check(cube_obj, 6, note) && check(tet, 4, note) && check(centered, 7, note) &&
            check(shifted, 6, note);
  const Vec3 bevel_normal = Vec3(1, 0, 1).normalized();
  for (const StablePose& p : enumerate_stable_poses(shifted)) {
    ok = ok && (p.pose.orientation.inverse().rotate(-Vec3::UnitZ()) - bevel_normal).norm() > 1e-6;
  }
  return {ok, "poses:" + note + ", bevel face excluded after COM shift"};
}

Outcome plan_pipeline() {
  const test::Fixture f("mano", "bottle");
  const ManipulationPlan p = parse_plan(io::read_file(test::data("plans/bottle_upright.json")));
  if (p.keypoints.size() != 9 || p.grasp_index != 3 || p.release_index != 8) return {false, "fixture plan shape"};
  const int spk = 20;
  const DensePath d = densify_plan(p, spk);
  bool hits = true;
  for (std::size_t k = 0; k < p.keypoints.size(); ++k) {
    const Pose& s = d.poses[d.keypoint_samples[k]];
    hits = hits && s.position == p.keypoints[k].pose.position &&
           s.orientation.angle_to(p.keypoints[k].pose.orientation) == 0.0;
  }
  // Perturbing an interior keypoint of one segment leaves the others untouched.
  bool confined = true;
  const std::vector<std::pair<std::size_t, std::pair<long, long>>> cases{
      {1, {1, 3}}, {4, {3, 8}}, {6, {3, 8}}};
  for (const auto& [moved, range] : cases) {
    ManipulationPlan q = p;
    q.keypoints[moved].pose.position += Vec3(0.02, 0.01, -0.01);
    const DensePath e = densify_plan(q, spk);
    const std::size_t lo = static_cast<std::size_t>(range.first - 1) * spk;
    const std::size_t hi = static_cast<std::size_t>(range.second - 1) * spk;
    for (std::size_t s = 0; s < e.poses.size(); ++s) {
      if (s <= lo || s >= hi) confined = confined && test::same_pose(e.poses[s], d.poses[s]);
    }
  }
  bool signs = true;
  for (std::size_t i = 1; i < d.poses.size(); ++i) signs = signs && d.poses[i - 1].orientation.dot(d.poses[i].orientation) >= 0.0;
  const Trajectory demo = plan_to_demonstration(p, d, f.grasps, f.hand, f.obj);
  const double mean = trajectory_mean_reward(demo, demo, {});
  const bool valid = check_trajectory(demo, f.hand, &f.obj).empty();
  return {hits && confined && signs && valid && mean == 1.0,
          fmt("segments [1,3],[3,8],[8,9]; %.0f samples, self-score %.17g", static_cast<double>(d.poses.size()), mean) +
              (confined ? ", confined" : ", leaks") + (signs ? ", signs continuous" : ", sign flip")};
}

std::vector<Trajectory> corpus(std::uint64_t root, std::size_t n) {
  const auto& f = cube();
  std::vector<Trajectory> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SynthConfig c;
    c.clip_frames = 30;
    c.seed = derive_seed(root, static_cast<std::uint32_t>(i % 6), i);
    Rng rng(c.seed);
    switch (i % 6) {
      case 0: out.push_back(synth_free_move(c, f.hand, rng)); break;
      case 1: out.push_back(synth_grasp(c, f.in, rng)); break;
      case 2: out.push_back(synth_move(c, f.in, rng)); break;
      case 3: out.push_back(synth_throw(c, f.in, rng)); break;
      case 4: out.push_back(synth_rotate_general(c, f.in, rng, 2)); break;
      default: out.push_back(synth_grasp_move_place(c, f.in, rng)); break;
    }
  }
  return out;
}

Outcome determinism(double elapsed_before) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = corpus(2024, 1000);
  const auto b = corpus(2024, 1000);
  std::size_t same = 0, json_rt = 0, bin_rt = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string ja = io::encode_json(a[i]), ba = io::encode_binary(a[i]);
    same += ja == io::encode_json(b[i]) && ba == io::encode_binary(b[i]);
    json_rt += io::encode_json(io::decode_json(ja)) == ja;
    bin_rt += io::encode_binary(io::decode_binary(ba)) == ba && io::encode_json(io::decode_binary(ba)) == ja;
  }
  const double secs =
      elapsed_before + std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[200];
  std::snprintf(buf, sizeof buf, "identical %zu/1000, JSON %zu/1000, binary %zu/1000, suite %.1f s", same,
                json_rt, bin_rt, secs);
  return {same == 1000 && json_rt == 1000 && bin_rt == 1000 && secs < 120.0, buf};
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"reversal identities", reversal},
      {"move rigidity", move_rigidity},
      {"grasp ground screen", grasp_safety},
      {"keyframe replication", replication},
      {"reward sanity", reward_sanity},
      {"adaptive sampling", adaptive_sampling},
      {"curriculum statistics", curriculum},
      {"distillation schedule", distillation},
      {"stable poses", stable_poses},
      {"plan pipeline", plan_pipeline},
      {"determinism and round-trip", [&] { return determinism(elapsed()); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failed,
              criteria.size(), elapsed());
  return failed == 0 ? 0 : 1;
}
