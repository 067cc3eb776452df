#include "hopkit/synth/skills.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hopkit {

void SynthConfig::validate() const {
  workspace.validate();
  if (clip_frames < 2) throw std::invalid_argument("clip length must be >= 2 frames");
  if (!(fps > 0.0)) throw std::invalid_argument("fps must be positive");
  if (!(cone_half_angle > 0.0) || cone_half_angle > M_PI / 2) {
    throw std::invalid_argument("cone half angle must be in (0, pi/2]");
  }
  if (!(cone_r_min > 0.0) || cone_r_min > cone_r_max) {
    throw std::invalid_argument("cone radial range must satisfy 0 < min <= max");
  }
  if (contact_frames < 1 || contact_frames > clip_frames) {
    throw std::invalid_argument("contact window must be within the clip");
  }
  if (resample_budget < 1) throw std::invalid_argument("resample budget must be >= 1");
  if (rotate_keyframes < 1) throw std::invalid_argument("rotate needs >= 1 keyframe");
  if (replication_min < 1 || replication_gain < 0.0) {
    throw std::invalid_argument("replication parameters must be positive");
  }
  if (chain_hold_frames < 1) throw std::invalid_argument("chain hold must be >= 1 frame");
}

SkillInputs SkillInputs::make(const KinematicTree& hand, const ObjectModel& obj,
                              const GraspSet& grasps) {
  return {&hand, &obj, &grasps, enumerate_stable_poses(obj)};
}

int replication_count(double delta_angle, double gain, int n_min) {
  return std::max(n_min, static_cast<int>(std::lround(gain * delta_angle)));
}

std::vector<std::size_t> greedy_chain(const GraspSet& pool, std::size_t start, int k,
                                      const GraspMetricWeights& w) {
  if (k < 0) throw std::invalid_argument("chain length must be >= 0");
  if (pool.size() < static_cast<std::size_t>(k) + 1) {
    throw SynthesisError("grasp pool too small: need " + std::to_string(k + 1) + ", have " +
                         std::to_string(pool.size()));
  }
  std::vector<bool> available(pool.size(), true);
  std::vector<std::size_t> chain{start};
  available[start] = false;
  for (int step = 0; step < k; ++step) {
    std::unique_ptr<bool[]> mask(new bool[pool.size()]);
    std::copy(available.begin(), available.end(), mask.get());
    const auto [next, d] =
        nearest_grasp(pool[chain.back()], pool, w, std::span<const bool>(mask.get(), pool.size()));
    (void)d;
    available[next] = false;
    chain.push_back(next);
  }
  return chain;
}

namespace {

double param(int t, int frames) {
  return static_cast<double>(t) / static_cast<double>(frames - 1);
}

std::vector<double> lerp_angles(const std::vector<double>& a, const std::vector<double>& b,
                                 double u) {
  if (u <= 0.0) return a;
  if (u >= 1.0) return b;
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + u * (b[i] - a[i]);
  return out;
}

Pose random_air_pose(const SynthConfig& cfg, Rng& rng) {
  const Vec3 lo(cfg.workspace.lo.x(), cfg.workspace.lo.y(),
                std::max(cfg.workspace.lo.z(), std::min(cfg.air_min_height, cfg.workspace.hi.z())));
  const Vec3 p = rng.in_box(lo, cfg.workspace.hi);
  return {p, rng.rotation()};
}

// Random turn about world z plus a fresh x/y inside the workspace.
Pose planar_placement(const SynthConfig& cfg, Rng& rng) {
  const double yaw = rng.uniform(0.0, 2.0 * M_PI);
  const double x = rng.uniform(cfg.workspace.lo.x(), cfg.workspace.hi.x());
  const double y = rng.uniform(cfg.workspace.lo.y(), cfg.workspace.hi.y());
  return {Vec3(x, y, 0.0), UnitQuaternion::from_axis_angle(Vec3::UnitZ(), yaw)};
}

std::vector<double> open_hand(const KinematicTree& hand) {
  const std::vector<double> zeros(hand.dof(), 0.0);
  return hand.clamp_to_limits(zeros);
}

Trajectory new_trajectory(const SynthConfig& cfg, const SkillInputs* in, const KinematicTree& hand,
                          const char* skill) {
  Trajectory t;
  t.fps = cfg.fps;
  t.meta.skills = {skill};
  t.meta.seed = cfg.seed;
  t.meta.hand_model = hand.id();
  if (in != nullptr && in->object != nullptr) {
    t.meta.object = in->object->id();
    t.meta.scale = in->object->scale();
  }
  return t;
}

void require_inputs(const SkillInputs& in, bool need_grasps, const char* skill) {
  if (in.hand == nullptr || in.object == nullptr) {
    throw std::invalid_argument(std::string(skill) + ": hand and object models are required");
  }
  if (need_grasps && (in.grasps == nullptr || in.grasps->size() == 0)) {
    throw SynthesisError(std::string(skill) + ": empty grasp set");
  }
}

Frame relabel(Frame f, Phase phase, bool contact) {
  f.phase = phase;
  std::fill(f.contact.begin(), f.contact.end(), contact);
  return f;
}

}  // namespace

Trajectory synth_free_move(const SynthConfig& cfg, const KinematicTree& hand, Rng& rng) {
  cfg.validate();
  auto random_state = [&]() {
    const Pose wrist{rng.in_box(cfg.workspace.lo, cfg.workspace.hi), rng.rotation()};
    std::vector<double> theta;
    theta.reserve(hand.dof());
    for (const JointLimit& l : hand.dof_limits()) theta.push_back(rng.uniform(l.lower, l.upper));
    return std::pair{wrist, theta};
  };
  const auto [w0, th0] = random_state();
  const auto [w1, th1] = random_state();

  Trajectory t = new_trajectory(cfg, nullptr, hand, "free_move");
  for (int i = 0; i < cfg.clip_frames; ++i) {
    const double u = param(i, cfg.clip_frames);
    t.frames.push_back(make_frame(hand, nullptr, lerp_pose(w0, w1, u), lerp_angles(th0, th1, u),
                                  std::nullopt, false, Phase::free_move));
  }
  return t;
}

Trajectory synth_grasp(const SynthConfig& cfg, const SkillInputs& in, Rng& rng, const Frame* end) {
  cfg.validate();
  require_inputs(in, end == nullptr, "grasp");
  if (end == nullptr && in.stable_poses.empty()) {
    throw SynthesisError("grasp: object '" + in.object->id() + "' has no stable poses");
  }
  if (end != nullptr && !end->object) throw SynthesisError("grasp: pinned frame has no object");
  const KinematicTree& hand = *in.hand;
  const ObjectModel& obj = *in.object;
  const int T = cfg.clip_frames;
  const int index_base = hand.keypoint("index_first_joint");
  const std::vector<double> open = open_hand(hand);

  for (int attempt = 0; attempt < cfg.resample_budget; ++attempt) {
    Frame last;
    if (end != nullptr) {
      last = relabel(*end, Phase::grasp, true);
    } else {
      const GraspConfiguration& g = (*in.grasps)[rng.index(in.grasps->size())];
      const StablePose& h = in.stable_poses[rng.index(in.stable_poses.size())];
      const GraspConfiguration g_end = retarget_grasp(g, planar_placement(cfg, rng) * h.pose);
      last = make_frame(hand, &obj, g_end.wrist, g_end.theta, g_end.object, true, Phase::grasp);
      if (ground_penetration(last.joints) > 0.0) continue;
    }

    const Vec3 center = last.object->apply(obj.com());
    const Vec3 axis = last.joints[static_cast<std::size_t>(index_base)] - center;
    if (!(axis.norm() > 0.0)) continue;
    const Pose first{sample_in_cone(center, axis, cfg.cone_half_angle, cfg.cone_r_min,
                                    cfg.cone_r_max, rng),
                     last.wrist.orientation};

    Trajectory t = new_trajectory(cfg, &in, hand, "grasp");
    bool penetrates = false;
    for (int i = 0; i + 1 < T && !penetrates; ++i) {
      const double u = param(i, T);
      Frame f = make_frame(hand, &obj, lerp_pose(first, last.wrist, u),
                           lerp_angles(open, last.theta, u), last.object,
                           i >= T - cfg.contact_frames, Phase::grasp);
      f.object_keypoints = last.object_keypoints;
      penetrates = ground_penetration(f.joints) > 0.0;
      t.frames.push_back(std::move(f));
    }
    if (penetrates) continue;
    t.frames.push_back(last);
    return t;
  }
  throw SynthesisError("grasp: resample budget of " + std::to_string(cfg.resample_budget) +
                       " attempts exhausted");
}

Trajectory synth_place(const SynthConfig& cfg, const SkillInputs& in, Rng& rng,
                       const Frame* start) {
  Trajectory t = reversed(synth_grasp(cfg, in, rng, start), Phase::place);
  t.meta.skills = {"place"};
  return t;
}

Trajectory synth_move(const SynthConfig& cfg, const SkillInputs& in, Rng& rng,
                      const MoveBoundary& b) {
  cfg.validate();
  const bool pinned = b.start != nullptr || b.end != nullptr;
  require_inputs(in, !pinned, "move");
  if ((b.start != nullptr && !b.start->object) || (b.end != nullptr && !b.end->object)) {
    throw SynthesisError("move: boundary frame has no object channel");
  }
  const KinematicTree& hand = *in.hand;
  const ObjectModel& obj = *in.object;

  Pose relative;
  std::vector<double> theta;
  if (b.start != nullptr) {
    relative = b.start->object->inverse() * b.start->wrist;
    theta = b.start->theta;
  } else if (b.end != nullptr) {
    relative = b.end->object->inverse() * b.end->wrist;
    theta = b.end->theta;
  } else {
    const GraspConfiguration& g = (*in.grasps)[rng.index(in.grasps->size())];
    relative = wrist_in_object(g);
    theta = g.theta;
  }
  if (b.start != nullptr && b.end != nullptr) {
    const Pose other = b.end->object->inverse() * b.end->wrist;
    if (position_distance(relative, other) > 1e-6 || rotation_distance(relative, other) > 1e-6) {
      throw SynthesisError("move: start and end boundaries hold different grasps");
    }
  }

  const Pose obj_first = b.start != nullptr ? *b.start->object : random_air_pose(cfg, rng);
  Pose obj_last;
  if (b.end != nullptr) {
    obj_last = *b.end->object;
  } else if (b.end_on_ground) {
    const Pose shift = planar_placement(cfg, rng);
    obj_last = {Vec3(shift.position.x(), shift.position.y(), obj_first.position.z()),
                shift.orientation * obj_first.orientation};
  } else {
    obj_last = random_air_pose(cfg, rng);
  }

  Trajectory t = new_trajectory(cfg, &in, hand, "move");
  const int T = cfg.clip_frames;
  for (int i = 0; i < T; ++i) {
    if (i == 0 && b.start != nullptr) {
      t.frames.push_back(relabel(*b.start, Phase::move, true));
      continue;
    }
    if (i == T - 1 && b.end != nullptr) {
      t.frames.push_back(relabel(*b.end, Phase::move, true));
      continue;
    }
    const Pose o = lerp_pose(obj_first, obj_last, param(i, T));
    t.frames.push_back(make_frame(hand, &obj, o * relative, theta, o, true, Phase::move));
  }
  return t;
}

Trajectory synth_rotate_simple(const SynthConfig& cfg, const SkillInputs& in, Rng& rng) {
  cfg.validate();
  require_inputs(in, true, "rotate");
  const KinematicTree& hand = *in.hand;
  const ObjectModel& obj = *in.object;
  if (!obj.rotatable_region() || !obj.rotation_axis()) {
    throw SynthesisError("rotate: object '" + obj.id() + "' has no rotatable region");
  }
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < in.grasps->size(); ++i) {
    if (contacts_rotatable_region((*in.grasps)[i], hand, obj, cfg.rotate_contact)) {
      candidates.push_back(i);
    }
  }
  if (candidates.empty()) throw SynthesisError("rotate: no grasp contacts the rotatable region");

  const GraspConfiguration g = retarget_grasp(
      (*in.grasps)[candidates[rng.index(candidates.size())]], random_air_pose(cfg, rng));
  const Vec3 axis = g.object.orientation.rotate(*obj.rotation_axis());
  const Vec3 pivot = g.object.apply(obj.rotatable_region()->center);

  Trajectory t = new_trajectory(cfg, &in, hand, "rotate");
  double angle = 0.0;
  Pose previous = g.object;
  for (int k = 0; k < cfg.rotate_keyframes; ++k) {
    if (k > 0) angle += rng.uniform(-cfg.rotate_max_step, cfg.rotate_max_step);
    const UnitQuaternion turn = UnitQuaternion::from_axis_angle(axis, angle);
    const Pose key = k == 0 ? g.object
                            : Pose{pivot + turn.rotate(g.object.position - pivot),
                                   turn * g.object.orientation};
    const double delta = k == 0 ? 0.0 : previous.orientation.angle_to(key.orientation);
    const int hold = replication_count(delta, cfg.replication_gain, cfg.replication_min);
    const Frame f = make_frame(hand, &obj, g.wrist, g.theta, key, true, Phase::rotate);
    t.frames.insert(t.frames.end(), static_cast<std::size_t>(hold), f);
    previous = key;
  }
  return t;
}

namespace {

enum class ChainAlignment { wrist, object };

Trajectory synth_chain(const SynthConfig& cfg, const SkillInputs& in, Rng& rng, int k,
                       ChainAlignment align) {
  cfg.validate();
  const char* skill = align == ChainAlignment::wrist ? "rotate" : "regrasp";
  require_inputs(in, true, skill);
  if (k < 0) throw std::invalid_argument(std::string(skill) + ": k must be >= 0");
  if (in.grasps->size() < static_cast<std::size_t>(k) + 1) {
    throw SynthesisError(std::string(skill) + ": grasp pool too small for " + std::to_string(k) +
                         " steps");
  }
  const KinematicTree& hand = *in.hand;
  const ObjectModel& obj = *in.object;
  const GraspSet& pool = *in.grasps;

  const std::size_t start = rng.index(pool.size());
  const std::vector<std::size_t> chain = greedy_chain(pool, start, k, cfg.metric);
  const GraspConfiguration first = retarget_grasp(pool[start], random_air_pose(cfg, rng));

  const Phase phase = align == ChainAlignment::wrist ? Phase::rotate : Phase::regrasp;
  Trajectory t = new_trajectory(cfg, &in, hand, skill);
  for (std::size_t idx : chain) {
    GraspConfiguration key;
    if (idx == start) {
      key = first;
    } else if (align == ChainAlignment::wrist) {
      key = transform_grasp(pool[idx], first.wrist * pool[idx].wrist.inverse());
      key.wrist = first.wrist;
    } else {
      key = retarget_grasp(pool[idx], first.object);
    }
    const Frame f = make_frame(hand, &obj, key.wrist, key.theta, key.object, true, phase);
    t.frames.insert(t.frames.end(), static_cast<std::size_t>(cfg.chain_hold_frames), f);
  }
  return t;
}

}  // namespace

Trajectory synth_rotate_general(const SynthConfig& cfg, const SkillInputs& in, Rng& rng, int k) {
  return synth_chain(cfg, in, rng, k, ChainAlignment::wrist);
}

Trajectory synth_regrasp(const SynthConfig& cfg, const SkillInputs& in, Rng& rng, int k) {
  return synth_chain(cfg, in, rng, k, ChainAlignment::object);
}

Trajectory synth_catch(const SynthConfig& cfg, const SkillInputs& in, Rng& rng) {
  cfg.validate();
  require_inputs(in, true, "catch");
  const KinematicTree& hand = *in.hand;
  const ObjectModel& obj = *in.object;
  const int T = cfg.clip_frames;
  const double flight = static_cast<double>(T - 1) / cfg.fps;
  const std::vector<double> open = open_hand(hand);

  for (int attempt = 0; attempt < cfg.resample_budget; ++attempt) {
    const GraspConfiguration& g = (*in.grasps)[rng.index(in.grasps->size())];
    const GraspConfiguration g_end = retarget_grasp(g, random_air_pose(cfg, rng));
    const Pose launch = random_air_pose(cfg, rng);
    const std::vector<Pose> path =
        parabola(launch.position, g_end.object.position, flight, cfg.gravity, cfg.fps,
                 launch.orientation, g_end.object.orientation);
    if (path.size() != static_cast<std::size_t>(T)) {
      throw std::logic_error("catch: parabola frame count mismatch");
    }

    Trajectory t = new_trajectory(cfg, &in, hand, "catch");
    bool collides = false;
    for (int i = 0; i + 1 < T && !collides; ++i) {
      const double u = param(i, T);
      Frame f = make_frame(hand, &obj, g_end.wrist, lerp_angles(open, g_end.theta, u),
                           path[static_cast<std::size_t>(i)], i >= T - cfg.contact_frames,
                           Phase::catch_);
      collides = hand_object_clearance(f.joints, obj, *f.object) < cfg.catch_clearance_threshold;
      t.frames.push_back(std::move(f));
    }
    if (collides) continue;
    t.frames.push_back(
        make_frame(hand, &obj, g_end.wrist, g_end.theta, g_end.object, true, Phase::catch_));
    return t;
  }
  throw SynthesisError("catch: resample budget of " + std::to_string(cfg.resample_budget) +
                       " attempts exhausted");
}

Trajectory synth_throw(const SynthConfig& cfg, const SkillInputs& in, Rng& rng) {
  Trajectory t = reversed(synth_catch(cfg, in, rng), Phase::throw_);
  t.meta.skills = {"throw"};
  return t;
}

Trajectory compose(std::span<const Trajectory> clips, double position_tol, double angle_tol) {
  if (clips.empty()) throw std::invalid_argument("compose: no clips");
  Trajectory out = clips.front();
  for (std::size_t c = 1; c < clips.size(); ++c) {
    const Trajectory& next = clips[c];
    if (next.frames.empty() || out.frames.empty()) throw SynthesisError("compose: empty clip");
    if (next.fps != out.fps) throw SynthesisError("compose: fps mismatch at join " + std::to_string(c));
    if (next.meta.hand_model != out.meta.hand_model || next.meta.object != out.meta.object) {
      throw SynthesisError("compose: clips use different hand or object models");
    }
    const Frame& a = out.frames.back();
    const Frame& b = next.frames.front();
    std::string why;
    if (position_distance(a.wrist, b.wrist) > position_tol) why = "wrist position";
    else if (rotation_distance(a.wrist, b.wrist) > angle_tol) why = "wrist orientation";
    else if (a.object.has_value() != b.object.has_value()) why = "object channel presence";
    else if (a.object && position_distance(*a.object, *b.object) > position_tol) why = "object position";
    else if (a.object && rotation_distance(*a.object, *b.object) > angle_tol) why = "object orientation";
    else if (a.theta.size() != b.theta.size()) why = "finger DoF";
    else {
      for (std::size_t i = 0; i < a.theta.size(); ++i) {
        if (std::abs(a.theta[i] - b.theta[i]) > angle_tol) {
          why = "finger angle " + std::to_string(i);
          break;
        }
      }
    }
    if (!why.empty()) {
      throw SynthesisError("compose: boundary mismatch at join " + std::to_string(c) + " (" + why + ")");
    }
    out.frames.insert(out.frames.end(), next.frames.begin() + 1, next.frames.end());
    out.meta.skills.insert(out.meta.skills.end(), next.meta.skills.begin(), next.meta.skills.end());
  }
  return out;
}

Trajectory synth_grasp_move_place(const SynthConfig& cfg, const SkillInputs& in, Rng& rng) {
  const Trajectory grasp = synth_grasp(cfg, in, rng);
  const Trajectory move =
      synth_move(cfg, in, rng, MoveBoundary{&grasp.frames.back(), nullptr, true});
  const Trajectory place = synth_place(cfg, in, rng, &move.frames.back());
  const std::vector<Trajectory> clips{grasp, move, place};
  return compose(clips);
}

}  // namespace hopkit
