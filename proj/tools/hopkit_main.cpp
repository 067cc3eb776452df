// hopkit command-line entry point.
// Exit codes: 0 success, 1 validation or synthesis failure, 2 usage or IO error.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hopkit/io/config.hpp"
#include "hopkit/io/manifest.hpp"
#include "hopkit/io/trajectory_codec.hpp"
#include "hopkit/plan/plan.hpp"
#include "hopkit/reward/reward.hpp"
#include "hopkit/scene/predicates.hpp"
#include "hopkit/synth/skills.hpp"
#include "hopkit/training/training.hpp"

#ifndef HOPKIT_DATA_DIR
#define HOPKIT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace hopkit;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

// Thrown for bad arguments and unreadable files.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool json = false;
  std::string data_dir = HOPKIT_DATA_DIR;
};

KinematicTree resolve_hand(const Globals& g, const std::string& ref) {
  fs::path p = ref;
  if (!fs::exists(p)) p = fs::path(g.data_dir) / "hands" / (ref + ".json");
  if (!fs::exists(p)) throw UsageError("hand model '" + ref + "' not found");
  return load_hand_model(p);
}

ObjectModel resolve_object(const Globals& g, const std::string& ref, double scale = 1.0) {
  fs::path p = ref;
  if (!fs::exists(p)) p = fs::path(g.data_dir) / "objects" / (ref + ".json");
  if (!fs::exists(p)) throw UsageError("object model '" + ref + "' not found");
  ObjectModel obj = load_object_model(p);
  return scale == 1.0 ? obj : apply_scale(obj, scale);
}

// Empty ref: the bundled set for this hand and object.
GraspSet resolve_grasps(const Globals& g, const std::string& ref, const KinematicTree& hand,
                        const ObjectModel& obj) {
  fs::path p = ref.empty() ? fs::path(g.data_dir) / "grasps" / (hand.id() + "_" + obj.id() + ".json")
                           : fs::path(ref);
  if (!ref.empty() && !fs::exists(p)) p = fs::path(g.data_dir) / "grasps" / (ref + ".json");
  if (!fs::exists(p)) throw UsageError("grasp set '" + p.string() + "' not found");
  return load_grasp_set(p, hand, obj, LoadMode::strict).set;
}

std::uint64_t seed_fallback() {
  if (const char* env = std::getenv("HOPKIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("HOPKIT_SEED is not an unsigned integer");
    }
  }
  return 0;
}

Json issues_json(const std::vector<Issue>& issues) {
  Json a = Json::array();
  for (const Issue& i : issues) a.push_back({{"frame", i.index}, {"message", i.message}});
  return a;
}

// ---- synth ---------------------------------------------------------------

const std::vector<std::string> kSkills{"free_move", "grasp",   "place", "move",
                                       "rotate",    "rotate_general", "regrasp",
                                       "catch",     "throw",   "grasp_move_place"};

struct SynthArgs {
  std::vector<std::string> skills;
  std::string hand = "mano";
  std::string object;
  std::string grasps;
  std::string out;
  std::string config;
  std::string format = "json";
  long count = 1;
  int k = 3;
  int jobs = 1;
  std::optional<std::uint64_t> seed;
};

Trajectory synth_one(const std::string& skill, const SynthConfig& cfg, const KinematicTree& hand,
                     const SkillInputs& in, int k) {
  Rng rng(cfg.seed);
  if (skill == "free_move") return synth_free_move(cfg, hand, rng);
  if (skill == "grasp") return synth_grasp(cfg, in, rng);
  if (skill == "place") return synth_place(cfg, in, rng);
  if (skill == "move") return synth_move(cfg, in, rng);
  if (skill == "rotate") return synth_rotate_simple(cfg, in, rng);
  if (skill == "rotate_general") return synth_rotate_general(cfg, in, rng, k);
  if (skill == "regrasp") return synth_regrasp(cfg, in, rng, k);
  if (skill == "catch") return synth_catch(cfg, in, rng);
  if (skill == "throw") return synth_throw(cfg, in, rng);
  return synth_grasp_move_place(cfg, in, rng);
}

int cmd_synth(const Globals& g, SynthArgs a) {
  SynthConfig cfg;
  if (!a.config.empty()) {
    const Json c = io::load_json(a.config);
    for (const auto& [key, value] : c.items()) {
      if (key == "synth") io::apply_config(value, cfg);
      else if (key == "seed") a.seed = value.get<std::uint64_t>();
      else if (key == "count") a.count = value.get<long>();
      else if (key == "skills") a.skills = value.get<std::vector<std::string>>();
      else if (key == "k") a.k = value.get<int>();
      else if (key == "format") a.format = value.get<std::string>();
      else if (key == "jobs") a.jobs = value.get<int>();
      else if (key == "hand") a.hand = value.get<std::string>();
      else if (key == "object") a.object = value.get<std::string>();
      else if (key == "grasps") a.grasps = value.get<std::string>();
      else throw ParseError(key, "unknown config key");
    }
  }
  cfg.validate();
  if (a.skills.empty()) throw UsageError("synth: at least one --skill is required");
  for (const std::string& s : a.skills) {
    if (std::find(kSkills.begin(), kSkills.end(), s) == kSkills.end()) {
      throw UsageError("synth: unknown skill '" + s + "'");
    }
    if (std::count(a.skills.begin(), a.skills.end(), s) > 1) {
      throw UsageError("synth: skill '" + s + "' given more than once");
    }
  }
  if (a.count < 0) throw UsageError("synth: --count must be >= 0");
  if (a.format != "json" && a.format != "bin") throw UsageError("synth: --format is json or bin");
  if (a.out.empty()) throw UsageError("synth: --out is required");
  const std::uint64_t root_seed = a.seed ? *a.seed : seed_fallback();

  const KinematicTree hand = resolve_hand(g, a.hand);
  const bool needs_object =
      std::any_of(a.skills.begin(), a.skills.end(), [](const std::string& s) { return s != "free_move"; });
  ObjectModel obj;
  GraspSet grasps;
  SkillInputs in;
  if (needs_object) {
    if (a.object.empty()) throw UsageError("synth: object-centric skills need --object");
    obj = resolve_object(g, a.object);
    grasps = resolve_grasps(g, a.grasps, hand, obj);
    in = SkillInputs::make(hand, obj, grasps);
  }

  fs::create_directories(a.out);
  struct Item {
    std::size_t skill;
    long index;
    std::uint64_t seed;
    std::string file;
    std::string bytes;
    std::size_t frames = 0;
    std::string error;
  };
  std::vector<Item> items;
  for (std::size_t s = 0; s < a.skills.size(); ++s) {
    for (long i = 0; i < a.count; ++i) {
      char name[64];
      std::snprintf(name, sizeof name, "%s_%06ld.%s", a.skills[s].c_str(), i, a.format.c_str());
      items.push_back({s, i, derive_seed(root_seed, static_cast<std::uint32_t>(s),
                                          static_cast<std::uint64_t>(i)),
                       name, {}, 0, {}});
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t n = next++; n < items.size(); n = next++) {
      Item& it = items[n];
      try {
        SynthConfig c = cfg;
        c.seed = it.seed;
        Trajectory t = synth_one(a.skills[it.skill], c, hand, in, a.k);
        const auto issues = check_trajectory(t, hand, needs_object ? &obj : nullptr, cfg.limits);
        if (!issues.empty()) {
          it.error = "frame " + std::to_string(issues.front().index) + ": " + issues.front().message;
          continue;
        }
        it.frames = t.frames.size();
        it.bytes = a.format == "bin" ? io::encode_binary(t) : io::encode_json(t);
        io::write_file(fs::path(a.out) / it.file, it.bytes);
      } catch (const std::exception& e) {
        it.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::max(1, a.jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  io::DatasetManifest m;
  m.root = ".";
  Json errors = Json::array();
  for (const Item& it : items) {
    if (!it.error.empty()) {
      errors.push_back({{"file", it.file}, {"seed", it.seed}, {"error", it.error}});
      continue;
    }
    const std::string& skill = a.skills[it.skill];
    m.entries.push_back({it.file, {skill}, needs_object ? obj.id() : "", it.seed, it.frames,
                         io::checksum_hex(it.bytes)});
  }
  io::write_file(fs::path(a.out) / "manifest.json", io::manifest_to_json(m));
  const Json report{{"written", m.entries.size()}, {"failed", errors.size()}, {"errors", errors},
                    {"manifest", (fs::path(a.out) / "manifest.json").string()}};
  if (g.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "wrote " << m.entries.size() << " trajectories to " << a.out << "\n";
    for (const auto& e : errors) {
      std::cerr << e["file"].get<std::string>() << ": " << e["error"].get<std::string>() << "\n";
    }
  }
  return errors.empty() ? kOk : kInvalid;
}

// ---- validate ------------------------------------------------------------

struct ValidateArgs {
  std::vector<std::string> paths;
  std::string hand;
  std::string object;
};

Json validate_file(const Globals& g, const ValidateArgs& a, const fs::path& path, bool& ok) {
  Json r{{"path", path.string()}};
  std::vector<Issue> issues;
  try {
    const Trajectory t = io::load_trajectory(path);
    const KinematicTree hand = resolve_hand(g, a.hand.empty() ? t.meta.hand_model : a.hand);
    std::optional<ObjectModel> obj;
    if (!t.meta.object.empty()) {
      obj = resolve_object(g, a.object.empty() ? t.meta.object : a.object, t.meta.scale);
    }
    issues = check_trajectory(t, hand, obj ? &*obj : nullptr);
    r["frames"] = t.frames.size();
  } catch (const ParseError& e) {
    issues.push_back({e.index(), e.what()});
  } catch (const std::invalid_argument& e) {
    issues.push_back({-1, e.what()});
  }
  r["ok"] = issues.empty();
  r["issues"] = issues_json(issues);
  ok = ok && issues.empty();
  return r;
}

int cmd_validate(const Globals& g, const ValidateArgs& a) {
  Json files = Json::array();
  Json manifests = Json::array();
  bool ok = true;
  for (const std::string& p : a.paths) {
    if (!fs::exists(p)) throw UsageError("no such file or directory: " + p);
    if (fs::is_directory(p)) {
      std::vector<fs::path> entries;
      for (const auto& e : fs::directory_iterator(p)) {
        if (!e.is_regular_file()) continue;
        if (e.path().filename() == "manifest.json") continue;
        const auto ext = e.path().extension();
        if (ext == ".json" || ext == ".bin") entries.push_back(e.path());
      }
      std::sort(entries.begin(), entries.end());
      for (const auto& e : entries) files.push_back(validate_file(g, a, e, ok));
      const fs::path manifest = fs::path(p) / "manifest.json";
      if (fs::exists(manifest)) {
        std::vector<Issue> issues;
        try {
          issues = io::verify_manifest(io::parse_manifest(io::read_file(manifest)), p);
        } catch (const ParseError& e) {
          issues.push_back({-1, e.what()});
        }
        ok = ok && issues.empty();
        manifests.push_back({{"path", manifest.string()}, {"ok", issues.empty()},
                             {"issues", issues_json(issues)}});
      }
    } else {
      files.push_back(validate_file(g, a, p, ok));
    }
  }
  const Json report{{"ok", ok}, {"files", files}, {"manifests", manifests}};
  if (g.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& f : files) {
      std::cout << (f["ok"].get<bool>() ? "PASS " : "FAIL ") << f["path"].get<std::string>() << "\n";
      for (const auto& i : f["issues"]) {
        std::cout << "  frame " << i["frame"].get<long>() << ": " << i["message"].get<std::string>()
                  << "\n";
      }
    }
    for (const auto& m : manifests) {
      std::cout << (m["ok"].get<bool>() ? "PASS " : "FAIL ") << m["path"].get<std::string>() << "\n";
      for (const auto& i : m["issues"]) std::cout << "  " << i["message"].get<std::string>() << "\n";
    }
  }
  return ok ? kOk : kInvalid;
}

// ---- score ---------------------------------------------------------------

struct ScoreArgs {
  std::string rollout, reference, config, out;
  double sr_position = 0.10;
  double sr_angle_deg = 45.0;
};

int cmd_score(const Globals& g, const ScoreArgs& a) {
  RewardConfig cfg;
  if (!a.config.empty()) {
    const Json c = io::load_json(a.config);
    io::apply_config(c.contains("reward") ? c["reward"] : c, cfg);
  }
  cfg.validate();
  const Trajectory roll = io::load_trajectory(a.rollout);
  const Trajectory ref = io::load_trajectory(a.reference);
  Json per_frame = Json::array();
  double sum = 0.0;
  TrackingMetrics m;
  try {
    if (roll.frames.size() != ref.frames.size()) {
      throw std::invalid_argument("trajectory lengths differ: " + std::to_string(roll.frames.size()) +
                                  " vs " + std::to_string(ref.frames.size()));
    }
    for (std::size_t t = 0; t < ref.frames.size(); ++t) {
      const FrameReward r = frame_reward(roll.frames[t], ref.frames[t], cfg);
      Json comp = Json::object();
      for (std::size_t k = 0; k < kTermCount; ++k) {
        comp[std::string(term_name(static_cast<Term>(k)))] = r.components[k];
      }
      per_frame.push_back({{"total", r.total}, {"components", comp}});
      sum += r.total;
    }
    m = tracking_metrics(roll, ref, {a.sr_position, a.sr_angle_deg * M_PI / 180.0});
  } catch (const std::invalid_argument& e) {
    std::cerr << "score: " << e.what() << "\n";
    return kInvalid;
  }
  const double mean = ref.frames.empty() ? 0.0 : sum / static_cast<double>(ref.frames.size());
  const Json report{
      {"per_frame", per_frame},
      {"summary",
       {{"mean_reward", mean},
        {"E_op", m.e_op},
        {"E_or", m.e_or},
        {"E_h", m.e_h},
        {"SR", m.sr},
        {"sr_predicate",
         {{"criteria", "object"}, {"position_m", a.sr_position}, {"angle_deg", a.sr_angle_deg}}}}}};
  if (!a.out.empty()) io::write_file(a.out, report.dump(2) + "\n");
  if (g.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "mean_reward " << mean << "\nE_op " << m.e_op << " cm\nE_or " << m.e_or
              << " deg\nE_h " << m.e_h << " cm\nSR " << m.sr << "\n";
  }
  return kOk;
}

// ---- plan ----------------------------------------------------------------

struct PlanArgs {
  std::string plan, grasps, object, hand = "mano", out;
  int samples = 20;
  double fps = 60.0;
};

int cmd_plan(const Globals& g, const PlanArgs& a) {
  if (a.out.empty()) throw UsageError("plan: --out is required");
  ManipulationPlan plan;
  try {
    plan = parse_plan(io::read_file(a.plan));
  } catch (const ParseError& e) {
    std::cerr << "plan: " << e.what() << "\n";
    return kInvalid;
  }
  const KinematicTree hand = resolve_hand(g, a.hand);
  const ObjectModel obj = resolve_object(g, a.object.empty() ? plan.object : a.object);
  const GraspSet grasps = resolve_grasps(g, a.grasps, hand, obj);
  Trajectory t;
  try {
    t = plan_to_demonstration(plan, densify_plan(plan, a.samples), grasps, hand, obj, a.fps);
  } catch (const Error& e) {
    std::cerr << "plan: " << e.what() << "\n";
    return kInvalid;
  }
  const auto issues = check_trajectory(t, hand, &obj);
  if (!issues.empty()) {
    std::cerr << "plan: output invalid at frame " << issues.front().index << ": "
              << issues.front().message << "\n";
    return kInvalid;
  }
  io::save_trajectory(a.out, t);
  if (g.json) {
    std::cout << Json{{"out", a.out}, {"frames", t.frames.size()}}.dump(2) << "\n";
  } else {
    std::cout << "wrote " << t.frames.size() << " frames to " << a.out << "\n";
  }
  return kOk;
}

// ---- stable-poses, weights, schedule-dump --------------------------------

int cmd_stable_poses(const Globals& g, const std::string& object) {
  const ObjectModel obj = resolve_object(g, object);
  const auto poses = enumerate_stable_poses(obj);
  if (g.json) {
    Json a = Json::array();
    for (const StablePose& p : poses) {
      a.push_back({{"face", p.face}, {"pose", io::write_pose(p.pose)},
                   {"margin", support_margin(obj, static_cast<std::size_t>(p.face))}});
    }
    std::cout << Json{{"object", obj.id()}, {"count", poses.size()}, {"poses", a}}.dump(2) << "\n";
  } else {
    std::cout << obj.id() << ": " << poses.size() << " stable poses\n";
    for (const StablePose& p : poses) {
      const auto& q = p.pose.orientation;
      std::cout << "face " << p.face << " z " << p.pose.position.z() << " q [" << q.w() << ", "
                << q.x() << ", " << q.y() << ", " << q.z() << "]\n";
    }
  }
  return kOk;
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (in >> std::ws && std::getline(in, token, text.find(',') != std::string::npos ? ',' : '\n')) {
    std::istringstream t(token);
    double v;
    if (!(t >> v)) throw UsageError("not a number: '" + token + "'");
    out.push_back(v);
  }
  return out;
}

int cmd_weights(const Globals& g, const std::string& rewards_file, std::vector<double> rewards,
                double lambda_s) {
  if (!rewards_file.empty()) {
    const std::string text = io::read_file(rewards_file);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
      rewards = Json::parse(text).get<std::vector<double>>();
    } else {
      std::string flat = text;
      std::replace(flat.begin(), flat.end(), ',', '\n');
      rewards = parse_numbers(flat);
    }
  }
  if (rewards.empty()) throw UsageError("weights: no rewards given");
  const auto p = sampling_probabilities(rewards, lambda_s);
  if (g.json) {
    std::cout << Json{{"lambda_s", lambda_s}, {"probabilities", p}}.dump(2) << "\n";
  } else {
    std::cout << "index,mean_reward,probability\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::cout << i << ',' << rewards[i] << ',' << std::setprecision(17) << p[i]
                << std::setprecision(6) << '\n';
    }
  }
  return kOk;
}

int cmd_schedule_dump(const Globals&, long first, long last, long step, const std::string& ev,
                      const std::string& config) {
  DistillConfig cfg;
  if (!config.empty()) {
    const Json c = io::load_json(config);
    io::apply_config(c.contains("distill") ? c["distill"] : c, cfg);
  }
  cfg.validate();
  std::string flat = ev;
  std::replace(flat.begin(), flat.end(), ',', '\n');
  const std::vector<double> readings = ev.empty() ? std::vector<double>{} : parse_numbers(flat);
  std::cout << schedule_csv(first, last, step, readings, cfg);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hopkit: hand-object interaction trajectory toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Print reports as JSON on stdout");
  app.add_option("--data-dir", g.data_dir, "Directory with hands/, objects/ and grasps/")->capture_default_str();

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Synthesize a batch of meta-skill trajectories");
  synth->add_option("--skill", sa.skills, "Skill name (repeatable)");
  synth->add_option("--hand", sa.hand, "Hand model id or file")->capture_default_str();
  synth->add_option("--object", sa.object, "Object model id or file");
  synth->add_option("--grasps", sa.grasps, "Grasp set id or file (default: <hand>_<object>)");
  synth->add_option("--count", sa.count, "Trajectories per skill")->capture_default_str();
  synth->add_option("--seed", sa.seed, "Root seed (falls back to HOPKIT_SEED, then 0)");
  synth->add_option("--out", sa.out, "Output directory");
  synth->add_option("--config", sa.config, "JSON config; its values override flags");
  synth->add_option("--format", sa.format, "json or bin")->capture_default_str();
  synth->add_option("--k", sa.k, "Chain steps for rotate_general / regrasp")->capture_default_str();
  synth->add_option("--jobs", sa.jobs, "Worker threads")->capture_default_str();

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check trajectory files or dataset directories");
  validate->add_option("paths", va.paths, "Files or directories")->required();
  validate->add_option("--hand", va.hand, "Override the hand model");
  validate->add_option("--object", va.object, "Override the object model");

  ScoreArgs sc;
  auto* score = app.add_subcommand("score", "Score a rollout against a reference");
  score->add_option("rollout", sc.rollout)->required();
  score->add_option("reference", sc.reference)->required();
  score->add_option("--config", sc.config, "Reward config JSON");
  score->add_option("--out", sc.out, "Write the score report here");
  score->add_option("--sr-position", sc.sr_position, "Success threshold, meters")->capture_default_str();
  score->add_option("--sr-angle", sc.sr_angle_deg, "Success threshold, degrees")->capture_default_str();

  PlanArgs pa;
  auto* plan = app.add_subcommand("plan", "Turn a keypoint plan into a demonstration");
  plan->add_option("plan", pa.plan)->required();
  plan->add_option("--grasps", pa.grasps, "Grasp set id or file (default: <hand>_<object>)");
  plan->add_option("--object", pa.object, "Object model id or file (default: plan object)");
  plan->add_option("--hand", pa.hand)->capture_default_str();
  plan->add_option("--out", pa.out, "Output trajectory (.json or .bin)");
  plan->add_option("--samples", pa.samples, "Samples per keypoint")->capture_default_str();
  plan->add_option("--fps", pa.fps)->capture_default_str();

  std::string sp_object;
  auto* stable = app.add_subcommand("stable-poses", "List resting poses of an object");
  stable->add_option("object", sp_object, "Object model id or file")->required();

  std::string w_file;
  std::vector<double> w_values;
  double lambda_s = 10.0;
  auto* weights = app.add_subcommand("weights", "Adaptive sampling probabilities");
  weights->add_option("rewards", w_values, "Mean rewards");
  weights->add_option("--file", w_file, "Rewards file (JSON array, CSV or one per line)");
  weights->add_option("--lambda", lambda_s, "Reweighting coefficient")->capture_default_str();

  long first = 0, last = 10000, step = 250;
  std::string ev, sched_config;
  auto* sched = app.add_subcommand("schedule-dump", "Distillation schedule as CSV");
  sched->add_option("--first", first, "First epoch")->capture_default_str();
  sched->add_option("--last", last, "Last epoch (inclusive)")->capture_default_str();
  sched->add_option("--step", step, "Epoch step")->capture_default_str();
  sched->add_option("--ev", ev, "Explained-variance readings, comma separated");
  sched->add_option("--config", sched_config, "Distillation config JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*synth) return cmd_synth(g, sa);
    if (*validate) return cmd_validate(g, va);
    if (*score) return cmd_score(g, sc);
    if (*plan) return cmd_plan(g, pa);
    if (*stable) return cmd_stable_poses(g, sp_object);
    if (*weights) return cmd_weights(g, w_file, w_values, lambda_s);
    if (*sched) return cmd_schedule_dump(g, first, last, step, ev, sched_config);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const Issue& i : e.issues()) std::cerr << "  [" << i.index << "] " << i.message << "\n";
    return kInvalid;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
