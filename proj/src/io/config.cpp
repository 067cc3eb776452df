#include "hopkit/io/config.hpp"

#include <functional>
#include <map>
#include <variant>

namespace hopkit::io {

namespace {

using Field = std::variant<double*, int*, long*>;
using FieldMap = std::map<std::string, Field>;

void overlay(const Json& j, const FieldMap& fields, const std::string& section,
             const std::map<std::string, std::function<void(const Json&, const std::string&)>>&
                 nested = {}) {
  if (!j.is_object()) throw ParseError(section, "expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string path = section.empty() ? key : section + "." + key;
    if (auto n = nested.find(key); n != nested.end()) {
      n->second(value, path);
      continue;
    }
    const auto f = fields.find(key);
    if (f == fields.end()) throw ParseError(path, "unknown key");
    if (!value.is_number()) throw ParseError(path, "expected a number");
    std::visit(
        [&](auto* target) {
          using T = std::remove_pointer_t<decltype(target)>;
          if constexpr (std::is_integral_v<T>) {
            if (!value.is_number_integer()) throw ParseError(path, "expected an integer");
          }
          *target = value.get<T>();
        },
        f->second);
  }
}

Json dump(const FieldMap& fields) {
  Json j = Json::object();
  for (const auto& [key, f] : fields) std::visit([&](auto* v) { j[key] = *v; }, f);
  return j;
}

FieldMap synth_fields(SynthConfig& c) {
  return {{"clip_frames", &c.clip_frames},
          {"fps", &c.fps},
          {"cone_half_angle", &c.cone_half_angle},
          {"cone_r_min", &c.cone_r_min},
          {"cone_r_max", &c.cone_r_max},
          {"contact_frames", &c.contact_frames},
          {"resample_budget", &c.resample_budget},
          {"air_min_height", &c.air_min_height},
          {"rotate_keyframes", &c.rotate_keyframes},
          {"rotate_max_step", &c.rotate_max_step},
          {"replication_gain", &c.replication_gain},
          {"replication_min", &c.replication_min},
          {"rotate_contact_epsilon", &c.rotate_contact.epsilon},
          {"rotate_contact_min_fingertips", &c.rotate_contact.min_fingertips},
          {"chain_hold_frames", &c.chain_hold_frames},
          {"metric_position", &c.metric.position},
          {"metric_rotation", &c.metric.rotation},
          {"metric_fingers", &c.metric.fingers},
          {"gravity", &c.gravity},
          {"catch_clearance_threshold", &c.catch_clearance_threshold},
          {"max_wrist_speed", &c.limits.max_wrist_speed}};
}

FieldMap reward_fields(RewardConfig& c) {
  return {{"lambda_p", &c.lambda_p},
          {"lambda_r", &c.lambda_r},
          {"lambda_p_regrasp", &c.lambda_p_regrasp},
          {"lambda_r_regrasp", &c.lambda_r_regrasp},
          {"lambda_wp", &c.lambda_wp},
          {"lambda_wr", &c.lambda_wr},
          {"lambda_op", &c.lambda_op},
          {"lambda_or", &c.lambda_or},
          {"lambda_interact", &c.lambda_interact},
          {"lambda_contact", &c.lambda_contact},
          {"interact_gain", &c.interact_gain},
          {"interact_d_near", &c.interact_d_near},
          {"interact_d_far", &c.interact_d_far}};
}

FieldMap curriculum_fields(CurriculumConfig& c) {
  return {{"scale_probability", &c.scale_probability},
          {"scale_min", &c.scale_min},
          {"scale_max", &c.scale_max},
          {"perturb_probability_regrasp", &c.perturb_probability_regrasp},
          {"perturb_probability_other", &c.perturb_probability_other},
          {"amp_dof", &c.amp_dof},
          {"amp_dof_velocity", &c.amp_dof_velocity},
          {"amp_object_velocity", &c.amp_object_velocity},
          {"amp_object_rotation", &c.amp_object_rotation},
          {"amp_object_position", &c.amp_object_position},
          {"contact_position_factor", &c.contact_position_factor},
          {"transition_epoch", &c.transition_epoch},
          {"ramp_epochs", &c.ramp_epochs},
          {"ramp_cap", &c.ramp_cap}};
}

FieldMap loss_fields(LossWeights& w) {
  return {{"expert", &w.expert},
          {"policy_gradient", &w.policy_gradient},
          {"value", &w.value},
          {"boundary", &w.boundary}};
}

FieldMap distill_fields(DistillConfig& c) {
  return {{"stage2_start", &c.stage2_start},
          {"stage3_start", &c.stage3_start},
          {"stage4_start", &c.stage4_start},
          {"ev_threshold", &c.ev_threshold},
          {"ev_consecutive", &c.ev_consecutive},
          {"ev_window", &c.ev_window}};
}

}  // namespace

void apply_config(const Json& j, SynthConfig& cfg) {
  overlay(j, synth_fields(cfg), "synth",
          {{"workspace", [&](const Json& w, const std::string& path) {
              cfg.workspace.lo = read_vec3(require(w, "lo", path), path + ".lo");
              cfg.workspace.hi = read_vec3(require(w, "hi", path), path + ".hi");
            }}});
  cfg.validate();
}

void apply_config(const Json& j, RewardConfig& cfg) {
  overlay(j, reward_fields(cfg), "reward");
  cfg.validate();
}

void apply_config(const Json& j, CurriculumConfig& cfg) {
  overlay(j, curriculum_fields(cfg), "curriculum");
  cfg.validate();
}

void apply_config(const Json& j, DistillConfig& cfg) {
  overlay(j, distill_fields(cfg), "distill",
          {{"stage3_weights",
            [&](const Json& w, const std::string& path) { overlay(w, loss_fields(cfg.stage3), path); }},
           {"stage4_weights", [&](const Json& w, const std::string& path) {
              overlay(w, loss_fields(cfg.stage4), path);
            }}});
  cfg.validate();
}

Json to_json(const SynthConfig& cfg) {
  SynthConfig c = cfg;
  Json j = dump(synth_fields(c));
  j["workspace"] = {{"lo", write_vec3(c.workspace.lo)}, {"hi", write_vec3(c.workspace.hi)}};
  return j;
}

Json to_json(const RewardConfig& cfg) {
  RewardConfig c = cfg;
  return dump(reward_fields(c));
}

Json to_json(const CurriculumConfig& cfg) {
  CurriculumConfig c = cfg;
  return dump(curriculum_fields(c));
}

Json to_json(const DistillConfig& cfg) {
  DistillConfig c = cfg;
  Json j = dump(distill_fields(c));
  j["stage3_weights"] = dump(loss_fields(c.stage3));
  j["stage4_weights"] = dump(loss_fields(c.stage4));
  return j;
}

Json load_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw ParseError(path.string(), std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace hopkit::io
