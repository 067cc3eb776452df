#include "hopkit/io/trajectory_codec.hpp"

#include <bit>
#include <cstring>

#include "hopkit/io/json_util.hpp"

namespace hopkit::io {

static_assert(std::endian::native == std::endian::little, "binary codec assumes little endian");

namespace {

std::string at_frame(std::size_t i) { return "frames[" + std::to_string(i) + "]"; }

Json frame_to_json(const Frame& f) {
  Json j;
  j["wrist"] = write_pose(f.wrist);
  j["theta"] = f.theta;
  j["joints"] = write_points(f.joints);
  j["obj"] = f.object ? write_pose(*f.object) : Json(nullptr);
  j["obj_kp"] = write_points(f.object_keypoints);
  Json contact = Json::array();
  for (bool c : f.contact) contact.push_back(c);
  j["contact"] = std::move(contact);
  j["phase"] = std::string(phase_name(f.phase));
  return j;
}

Frame frame_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  Frame f;
  f.wrist = read_pose(require(j, "wrist", path), path + ".wrist");
  f.theta = read_numbers(require(j, "theta", path), path + ".theta");
  f.joints = read_points(require(j, "joints", path), path + ".joints");
  const Json& obj = require(j, "obj", path);
  if (!obj.is_null()) f.object = read_pose(obj, path + ".obj");
  f.object_keypoints = read_points(require(j, "obj_kp", path), path + ".obj_kp");
  const Json& contact = require(j, "contact", path);
  if (!contact.is_array()) throw ParseError(path + ".contact", "expected an array of booleans");
  for (std::size_t i = 0; i < contact.size(); ++i) {
    if (!contact[i].is_boolean()) {
      throw ParseError(path + ".contact[" + std::to_string(i) + "]", "expected a boolean");
    }
    f.contact.push_back(contact[i].get<bool>());
  }
  const Json& phase = require(j, "phase", path);
  if (!phase.is_string()) throw ParseError(path + ".phase", "expected a string");
  try {
    f.phase = phase_from_name(phase.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ".phase", e.what());
  }
  return f;
}

// Little-endian byte writer/reader over POD values.
class Writer {
 public:
  template <class T>
  void put(T v) {
    char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    out_.append(b, sizeof(T));
  }
  void put_string(const std::string& s) {
    put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    out_ += s;
  }
  void put_pose(const Pose& p) {
    for (double v : {p.position.x(), p.position.y(), p.position.z(), p.orientation.w(),
                     p.orientation.x(), p.orientation.y(), p.orientation.z()}) {
      put(v);
    }
  }
  void put_points(const PointList& pts) {
    for (const Vec3& p : pts) {
      put(p.x());
      put(p.y());
      put(p.z());
    }
  }
  std::string take() { return std::move(out_); }
  void raw(std::string_view s) { out_ += s; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  long frame = -1;

  template <class T>
  T get(const char* what) {
    need(sizeof(T), what);
    T v;
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::string get_string(const char* what) {
    const auto n = get<std::uint32_t>(what);
    need(n, what);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  Pose get_pose(const char* what) {
    double v[7];
    for (double& x : v) x = get<double>(what);
    try {
      return {Vec3(v[0], v[1], v[2]), UnitQuaternion::from_stored(v[3], v[4], v[5], v[6])};
    } catch (const std::invalid_argument& e) {
      throw ParseError(what, e.what(), frame);
    }
  }
  PointList get_points(std::size_t n, const char* what) {
    need(n * 3 * sizeof(double), what);
    PointList pts(n);
    for (Vec3& p : pts) {
      const double x = get<double>(what);
      const double y = get<double>(what);
      const double z = get<double>(what);
      p = Vec3(x, y, z);
    }
    return pts;
  }
  std::size_t remaining() const { return in_.size() - pos_; }
  std::size_t position() const { return pos_; }

 private:
  void need(std::size_t n, const char* what) {
    if (n > remaining()) {
      throw ParseError(what, "truncated: need " + std::to_string(n) + " bytes at offset " +
                                 std::to_string(pos_) + ", have " + std::to_string(remaining()),
                       frame);
    }
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_json(const Trajectory& t) {
  Json meta;
  meta["format_version"] = kFormatVersion;
  meta["fps"] = t.fps;
  meta["hand_model"] = t.meta.hand_model;
  meta["object"] = t.meta.object;
  meta["skills"] = t.meta.skills;
  meta["seed"] = t.meta.seed;
  meta["scale"] = t.meta.scale;
  Json frames = Json::array();
  for (const Frame& f : t.frames) frames.push_back(frame_to_json(f));
  Json j;
  j["meta"] = std::move(meta);
  j["frames"] = std::move(frames);
  return j.dump(1) + "\n";
}

Trajectory decode_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("", "trajectory must be a JSON object");
  Trajectory t;
  try {
    const Json& meta = require(j, "meta", "");
    const Json& version = require(meta, "format_version", "meta");
    if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
      throw ParseError("meta.format_version", "unsupported format version");
    }
    t.fps = read_number(require(meta, "fps", "meta"), "meta.fps");
    t.meta.hand_model = require(meta, "hand_model", "meta").get<std::string>();
    t.meta.object = require(meta, "object", "meta").get<std::string>();
    t.meta.skills = require(meta, "skills", "meta").get<std::vector<std::string>>();
    const Json& seed = require(meta, "seed", "meta");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
      throw ParseError("meta.seed", "expected an integer");
    }
    t.meta.seed = seed.get<std::uint64_t>();
    t.meta.scale = read_number(require(meta, "scale", "meta"), "meta.scale");
    const Json& frames = require(j, "frames", "");
    if (!frames.is_array()) throw ParseError("frames", "expected an array");
    t.frames.reserve(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
      try {
        t.frames.push_back(frame_from_json(frames[i], at_frame(i)));
      } catch (const ParseError& e) {
        throw ParseError(e.field(), e.message(), static_cast<long>(i));
      } catch (const std::invalid_argument& e) {
        throw ParseError(at_frame(i), e.what(), static_cast<long>(i));
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError("meta", std::string("malformed trajectory: ") + e.what());
  }
  return t;
}

std::string encode_binary(const Trajectory& t) {
  const std::size_t dof = t.frames.empty() ? 0 : t.frames.front().theta.size();
  const std::size_t joints = t.frames.empty() ? 0 : t.frames.front().joints.size();
  const std::size_t tips = t.frames.empty() ? 0 : t.frames.front().contact.size();
  Writer w;
  w.raw(kBinaryMagic);
  w.put<std::uint32_t>(kFormatVersion);
  w.put<double>(t.fps);
  w.put<std::uint64_t>(t.meta.seed);
  w.put<double>(t.meta.scale);
  w.put_string(t.meta.hand_model);
  w.put_string(t.meta.object);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(t.meta.skills.size()));
  for (const std::string& s : t.meta.skills) w.put_string(s);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(t.frames.size()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(dof));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(joints));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(tips));
  for (std::size_t i = 0; i < t.frames.size(); ++i) {
    const Frame& f = t.frames[i];
    if (f.theta.size() != dof || f.joints.size() != joints || f.contact.size() != tips) {
      throw std::invalid_argument("frame " + std::to_string(i) + " differs in channel sizes");
    }
    w.put<std::uint8_t>(static_cast<std::uint8_t>(f.phase));
    w.put<std::uint8_t>(f.object ? 1 : 0);
    w.put_pose(f.wrist);
    for (double a : f.theta) w.put(a);
    w.put_points(f.joints);
    if (f.object) w.put_pose(*f.object);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(f.object_keypoints.size()));
    w.put_points(f.object_keypoints);
    for (bool c : f.contact) w.put<std::uint8_t>(c ? 1 : 0);
  }
  return w.take();
}

Trajectory decode_binary(std::string_view bytes) {
  if (!looks_binary(bytes)) throw ParseError("magic", "not a binary trajectory (bad magic)");
  Reader r(bytes.substr(kBinaryMagic.size()));
  const auto version = r.get<std::uint32_t>("version");
  if (version != kFormatVersion) {
    throw ParseError("version", "unsupported format version " + std::to_string(version));
  }
  Trajectory t;
  t.fps = r.get<double>("fps");
  t.meta.seed = r.get<std::uint64_t>("seed");
  t.meta.scale = r.get<double>("scale");
  t.meta.hand_model = r.get_string("hand_model");
  t.meta.object = r.get_string("object");
  const auto n_skills = r.get<std::uint32_t>("skills");
  for (std::uint32_t i = 0; i < n_skills; ++i) t.meta.skills.push_back(r.get_string("skills"));
  const auto n_frames = r.get<std::uint32_t>("frame count");
  const auto dof = r.get<std::uint32_t>("dof");
  const auto joints = r.get<std::uint32_t>("joint count");
  const auto tips = r.get<std::uint32_t>("fingertip count");
  // Smallest possible frame: phase, flag, wrist, theta, joints, keypoint count, contact.
  const std::size_t min_frame = 2 + 7 * 8 + 8 * std::size_t{dof} + 24 * std::size_t{joints} + 4 + tips;
  if (std::size_t{n_frames} * min_frame > r.remaining()) {
    throw ParseError("frames", "truncated: " + std::to_string(n_frames) + " frames need at least " +
                                   std::to_string(std::size_t{n_frames} * min_frame) + " bytes, have " +
                                   std::to_string(r.remaining()));
  }
  t.frames.reserve(n_frames);
  for (std::uint32_t i = 0; i < n_frames; ++i) {
    r.frame = static_cast<long>(i);
    Frame f;
    const auto phase = r.get<std::uint8_t>("phase");
    if (phase > static_cast<std::uint8_t>(Phase::transition)) {
      throw ParseError(at_frame(i) + ".phase", "unknown phase code", r.frame);
    }
    f.phase = static_cast<Phase>(phase);
    const auto has_object = r.get<std::uint8_t>("object flag");
    if (has_object > 1) throw ParseError(at_frame(i) + ".obj", "bad object flag", r.frame);
    f.wrist = r.get_pose("wrist");
    f.theta.resize(dof);
    for (double& a : f.theta) a = r.get<double>("theta");
    f.joints = r.get_points(joints, "joints");
    if (has_object) f.object = r.get_pose("obj");
    const auto n_kp = r.get<std::uint32_t>("obj_kp");
    f.object_keypoints = r.get_points(n_kp, "obj_kp");
    f.contact.resize(tips);
    for (std::size_t c = 0; c < tips; ++c) {
      const auto v = r.get<std::uint8_t>("contact");
      if (v > 1) throw ParseError(at_frame(i) + ".contact", "bad contact byte", r.frame);
      f.contact[c] = v == 1;
    }
    t.frames.push_back(std::move(f));
  }
  if (r.remaining() != 0) {
    throw ParseError("", std::to_string(r.remaining()) + " trailing bytes after last frame");
  }
  return t;
}

bool looks_binary(std::string_view bytes) { return bytes.substr(0, kBinaryMagic.size()) == kBinaryMagic; }

Trajectory decode_trajectory(std::string_view bytes) {
  // A truncated header still starts with part of the magic.
  if (looks_binary(bytes) ||
      (!bytes.empty() && kBinaryMagic.substr(0, std::min(bytes.size(), kBinaryMagic.size())) ==
                             bytes.substr(0, kBinaryMagic.size()))) {
    return decode_binary(bytes);
  }
  return decode_json(bytes);
}

Format format_for(const std::filesystem::path& path) {
  return path.extension() == ".bin" ? Format::binary : Format::json;
}

Trajectory load_trajectory(const std::filesystem::path& path) {
  return decode_trajectory(read_file(path));
}

void save_trajectory(const std::filesystem::path& path, const Trajectory& t) {
  write_file(path, format_for(path) == Format::binary ? encode_binary(t) : encode_json(t));
}

}  // namespace hopkit::io
