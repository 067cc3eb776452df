#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "hopkit/io/json_util.hpp"
#include "hopkit/io/trajectory_codec.hpp"

using namespace hopkit;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

struct Sandbox {
  fs::path dir;
  Sandbox() : dir(fs::temp_directory_path() / ("hopkit_cli_" + std::to_string(std::random_device{}()))) {
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }

  Result run(const std::string& args, const std::string& env = "") const {
    const fs::path log = dir / "stdout.txt";
    const std::string cmd = env + " \"" HOPKIT_CLI "\" --data-dir \"" HOPKIT_DATA_DIR "\" " + args +
                            " > \"" + log.string() + "\" 2> \"" + (dir / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = io::read_file(log);
    return r;
  }
  std::string path(const std::string& rel) const { return (dir / rel).string(); }
};

// Concatenated bytes of every file in a directory, in name order.
std::string snapshot(const fs::path& d) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(d)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) all += f.filename().string() + "\n" + io::read_file(f);
  return all;
}

}  // namespace

TEST_CASE("synth then validate") {
  Sandbox s;
  const Result r = s.run("synth --skill grasp --skill catch --object cube --count 2 --seed 3 --out " + s.path("d"));
  CHECK(r.code == 0);
  CHECK(fs::exists(s.path("d/grasp_000001.json")));
  CHECK(fs::exists(s.path("d/catch_000000.json")));
  CHECK(fs::exists(s.path("d/manifest.json")));
  const Result v = s.run("validate " + s.path("d"));
  CHECK(v.code == 0);
  const Result j = s.run("--json validate " + s.path("d"));
  CHECK(j.code == 0);
  CHECK(io::Json::parse(j.out)["ok"] == true);
}

TEST_CASE("synth is deterministic across runs and thread counts") {
  Sandbox s;
  const std::string base = "synth --skill grasp_move_place --skill regrasp --object cube --count 4 --format bin ";
  CHECK(s.run(base + "--seed 11 --jobs 1 --out " + s.path("a")).code == 0);
  CHECK(s.run(base + "--seed 11 --jobs 4 --out " + s.path("b")).code == 0);
  CHECK(s.run(base + "--jobs 2 --out " + s.path("c"), "HOPKIT_SEED=11").code == 0);
  CHECK(s.run(base + "--seed 12 --out " + s.path("e")).code == 0);
  CHECK(snapshot(s.path("a")) == snapshot(s.path("b")));
  CHECK(snapshot(s.path("a")) == snapshot(s.path("c")));
  CHECK(snapshot(s.path("a")) != snapshot(s.path("e")));
  const Trajectory t = io::load_trajectory(s.path("a/regrasp_000002.bin"));
  CHECK(t.meta.skills == std::vector<std::string>{"regrasp"});
}

TEST_CASE("validate flags corrupt and missing files") {
  Sandbox s;
  CHECK(s.run("synth --skill move --object cube --count 1 --out " + s.path("d")).code == 0);
  io::write_file(s.path("d/move_000000.json"), "{\"frames\": [}");
  CHECK(s.run("validate " + s.path("d")).code == 1);
  CHECK(s.run("validate " + s.path("nope.json")).code == 2);

  CHECK(s.run("synth --skill grasp --object cube --count 1 --format bin --out " + s.path("b")).code == 0);
  const std::string bytes = io::read_file(s.path("b/grasp_000000.bin"));
  io::write_file(s.path("b/grasp_000000.bin"), bytes.substr(0, bytes.size() / 2));
  const Result r = s.run("--json validate " + s.path("b"));
  CHECK(r.code == 1);
  CHECK(io::Json::parse(r.out)["ok"] == false);
}

TEST_CASE("usage errors exit with 2") {
  Sandbox s;
  CHECK(s.run("").code == 2);
  CHECK(s.run("frobnicate").code == 2);
  CHECK(s.run("synth --skill juggle --object cube --out " + s.path("x")).code == 2);
  CHECK(s.run("synth --skill grasp --out " + s.path("x")).code == 2);
  CHECK(s.run("synth --skill grasp --object nosuch --out " + s.path("x")).code == 2);
  CHECK(s.run("weights").code == 2);
  CHECK(s.run("synth --skill grasp --skill grasp --object cube --out " + s.path("x")).code == 2);
  CHECK(s.run("synth --skill grasp --object cube --out " + s.path("x"), "HOPKIT_SEED=abc").code == 2);
}

TEST_CASE("rotate on an object without a region fails synthesis") {
  Sandbox s;
  CHECK(s.run("synth --skill rotate --object cube --count 1 --out " + s.path("x")).code == 1);
  CHECK(s.run("synth --skill rotate --object bottle --count 1 --out " + s.path("y")).code == 0);
}

TEST_CASE("plan and score") {
  Sandbox s;
  const std::string plan = std::string(HOPKIT_DATA_DIR) + "/plans/bottle_upright.json";
  CHECK(s.run("plan \"" + plan + "\" --out " + s.path("p.json")).code == 0);
  CHECK(io::load_trajectory(s.path("p.json")).size() == 161);
  CHECK(s.run("validate " + s.path("p.json")).code == 0);
  const Result sc = s.run("--json score " + s.path("p.json") + " " + s.path("p.json"));
  CHECK(sc.code == 0);
  const io::Json j = io::Json::parse(sc.out);
  CHECK(j["summary"]["mean_reward"] == 1.0);
  CHECK(j["summary"]["SR"] == 1.0);

  io::Json bad = io::Json::parse(io::read_file(plan));
  bad["keypoints"][2]["action"] = "wave";
  io::write_file(s.path("bad.json"), bad.dump());
  CHECK(s.run("plan " + s.path("bad.json") + " --out " + s.path("q.json")).code == 1);

  CHECK(s.run("synth --skill grasp --object bottle --count 1 --out " + s.path("g")).code == 0);
  CHECK(s.run("score " + s.path("g/grasp_000000.json") + " " + s.path("p.json")).code == 1);
}

TEST_CASE("stable poses, weights and schedule") {
  Sandbox s;
  const Result sp = s.run("--json stable-poses tetrahedron");
  CHECK(sp.code == 0);
  CHECK(io::Json::parse(sp.out)["count"] == 4);

  const Result w = s.run("weights 0.5 1.0 --lambda 10");
  CHECK(w.code == 0);
  CHECK(w.out.find("0,0.5,0.99330714907571527") != std::string::npos);
  io::write_file(s.path("r.txt"), "0.2\n0.4\n0.6\n");
  const Result wf = s.run("weights --file " + s.path("r.txt") + " --lambda 0");
  CHECK(wf.code == 0);
  CHECK(wf.out.find("2,0.6,0.33333333333333331") != std::string::npos);

  const Result sd = s.run("schedule-dump --first 0 --last 7000 --step 2750");
  CHECK(sd.code == 0);
  CHECK(sd.out.find("\n0,1,1,") != std::string::npos);
  CHECK(sd.out.find("\n2750,2,0.5,") != std::string::npos);
  CHECK(sd.out.find("\n5500,3,0,") != std::string::npos);
}
