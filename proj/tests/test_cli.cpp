#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "symarea/cli/commands.hpp"

using namespace symarea;
using namespace symarea::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scene_path(const std::string& name) { return std::string(SYMAREA_SCENES_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("symarea_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Scene, ParseDumpRoundTrip) {
  const Scene scene = load_scene(scene_path("cp1_quarter.json"));
  EXPECT_EQ(scene.k, 1);
  EXPECT_EQ(scene.points.size(), 5u);
  EXPECT_EQ(scene.tasks.size(), 4u);
  EXPECT_EQ(scene.tasks[0].grid, 128);
  EXPECT_EQ(parse_scene(dump_scene(scene)), scene);
}

TEST(Scene, MalformedInputsAreRejected) {
  const std::vector<std::string> bad{
      "not json",
      R"({"points": []})",
      R"({"space": {"k": 0, "m": 1}})",
      R"({"space": {"k": 1, "m": 1}, "points": [{"name": "a", "value": [[[1, 0], [2, 0]]]}]})",
      R"({"space": {"k": 1, "m": 1}, "points": [{"name": "a", "value": [[[1, 0]]]}, {"name": "a", "value": [[[2, 0]]]}]})",
      R"({"space": {"k": 1, "m": 1}, "points": [{"name": "a", "value": [[[1, 0]]]}], "tasks": [{"kind": "area", "points": ["a", "a", "b"]}]})",
      R"({"space": {"k": 1, "m": 1}, "points": [{"name": "a", "value": [[[1, 0]]]}], "tasks": [{"kind": "classify", "points": ["a"]}]})",
      R"({"space": {"k": 1, "m": 1}, "tasks": [{"kind": "paint"}]})",
  };
  for (std::size_t i = 0; i < bad.size(); ++i) {
    EXPECT_THROW(parse_scene(bad[i]), InputError) << bad[i];
    const auto path = write_temp("bad" + std::to_string(i) + ".json", bad[i]);
    EXPECT_EQ(run_cli({"area", "--scene", path}).code, kInputError) << bad[i];
  }
  EXPECT_EQ(run_cli({"area", "--scene", "/nonexistent/scene.json"}).code, kInputError);
}

TEST(Cli, AreaWithOracle) {
  const Outcome r = run_cli({"area", "--scene", scene_path("cp1_quarter.json"), "--grid", "128"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "version,rng,seed,task,inputs,classification,value,oracle,residual,psi_re,psi_im,note");
  EXPECT_NE(rows[1].find("area,\"o,one,i\",Regular,1.5707963267"), std::string::npos) << rows[1];
  EXPECT_NE(rows[1].find("grid=128"), std::string::npos);
  EXPECT_NE(r.err.find("# timing"), std::string::npos);
}

TEST(Cli, AreaRefusesNonRegularPair) {
  const Outcome r = run_cli({"area", "--scene", scene_path("cp1_refused.json")});
  EXPECT_EQ(r.code, kRefused);
  EXPECT_NE(r.err.find("pair (a,b): LeavesChart"), std::string::npos) << r.err;
}

TEST(Cli, ClassifyExamples) {
  const Outcome r = run_cli({"classify", "--scene", scene_path("cp1_quarter.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NE(rows[1].find("LeavesChart"), std::string::npos);
  EXPECT_NE(rows[2].find("CutLocus"), std::string::npos);
  EXPECT_NE(rows[3].find("Regular"), std::string::npos);

  const Outcome one = run_cli({"classify", "--scene", scene_path("cp1_quarter.json"), "--pair", "one,i"});
  ASSERT_EQ(one.code, kOk);
  EXPECT_EQ(lines(one.out).size(), 2u);
  EXPECT_EQ(run_cli({"classify", "--scene", scene_path("cp1_quarter.json"), "--pair", "one,nope"}).code,
            kInputError);
}

TEST(Cli, SphereFullFormat) {
  const Outcome r = run_cli({"sphere", "--space", "2,2", "--grid", "64", "--format", "full"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const double value = doc.at("records").at(0).at("value").get<double>();
  EXPECT_NEAR(value, 4.0 * kPi, 1e-4);
  EXPECT_EQ(run_cli({"sphere", "--space", "2"}).code, kInputError);
  EXPECT_EQ(run_cli({"sphere", "--grid", "0"}).code, kInputError);
  EXPECT_EQ(run_cli({"sphere", "--format", "xml"}).code, kInputError);
}

TEST(Cli, VerifyRandomIsDeterministic) {
  const std::vector<std::string> args{"verify", "--random", "--space", "2,2", "--trials", "3", "--seed", "5"};
  const Outcome a = run_cli(args);
  const Outcome b = run_cli(args);
  ASSERT_EQ(a.code, kOk) << a.out << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines(a.out).size(), 10u);
  EXPECT_EQ(a.out.find(",fail,"), std::string::npos);
}

TEST(Cli, VerifyFromScene) {
  const Outcome r = run_cli({"verify", "--scene", scene_path("gr24_verify.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("trials=5"), std::string::npos);
  EXPECT_NE(r.out.find("campaign_seed=7"), std::string::npos);
  EXPECT_EQ(run_cli({"verify"}).code, kInputError);
}

TEST(Cli, SampleEmitsUsableScene) {
  const Outcome r = run_cli({"sample", "--space", "2,1", "--trials", "3", "--seed", "9"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out, run_cli({"sample", "--space", "2,1", "--trials", "3", "--seed", "9"}).out);
  const Scene scene = parse_scene(r.out);
  EXPECT_EQ(scene.tasks.size(), 3u);
  const auto path = write_temp("sampled.json", r.out);
  const Outcome area = run_cli({"area", "--scene", path});
  ASSERT_EQ(area.code, kOk) << area.err;
  EXPECT_EQ(lines(area.out).size(), 4u);
}

TEST(Cli, DumpScene) {
  const Outcome r = run_cli({"area", "--scene", scene_path("cp1_quarter.json"), "--dump-scene"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(parse_scene(r.out), load_scene(scene_path("cp1_quarter.json")));
  EXPECT_EQ(run_cli({"area", "--dump-scene"}).code, kInputError);
}

TEST(Cli, UnknownSubcommandOrFlag) {
  EXPECT_EQ(run_cli({"paint"}).code, kInputError);
  EXPECT_EQ(run_cli({"area", "--bogus"}).code, kInputError);
  EXPECT_EQ(run_cli({}).code, kInputError);
}
