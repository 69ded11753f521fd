// Copyright 2026 The mdp-workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "mdp/cli.h"

namespace mdp {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mdp_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string File(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

  Outcome Mdp(std::vector<std::string> args, bool cache = false) {
    if (!cache) args.insert(args.begin(), "--no-cache");
    std::ostringstream out, err;
    const int code = RunCli(args, out, err);
    return {code, out.str(), err.str()};
  }

  std::string Line3() { return File("line3.json", R"({"kind":"line","n":3})"); }
  std::string Discrete(int n) {
    return File("d" + std::to_string(n) + ".json",
                R"({"kind":"discrete","n":)" + std::to_string(n) + "}");
  }
  std::string Geometric3() {
    return File("geo3.json", R"({"rows":[["2/3","1/6","1/6"],["1/3","1/3","1/3"],["1/6","1/6","2/3"]]})");
  }

  fs::path dir_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Mdp({}).code, kExitUsage);
  EXPECT_EQ(Mdp({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Mdp({"capacity", "--metric", Line3()}).code, kExitUsage);
  EXPECT_EQ(Mdp({"capacity", "--metric", Line3(), "--mode", "both"}).code, kExitUsage);
  Outcome missing = Mdp({"capacity", "--metric", (dir_ / "absent.json").string(), "--mode", "add"});
  EXPECT_EQ(missing.code, kExitUsage);
  EXPECT_NE(missing.err.find("error:"), std::string::npos);

  Outcome bad = Mdp({"capacity", "--metric", File("bad.json", "{\n  \"kind\": \"line\",\n  \"n\": }"),
                 "--mode", "add"});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_NE(bad.err.find("line 3"), std::string::npos) << bad.err;
  EXPECT_NE(bad.err.find("column"), std::string::npos);

  Outcome help = Mdp({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("reproduce"), std::string::npos);
}

TEST_F(CliTest, CheckDp) {
  Outcome ok = Mdp({"check-dp", "--channel", Geometric3(), "--metric", Line3()});
  EXPECT_EQ(ok.code, kExitOk);
  EXPECT_EQ(ok.out, "dx-private: yes\n");
  const std::string leaky = File("leaky.json", R"({"rows":[["1","0"],["1/2","1/2"],["0","1"]]})");
  Outcome no = Mdp({"check-dp", "--channel", leaky, "--metric", Line3()});
  EXPECT_EQ(no.code, kExitViolation);
  EXPECT_EQ(no.out.rfind("dx-private: no\n", 0), 0u);
  Outcome j = Mdp({"--format", "json", "check-dp", "--channel", leaky, "--metric", Line3()});
  EXPECT_FALSE(Json::parse(j.out)["private"].get<bool>());
  EXPECT_FALSE(Json::parse(j.out)["violations"].empty());
}

TEST_F(CliTest, Capacity) {
  EXPECT_EQ(Mdp({"capacity", "--metric", Discrete(5), "--mode", "mult"}).out, "5/3\n");
  EXPECT_EQ(Mdp({"capacity", "--metric", Discrete(5), "--mode", "add"}).out, "4/9\n");
  EXPECT_EQ(Mdp({"capacity", "--metric", Discrete(4), "--mode", "add", "--closed-form"}).out,
            "3/7\n");
  Outcome j = Mdp({"--format", "json", "capacity", "--metric", Line3(), "--mode", "mult"});
  ASSERT_EQ(j.code, kExitOk);
  Json report = Json::parse(j.out);
  EXPECT_EQ(report["value"], "5/3");
  EXPECT_EQ(report["method"], "lp");
  EXPECT_EQ(report["witness"]["rows"].size(), 3u);

  EXPECT_EQ(Mdp({"channel-capacity", "--channel", Geometric3(), "--mode", "mult"}).out, "5/3\n");
  EXPECT_EQ(Mdp({"channel-capacity", "--channel", Geometric3(), "--mode", "add"}).out, "1/2\n");
}

TEST_F(CliTest, HyperAndUtility) {
  Outcome h = Mdp({"to-hyper", "--channel", Geometric3()});
  ASSERT_EQ(h.code, kExitOk);
  EXPECT_NE(h.out.find("7/18 : (4/7, 2/7, 1/7)"), std::string::npos) << h.out;
  EXPECT_NE(h.out.find("2/9 : (1/4, 1/2, 1/4)"), std::string::npos);

  const std::string bin =
      File("bin.json", R"({"table":[["0","1","1"],["1","0","1"],["1","1","0"]]})");
  Outcome u = Mdp({"--format", "json", "utility", "--channel", Geometric3(), "--loss", bin});
  ASSERT_EQ(u.code, kExitOk) << u.err;
  Json j = Json::parse(u.out);
  EXPECT_EQ(j["prior_uncertainty"], "2/3");
  EXPECT_EQ(j["posterior_uncertainty"], "4/9");

  const std::string prior = File("prior.json", R"(["1","0","0"])");
  Outcome p = Mdp({"--format", "json", "utility", "--channel", Geometric3(), "--loss", bin, "--prior", prior});
  EXPECT_EQ(Json::parse(p.out)["posterior_uncertainty"], "0");
  const std::string bad_prior = File("bad_prior.json", R"(["1/2","1/4"])");
  EXPECT_EQ(Mdp({"utility", "--channel", Geometric3(), "--loss", bin, "--prior", bad_prior}).code,
            kExitUsage);
}

TEST_F(CliTest, Refines) {
  const std::string mixed = File(
      "mixed.json",
      R"({"rows":[["1/3","1/12","1/12","1/2"],["1/6","1/6","1/6","1/2"],["1/12","1/12","1/3","1/2"]]})");
  Outcome yes = Mdp({"refines", "--b", Geometric3(), "--a", mixed});
  EXPECT_EQ(yes.code, kExitOk);
  EXPECT_EQ(yes.out.rfind("Yes\n", 0), 0u);
  Outcome no = Mdp({"refines", "--b", mixed, "--a", Geometric3()});
  EXPECT_EQ(no.code, kExitViolation);
  EXPECT_EQ(no.out, "No\n");
}

TEST_F(CliTest, Optimal) {
  const std::string bin =
      File("bin.json", R"({"table":[["0","1","1"],["1","0","1"],["1","1","0"]]})");
  Outcome g = Mdp({"optimal", "--channel", Geometric3(), "--loss", bin, "--metric", Line3(), "--mode", "exact"});
  EXPECT_EQ(g.code, kExitOk) << g.err;
  EXPECT_EQ(g.out, "optimal\n");

  const std::string rr =
      File("rr.json", R"({"rows":[["1/2","1/4","1/4"],["1/4","1/2","1/4"],["1/4","1/4","1/2"]]})");
  Outcome c = Mdp({"--format", "json", "optimal", "--channel", rr, "--loss", bin, "--metric",
               Discrete(3), "--mode", "exact"});
  EXPECT_EQ(c.code, kExitViolation);
  Json v = Json::parse(c.out);
  EXPECT_EQ(v["verdict"], "counterexample");
  EXPECT_EQ(v["margin"], "1/24");

  Outcome s = Mdp({"optimal", "--channel", Geometric3(), "--loss", bin, "--metric", Line3(), "--mode",
               "sample", "--samples", "20", "--seed", "4"});
  EXPECT_EQ(s.code, kExitOk);
  EXPECT_EQ(s.out.rfind("unknown\n", 0), 0u);

  // Not private for the tighter metric.
  EXPECT_EQ(Mdp({"optimal", "--channel", Geometric3(), "--loss", bin, "--metric",
                 File("l3.json", R"({"kind":"line","n":3,"base":"3/2"})"), "--mode", "exact"})
                .code,
            kExitViolation);
}

TEST_F(CliTest, VerticesAndKernels) {
  const std::string out_path = (dir_ / "v.json").string();
  Outcome v = Mdp({"vertices", "--metric", Line3(), "--out", out_path});
  ASSERT_EQ(v.code, kExitOk);
  EXPECT_EQ(v.out.rfind("4 vertices\n", 0), 0u);
  std::ifstream in(out_path);
  Json written = Json::parse(in);
  EXPECT_FALSE(written.empty());

  Outcome k = Mdp({"kernels", "--metric", Line3()});
  EXPECT_EQ(k.code, kExitOk);
  EXPECT_EQ(k.out.rfind("2 kernels\n", 0), 0u);
  Outcome kd = Mdp({"--format", "json", "kernels", "--metric", Discrete(3)});
  EXPECT_EQ(Json::parse(kd.out)["count"], 5);

  EXPECT_EQ(Mdp({"kernels", "--metric", Discrete(4), "--limit", "2"}).code, kExitBudget);
  EXPECT_EQ(Mdp({"vertices", "--metric", File("h3.json", R"({"kind":"hamming","bits":3})"),
                 "--limit", "2"})
                .code,
            kExitBudget);
}

TEST_F(CliTest, Reproduce) {
  Outcome r = Mdp({"reproduce", "--table", "euclid", "--max-n", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "Dims,Vertices,Kernels,MultCapacity,AddCapacity,VerticesMatch,KernelsMatch,"
            "MultCapacityMatch,AddCapacityMatch\n"
            "2,2,1,4/3,1/3,match,match,match,match\n"
            "3,4,2,5/3,1/2,match,match,match,match\n"
            "4,8,11,2,2/3,match,match,match,match\n"
            "5,16,187,7/3,3/4,match,match,match,match\n");
  Outcome j = Mdp({"--format", "json", "reproduce", "--table", "discrete", "--max-n", "3"});
  ASSERT_EQ(j.code, kExitOk);
  EXPECT_TRUE(Json::parse(j.out).is_object());
  EXPECT_EQ(Mdp({"reproduce", "--table", "torus"}).code, kExitUsage);
}

TEST_F(CliTest, CacheRoundTripAndVerify) {
  const std::string cache = (dir_ / "cache").string();
  const std::vector<std::string> args = {"--cache-dir", cache, "vertices", "--metric", Line3()};
  Outcome first = Mdp(args, true);
  ASSERT_EQ(first.code, kExitOk);
  ASSERT_FALSE(fs::is_empty(cache));
  EXPECT_EQ(Mdp(args, true).out, first.out);
  std::vector<std::string> verify = args;
  verify.insert(verify.begin(), "--verify-cache");
  EXPECT_EQ(Mdp(verify, true).code, kExitOk);

  for (const fs::directory_entry& e : fs::directory_iterator(cache)) {
    std::ifstream in(e.path());
    Json entry = Json::parse(in);
    in.close();
    entry["payload"] = Json::parse(R"({"labels":["0","1","2"],"vertices":[["1/3","1/3","1/3"]]})");
    std::ofstream(e.path()) << entry.dump();
  }
  EXPECT_EQ(Mdp(verify, true).code, kExitViolation);
  EXPECT_EQ(Mdp(args, false).out, first.out);
}

#ifdef MDP_BINARY
int System(const std::string& command) {
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = MDP_BINARY;
  EXPECT_EQ(System(bin + " --no-cache check-dp --channel " + Geometric3() + " --metric " + Line3() +
                   " > /dev/null"),
            0);
  EXPECT_EQ(System(bin + " > /dev/null 2>&1"), 2);
  EXPECT_EQ(System(bin + " --no-cache capacity --metric " + Discrete(5) + " --mode mult > " +
                   (dir_ / "o.txt").string()),
            0);
  std::ifstream in(dir_ / "o.txt");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "5/3");
}
#endif

}  // namespace
}  // namespace mdp
