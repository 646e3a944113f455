#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "rlnc_das/cli.hpp"

namespace fs = std::filesystem;
using rlnc_das::cli::run_cli;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rlnc-das-cli-" + std::to_string(std::random_device{}()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write_data(std::size_t bytes, unsigned seed = 1) const {
    std::mt19937 rng(seed);
    std::string data(bytes, '\0');
    for (auto& c : data) c = static_cast<char>(rng());
    const std::string p = path("data.bin");
    std::ofstream(p, std::ios::binary) << data;
    return p;
  }

  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  /// commit + challenge + respond (+ projections + proof) + verify.
  CliRun pipeline(const std::string& field, const std::string& mode, const std::string& adversary = "") {
    const std::string data = write_data(600);
    EXPECT_EQ(cli({"commit", "--in", data, "--out", path("coms"), "--m", "4", "--field", field, "--mode", mode}).code, 0);
    EXPECT_EQ(cli({"challenge", "--commitments", path("coms"), "--seed", "s1", "--out", path("chal")}).code, 0);
    std::vector<std::string> respond = {"respond", "--in", data, "--commitments", path("coms"),
                                        "--challenge", path("chal"), "--out", path("resp")};
    if (!adversary.empty()) {
      respond.push_back("--adversary");
      respond.push_back(adversary);
    }
    EXPECT_EQ(cli(respond).code, 0);
    std::vector<std::string> verify = {"verify", "--commitments", path("coms"), "--challenge", path("chal"),
                                       "--response", path("resp")};
    if (mode == "interactive") {
      const CliRun proj = cli({"challenge", "--commitments", path("coms"), "--seed", "s1", "--projections-for",
                            path("resp"), "--out", path("proj")});
      if (proj.code != 0) return proj;  // refused response
      auto r = respond;
      r.insert(r.end(), {"--projections", path("proj")});
      for (std::size_t i = 0; i + 1 < r.size(); ++i)
        if (r[i] == "--out") r[i + 1] = path("proof");
      EXPECT_EQ(cli(r).code, 0);
      verify.insert(verify.end(), {"--projections", path("proj"), "--proof", path("proof")});
    }
    return cli(verify);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, HonestPipelineAvailable) {
  for (const std::string field : {"test17", "test257", "crypto"}) {
    for (const std::string mode : {"interactive", "fs"}) {
      const CliRun r = pipeline(field, mode);
      EXPECT_EQ(r.code, 0) << field << " " << mode << ": " << r.err;
      EXPECT_NE(r.out.find("verdict: available"), std::string::npos);
    }
  }
}

TEST_F(CliTest, InconsistentClaimerUnavailable) {
  const CliRun r = pipeline("crypto", "fs", "inconsistent:7");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("verdict: unavailable"), std::string::npos);
  EXPECT_NE(r.out.find("rejected"), std::string::npos);
}

TEST_F(CliTest, WithholderRefusesOrIsCaught) {
  // Over test17 a hyperplane withholder answers 1/17 of challenges; try seeds until one refuses.
  const std::string data = write_data(100);
  ASSERT_EQ(cli({"commit", "--in", data, "--out", path("coms"), "--m", "2", "--field", "test17", "--mode", "fs"}).code, 0);
  bool refused = false;
  for (int i = 0; i < 20 && !refused; ++i) {
    ASSERT_EQ(cli({"challenge", "--commitments", path("coms"), "--seed", std::to_string(i), "--out", path("chal")}).code, 0);
    const CliRun resp = cli({"respond", "--in", data, "--commitments", path("coms"), "--challenge", path("chal"),
                          "--adversary", "withhold:3", "--out", path("resp")});
    ASSERT_EQ(resp.code, 0);
    const CliRun v = cli({"verify", "--commitments", path("coms"), "--challenge", path("chal"), "--response", path("resp")});
    if (resp.out.find("refused") != std::string::npos) {
      refused = true;
      EXPECT_EQ(v.code, 1);
      EXPECT_NE(v.out.find("refused"), std::string::npos);
    } else {
      EXPECT_EQ(v.code, 0);  // an answered challenge is an honest answer
    }
  }
  EXPECT_TRUE(refused);
}

TEST_F(CliTest, TruncatedAndCorruptFiles) {
  ASSERT_EQ(pipeline("crypto", "interactive").code, 0);
  const std::string proof = slurp("proof");
  std::ofstream(path("proof"), std::ios::binary) << proof.substr(0, proof.size() - 1);
  const std::vector<std::string> verify = {"verify", "--commitments", path("coms"), "--challenge", path("chal"),
                                           "--response", path("resp"), "--projections", path("proj"),
                                           "--proof", path("proof")};
  CliRun r = cli(verify);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("MalformedFile"), std::string::npos) << r.err;

  std::string coms = slurp("coms");
  coms[0] = 'X';
  std::ofstream(path("coms"), std::ios::binary) << coms;
  r = cli(verify);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("MalformedFile"), std::string::npos) << r.err;

  std::ofstream(path("empty"), std::ios::binary);
  r = cli({"challenge", "--commitments", path("empty"), "--out", path("x")});
  EXPECT_EQ(r.code, 2);
  r = cli({"challenge", "--commitments", path("missing"), "--out", path("x")});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, DeterministicOutputs) {
  const std::string data = write_data(300);
  for (const char* name : {"a", "b"}) {
    ASSERT_EQ(cli({"commit", "--in", data, "--out", path(std::string("coms_") + name)}).code, 0);
    ASSERT_EQ(cli({"challenge", "--commitments", path("coms_a"), "--seed", "x", "--out", path(std::string("chal_") + name)}).code, 0);
  }
  EXPECT_EQ(slurp("coms_a"), slurp("coms_b"));
  EXPECT_EQ(slurp("chal_a"), slurp("chal_b"));
  ASSERT_EQ(cli({"challenge", "--commitments", path("coms_a"), "--seed", "y", "--out", path("chal_c")}).code, 0);
  EXPECT_NE(slurp("chal_a"), slurp("chal_c"));
}

TEST_F(CliTest, CommitReportsSize) {
  const std::string data = write_data(4096);
  const CliRun r = cli({"commit", "--in", data, "--out", path("coms"), "--m", "16"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("commitments: 512 bytes"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("matrix: 16 x 32"), std::string::npos) << r.out;
  const std::string empty = path("empty");
  std::ofstream(empty, std::ios::binary);
  EXPECT_EQ(cli({"commit", "--in", empty, "--out", path("coms2")}).code, 0);
  EXPECT_EQ(cli({"commit", "--in", data, "--out", path("coms3"), "--field", "gf7"}).code, 2);
}

TEST(Cli, CostsTable2) {
  const CliRun r = cli({"costs", "--figure", "table2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("2D-RS,MT,57.0 kB,32.0 kB,96.0 MB"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("2D-RS,KZG,38.8 kB,8.0 kB,96.0 MB"), std::string::npos);
  EXPECT_NE(r.out.find("LDPC,CMT,736.1 kB,8.0 kB,96.0 MB"), std::string::npos);
  EXPECT_NE(r.out.find("RLNC (m=16),Pedersen,4.9 kB,0.5 kB,0.0 B"), std::string::npos);
  const CliRun j = cli({"costs", "--figure", "table2", "--format", "json"});
  EXPECT_EQ(j.code, 0);
  EXPECT_NE(j.out.find("\"sample_cost\":\"736.1 kB\""), std::string::npos);
}

TEST(Cli, CostsFigures) {
  const CliRun r = cli({"costs", "--figure", "fig3"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "s,ldpc,2d_rs,rlnc_1B,rlnc_2B,rlnc_3B");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 100);
  EXPECT_EQ(cli({"costs", "--figure", "fig4"}).code, 0);
  const CliRun bad = cli({"costs", "--figure", "fig9"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("ConfigError"), std::string::npos);
  EXPECT_EQ(cli({"costs"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, SimulateExitCodes) {
  CliRun r = cli({"simulate", "--kind", "consistency", "--q", "5", "--m", "2", "--p", "1", "--exhaustive"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("consistency,5,2,"), std::string::npos);
  r = cli({"simulate", "--kind", "rank", "--q", "2", "--n", "2", "--s", "2", "--trials", "20000"});
  EXPECT_EQ(r.code, 0) << r.out;
  r = cli({"simulate", "--kind", "withholding", "--trials", "0"});
  EXPECT_EQ(r.code, 2);
  r = cli({"simulate", "--kind", "bogus"});
  EXPECT_EQ(r.code, 2);
}
