#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "chainrep/io.hpp"

#ifndef CHAINREP_CLI
#error "CHAINREP_CLI must name the chainrep binary"
#endif
#ifndef CHAINREP_DATA
#error "CHAINREP_DATA must name the sample data directory"
#endif

using namespace chainrep;
namespace fs = std::filesystem;

namespace {

  struct Result {
    int         code = -1;
    std::string out;
  };

  // Runs the CLI with `args`; stderr is folded into out when `merge`.
  Result run(std::string const& args, bool merge = false) {
    std::string const cmd = std::string("'") + CHAINREP_CLI + "' " + args
                            + (merge ? " 2>&1" : " 2>/dev/null");
    Result r;
    FILE*  pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) {
      return r;
    }
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) {
      r.out.append(buf, n);
    }
    int const status = ::pclose(pipe);
    r.code           = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::string data(std::string const& name) {
    return std::string("'") + CHAINREP_DATA + "/" + name + "'";
  }

  struct TempDir {
    fs::path path;
    TempDir() {
      path = fs::temp_directory_path()
             / ("chainrep_cli_"
                + std::string(::testing::UnitTest::GetInstance()
                                  ->current_test_info()
                                  ->name()));
      fs::remove_all(path);
      fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(std::string const& name) const {
      return "'" + (path / name).string() + "'";
    }
  };

}  // namespace

TEST(Cli, LatticeCheckCube) {
  auto const r = run("lattice-check " + data("cube.json") + " --format json");
  ASSERT_EQ(r.code, 0);
  auto const j = json::parse(r.out);
  EXPECT_FALSE(j["planar"]);
  EXPECT_FALSE(j["verdicts"]["fully_chain_rep"]);
}

TEST(Cli, LatticeCheckGrid) {
  auto const r = run("lattice-check " + data("grid3x3.json")
                     + " --format json --verbose");
  ASSERT_EQ(r.code, 0);
  auto const j = json::parse(r.out);
  EXPECT_TRUE(j["planar"]);
  EXPECT_FALSE(j["verdicts"]["fully_chain_rep"]);
  EXPECT_EQ(j["join_reducible_coatoms"], json({6, 7}));
  EXPECT_EQ(j["boundary"]["left"], json({1, 3}));
  EXPECT_EQ(j["boundary"]["right"], json({2, 5}));
}

TEST(Cli, LatticeCheckChain) {
  auto const r = run("lattice-check " + data("chain4.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("fully_chain_rep: true"), std::string::npos);
  EXPECT_NE(r.out.find("fully_a_rep: true"), std::string::npos);
  EXPECT_NE(r.out.find("fully_ae_cond: true"), std::string::npos);
}

TEST(Cli, LatticeCheckRejectsM3) {
  auto const r = run("lattice-check " + data("m3.json"), true);
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("not distributive"), std::string::npos);
  EXPECT_EQ(run("lattice-check " + data("n5.json")).code, 3);
}

TEST(Cli, VerifySquare) {
  TempDir    dir;
  auto const r = run("verify " + data("square.json") + " --q 0,a,b,3 --out "
                     + (dir / "out") + " --format json");
  ASSERT_EQ(r.code, 0);
  auto const j = json::parse(r.out);
  EXPECT_TRUE(j["passed"]);
  EXPECT_EQ(j["carrier_size"], 7);

  // Artifacts reload unchanged.
  auto const chain_doc = read_json_file(dir.path / "out" / "chain.json");
  EXPECT_EQ(to_json(chain_from_json(chain_doc)), chain_doc);
  auto const alg_doc = read_json_file(dir.path / "out" / "algebra.json");
  EXPECT_EQ(to_json(algebra_from_json(alg_doc)), alg_doc);
  EXPECT_EQ(read_json_file(dir.path / "out" / "report.json"), j);

  // Re-verify from the artifacts.
  auto const again = run("verify " + data("square.json") + " --q 0,1,2,3 --chain "
                         + (dir / "out/chain.json") + " --algebra "
                         + (dir / "out/algebra.json"));
  EXPECT_EQ(again.code, 0);
}

TEST(Cli, VerifyFailsAtNecessaryConditions) {
  auto const r = run("verify " + data("square.json") + " --q 0,1,2 --format json");
  EXPECT_EQ(r.code, 2);
  auto const j = json::parse(r.out);
  EXPECT_EQ(j["failed_stage"], "necessary_conditions");
}

TEST(Cli, VerifyFailsAtBuilder) {
  auto const r = run("verify " + data("grid3x3.json")
                     + " --q 0,a1,b1,a2,b2,8,e --format json");
  EXPECT_EQ(r.code, 2);
  auto const j = json::parse(r.out);
  EXPECT_EQ(j["failed_stage"], "build_full_chain");
}

// A chain built for a larger Q represents elements outside the requested
// one, which the principal-image check catches.
TEST(Cli, VerifyDetectsMismatchedChain) {
  TempDir dir;
  ASSERT_EQ(run("chain-build " + data("rect2x3.json") + " --q 0,1,2,3,4,5 --out "
                + (dir / "chain.json"))
                .code,
            0);
  auto const r = run("verify " + data("rect2x3.json") + " --q 0,1,2,4,5 --chain "
                         + (dir / "chain.json"),
                     true);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL principal_image"), std::string::npos);
}

TEST(Cli, VerifyRejectsForeignAlgebra) {
  TempDir dir;
  ASSERT_EQ(run("verify " + data("square.json") + " --q 0,1,2,3 --out "
                + (dir / "out"))
                .code,
            0);
  // An untagged operation in place of g(0,6).
  auto alg = read_json_file(dir.path / "out" / "algebra.json");
  for (auto& op : alg["ops"]) {
    if (op["tag"] == "g" && op["u"] == 0 && op["v"] == 6) {
      op = json{{"tag", "op"}, {"id", 0}, {"map", op["map"]}};
    }
  }
  write_json_file(dir.path / "untagged.json", alg);
  EXPECT_EQ(run("verify " + data("square.json") + " --q 0,1,2,3 --algebra "
                + (dir / "untagged.json"))
                .code,
            3);

  // A forcing map that disagrees with its tag is rejected on load.
  auto bad = read_json_file(dir.path / "out" / "algebra.json");
  for (auto& op : bad["ops"]) {
    if (op["tag"] == "f") {
      op["map"] = json({0, 1, 2, 3, 4, 5, 6});
      break;
    }
  }
  write_json_file(dir.path / "bad.json", bad);
  EXPECT_EQ(run("verify " + data("square.json") + " --q 0,1,2,3 --algebra "
                + (dir / "bad.json"))
                .code,
            3);
}

TEST(Cli, ChainBuildEvalSynth) {
  TempDir dir;
  ASSERT_EQ(run("chain-build " + data("square.json") + " --q 0,1,2,3 --out "
                + (dir / "chain.json"))
                .code,
            0);
  auto const eval = run("chain-eval " + (dir / "chain.json") + " --format json");
  ASSERT_EQ(eval.code, 0);
  EXPECT_EQ(json::parse(eval.out)["elements"], json({0, 1, 2, 3}));
  auto const e = run("chain-eval " + (dir / "chain.json") + " --i 1 --j 2");
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("= a"), std::string::npos);

  auto const synth = run("algebra-synth " + (dir / "chain.json") + " --format json");
  ASSERT_EQ(synth.code, 0);
  EXPECT_EQ(json::parse(synth.out)["size"], 7);

  ASSERT_EQ(run("algebra-synth " + (dir / "chain.json") + " --out "
                + (dir / "alg.json"))
                .code,
            0);
  auto const an = run("algebra-analyze " + (dir / "alg.json"));
  EXPECT_EQ(an.code, 0);
  EXPECT_NE(an.out.find("congruences: 4"), std::string::npos);
  EXPECT_NE(an.out.find("principal: 4"), std::string::npos);
}

TEST(Cli, ChainBuildPreconditions) {
  auto const r = run("chain-build " + data("cube.json") + " --q 0,1,2,3,7", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("planarity"), std::string::npos);
}

TEST(Cli, ChainSearch) {
  auto const found = run("chain-search " + data("square.json")
                         + " --q 0,1,2,3 --max-edges 4 --format json");
  ASSERT_EQ(found.code, 0);
  EXPECT_EQ(json::parse(found.out)["colors"].size(), 2u);
  EXPECT_EQ(run("chain-search " + data("grid3x3.json")
                + " --q 0,1,2,3,5,8,4 --max-edges 9")
                .code,
            2);
  EXPECT_EQ(run("chain-search " + data("square.json")
                + " --q 0,1,2,3 --max-edges 40")
                .code,
            3);
}

TEST(Cli, Corpus) {
  auto const r = run("corpus --max-ji 3 --format json");
  ASSERT_EQ(r.code, 0);
  auto const j = json::parse(r.out);
  EXPECT_EQ(j["posets"], 8);
  EXPECT_TRUE(j["passed"]);
  EXPECT_EQ(run("corpus --max-ji 0").code, 3);
  EXPECT_EQ(run("corpus --max-ji 6").code, 3);
}

TEST(Cli, CorpusIsDeterministic) {
  auto const a = run("corpus --max-ji 4 --seed 9 --format json");
  auto const b = run("corpus --max-ji 4 --seed 9 --jobs 2 --format json");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExportDot) {
  TempDir    dir;
  auto const lat = run("export-dot " + data("square.json"));
  ASSERT_EQ(lat.code, 0);
  EXPECT_EQ(lat.out.rfind("digraph lattice", 0), 0u);

  ASSERT_EQ(run("chain-build " + data("square.json") + " --q 0,1,2,3 --out "
                + (dir / "chain.json"))
                .code,
            0);
  auto const ch = run("export-dot " + (dir / "chain.json"));
  ASSERT_EQ(ch.code, 0);
  EXPECT_EQ(ch.out.rfind("digraph chain", 0), 0u);

  std::ofstream(dir.path / "alg.json")
      << R"({"size": 2, "ops": [{"tag": "op", "id": 0, "map": [0, 1]}]})";
  auto const con = run("export-dot " + (dir / "alg.json"));
  ASSERT_EQ(con.code, 0);
  EXPECT_EQ(con.out.rfind("digraph congruences", 0), 0u);

  std::ofstream(dir.path / "other.json") << R"({"blocks": [[0]]})";
  EXPECT_EQ(run("export-dot " + (dir / "other.json")).code, 3);
}

TEST(Cli, InputErrors) {
  TempDir dir;
  std::ofstream(dir.path / "broken.json") << "{\"size\": 3,";
  auto const r = run("lattice-check " + (dir / "broken.json"), true);
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("parse error at byte"), std::string::npos);
  EXPECT_EQ(run("lattice-check " + (dir / "absent.json")).code, 3);
  EXPECT_EQ(run("verify " + data("square.json") + " --q 0,9").code, 3);
  EXPECT_EQ(run("verify " + data("square.json") + " --q 0,zz").code, 3);
  EXPECT_EQ(run("no-such-command").code, 3);
  EXPECT_EQ(run("lattice-check " + data("square.json") + " --format xml").code, 3);
}

TEST(Cli, SubsetFile) {
  TempDir dir;
  write_json_file(dir.path / "q.json", subset_to_json({0, 1, 2, 3}));
  EXPECT_EQ(run("verify " + data("square.json") + " --q @" + (dir / "q.json"))
                .code,
            0);
}
