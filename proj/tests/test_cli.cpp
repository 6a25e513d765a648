#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wfv/cli/app.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kData = WFV_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run wfv_run(std::vector<std::string> args) {
  args.insert(args.begin(), "wfv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = wfv::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("wfv_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
  const std::string scenario_ = (kData / "case_study/scenario.scn").string();
};

}  // namespace

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(wfv_run({}).code, 2);
  EXPECT_EQ(wfv_run({"frobnicate"}).code, 2);
  EXPECT_EQ(wfv_run({"validate", (dir_ / "missing.wf").string()}).code, 2);
  EXPECT_EQ(wfv_run({"check", scenario_, "-k", "0"}).code, 2);
  EXPECT_EQ(wfv_run({"check", scenario_, "-p", "F (A:Nope#1)"}).code, 2);
  EXPECT_EQ(wfv_run({"check", scenario_, "-p", "F ("}).code, 2);
  EXPECT_EQ(wfv_run({"check", scenario_, "--reach", "Nope#1"}).code, 2);
  EXPECT_EQ(wfv_run({"--help"}).code, 0);
}

TEST_F(Cli, Validate) {
  const auto ok = wfv_run({"validate", (kData / "case_study/config1.wf").string()});
  EXPECT_EQ(ok.code, 0);
  const auto dangling = write("d.wf", "start S; activity A; end E; trans t0: S->A; trans t1: A->Q;");
  EXPECT_EQ(wfv_run({"validate", dangling.string()}).code, 2);
  const auto bad = write("b.wf", "start S; activity A; activity B; end E; trans t0: S->A; trans t1: A->E; trans t2: S->B;");
  const auto r = wfv_run({"validate", bad.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE((r.out + r.err).find("out-degree 0 at non-End node"), std::string::npos);
}

TEST_F(Cli, CompileIsDeterministic) {
  const auto a = dir_ / "a.ltl", b = dir_ / "b.ltl";
  ASSERT_EQ(wfv_run({"compile", scenario_, "-o", a.string()}).code, 0);
  ASSERT_EQ(wfv_run({"compile", scenario_, "-o", b.string()}).code, 0);
  const std::string text = slurp(a);
  EXPECT_EQ(text, slurp(b));
  EXPECT_NE(text.find("# "), std::string::npos);
  EXPECT_NE(text.find("G (A:end#1 -> X G !A:end#1)"), std::string::npos) << text.substr(0, 400);
}

TEST_F(Cli, ZeroInstanceScenario) {
  const auto cfg = (kData / "case_study").string();
  const auto s = write("zero.scn", "config1 " + cfg + "/config1.wf; config2 " + cfg + "/config2.wf; reconfig at 1;");
  EXPECT_EQ(wfv_run({"compile", s.string()}).code, 2);
  EXPECT_EQ(wfv_run({"check", s.string()}).code, 2);
}

TEST_F(Cli, ReachAndTerminationOnTheCaseStudy) {
  const auto reach = wfv_run({"check", scenario_, "--reach", "Conf#1", "-k", "20", "--recheck"});
  EXPECT_EQ(reach.code, 0) << reach.err;
  EXPECT_NE(reach.out.find("reachable"), std::string::npos);
  EXPECT_NE(reach.out.find("loop:"), std::string::npos);

  const auto term = wfv_run({"check", scenario_, "--property", "F (A:end#2)", "-k", "20"});
  EXPECT_EQ(term.code, 0) << term.err;
  EXPECT_NE(term.out.find("no counterexample within bound 20"), std::string::npos) << term.out;

  // Instance 2 runs configuration 2, which has no Conf activity.
  const auto never = wfv_run({"check", scenario_, "--reach", "Conf#2", "-k", "20"});
  EXPECT_EQ(never.code, 1) << never.out << never.err;
}

TEST_F(Cli, JsonReportAndWitnessRoundTrip) {
  const auto w = dir_ / "w.json";
  const auto r = wfv_run({"check", scenario_, "--reach", "Ship#2", "-k", "20", "--json", "--witness-out", w.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("verdict"));
  const auto t = wfv_run({"trace", w.string()});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("instance 2"), std::string::npos);

  std::string text = slurp(w);
  const auto truncated = write("t.json", text.substr(0, text.size() / 2));
  EXPECT_EQ(wfv_run({"trace", truncated.string()}).code, 2);
}

TEST_F(Cli, DimacsExportAndModelImport) {
  const auto cnf = dir_ / "f.cnf";
  ASSERT_EQ(wfv_run({"check", scenario_, "--reach", "Conf#1", "-k", "20", "--solver", "dimacs", "--dimacs-out", cnf.string()}).code,
            0);
  const wfv::sat::Cnf f = wfv::sat::parse_dimacs(slurp(cnf));
  const auto res = wfv::sat::solve(f);
  ASSERT_EQ(res.status, wfv::sat::Status::Sat);
  const auto model = write("m.txt", wfv::sat::format_model(res.model));
  const auto r = wfv_run({"check", scenario_, "--reach", "Conf#1", "-k", "20", "--solver", "dimacs", "--model-in",
                          model.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  // A model of a different formula does not pass as a witness.
  wfv::sat::Assignment zeros(f.num_vars());
  const auto bogus = write("z.txt", wfv::sat::format_model(zeros));
  const auto z = wfv_run({"check", scenario_, "--reach", "Conf#1", "-k", "20", "--solver", "dimacs", "--model-in",
                          bogus.string()});
  EXPECT_EQ(z.code, 3) << z.out << z.err;
  const auto garbage = write("g.txt", "s SATISFIABLE\nv 1 x 0\n");
  EXPECT_EQ(wfv_run({"check", scenario_, "--reach", "Conf#1", "-k", "20", "--solver", "dimacs", "--model-in",
                     garbage.string()})
                .code,
            2);
}

TEST_F(Cli, VacuousPropertyVerdictIsFlagged) {
  const auto short_bound = wfv_run({"check", scenario_, "--property", "F (A:end#1)", "-k", "6", "--json"});
  EXPECT_EQ(short_bound.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(short_bound.out).value("vacuous", false));
  EXPECT_NE(short_bound.err.find("vacuous"), std::string::npos);
  const auto enough = wfv_run({"check", scenario_, "--property", "F (A:end#1)", "-k", "20", "--json"});
  EXPECT_FALSE(nlohmann::json::parse(enough.out).value("vacuous", true));
}

TEST_F(Cli, ConflictLimitIsAnInternalFailure) {
  const auto r = wfv_run({"check", scenario_, "--property", "F (A:end#1)", "-k", "20", "--conflict-limit", "1"});
  EXPECT_EQ(r.code, 3) << r.out << r.err;
}
