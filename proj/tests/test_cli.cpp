#include "cli_app.hpp"
#include "wilsonpar/serialize.hpp"
#include "wilsonpar/verify.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

using namespace wilsonpar;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json parse(const Outcome& o) { return Json::parse(o.out); }

class ScratchDir {
 public:
  ScratchDir() : path_(fs::temp_directory_path() / ("wilsonpar-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

class EnvGuard {
 public:
  explicit EnvGuard(const char* value) {
    if (value) ::setenv("WILSONPAR_OUT_DIR", value, 1);
    else ::unsetenv("WILSONPAR_OUT_DIR");
  }
  ~EnvGuard() { ::unsetenv("WILSONPAR_OUT_DIR"); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, PolyTableJson) {
  EnvGuard env(nullptr);
  const auto o = invoke({"poly", "--case", "A", "--n", "3"});
  ASSERT_EQ(o.code, cli::exit_ok) << o.err;
  const auto j = parse(o);
  ASSERT_EQ(j["entries"].size(), 4u);
  EXPECT_EQ(j["entries"][2]["coeffs"], Json::array({"117/80", "-7/2", "1"}));
  EXPECT_EQ(j["entries"][1]["coeffs"][0], "-3/4");
}

TEST(Cli, PolyRoutesAgreeAndPrintedDiffers) {
  EnvGuard env(nullptr);
  const auto h = parse(invoke({"poly", "--case", "B", "--n", "4", "--route", "hypergeometric"}));
  const auto r = parse(invoke({"poly", "--case", "B", "--n", "4", "--route", "recurrence"}));
  const auto p = parse(invoke({"poly", "--case", "B", "--n", "4", "--route", "printed"}));
  EXPECT_EQ(h["entries"], r["entries"]);
  EXPECT_NE(h["entries"], p["entries"]);
}

TEST(Cli, EigenRecord) {
  EnvGuard env(nullptr);
  const auto j = parse(invoke({"eigen", "--case", "B", "--B", "3/2", "--n", "1"}));
  EXPECT_EQ(j["ell1"], 3);
  EXPECT_EQ(j["alpha"], "8/3");
  EXPECT_EQ(j["g"], Json::array({"-1", "1"}));
}

TEST(Cli, CsvFormat) {
  EnvGuard env(nullptr);
  const auto o = invoke({"poly", "--case", "A", "--n", "1", "--format", "csv"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "case,B,n,power,coeff");
  EXPECT_NE(o.out.find("A,,1,0,-3/4"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EnvGuard env(nullptr);
  EXPECT_EQ(invoke({}).code, cli::exit_usage);
  EXPECT_EQ(invoke({"poly", "--case", "C"}).code, cli::exit_usage);
  EXPECT_EQ(invoke({"bogus"}).code, cli::exit_usage);
  EXPECT_EQ(invoke({"verify", "--suite", "nope"}).code, cli::exit_usage);
  EXPECT_EQ(invoke({"lorentz", "--rep", "-1,0"}).code, cli::exit_usage);
  EXPECT_EQ(invoke({"eigen", "--case", "B", "--B", "abc"}).code, cli::exit_usage);
  EXPECT_EQ(invoke({"eigen", "--case", "B", "--B", "-1"}).code, cli::exit_usage);
  EXPECT_EQ(invoke({"coeffs", "--case", "B", "--B", "3"}).code, cli::exit_failure);
  EXPECT_EQ(invoke({"--help"}).code, cli::exit_ok);
  EXPECT_EQ(invoke({"verify", "--suite", "tables"}).code, cli::exit_ok);
  EXPECT_EQ(invoke({"verify", "--suite", "lorentz"}).code, cli::exit_failure);
}

TEST(Cli, TolScaleInjectsFailure) {
  EnvGuard env(nullptr);
  EXPECT_EQ(invoke({"verify", "--suite", "eigen"}).code, cli::exit_ok);
  const auto o = invoke({"verify", "--suite", "eigen", "--tol-scale", "1e-30"});
  EXPECT_EQ(o.code, cli::exit_failure);
  EXPECT_GT(parse(o)["summary"]["fail"].get<int>(), 0);
  EXPECT_EQ(invoke({"verify", "--suite", "eigen", "--tol-scale", "0"}).code, cli::exit_usage);
}

TEST(Cli, DeterministicOutput) {
  EnvGuard env(nullptr);
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"verify", "--suite", "tables"}, {"residual", "--case", "B", "--B", "7.3", "--n", "3"},
        {"coeffs", "--case", "A", "--n", "5"}, {"lorentz", "--rep", "1,0", "--format", "csv"}}) {
    const auto a = invoke(args), b = invoke(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << args[0];
  }
}

TEST(Cli, ConfigFileAndOverride) {
  EnvGuard env(nullptr);
  ScratchDir dir;
  const auto cfg = dir.path() / "run.ini";
  std::ofstream(cfg) << "case=A\nn=4\n";
  const auto from_file = parse(invoke({"poly", "--config", cfg.string()}));
  EXPECT_EQ(from_file["entries"].size(), 5u);
  const auto overridden = parse(invoke({"poly", "--config", cfg.string(), "--n", "2"}));
  EXPECT_EQ(overridden["entries"].size(), 3u);
  std::ofstream(dir.path() / "rep.ini") << "rep=1/2,1/2\n";
  EXPECT_EQ(invoke({"lorentz", "--config", (dir.path() / "rep.ini").string()}).code, 0);
  std::ofstream(dir.path() / "bad.ini") << "bogus=1\n";
  EXPECT_EQ(invoke({"poly", "--config", (dir.path() / "bad.ini").string()}).code, cli::exit_usage);
  EXPECT_EQ(invoke({"poly", "--config", (dir.path() / "missing.ini").string()}).code, cli::exit_usage);
}

TEST(Cli, OutputDirectory) {
  ScratchDir dir;
  {
    EnvGuard env(dir.path().c_str());
    const auto o = invoke({"poly", "--n", "2"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_TRUE(o.out.empty());
    EXPECT_TRUE(fs::exists(dir.path() / "poly.json"));
    EXPECT_EQ(invoke({"trace", "--format", "csv"}).code, 0);
    EXPECT_TRUE(fs::exists(dir.path() / "trace.csv"));
    EXPECT_EQ(invoke({"poly", "--n", "1", "--out", "sub/p.json"}).code, 0);
    EXPECT_TRUE(fs::exists(dir.path() / "sub" / "p.json"));
  }
  EnvGuard env(nullptr);
  const auto o = invoke({"poly", "--n", "2"});
  EXPECT_FALSE(o.out.empty());
  const auto abs = dir.path() / "abs.json";
  EXPECT_EQ(invoke({"poly", "--n", "2", "--out", abs.string()}).code, 0);
  EXPECT_EQ(slurp(abs), o.out);
}

TEST(Serialize, DoublesUseSeventeenDigits) {
  EXPECT_EQ(dump_json(Json(0.1), 0), "0.10000000000000001");
  EXPECT_EQ(dump_json(Json(std::nan("")), 0), "null");
  EXPECT_EQ(dump_json(Json::array({1, 2.5}), 0), "[1,2.5]");
}

TEST(Serialize, ReportSummaryCounts) {
  const auto checks = run_verification("tables");
  const auto j = report_json("tables", checks, false);
  EXPECT_EQ(j["summary"]["pass"].get<std::size_t>() + j["summary"]["fail"].get<std::size_t>() + j["summary"]["skip"].get<std::size_t>(),
            checks.size());
  EXPECT_FALSE(j.contains("traceability"));
  EXPECT_TRUE(report_json("tables", checks, true).contains("traceability"));
  const std::string csv = report_csv(checks);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,anchor,criterion,status,measured,threshold,bound,note");
}

TEST(Traceability, EveryLabelMapsToExistingChecks) {
  const auto checks = run_verification("all");
  std::set<std::string> ids;
  for (const auto& c : checks) {
    EXPECT_TRUE(ids.insert(c.id).second) << "duplicate check id " << c.id;
    EXPECT_GE(c.criterion, 0);
    EXPECT_LE(c.criterion, 9);
    // only the M != 0 scan is report-only
    if (c.id != "conjecture-scan-m") EXPECT_NE(c.status, Status::Skip) << c.id;
  }
  std::set<std::string> labels;
  for (const auto& row : traceability()) {
    EXPECT_TRUE(labels.insert(row.label).second) << row.label;
    EXPECT_FALSE(row.checks.empty()) << row.label;
    EXPECT_TRUE(row.status == "covered" || row.status.rfind("out-of-scope", 0) == 0) << row.label;
    for (const auto& id : row.checks) EXPECT_TRUE(ids.count(id)) << row.label << " -> " << id;
  }
  for (int n = 3; n <= 59; ++n)
    if (n < 4 || n > 5) EXPECT_TRUE(labels.count(std::to_string(n))) << n;
  for (const char* l : {"A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4", "B5"}) EXPECT_TRUE(labels.count(l)) << l;
  for (int c = 1; c <= 9; ++c)
    EXPECT_TRUE(std::any_of(checks.begin(), checks.end(), [&](const Check& k) { return k.criterion == c; })) << c;
}
