#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "asdet/cli.hpp"
#include "asdet/io.hpp"

using namespace asdet;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& name) { return std::string(ASDET_TEST_DATA_DIR) + "/data/" + name; }
std::string golden(const std::string& name) { return std::string(ASDET_TEST_DATA_DIR) + "/golden/" + name; }

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = asdet::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(ConfigJson, RoundTripIsBitExact) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 200; ++i) {
    std::vector<Point> pts(2 + i % 6);
    for (auto& p : pts) p = std::ldexp(1.0, expo(rng) / 10) * random_point(rng);
    const Config c(pts);
    const auto back = config_from_json(Json::parse(to_json(c).dump()));
    ASSERT_TRUE(std::holds_alternative<Config>(back));
    EXPECT_EQ(std::get<Config>(back), c);

    const SymplecticConfig sc(pts);
    const auto sback = config_from_json(Json::parse(to_json(sc).dump()));
    ASSERT_TRUE(std::holds_alternative<SymplecticConfig>(sback));
    EXPECT_EQ(std::get<SymplecticConfig>(sback), sc);
  }
}

TEST(ConfigJson, AcceptsDecimalStringsAndRejectsJunk) {
  const auto c = config_from_json(Json::parse(R"({"points": [["0.1", 0, 0], [0, "1e-3", 2]]})"));
  EXPECT_EQ(std::get<Config>(c)[0].x1, 0.1);
  EXPECT_EQ(std::get<Config>(c)[1].x2, 1e-3);
  EXPECT_THROW(config_from_json(Json::parse(R"({"points": [[0, 0], [1, 1, 1]]})")), InvalidInput);
  EXPECT_THROW(config_from_json(Json::parse(R"({"points": [["x", 0, 0], [1, 1, 1]]})")), InvalidInput);
  EXPECT_THROW(config_from_json(Json::parse(R"({"points": [], "sym_points": []})")), InvalidInput);
  EXPECT_THROW(config_from_json(Json::parse(R"([1, 2])")), InvalidInput);
  EXPECT_THROW(read_config_file(data("does_not_exist.json")), InvalidInput);
}

TEST(ReportJson, DetReportSchema) {
  const Json j = to_json(eval_D(random_config(4, 3)));
  std::set<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.insert(k);
  EXPECT_EQ(keys, (std::set<std::string>{"abs", "log_abs", "phase", "cond_hint"}));
  EXPECT_EQ(j["phase"].size(), 2u);
  EXPECT_NEAR(std::exp(j["log_abs"].get<double>()), j["abs"].get<double>(), 1e-14 * j["abs"].get<double>());
}

TEST(ReportCsv, HeaderAndRows) {
  const ProbeReport r = sample_probe(Kind::AS, 3, 5, 11);
  std::ostringstream os;
  write_csv(os, r);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "kind,size,seed,method,iterations,abs_value,log_abs,x1,y1,z1,x2,y2,z2,x3,y3,z3");
  int rows = 0;
  while (std::getline(is, line)) {
    const ProbeRecord& rec = r.records[rows];
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    ASSERT_EQ(cells.size(), 16u);
    EXPECT_EQ(cells[0], "AS");
    EXPECT_EQ(cells[2], std::to_string(rec.seed));
    EXPECT_EQ(cells[3], "sample");
    EXPECT_EQ(std::stod(cells[5]), rec.abs_value);
    for (int k = 0; k < 9; ++k) EXPECT_EQ(std::stod(cells[7 + k]), rec.coords[k]);
    ++rows;
  }
  EXPECT_EQ(rows, 5);
}

TEST(PlotData, AllOnesIsSingleBinAtZero) {
  const ProbeReport r = sample_probe(Kind::AS, 2, 50, 2);
  const PlotData p = emit_plot_data(r);
  ASSERT_EQ(p.histogram.size(), 1u);
  EXPECT_EQ(p.histogram[0].lower, 0.0);
  EXPECT_EQ(p.histogram[0].upper, 0.0);
  EXPECT_EQ(p.histogram[0].count, 50u);
}

TEST(PlotData, SortedRowsAndHistogramTotals) {
  const ProbeReport r = sample_probe(Kind::AS, 4, 100, 5);
  const PlotData p = emit_plot_data(r);
  ASSERT_EQ(p.sorted.size(), 100u);
  for (std::size_t i = 1; i < p.sorted.size(); ++i) EXPECT_LE(p.sorted[i - 1].second, p.sorted[i].second);
  EXPECT_EQ(p.sorted.front().second, r.min_record().abs_value);
  EXPECT_EQ(p.sorted.front().first, r.min_index);
  std::size_t total = 0;
  for (const auto& b : p.histogram) total += b.count;
  EXPECT_EQ(total, 100u);
  EXPECT_EQ(p.histogram.size(), static_cast<std::size_t>(kHistogramBins));
  EXPECT_THROW(emit_plot_data(ProbeReport{}), InvalidInput);
}

TEST(Cli, EvalTwoPointsMatchesGolden) {
  const auto r = invoke({"eval", "--config", data("two_points.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(golden("eval_two_points.json")));
}

TEST(Cli, RootsCheckMatchesGolden) {
  const auto r = invoke({"roots-check", "--m", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(golden("roots_check_m3.json")));
}

TEST(Cli, ReduceCheck) {
  const auto r = invoke({"reduce-check", "--m", "2", "--samples", "500", "--seed", "9"});
  EXPECT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_LE(j["max_rel_discrepancy"].get<double>(), 1e-9);
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Cli, EvalSympAndRandomEval) {
  EXPECT_EQ(invoke({"eval-symp", "--config", data("symp_pair.json")}).code, 0);
  EXPECT_EQ(invoke({"eval", "--n", "5", "--seed", "3"}).code, 0);
  EXPECT_EQ(invoke({"eval-symp", "--m", "3", "--seed", "3"}).code, 0);
  EXPECT_EQ(invoke({"eval", "--config", data("symp_pair.json")}).code, 2);
  EXPECT_EQ(invoke({"eval"}).code, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"eval", "--bogus"}).code, 2);
  EXPECT_EQ(invoke({"probe", "--n", "1"}).code, 2);
  EXPECT_EQ(invoke({"probe", "--m", "0"}).code, 2);
  EXPECT_EQ(invoke({"probe", "--n", "3", "--samples", "0"}).code, 2);
  EXPECT_EQ(invoke({"probe", "--n", "3", "--tol", "-1"}).code, 2);
  EXPECT_EQ(invoke({"probe", "--n", "3", "--m", "2"}).code, 2);
  EXPECT_EQ(invoke({"eval", "--config", data("malformed.json")}).code, 2);
  EXPECT_EQ(invoke({"eval", "--config", data("coincident.json")}).code, 3);
  EXPECT_EQ(invoke({"minimize", "--config", data("coincident.json")}).code, 3);
  EXPECT_EQ(invoke({"roots-check"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, ViolationMapsToExitFour) {
  ProbeReport rep = make_report(Kind::AS, 3, std::vector<ProbeRecord>(1), kTolViolation);  // abs_value 0
  std::ostringstream err;
  EXPECT_EQ(cli::detail::report_exit(rep, err), cli::kViolation);
  EXPECT_NE(err.str().find("PUTATIVE VIOLATION"), std::string::npos);
  rep.records[0].abs_value = 1.0;
  rep = make_report(Kind::AS, 3, rep.records, kTolViolation);
  EXPECT_EQ(cli::detail::report_exit(rep, err), cli::kOk);
}

TEST(Cli, ProbeCsvIndependentOfThreads) {
  const auto one = invoke({"probe", "--n", "4", "--samples", "200", "--seed", "5", "--csv", "--threads", "1"});
  const auto four = invoke({"probe", "--n", "4", "--samples", "200", "--seed", "5", "--csv", "--threads", "4"});
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, four.out);
  const auto m1 = invoke({"minimize", "--m", "2", "--samples", "6", "--budget", "150", "--seed", "5", "--csv", "--threads", "1"});
  const auto m3 = invoke({"minimize", "--m", "2", "--samples", "6", "--budget", "150", "--seed", "5", "--csv", "--threads", "3"});
  EXPECT_EQ(m1.code, 0);
  EXPECT_EQ(m1.out, m3.out);
}

TEST(Cli, SeedEnvironmentOverride) {
  const auto flag = invoke({"probe", "--m", "2", "--samples", "20", "--seed", "77", "--csv"});
  ::setenv(cli::kSeedEnv, "77", 1);
  const auto env = invoke({"probe", "--m", "2", "--samples", "20", "--seed", "1", "--csv"});
  ::setenv(cli::kSeedEnv, "not-a-number", 1);
  const auto bad = invoke({"probe", "--m", "2", "--samples", "20", "--csv"});
  ::unsetenv(cli::kSeedEnv);
  EXPECT_EQ(flag.out, env.out);
  EXPECT_EQ(bad.code, 2);
}

TEST(Cli, OutFileAndPlot) {
  const std::string path = ::testing::TempDir() + "asdet_probe_plot.txt";
  const auto r = invoke({"probe", "--n", "3", "--samples", "30", "--seed", "2", "--plot", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  const std::string text = slurp(path);
  EXPECT_EQ(text.rfind("# rank,sample_index,abs_value\n", 0), 0u);
  EXPECT_NE(text.find("# histogram"), std::string::npos);
}

TEST(Cli, MinimizeFromConfigFile) {
  const auto r = invoke({"minimize", "--config", data("tetrahedron.json"), "--budget", "300", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["samples"].get<int>(), 1);
  EXPECT_LE(j["min_record"]["abs_value"].get<double>(), 1.5625 + 1e-12);
  EXPECT_EQ(j["min_record"]["method"], "minimize");
}
