#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "ptkl/special_functions.hpp"

namespace {

using Row = std::vector<std::string>;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ptkl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = ptkl::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<Row> parse_csv(const std::string& text) {
  std::vector<Row> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    Row row;
    std::string cell;
    std::istringstream cells(line);
    while (std::getline(cells, cell, ',')) row.push_back(cell);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    rows.push_back(row);
  }
  return rows;
}

double num(const std::string& s) { return std::stod(s); }

TEST(CliPtMoments, DefaultGrid) {
  const auto r = run({"pt-moments"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 41u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "family,M,alpha,delta,mean_fwd,var_fwd,mean_rev,var_rev,bound");
  EXPECT_EQ(rows[1][0], "discrete");
  EXPECT_EQ(rows[11][0], "singular");
  EXPECT_EQ(rows[21][0], "polynomial");
  EXPECT_EQ(rows[31][0], "geometric");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 9u);
    EXPECT_GE(num(rows[i][4]), num(rows[i][6])) << i;
    EXPECT_EQ(rows[i][3].empty(), rows[i][8].empty());
  }
  // Golden first rows, 12 significant digits.
  EXPECT_EQ(r.out.substr(0, r.out.find('\n', r.out.find('\n') + 1) + 1),
            "family,M,alpha,delta,mean_fwd,var_fwd,mean_rev,var_rev,bound\n"
            "discrete,1,1,,0.69314718056,0.822467033424,0.30685281944,0.0561675835603,\n");
  EXPECT_NE(r.out.find("polynomial,1,1,2,0.30685281944,0.177532966576,0.19314718056,"
                       "0.0350219777173,1.49355675042\n"),
            std::string::npos);
  EXPECT_NE(r.out.find("geometric,10,1,2,"), std::string::npos);
}

TEST(CliPtMoments, SingularVarianceShapes) {
  const auto rows = parse_csv(run({"pt-moments"}).out);
  const double sd9 = std::sqrt(num(rows[19][5])), sd10 = std::sqrt(num(rows[20][5]));
  EXPECT_LT(std::abs(sd10 / sd9 - 1), 0.01);
  for (int i = 12; i <= 20; ++i) EXPECT_GT(num(rows[i][7]), num(rows[i - 1][7]));
}

TEST(CliPtMoments, CustomGridAndStability) {
  const auto a = run({"pt-moments", "--alpha", "0.5,2", "--delta", "1.5,3", "--levels", "4"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(parse_csv(a.out).size(), 1u + 6 * 2 * 4);
  EXPECT_EQ(run({"pt-moments", "--alpha", "0.5,2", "--delta", "1.5,3", "--levels", "4"}).out, a.out);
}

TEST(CliPtSensitivity, Curves) {
  const auto r = run({"pt-sensitivity"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 81u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "panel,alpha,delta,M,mean_fwd");
  std::map<std::string, std::vector<double>> alpha_panel, delta_panel;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double v = num(rows[i][4]);
    EXPECT_TRUE(std::isfinite(v) && v >= 0.0);
    (rows[i][0] == "alpha" ? alpha_panel[rows[i][1]] : delta_panel[rows[i][2]]).push_back(v);
  }
  ASSERT_EQ(alpha_panel.size(), 4u);
  ASSERT_EQ(delta_panel.size(), 4u);
  EXPECT_GT(delta_panel["1.01"][9], delta_panel["2"][9]);
  const std::vector<std::string> alphas = {"0.05", "0.1", "0.3", "1"};
  for (int m = 0; m < 10; ++m) {
    for (std::size_t k = 1; k < alphas.size(); ++k) {
      EXPECT_GT(alpha_panel[alphas[k - 1]][m], alpha_panel[alphas[k]][m]);
    }
  }
}

TEST(CliPtContour, DefaultGrid) {
  const auto r = run({"pt-contour"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1u + 25 * 25);
  EXPECT_EQ(rows[1][0], "0.05");
  EXPECT_EQ(rows[1][1], "1.01");
  EXPECT_EQ(rows.back()[0], "5");
  EXPECT_EQ(rows.back()[1], "4");
  // Spread of log mean across the delta range, per alpha. On this grid it is
  // nearly the same for every alpha (about 0.87 to 0.97).
  const auto spread = [](const std::vector<Row>& rs) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 1; i < rs.size(); ++i) {
      lo = std::min(lo, num(rs[i][2]));
      hi = std::max(hi, num(rs[i][2]));
    }
    return hi - lo;
  };
  for (const char* alpha : {"0.05", "1", "5"}) {
    const auto rows_a = parse_csv(run({"pt-contour", "--alpha", alpha}).out);
    ASSERT_EQ(rows_a.size(), 26u);
    EXPECT_GT(spread(rows_a), 0.8) << alpha;
    EXPECT_LT(spread(rows_a), 1.0) << alpha;
    // Larger delta means smaller expected divergence.
    for (std::size_t i = 2; i < rows_a.size(); ++i) EXPECT_LT(num(rows_a[i][2]), num(rows_a[i - 1][2]));
  }
}

TEST(CliPtContour, ConfiguredDimensions) {
  const auto r = run({"pt-contour", "--alpha-steps", "3", "--delta-steps", "4", "--levels", "5"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse_csv(r.out).size(), 1u + 12);
}

TEST(CliBootstrapMoments, ScheduleBehaviour) {
  const auto r = run({"bootstrap-moments"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1u + 3 * 9);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "alpha_n_schedule,n,mean_fwd,sd_fwd,mean_rev,sd_rev");
  std::map<std::string, std::vector<Row>> by;
  for (std::size_t i = 1; i < rows.size(); ++i) by[rows[i][0]].push_back(rows[i]);
  const auto& lin = by["linear"].back();
  EXPECT_EQ(lin[1], "1000");
  EXPECT_NEAR(num(lin[2]), ptkl::kEulerGamma, 1e-3);
  EXPECT_NEAR(num(lin[4]), 1 - ptkl::kEulerGamma, 1e-3);
  for (std::size_t i = 1; i < by["constant"].size(); ++i) {
    EXPECT_GT(num(by["constant"][i][2]), num(by["constant"][i - 1][2]));
  }
  EXPECT_GT(num(by["constant"].back()[2]), 100.0);
  const auto& quad = by["quadratic"].back();
  EXPECT_LT(num(quad[2]), 1e-3);
  EXPECT_LT(num(quad[3]), 1e-3);
}

TEST(CliBootstrapMoments, SingleSchedule) {
  const auto r = run({"bootstrap-moments", "--schedule", "linear", "--n", "3,7", "--alpha", "2"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][0], "linear");
  EXPECT_EQ(rows[2][1], "7");
}

TEST(CliValidate, DeterministicAndExitMatchesReport) {
  const auto a = run({"validate", "--draws", "500", "--workers", "3", "--seed", "5"});
  const auto b = run({"validate", "--draws", "500", "--workers", "3", "--seed", "5"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, b.code);
  const bool any_fail = a.out.find(",fail\n") != std::string::npos;
  EXPECT_EQ(a.code, any_fail ? ptkl::cli::kExitValidationFailed : ptkl::cli::kExitOk);
  const auto c = run({"validate", "--draws", "500", "--workers", "3", "--seed", "6"});
  EXPECT_NE(a.out, c.out);
}

TEST(CliValidate, SeedFromEnvironment) {
  ::setenv(ptkl::cli::kSeedEnv, "11", 1);
  const auto env = run({"validate", "--draws", "200"});
  const auto flag_wins = run({"validate", "--draws", "200", "--seed", "12"});
  ::unsetenv(ptkl::cli::kSeedEnv);
  EXPECT_EQ(env.out, run({"validate", "--draws", "200", "--seed", "11"}).out);
  EXPECT_EQ(flag_wins.out, run({"validate", "--draws", "200", "--seed", "12"}).out);
  EXPECT_NE(env.out, run({"validate", "--draws", "200"}).out);
}

TEST(CliOutput, WritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "ptkl_cli_test.csv";
  const auto r = run({"pt-moments", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  EXPECT_EQ(content.str(), run({"pt-moments"}).out);
  std::filesystem::remove(path);
}

TEST(CliExitCodes, UsageErrors) {
  using ptkl::cli::kExitUsage;
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"no-such-command"}).code, kExitUsage);
  EXPECT_EQ(run({"pt-moments", "--levels", "31"}).code, kExitUsage);
  EXPECT_EQ(run({"pt-moments", "--levels", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"pt-moments", "--alpha", "-1"}).code, kExitUsage);
  EXPECT_EQ(run({"pt-moments", "--delta", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"pt-moments", "--alpha", "abc"}).code, kExitUsage);
  EXPECT_EQ(run({"bootstrap-moments", "--schedule", "cubic"}).code, kExitUsage);
  EXPECT_EQ(run({"bootstrap-moments", "--n", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"validate", "--workers", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"validate", "--draws", "10"}).code, kExitUsage);
  EXPECT_EQ(run({"pt-moments", "--out", "/nonexistent-dir/x.csv"}).code, kExitUsage);
  const auto bad = run({"pt-moments", "--levels", "31"});
  EXPECT_NE(bad.err.find("--levels"), std::string::npos);
  EXPECT_NE(bad.err.find("Usage"), std::string::npos);
}

TEST(CliExitCodes, HelpSucceeds) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, ptkl::cli::kExitOk);
  EXPECT_NE(r.out.find("pt-moments"), std::string::npos);
  EXPECT_EQ(run({"pt-contour", "--help"}).code, ptkl::cli::kExitOk);
}

}  // namespace
