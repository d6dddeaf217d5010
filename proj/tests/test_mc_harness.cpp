#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ptkl/comparison.hpp"
#include "ptkl/csv.hpp"
#include "ptkl/kernels.hpp"
#include "ptkl/mc_harness.hpp"
#include "ptkl/moment_summary.hpp"

namespace {

using namespace ptkl;

MomentSummary summarise(const std::vector<double>& xs, std::size_t begin, std::size_t end) {
  MomentSummary m;
  for (std::size_t i = begin; i < end; ++i) m.add(xs[i]);
  return m;
}

std::vector<double> normal_sample(std::size_t n, double mu, double sigma, std::uint64_t id) {
  RngStream s(42, id);
  std::vector<double> xs(n);
  for (auto& x : xs) x = mu + sigma * s.normal();
  return xs;
}

bool same_bits(const MomentSummary& a, const MomentSummary& b) {
  return a.count() == b.count() && a.inf_count() == b.inf_count() && a.mean() == b.mean() &&
         a.m2() == b.m2();
}

TEST(MomentSummary, BasicMoments) {
  MomentSummary m;
  EXPECT_TRUE(std::isnan(m.variance()));
  for (double x : {1.0, 2.0, 3.0, 4.0}) m.add(x);
  EXPECT_EQ(m.count(), 4u);
  EXPECT_DOUBLE_EQ(m.mean(), 2.5);
  EXPECT_DOUBLE_EQ(m.variance(), 5.0 / 3);
  EXPECT_DOUBLE_EQ(m.std_error(), std::sqrt(5.0 / 12));
  EXPECT_THROW(m.add(std::nan("")), std::domain_error);
}

TEST(MomentSummary, InfinitiesCountedSeparately) {
  MomentSummary m;
  m.add(1.0);
  m.add(std::numeric_limits<double>::infinity());
  m.add(3.0);
  EXPECT_EQ(m.count(), 2u);
  EXPECT_EQ(m.inf_count(), 1u);
  EXPECT_EQ(m.total(), 3u);
  EXPECT_DOUBLE_EQ(m.mean(), 2.0);
  EXPECT_DOUBLE_EQ(m.inf_fraction(), 1.0 / 3);
}

TEST(MomentSummary, MergeMatchesConcatenation) {
  const auto xs = normal_sample(10001, 5.0, 2.0, 1);
  const auto full = summarise(xs, 0, xs.size());
  for (std::size_t cut : {1u, 17u, 5000u, 9999u}) {
    const auto merged = MomentSummary::merged(summarise(xs, 0, cut), summarise(xs, cut, xs.size()));
    EXPECT_EQ(merged.count(), full.count());
    EXPECT_NEAR(merged.mean(), full.mean(), 1e-10 * std::abs(full.mean()));
    EXPECT_NEAR(merged.variance(), full.variance(), 1e-10 * full.variance());
  }
  MomentSummary empty;
  EXPECT_TRUE(same_bits(MomentSummary::merged(empty, full), full));
  EXPECT_TRUE(same_bits(MomentSummary::merged(full, empty), full));
}

TEST(MomentSummary, MergeAssociativeAndCommutative) {
  const auto xs = normal_sample(3000, -1.0, 0.5, 2);
  const auto a = summarise(xs, 0, 700), b = summarise(xs, 700, 1900), c = summarise(xs, 1900, 3000);
  const auto left = MomentSummary::merged(MomentSummary::merged(a, b), c);
  const auto right = MomentSummary::merged(a, MomentSummary::merged(b, c));
  const auto swapped = MomentSummary::merged(MomentSummary::merged(c, a), b);
  for (const auto& m : {right, swapped}) {
    EXPECT_NEAR(m.mean(), left.mean(), 1e-10 * std::abs(left.mean()));
    EXPECT_NEAR(m.variance(), left.variance(), 1e-10 * left.variance());
  }
}

TEST(MomentSummary, PairwiseMerge) {
  const auto xs = normal_sample(1000, 0.0, 1.0, 3);
  std::vector<MomentSummary> parts;
  for (std::size_t i = 0; i < 7; ++i) parts.push_back(summarise(xs, i * 1000 / 7, (i + 1) * 1000 / 7));
  const auto merged = merge_pairwise(parts);
  const auto full = summarise(xs, 0, 1000);
  EXPECT_EQ(merged.count(), 1000u);
  EXPECT_NEAR(merged.mean(), full.mean(), 1e-12);
  EXPECT_NEAR(merged.variance(), full.variance(), 1e-10 * full.variance());
  EXPECT_EQ(merge_pairwise({}).count(), 0u);
}

TEST(Estimate, ConstantStatistic) {
  const auto m = estimate([](RngStream&) { return 2.5; }, EstimateConfig{1000, 3});
  EXPECT_EQ(m.count(), 1000u);
  EXPECT_EQ(m.mean(), 2.5);
  EXPECT_EQ(m.variance(), 0.0);
}

TEST(Estimate, UniformMoments) {
  const auto m = estimate([](RngStream& s) { return s.uniform(); }, EstimateConfig{1000000, 4});
  EXPECT_LT(std::abs(m.mean() - 0.5) / m.std_error(), 4.0);
  EXPECT_NEAR(m.variance(), 1.0 / 12, 0.02 / 12);
}

TEST(Estimate, SamplerStatisticForm) {
  auto sampler = [](RngStream& s) { return std::vector<double>{s.uniform(), s.uniform()}; };
  auto statistic = [](const std::vector<double>& v) { return v[0] + v[1]; };
  const auto m = estimate(sampler, statistic, EstimateConfig{200000, 2});
  EXPECT_LT(std::abs(m.mean() - 1.0) / m.std_error(), 4.0);
}

TEST(Estimate, SerialAndParallelBitIdentical) {
  const PolyaTreeKlKernel kernel(PolyaTreeSpec(1.0, RhoFamily::polynomial(2), 5));
  for (unsigned workers : {1u, 2u, 3u, 4u, 8u}) {
    const EstimateConfig cfg{20000, workers, 42, 5};
    const auto par = estimate_many(kernel, cfg);
    const auto ser = estimate_many_serial(kernel, cfg);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_TRUE(same_bits(par[k], ser[k])) << workers;
  }
}

TEST(Estimate, DeterministicGivenSeedAndWorkers) {
  const BayesianBootstrapKlKernel kernel(DiscreteModel::uniform(10), AlphaSchedule::linear(1));
  const EstimateConfig cfg{50000, 4, 7, 1};
  const auto a = estimate_many(kernel, cfg);
  const auto b = estimate_many(kernel, cfg);
  EXPECT_TRUE(same_bits(a[0], b[0]));
  EXPECT_TRUE(same_bits(a[1], b[1]));
  auto other = cfg;
  other.seed = 8;
  EXPECT_NE(estimate_many(kernel, other)[0].mean(), a[0].mean());
}

TEST(Estimate, WorkerSplitsMergeToFullRun) {
  auto kernel = [](RngStream& s) { return s.normal(); };
  const auto one = estimate_serial(kernel, EstimateConfig{10000, 1, 42, 9});
  const auto halves = MomentSummary::merged(estimate_serial(kernel, EstimateConfig{5000, 1, 42, 9}),
                                            estimate_serial(kernel, EstimateConfig{5000, 1, 42, 10}));
  EXPECT_EQ(halves.count(), one.count());
  // Same stream prefix: the first half equals the first 5000 of the full run.
  MomentSummary prefix;
  RngStream s(42, std::uint64_t{9} << 32);
  for (int i = 0; i < 5000; ++i) prefix.add(s.normal());
  EXPECT_TRUE(same_bits(prefix, estimate_serial(kernel, EstimateConfig{5000, 1, 42, 9})));
}

TEST(Estimate, InfiniteStatisticsReported) {
  const FreqBootstrapKlKernel kernel(DiscreteModel::uniform(20));
  const auto m = estimate_many(kernel, EstimateConfig{20000, 2});
  EXPECT_GT(m[0].inf_count(), 0u);
  EXPECT_EQ(m[1].inf_count(), 0u);
  EXPECT_EQ(m[0].total(), 20000u);
}

TEST(Estimate, ErrorsPropagate) {
  auto failing = [](RngStream& s) -> double {
    if (s.uniform() < 0.01) throw std::runtime_error("boom");
    return 0.0;
  };
  EXPECT_THROW(estimate(failing, EstimateConfig{10000, 3}), std::runtime_error);
  EXPECT_THROW(estimate_serial(failing, EstimateConfig{10000, 3}), std::runtime_error);
  EXPECT_THROW(estimate([](RngStream&) { return 0.0; }, EstimateConfig{1, 1}), std::invalid_argument);
  EXPECT_THROW(estimate([](RngStream&) { return 0.0; }, EstimateConfig{10, 0}), std::invalid_argument);
}

TEST(Compare, ExactSyntheticDataPasses) {
  const auto xs = normal_sample(100000, 3.0, 1.5, 4);
  const auto m = summarise(xs, 0, xs.size());
  const auto r = compare("normal", m, 3.0, 2.25);
  EXPECT_TRUE(r.passed());
  EXPECT_LT(std::abs(r.z_mean), 4.0);
  EXPECT_LT(*r.rel_err_var, 0.10);
  ASSERT_TRUE(r.z_var.has_value());
}

TEST(Compare, ShiftedMeanFails) {
  const auto xs = normal_sample(100000, 3.0, 1.5, 5);
  const auto m = summarise(xs, 0, xs.size());
  const auto r = compare("shifted", m, m.mean() + 10 * m.std_error(), 2.25);
  EXPECT_FALSE(r.mean_pass);
  EXPECT_NEAR(r.z_mean, -10.0, 1e-9);
  const auto v = compare("var", m, 3.0, 2.25 * 1.2);
  EXPECT_FALSE(v.var_pass);
  ComparisonThresholds loose{20.0, 0.5};
  EXPECT_TRUE(compare("loose", m, m.mean() + 10 * m.std_error(), 2.25 * 1.2, loose).passed());
}

TEST(Compare, RequiresEnoughDraws) {
  MomentSummary m;
  for (int i = 0; i < 99; ++i) m.add(i);
  EXPECT_THROW(compare("few", m, 0.0, std::nullopt), std::invalid_argument);
  m.add(100);
  EXPECT_NO_THROW(compare("enough", m, 0.0, std::nullopt));
}

TEST(Compare, UpperBoundAndInfoRows) {
  MomentSummary m;
  for (int i = 0; i < 200; ++i) m.add(i % 2);
  EXPECT_TRUE(compare_upper_bound("ub", m, 0.6).passed());
  EXPECT_FALSE(compare_upper_bound("ub", m, 0.4).passed());
  EXPECT_TRUE(info_row("info", m).passed());
}

TEST(ReportCsv, Format) {
  MomentSummary m;
  for (int i = 0; i < 200; ++i) m.add(i % 2);
  m.add(std::numeric_limits<double>::infinity());
  std::vector<ComparisonReport> rows = {compare("a", m, 0.5, 0.25), compare_upper_bound("b", m, 0.4),
                                        info_row("c", m)};
  std::ostringstream out;
  write_report_csv(out, rows);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "label,n_draws,closed_mean,emp_mean,z_mean,closed_var,emp_var,rel_err_var,inf_count,pass");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 6), "a,201,");
  EXPECT_EQ(line.substr(line.size() - 7), ",1,pass");
  std::getline(in, line);
  EXPECT_EQ(line.substr(line.size() - 5), ",fail");
  std::getline(in, line);
  EXPECT_EQ(line.substr(line.size() - 5), ",info");
}

TEST(Csv, RealFormatting) {
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(1.0 / 3), "0.333333333333");
  EXPECT_EQ(format_real(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_real(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_optional(std::nullopt), "");
}

}  // namespace
