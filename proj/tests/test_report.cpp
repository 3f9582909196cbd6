#include <gtest/gtest.h>

#include "detcode/report.hpp"
#include "detcode/verify.hpp"

using namespace detcode;

namespace {

Report sample() {
  const CodeParams p(field_of_order(2), 2, 3, 1);
  const DeterminantalCode code(p);
  Report r = Report::for_code(p);
  r.spectrum = code.brute_weight_enumerator();
  for (std::int64_t k = 1; k <= 6; ++k) r.ghw.push_back(ghw_row(code, k, 10'000));
  return r;
}

}  // namespace

TEST(Report, JsonRoundTrip) {
  const Report r = sample();
  const auto j = to_json(r);
  EXPECT_EQ(report_from_json(nlohmann::json::parse(j.dump())), r);
}

TEST(Report, JsonSchema) {
  const auto j = to_json(sample());
  EXPECT_EQ(j["q"], 2);
  EXPECT_EQ(j["mode"], "projective");
  EXPECT_EQ(j["length"], "21");
  EXPECT_EQ(j["dimension"], 6);
  ASSERT_EQ(j["spectrum"].size(), 3u);
  EXPECT_EQ(j["spectrum"][1]["w"], 8);
  EXPECT_EQ(j["spectrum"][1]["count"], "21");
  EXPECT_EQ(j["ghw"][3]["kind"], "exact");
  EXPECT_EQ(j["ghw"][3]["value"], "18");
  EXPECT_EQ(j["ghw"][4]["kind"], "bounds");
  EXPECT_TRUE(j["ghw"][4].contains("lower"));
  EXPECT_TRUE(j["ghw"][4]["brute_confirmed"].get<bool>());
}

TEST(Report, HugeCountsSurviveAsStrings) {
  Report r = Report::for_code(CodeParams(field_of_order(2), 2, 2, 1));
  const BigCount huge = big_pow(BigCount(10), 40) + 7;
  r.spectrum = SpectrumReport::from_terms(Mode::projective, {{0, 1}, {huge, huge}});
  const auto back = report_from_json(nlohmann::json::parse(to_json(r).dump()));
  EXPECT_EQ(back, r);
  EXPECT_TRUE(to_json(r)["spectrum"][1]["w"].is_string());
}

TEST(Report, MalformedJsonIsAParseError) {
  try {
    report_from_json(nlohmann::json::parse(R"({"q": 2})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(GhwRows, ProvenanceAndBruteConfirmation) {
  const Report r = sample();
  const std::vector<int> expected_exact{8, 12, 14, 18};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_TRUE(r.ghw[i].closed.is_exact());
    EXPECT_EQ(r.ghw[i].closed.value, expected_exact[i]);
    EXPECT_TRUE(r.ghw[i].brute_confirmed);
  }
  EXPECT_EQ(r.ghw[5].closed.value, 21);
  EXPECT_EQ(r.ghw[5].closed.source, sources::kFullSupport);
}

TEST(GhwRows, AffineRowsScaleByQMinusOne) {
  const DeterminantalCode code(CodeParams(field_of_order(3), 2, 2, 1, Mode::affine));
  const auto row = ghw_row(code, 2, 10'000);
  EXPECT_EQ(row.closed.value, 2 * ghw_t1(2, 2, 2, 3).value);
  ASSERT_TRUE(row.brute);
  EXPECT_EQ(*row.brute, row.closed.value);
}

TEST(GhwRows, HigherTUsesBruteWhenAvailable) {
  const DeterminantalCode code(CodeParams(field_of_order(2), 2, 2, 2));
  const auto row = ghw_row(code, 2, 10'000);
  EXPECT_TRUE(row.closed.is_exact());
  EXPECT_EQ(row.closed.source, kBruteSource);
  EXPECT_EQ(row.closed.value, 12);  // simplex: d_2 = 8 + 4
  const auto unsearched = ghw_row(code, 2, 0);
  EXPECT_FALSE(unsearched.closed.is_exact());
  EXPECT_TRUE(unsearched.closed.contains(12));
}

TEST(Verify, AllGroupsPassOnSmallCodes) {
  for (auto [q, l, m, t] : {std::tuple{2u, 2u, 2u, 1u}, {3u, 2u, 2u, 1u}, {2u, 2u, 3u, 2u}, {2u, 1u, 3u, 1u}}) {
    const auto report = verify(field_of_order(q), l, m, t);
    EXPECT_TRUE(report.all_passed()) << format_verify_report(report);
    EXPECT_GT(report.count(CheckStatus::pass), 10u);
  }
}

TEST(Verify, GroupSelection) {
  VerifyOptions opt;
  opt.only = {groups::kSpectrum};
  const auto report = verify(field_of_order(2), 2, 2, 1, opt);
  for (const auto& c : report.checks) EXPECT_EQ(c.group, groups::kSpectrum);
  EXPECT_NE(report.find("closed enumerator = brute enumerator (projective)"), nullptr);
}

TEST(Verify, SkipsInsteadOfRunningOverBudget) {
  VerifyOptions opt;
  opt.only = {groups::kPartialTrace};
  opt.work_budget = 10;
  const auto report = verify(field_of_order(2), 2, 2, 1, opt);
  EXPECT_EQ(report.count(CheckStatus::skipped), report.checks.size());
  EXPECT_TRUE(report.all_passed());
}
