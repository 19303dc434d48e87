#include "coherence/report.hpp"

#include <gtest/gtest.h>

#include <locale>
#include <numbers>

#include "coherence/commands.hpp"

namespace coherence {
namespace {

TEST(FormatFloat17, SeventeenSignificantDigits) {
  EXPECT_EQ(format_float17(0.1), "0.10000000000000001");
  EXPECT_EQ(format_float17(1.0), "1");
  EXPECT_EQ(format_float17(-2.5e-20), "-2.4999999999999999e-20");
  EXPECT_EQ(format_float17(-0.0), "0");
  EXPECT_EQ(format_float17(std::numeric_limits<double>::infinity()), "null");
  EXPECT_EQ(format_float17(std::numeric_limits<double>::quiet_NaN()), "null");
}

TEST(FormatShortest, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, std::numbers::pi, 1e-300, -4.4e-16}) {
    EXPECT_EQ(std::stod(format_shortest(v)), v);
  }
  EXPECT_EQ(format_shortest(0.5), "0.5");
}

// Decimal comma and thousands grouping, as in many European locales.
struct CommaPunct : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
  char do_thousands_sep() const override { return '.'; }
  std::string do_grouping() const override { return "\3"; }
};

TEST(CsvOutput, IgnoresGlobalLocale) {
  const auto saved = std::locale::global(std::locale(std::locale::classic(), new CommaPunct));
  LabConfig cfg;
  cfg.dims = {2};
  cfg.trials = 1200;
  cfg.pair_kinds = {PairKind::Arbitrary};
  cfg.seed = 1;
  const auto verify_csv = render_verify_csv(run_verify(cfg));
  const auto sweep_csv = render_sweep_csv(run_sweep(BoundId::T2Upper, 2, {0.25}, 1, 1e-9));
  std::locale::global(saved);
  EXPECT_NE(verify_csv.find(",1200,"), std::string::npos) << verify_csv;
  EXPECT_EQ(verify_csv.find("1.200"), std::string::npos) << verify_csv;
  EXPECT_EQ(sweep_csv.substr(sweep_csv.find('\n') + 1, 5), "0.25,");
}

TEST(Hex64, FixedWidth) {
  EXPECT_EQ(hex64(0), "0000000000000000");
  EXPECT_EQ(hex64(0xdeadbeefULL), "00000000deadbeef");
}

TEST(CanonicalDump, SortedKeysAndIndent) {
  const Json j{{"b", 1}, {"a", Json::array({0.5, true})}, {"c", Json::object()}};
  EXPECT_EQ(canonical_dump(j), "{\n  \"a\": [\n    0.5,\n    true\n  ],\n  \"b\": 1,\n  \"c\": {}\n}\n");
}

TEST(CanonicalDump, ParseAndRedumpIsByteIdentical) {
  const auto rep = run_demo(1e-9, true);
  const auto text = canonical_dump(rep.to_json());
  EXPECT_EQ(canonical_dump(Json::parse(text)), text);

  Json floats = Json::array();
  for (double v : {0.1, 1.0 / 3.0, 1e-17, 12345.678901234567, -0.0}) floats.push_back(v);
  const auto ftext = canonical_dump(floats);
  EXPECT_EQ(canonical_dump(Json::parse(ftext)), ftext);
}

TEST(ToJson, BoundReportFields) {
  const auto c = SuperpositionCoefficients::from_alpha_sq(0.5);
  const auto r = theorem2_upper(c, StateVector::basis(2, 0), StateVector::basis(2, 1));
  const auto j = to_json(r);
  EXPECT_EQ(j["bound"], "T2_UPPER");
  EXPECT_EQ(j["lhs"].get<double>(), r.lhs);
  EXPECT_EQ(j["satisfied"], true);
  EXPECT_EQ(j["inputs_digest"], hex64(r.inputs_digest));
}

TEST(Demo, ReportsIntroductoryExamples) {
  const auto rep = run_demo(1e-9, true);
  ASSERT_EQ(rep.results.size(), 2u);
  const auto& basis = rep.results[0];
  EXPECT_NEAR(basis["coherence_superposition"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(basis["coherence_phi"].get<double>(), 0.0);
  EXPECT_EQ(basis["coherence_psi"].get<double>(), 0.0);
  EXPECT_LE(basis["reports"][0]["slack"].get<double>(), 1e-12);
  const auto& pm = rep.results[1];
  EXPECT_NEAR(pm["coherence_superposition"].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(pm["coherence_phi"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(pm["coherence_psi"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_EQ(rep.started_at, rep.finished_at);

  const auto text = render_demo_text(rep);
  EXPECT_NE(text.find("C_re(omega) = 1.000000"), std::string::npos);
  EXPECT_NE(text.find("C_re(omega) = 0.000000"), std::string::npos);
}

TEST(Verify, ViolationCountMatchesReports) {
  LabConfig cfg;
  cfg.dims = {3};
  cfg.trials = 50;
  cfg.seed = 5;
  cfg.tolerance = -1.0;  // every inequality now counts as violated
  const auto rep = run_verify(cfg);
  std::size_t expected = 0;
  for (auto kind : cfg.pair_kinds) {
    EnsembleConfig ec;
    ec.dim = 3;
    ec.trials = 50;
    ec.pair_kind = kind;
    ec.seed = ensemble_seed(5, kind, 3);
    ec.tolerance = -1.0;
    for (const auto& t : run_ensemble(ec)) expected += count_violations(t.reports);
  }
  EXPECT_GT(expected, 0u);
  EXPECT_EQ(rep.violations, expected);
}

TEST(Verify, ZeroTrialsGivesEmptyPayload) {
  LabConfig cfg;
  cfg.trials = 0;
  const auto rep = run_verify(cfg);
  EXPECT_TRUE(rep.results.empty());
  EXPECT_EQ(rep.violations, 0u);
}

TEST(Sweep, BasisPairAlongGrid) {
  const auto grid = *parse_grid("0.1:0.9:0.1");
  ASSERT_EQ(grid.size(), 9u);
  const auto rows = run_sweep(BoundId::T1Equality, 2, grid, 1, 1e-9);
  for (const auto& row : rows) EXPECT_LE(row.report.slack, 1e-12);
  EXPECT_NEAR(rows[4].alpha_sq, 0.5, 0.0);
  EXPECT_NEAR(rows[4].report.lhs, 1.0, 1e-12);

  const auto csv = render_sweep_csv(run_sweep(BoundId::T2Upper, 3, {0.5}, 1, 1e-9));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "alpha_sq,lhs,rhs,slack");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);

  EXPECT_THROW(run_sweep(BoundId::T2Upper, 2, {1.0}, 1, 1e-9), ConfigError);
}

TEST(Sweep, UpperBoundsHoldPointwise) {
  const auto grid = *parse_grid("0.05:0.95:0.05");
  for (auto id : {BoundId::T2Upper, BoundId::T3Upper, BoundId::GainLe1})
    for (std::size_t d : {2u, 5u, 9u})
      for (const auto& row : run_sweep(id, d, grid, 17, 1e-9)) EXPECT_GE(row.report.slack, -1e-9);
}

}  // namespace
}  // namespace coherence
