// Copyright 2026 The wmnoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "wmnoise/adjudication.hpp"
#include "wmnoise/verify.hpp"

namespace wmnoise {
namespace {

const AdjudicationReport& default_report() {
  static const AdjudicationReport report = adjudicate_variants();
  return report;
}

TEST(Adjudication, ConfirmsImplementedVariants) {
  const AdjudicationReport& report = default_report();
  ASSERT_EQ(report.disputes.size(), 4u);
  EXPECT_TRUE(report.all_confirmed());
  for (const Dispute& d : report.disputes) {
    EXPECT_EQ(d.verdict, Verdict::confirmed) << d.name;
    EXPECT_LE(d.normative_deviation, d.tolerance) << d.name;
    EXPECT_GE(d.rejected_deviation, 10.0 * d.tolerance) << d.name;
  }
}

TEST(Adjudication, RejectedMaximumOvershootsByGaussianFactor) {
  // Without exp(-2 delta^2 g^2) the maximal position shift at r = 1,
  // g = 0.3, delta = 1 is larger by exp(0.18).
  const double g = 0.3;
  const double a = std::exp(-2 * g * g);
  const double kept = 2 * g * a / std::sqrt(1 - a * a);
  const double dropped = 2 * g / std::sqrt(1 - a * a);
  EXPECT_NEAR(dropped / kept, std::exp(0.18), 1e-12);
  const Dispute& d = default_report().disputes[1];
  EXPECT_GE(d.rejected_deviation, (std::exp(0.18) - 1) * kept * (1 - 1e-6));
}

TEST(Adjudication, RecordsEveryComparison) {
  const AdjudicationReport& report = default_report();
  EXPECT_EQ(report.seed, AdjudicationOptions{}.seed);
  ASSERT_FALSE(report.rows.empty());
  for (const Dispute& d : report.disputes) {
    int normative = 0, rejected = 0;
    for (const AdjudicationRow& row : report.rows) {
      if (row.dispute != d.name) continue;
      if (row.variant == d.normative) ++normative;
      if (row.variant == d.rejected) ++rejected;
      EXPECT_TRUE(std::isfinite(row.deviation));
    }
    EXPECT_GT(normative, 0) << d.name;
    EXPECT_EQ(normative, rejected) << d.name;
  }
}

TEST(Adjudication, CsvAndTextAreDeterministic) {
  AdjudicationOptions opts;
  opts.inputs = 8;
  const AdjudicationReport a = adjudicate_variants(opts);
  const AdjudicationReport b = adjudicate_variants(opts);
  std::ostringstream ca, cb;
  a.to_csv(ca);
  b.to_csv(cb);
  EXPECT_EQ(ca.str(), cb.str());
  EXPECT_EQ(a.to_text(), b.to_text());
  EXPECT_EQ(ca.str().rfind("# seed=20240601\ndispute,variant,input_id,deviation\n", 0), 0u);
}

VerifyOptions quick(const std::string& perturb = "") {
  VerifyOptions opts;
  opts.samples = 100;
  opts.adjudicate = false;
  opts.perturb = perturb;
  return opts;
}

TEST(Verify, PassesOnCorrectFormulas) {
  const VerifyReport report = run_verification(quick());
  EXPECT_TRUE(report.passed()) << report.to_text();
  EXPECT_EQ(report.worst_failure(), nullptr);
  EXPECT_EQ(report.checks.size(), Formulas::names().size());
  const std::string text = report.to_text();
  EXPECT_NE(text.find("RESULT: PASS"), std::string::npos);
}

TEST(Verify, Deterministic) {
  EXPECT_EQ(run_verification(quick()).to_text(), run_verification(quick()).to_text());
}

class PerturbedFormula : public ::testing::TestWithParam<std::string> {};

TEST_P(PerturbedFormula, FailsNamingTheFormula) {
  const VerifyReport report = run_verification(quick(GetParam()));
  EXPECT_FALSE(report.passed());
  ASSERT_NE(report.worst_failure(), nullptr);
  EXPECT_EQ(report.worst_failure()->formula, GetParam());
  const std::string text = report.to_text();
  EXPECT_NE(text.find("worst offender: " + GetParam()), std::string::npos);
  EXPECT_NE(text.find("RESULT: FAIL"), std::string::npos);
}

INSTANTIATE_TEST_SUITE_P(AllFormulas, PerturbedFormula, ::testing::ValuesIn(Formulas::names()));

TEST(Verify, UnknownPerturbation) { EXPECT_THROW(run_verification(quick("no_such_formula")), DomainError); }

}  // namespace
}  // namespace wmnoise
