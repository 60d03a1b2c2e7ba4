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

#include <charconv>
#include <cmath>
#include <locale>
#include <random>
#include <sstream>
#include <string>

#include "wmnoise/csv.hpp"
#include "wmnoise/figures.hpp"

namespace wmnoise {
namespace {

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return i;
  }
  ADD_FAILURE() << "no column " << name;
  return 0;
}

TEST(FigureSweep, Defaults) {
  for (int fig = 1; fig <= 6; ++fig) {
    SweepSpec s = figure_sweep(fig, {});
    EXPECT_EQ(s.parameter, fig <= 2 ? SweepParameter::r : SweepParameter::gamma);
    EXPECT_EQ(s.steps, fig >= 5 ? 21 : 101);
    EXPECT_EQ(s.start, 0.0);
    EXPECT_EQ(s.stop, 1.0);
    EXPECT_EQ(s.at(s.steps - 1), 1.0);
  }
}

TEST(FigureSweep, Validation) {
  FigureOptions o;
  EXPECT_THROW(figure_sweep(0, o), DomainError);
  EXPECT_THROW(figure_sweep(7, o), DomainError);
  o.steps = 1;
  EXPECT_THROW(figure_sweep(1, o), DomainError);
  o.steps = 5;
  o.start = 0.5;
  o.stop = 0.5;
  EXPECT_THROW(figure_sweep(1, o), DomainError);
  o.stop = 1.2;
  EXPECT_THROW(figure_sweep(1, o), DomainError);
}

TEST(FigureTable, ModulusSweepEndpoints) {
  const Table t = figure_table(1);
  ASSERT_EQ(t.rows.size(), 101u);
  EXPECT_EQ(t.columns.front(), "r");
  GaussianMeter meter(1.0);
  for (double gu : figure_couplings()) {
    std::ostringstream label;
    label << gu;
    const std::size_t dp = column(t, "dp_max_g" + label.str() + "dp");
    const std::size_t dq = column(t, "dq_max_g" + label.str() + "dp");
    const double g = gu * meter.dp();
    EXPECT_NEAR(t.rows.front()[dp], g, 1e-15);
    EXPECT_EQ(t.rows.front()[dq], 0.0);
    const double a2 = std::exp(-4 * g * g);
    EXPECT_NEAR(t.rows.back()[dp], g / std::sqrt(1 - a2), 1e-9);
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
      EXPECT_GT(t.rows[i][dp], t.rows[i - 1][dp]);
      EXPECT_GT(t.rows[i][dq], t.rows[i - 1][dq]);
    }
  }
}

TEST(FigureTable, QubitSweepEndpoints) {
  const Table t = figure_table(2);
  for (std::size_t c = 1; c < t.columns.size(); ++c) {
    const double g = figure_couplings()[c - 1];
    EXPECT_NEAR(t.rows.front()[c], std::sin(g) * std::sin(g), 1e-15);
    EXPECT_NEAR(t.rows.back()[c], 1.0, 1e-12);
  }
  const Table noise = figure_table(4);
  ASSERT_EQ(noise.rows.size(), t.rows.size());
  for (std::size_t c = 1; c < t.columns.size(); ++c) {
    EXPECT_NEAR(noise.rows.front()[c], 1.0, 1e-12);
    EXPECT_NEAR(noise.rows.back()[c], t.rows.front()[c], 1e-15);
    for (std::size_t i = 1; i < noise.rows.size(); ++i) EXPECT_LT(noise.rows[i][c], noise.rows[i - 1][c]);
  }
}

TEST(FigureTable, DoublingThresholdRow) {
  FigureOptions o;
  o.start = 0.134;
  o.stop = 0.2;
  o.steps = 2;
  const Table t = figure_table(3, o);
  const double g = 0.03 * GaussianMeter(1.0).dp();
  EXPECT_EQ(t.rows.front()[0], 0.134);
  EXPECT_NEAR(t.rows.front()[column(t, "dp_max_g0.03dp")] / (2 * g), 1.0, 0.01);
}

TEST(FigureTable, AmplitudeDampingGaussianIsFlat) {
  FigureOptions o;
  const Table t = figure_table(5, o);
  ASSERT_EQ(t.rows.size(), 21u);
  const double dp0 = t.rows.front()[1], dq0 = t.rows.front()[2];
  for (const auto& row : t.rows) {
    if (row[0] > 0.95 + 1e-12) continue;
    EXPECT_NEAR(row[1] / dp0, 1.0, 1e-4) << "gamma=" << row[0];
    EXPECT_NEAR(row[2] / dq0, 1.0, 1e-4) << "gamma=" << row[0];
  }
  EXPECT_LT(t.rows.back()[2], 1e-8);
}

TEST(FigureTable, AmplitudeDampingQubitIsFlat) {
  FigureOptions o;
  o.steps = 11;
  const Table t = figure_table(6, o);
  for (const auto& row : t.rows) {
    if (row[0] == 1.0) {
      EXPECT_NEAR(row[1], std::sin(0.1) * std::sin(0.1), 1e-12);
    } else {
      EXPECT_NEAR(row[1], 1.0, 1e-4) << "gamma=" << row[0];
    }
  }
}

TEST(FigureTable, IndependentOfThreadCount) {
  FigureOptions one, many;
  one.threads = 1;
  many.threads = 7;
  one.steps = many.steps = 6;
  for (int fig : {1, 4, 6}) {
    const Table a = figure_table(fig, one), b = figure_table(fig, many);
    EXPECT_EQ(a.columns, b.columns);
    EXPECT_EQ(a.rows, b.rows);
  }
}

TEST(Csv, Layout) {
  Table t{{"x", "y"}, {{0.1, 1.0}, {-2.5e-20, 3.0}}};
  std::ostringstream out;
  write_csv(out, {{"figure", "1"}, {"delta", "1"}}, t);
  EXPECT_EQ(out.str(),
            "# figure=1\n# delta=1\n"
            "x,y\n"
            "0.10000000000000001,1\n"
            "-2.4999999999999999e-20,3\n");
}

TEST(Csv, NumbersRoundTrip) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(u(rng) * 30));
    const std::string s = format_number(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
}

struct CommaDecimal : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
};

TEST(Csv, IgnoresGlobalLocale) {
  const std::locale previous = std::locale::global(std::locale(std::locale::classic(), new CommaDecimal));
  std::ostringstream out;
  out.imbue(std::locale());
  write_csv(out, {}, Table{{"v"}, {{0.5}}});
  std::locale::global(previous);
  EXPECT_EQ(out.str(), "v\n0.5\n");
}

}  // namespace
}  // namespace wmnoise
