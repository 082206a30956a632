#include <gtest/gtest.h>

#include <cmath>

#include "dyneval/errors.hpp"
#include "dyneval/scales.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dyneval;

namespace {

DeviationSignal make_dev(std::vector<double> v, double dt = 0.01) {
  const std::size_t n = v.size();
  return DeviationSignal(SamplingGrid(dt, n), std::move(v));
}

bool in_valid_range(double e) {
  return e == 2.0 || e == 5.0 || (e >= 3.0 && e < 5.0);
}

}  // namespace

TEST(ContinuousEval, AffineAndDecreasing) {
  EXPECT_DOUBLE_EQ(continuous_eval(0.0, 0.0, 2.0, 10.0), 10.0);
  EXPECT_DOUBLE_EQ(continuous_eval(2.0, 0.0, 2.0, 10.0), 0.0);
  EXPECT_DOUBLE_EQ(continuous_eval(0.5, 0.0, 2.0, 10.0), 7.5);
  EXPECT_DOUBLE_EQ(continuous_eval(3.0, 0.0, 2.0, 10.0), -5.0);
  double prev = continuous_eval(0.0, 0.0, 1.0, 10.0);
  for (int i = 1; i <= 100; ++i) {
    const double e = continuous_eval(0.015 * i, 0.0, 1.0, 10.0);
    EXPECT_LT(e, prev);
    prev = e;
  }
  EXPECT_THROW(continuous_eval(0.1, 1.0, 1.0, 10.0), Error);
}

TEST(DiscreteEval, HalfOpenBinsAndClamping) {
  const ScaleConfig cfg;  // ten equal bins
  EXPECT_EQ(discrete_eval(10.0, cfg), 9);
  EXPECT_EQ(discrete_eval(12.0, cfg), 9);
  EXPECT_EQ(discrete_eval(5.0, cfg), 5);
  EXPECT_EQ(discrete_eval(4.999, cfg), 4);
  EXPECT_EQ(discrete_eval(0.5, cfg), 0);
  EXPECT_EQ(discrete_eval(0.0, cfg), 0);
  EXPECT_EQ(discrete_eval(-3.0, cfg), 0);

  ScaleConfig coarse;
  coarse.delta_grid = {0.0, 0.2, 0.9, 1.0};
  EXPECT_EQ(discrete_eval(1.0, coarse), 0);
  EXPECT_EQ(discrete_eval(2.0, coarse), 1);
  EXPECT_EQ(discrete_eval(9.0, coarse), 2);
}

TEST(DiscreteEval, NonIncreasingInDeviation) {
  const ScaleConfig cfg;
  int prev = discrete_eval(continuous_eval(0.0, 0.0, 1.0, cfg.nu), cfg);
  for (int i = 1; i <= 1500; ++i) {
    const int g = discrete_eval(continuous_eval(i * 1e-3, 0.0, 1.0, cfg.nu), cfg);
    EXPECT_LE(g, prev);
    prev = g;
  }
}

TEST(ScaleConfig, Validation) {
  ScaleConfig c;
  EXPECT_NO_THROW(c.validate());
  c.delta = 1.0;
  EXPECT_THROW(c.validate(), Error);
  c = ScaleConfig{};
  c.delta_grid = {0.0, 0.5, 0.5, 1.0};
  EXPECT_THROW(c.validate(), Error);
  c = ScaleConfig{};
  c.nu = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = ScaleConfig{};
  c.labels.clear();
  EXPECT_THROW(c.validate(), Error);
}

TEST(ConceptualLabel, AscendingMapping) {
  const ScaleConfig cfg;
  EXPECT_EQ(conceptual_label(5, cfg), "excellent");
  EXPECT_EQ(conceptual_label(4, cfg), "good");
  EXPECT_EQ(conceptual_label(3, cfg), "satisfactory");
  EXPECT_EQ(conceptual_label(2, cfg), "unsatisfactory");
  EXPECT_THROW(conceptual_label(1, cfg), Error);
  EXPECT_THROW(conceptual_label(6, cfg), Error);
}

TEST(HybridGrade, BinEdgesClosedAbove) {
  const double A = 2.0, delta = 0.5, gamma = 1.0;
  EXPECT_EQ(hybrid_grade(make_dev(std::vector<double>(5, 0.0)), A, delta), 5);
  EXPECT_EQ(hybrid_grade(make_dev({0.0, gamma, 0.0}), A, delta), 4);
  EXPECT_EQ(hybrid_grade(make_dev({0.0, std::nextafter(gamma, 2.0), 0.0}), A, delta), 3);
  EXPECT_EQ(hybrid_grade(make_dev({0.0, A, 0.0}), A, delta), 3);
  EXPECT_EQ(hybrid_grade(make_dev({0.0, 1.5 * A, 0.0}), A, delta), 2);
  EXPECT_THROW(hybrid_grade(make_dev({0.0, 0.0}), 0.0, delta), Error);
  EXPECT_THROW(hybrid_eval_uniform(make_dev({0.0, 0.0}), 1.0, 1.0), Error);
}

TEST(HybridEval, LinearMidpoints) {
  const double A = 2.0, delta = 0.5, gamma = 1.0;
  const auto four = make_dev(std::vector<double>(50, gamma / 2));
  EXPECT_DOUBLE_EQ(hybrid_eval_uniform(four, A, delta), 4.5);
  const auto three = make_dev(std::vector<double>(50, (gamma + A) / 2));
  EXPECT_DOUBLE_EQ(hybrid_eval_uniform(three, A, delta), 3.5);
  EXPECT_NEAR(hybrid_eval_l2(three, A, delta), 3.5, 1e-12);
  EXPECT_DOUBLE_EQ(hybrid_eval_uniform(make_dev({0.0, A, 0.0}), A, delta), 3.0);
  EXPECT_DOUBLE_EQ(hybrid_eval_uniform(make_dev({0.0, gamma, 0.0}), A, delta), 4.0);
  EXPECT_DOUBLE_EQ(hybrid_eval_l2(make_dev({0.0, 0.0}), A, delta), 5.0);
  EXPECT_DOUBLE_EQ(hybrid_eval_l2(make_dev({0.0, 3.0}), A, delta), 2.0);
}

TEST(HybridEval, NarrowSpikeUniformMatchesScalarOracle) {
  // dev = gamma everywhere with one sample just below A.
  std::vector<double> v(201, 0.5);
  v[77] = 0.999;
  const auto dev = make_dev(v);
  EXPECT_NEAR(hybrid_eval_uniform(dev, 1.0, 0.5), 3.002, 1e-12);
  EXPECT_NEAR(hybrid_eval_uniform(dev, 1.0, 0.5), oracle::hybrid(v, 0.01, 1.0, 0.5).e_uniform, 1e-12);
}

TEST(HybridEval, SpikeOfWidthOneHundredthClipsToPositivePart) {
  // T = 1 over 1001 samples; 10 samples at (gamma + A)/2 cover T/100 of trapezoid mass.
  std::vector<double> v(1001, 0.0);
  for (std::size_t i = 400; i < 410; ++i) v[i] = 0.75;
  const auto dev = make_dev(v, 0.001);
  EXPECT_NEAR(hybrid_eval_l2(dev, 1.0, 0.5), 3.95, 1e-12);
  EXPECT_NEAR(hybrid_eval_l2(dev, 1.0, 0.5), oracle::hybrid(v, 0.001, 1.0, 0.5).e_l2, 1e-12);
  EXPECT_DOUBLE_EQ(hybrid_eval_uniform(dev, 1.0, 0.5), 3.5);
}

TEST(HybridEval, RandomSignalsMatchOracle) {
  fixtures::Rng rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t count = rng.index(2, 150);
    const double dt = rng.uniform(1e-3, 0.1);
    const double A = rng.uniform(0.1, 3.0), delta = rng.uniform(0.05, 0.95);
    const double top = A * rng.uniform(0.0, 1.4);
    auto v = rng.uniform_vector(count, 0.0, top);
    if (rng.coin(0.05)) v.assign(count, 0.0);
    const auto ref = oracle::hybrid(v, dt, A, delta);
    const auto dev = make_dev(v, dt);
    const ScaleConfig cfg{.delta = delta};
    const auto ev = hybrid_evaluate(dev, A, cfg);
    EXPECT_EQ(ev.grade, ref.grade);
    EXPECT_NEAR(ev.e_uniform, ref.e_uniform, 1e-12);
    EXPECT_NEAR(ev.e_l2, ref.e_l2, 1e-12);
    EXPECT_TRUE(in_valid_range(ev.e_uniform)) << ev.e_uniform;
    EXPECT_TRUE(in_valid_range(ev.e_l2)) << ev.e_l2;
    EXPECT_EQ(grade_of(ev.e_uniform), ev.grade);
    EXPECT_EQ(grade_of(ev.e_l2), ev.grade);
    EXPECT_EQ(ev.label, conceptual_label(ev.grade, cfg));
  }
}

TEST(HybridEval, ContinuityWithinBands) {
  fixtures::Rng rng(43);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t count = 101;
    const double A = 1.0, delta = 0.5;
    auto v = rng.uniform_vector(count, 0.0, rng.uniform(0.05, 0.95));
    auto w = v;
    for (auto& x : w) x = std::max(0.0, x + rng.uniform(-1e-6, 1e-6));
    const double s = oracle::sup(v);
    if (std::abs(s - delta * A) < 1e-3 || std::abs(s - A) < 1e-3) continue;
    const auto a = hybrid_evaluate(make_dev(v), A, ScaleConfig{});
    const auto b = hybrid_evaluate(make_dev(w), A, ScaleConfig{});
    ASSERT_EQ(a.grade, b.grade);
    EXPECT_LE(std::abs(a.e_uniform - b.e_uniform), 1e-4);
    EXPECT_LE(std::abs(a.e_l2 - b.e_l2), 1e-4);
    ++checked;
  }
  EXPECT_GT(checked, 400);
}

TEST(GradeOf, Bands) {
  EXPECT_EQ(grade_of(5.0), 5);
  EXPECT_EQ(grade_of(4.99), 4);
  EXPECT_EQ(grade_of(4.0), 4);
  EXPECT_EQ(grade_of(3.0), 3);
  EXPECT_EQ(grade_of(2.0), 2);
  EXPECT_EQ(grade_of(2.7), 2);
}

TEST(ClassifyPair, AnchorPairs) {
  const auto pair = [](double u, double l) {
    return LocalEvaluation{u, l, grade_of(u), ""};
  };
  EXPECT_EQ(classify_pair(pair(3.05, 3.98)), Disturbance::FewShortDisturbances);
  EXPECT_EQ(classify_pair(pair(3.01, 3.02)), Disturbance::NearCritical);
  EXPECT_EQ(classify_pair(pair(3.95, 3.91)), Disturbance::NearNextGrade);
  EXPECT_EQ(classify_pair(pair(3.5, 3.5)), Disturbance::Mixed);
  EXPECT_EQ(classify_pair(pair(5.0, 5.0)), Disturbance::None);
  EXPECT_EQ(classify_pair(pair(2.0, 2.0)), Disturbance::BeyondPermissible);
  EXPECT_EQ(to_string(Disturbance::FewShortDisturbances), "few short disturbances");
  EXPECT_EQ(to_string(Disturbance::NearCritical), "near-critical");
}
