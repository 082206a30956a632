#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "dyneval/aggregation.hpp"
#include "dyneval/errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dyneval;

namespace {

struct RandomCase {
  LocalEvalTensor tensor;
  WeightProfile weights;
  oracle::PairTensor dense;
  oracle::Weights ow;
};

RandomCase random_case(fixtures::Rng& rng, TensorShape shape) {
  LocalEvalTensor tensor(shape);
  oracle::PairTensor dense{shape.elements, shape.modes, shape.characteristics, shape.criteria, {}, {}};
  for (std::size_t n = 0; n < shape.elements; ++n)
    for (std::size_t l = 0; l < shape.modes; ++l)
      for (std::size_t m = 0; m < shape.characteristics; ++m)
        for (std::size_t k = 0; k < shape.criteria; ++k) {
          const double u = rng.uniform(2.0, 5.0), q = rng.uniform(2.0, 5.0);
          tensor.set(n, l, m, k, LocalEvaluation{u, q, grade_of(u), ""});
          dense.cu.push_back(u);
          dense.cl.push_back(q);
        }
  WeightProfile w;
  w.uniform = rng.uniform(0.1, 3.0);
  w.mean_squared = rng.uniform(0.1, 3.0);
  w.criteria = rng.uniform_vector(shape.criteria, 0.1, 3.0);
  w.characteristics = rng.uniform_vector(shape.characteristics, 0.1, 3.0);
  w.modes = rng.uniform_vector(shape.modes, 0.1, 3.0);
  w.elements = rng.uniform_vector(shape.elements, 0.1, 3.0);
  const oracle::Weights ow{w.uniform, w.mean_squared, w.criteria, w.characteristics, w.modes, w.elements};
  return {std::move(tensor), w, std::move(dense), ow};
}

TensorShape random_shape(fixtures::Rng& rng) {
  return {rng.index(1, 4), rng.index(1, 5), rng.index(1, 3), rng.index(1, 4)};
}

LocalEvalTensor constant_tensor(TensorShape shape, double u, double q) {
  LocalEvalTensor t(shape);
  for (std::size_t n = 0; n < shape.elements; ++n)
    for (std::size_t l = 0; l < shape.modes; ++l)
      for (std::size_t m = 0; m < shape.characteristics; ++m)
        for (std::size_t k = 0; k < shape.criteria; ++k) t.set(n, l, m, k, {u, q, grade_of(u), ""});
  return t;
}

}  // namespace

TEST(WeightedMean, HandComputed) {
  const std::vector<double> v{4, 4, 4}, w{1, 7, 2};
  EXPECT_DOUBLE_EQ(weighted_mean(v, w), 4.0);
  const std::vector<double> a{3, 5}, ones{1, 1}, skew{3, 1};
  EXPECT_DOUBLE_EQ(weighted_mean(a, ones), 4.0);
  EXPECT_DOUBLE_EQ(weighted_mean(a, skew), 3.5);
  EXPECT_THROW(weighted_mean(a, w), Error);
}

TEST(WeightProfile, Validation) {
  const TensorShape shape{2, 3, 1, 2};
  auto w = WeightProfile::equal(shape);
  EXPECT_NO_THROW(w.validate(shape));
  EXPECT_EQ(w.modes.size(), 3u);
  w.modes[1] = 0.0;
  EXPECT_THROW(w.validate(shape), Error);
  w = WeightProfile::equal(shape);
  w.criteria.push_back(1.0);
  EXPECT_THROW(w.validate(shape), Error);
  w = WeightProfile::equal(shape);
  w.uniform = -1.0;
  EXPECT_THROW(w.validate(shape), Error);
}

TEST(LocalEvalTensor, IncompleteTensorIsRejected) {
  LocalEvalTensor t({1, 1, 1, 2});
  t.set(0, 0, 0, 0, {4.0, 4.0, 4, "good"});
  EXPECT_TRUE(t.is_set(0, 0, 0, 0));
  EXPECT_FALSE(t.is_set(0, 0, 0, 1));
  EXPECT_THROW((void)t.at(0, 0, 0, 1), Error);
  EXPECT_THROW(t.require_complete(), Error);
  EXPECT_THROW(aggregate(t, WeightProfile::equal(t.shape())), Error);
}

TEST(Rollups, ConstantPropagation) {
  const TensorShape shape{2, 3, 2, 2};
  const auto report = aggregate(constant_tensor(shape, 4.2, 4.2), WeightProfile::equal(shape));
  for (double v : report.by_element.elements) EXPECT_DOUBLE_EQ(v, 4.2);
  for (const auto& row : report.by_element.characteristics)
    for (double v : row) EXPECT_DOUBLE_EQ(v, 4.2);
  for (double v : report.by_mode.modes) EXPECT_DOUBLE_EQ(v, 4.2);
  EXPECT_DOUBLE_EQ(report.global, 4.2);

  const auto threes = aggregate(constant_tensor(shape, 3.0, 3.0), WeightProfile::equal(shape));
  for (double v : threes.by_mode.modes) EXPECT_DOUBLE_EQ(v, 3.0);
}

TEST(Rollups, SmallHandCases) {
  const TensorShape one{1, 1, 1, 1};
  const auto r = aggregate(constant_tensor(one, 3.0, 5.0), WeightProfile::equal(one));
  EXPECT_DOUBLE_EQ(r.by_element.parameters[0][0][0][0], 4.0);
  EXPECT_DOUBLE_EQ(r.global, r.by_element.elements[0]);
  EXPECT_DOUBLE_EQ(r.global, r.by_mode.modes[0]);

  const TensorShape two{2, 1, 1, 1};
  LocalEvalTensor t(two);
  t.set(0, 0, 0, 0, {2.0, 2.0, 2, ""});
  t.set(1, 0, 0, 0, {5.0, 5.0, 5, ""});
  const auto r2 = aggregate(t, WeightProfile::equal(two));
  EXPECT_DOUBLE_EQ(r2.by_mode.parameters[0][0][0], 3.5);
  EXPECT_DOUBLE_EQ(r2.global, 3.5);
}

TEST(Rollups, MatchNestedLoopOracle) {
  fixtures::Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const TensorShape shape = trial == 0 ? TensorShape{2, 2, 2, 2} : random_shape(rng);
    auto c = random_case(rng, shape);
    std::vector<double> per_element, per_mode;
    const double h = oracle::global_by_elements(c.dense, c.ow, &per_element);
    const double v = oracle::global_by_modes(c.dense, c.ow, &per_mode);
    const auto report = aggregate(c.tensor, c.weights);
    ASSERT_EQ(report.by_element.elements.size(), per_element.size());
    for (std::size_t n = 0; n < per_element.size(); ++n)
      EXPECT_NEAR(report.by_element.elements[n], per_element[n], 1e-12);
    for (std::size_t l = 0; l < per_mode.size(); ++l)
      EXPECT_NEAR(report.by_mode.modes[l], per_mode[l], 1e-12);
    EXPECT_NEAR(report.global, h, 1e-12);
    EXPECT_NEAR(h, v, 1e-12);
    EXPECT_NEAR(global_eval(report), report.global, 0.0);
  }
}

TEST(Rollups, SandwichAndScaleInvariance) {
  fixtures::Rng rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const TensorShape shape = random_shape(rng);
    auto c = random_case(rng, shape);
    const auto report = aggregate(c.tensor, c.weights);
    const auto [lo, hi] = std::minmax({*std::min_element(c.dense.cu.begin(), c.dense.cu.end()),
                                       *std::max_element(c.dense.cu.begin(), c.dense.cu.end()),
                                       *std::min_element(c.dense.cl.begin(), c.dense.cl.end()),
                                       *std::max_element(c.dense.cl.begin(), c.dense.cl.end())});
    for (std::size_t n = 0; n < shape.elements; ++n)
      for (std::size_t l = 0; l < shape.modes; ++l) {
        const auto& crit = report.by_element.criteria[n][l];
        const auto ch = report.by_element.characteristics[n][l];
        EXPECT_GE(ch, *std::min_element(crit.begin(), crit.end()) - 1e-12);
        EXPECT_LE(ch, *std::max_element(crit.begin(), crit.end()) + 1e-12);
      }
    EXPECT_GE(report.global, lo - 1e-12);
    EXPECT_LE(report.global, hi + 1e-12);

    auto scaled = c.weights;
    const double factor = rng.uniform(0.01, 100.0);
    for (auto& x : scaled.modes) x *= factor;
    for (auto& x : scaled.criteria) x *= factor;
    const auto again = aggregate(c.tensor, scaled);
    EXPECT_NEAR(again.global, report.global, 1e-12);
    for (std::size_t l = 0; l < shape.modes; ++l)
      EXPECT_NEAR(again.by_mode.modes[l], report.by_mode.modes[l], 1e-12);
  }
}

TEST(Rollups, ElementPermutationCommutes) {
  fixtures::Rng rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    TensorShape shape = random_shape(rng);
    shape.elements = rng.index(2, 5);
    auto c = random_case(rng, shape);
    std::vector<std::size_t> perm(shape.elements);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());

    LocalEvalTensor permuted(shape);
    WeightProfile pw = c.weights;
    for (std::size_t n = 0; n < shape.elements; ++n) {
      pw.elements[n] = c.weights.elements[perm[n]];
      for (std::size_t l = 0; l < shape.modes; ++l)
        for (std::size_t m = 0; m < shape.characteristics; ++m)
          for (std::size_t k = 0; k < shape.criteria; ++k)
            permuted.set(n, l, m, k, c.tensor.at(perm[n], l, m, k));
    }
    const auto a = aggregate(c.tensor, c.weights);
    const auto b = aggregate(permuted, pw);
    for (std::size_t n = 0; n < shape.elements; ++n)
      EXPECT_DOUBLE_EQ(b.by_element.elements[n], a.by_element.elements[perm[n]]);
    EXPECT_NEAR(a.global, b.global, 1e-12);
  }
}

TEST(Rollups, RaisingOneCellNeverLowersAncestors) {
  fixtures::Rng rng(109);
  for (int trial = 0; trial < 100; ++trial) {
    const TensorShape shape = random_shape(rng);
    auto c = random_case(rng, shape);
    const auto before = aggregate(c.tensor, c.weights);
    const std::size_t n = rng.index(0, shape.elements - 1), l = rng.index(0, shape.modes - 1);
    const std::size_t m = rng.index(0, shape.characteristics - 1), k = rng.index(0, shape.criteria - 1);
    auto ev = c.tensor.at(n, l, m, k);
    ev.e_l2 = std::min(5.0, ev.e_l2 + rng.uniform(0.0, 1.0));
    auto raised = c.tensor;
    raised.set(n, l, m, k, ev);
    const auto after = aggregate(raised, c.weights);
    EXPECT_GE(after.by_element.criteria[n][l][m], before.by_element.criteria[n][l][m]);
    EXPECT_GE(after.by_element.characteristics[n][l], before.by_element.characteristics[n][l]);
    EXPECT_GE(after.by_element.elements[n], before.by_element.elements[n]);
    EXPECT_GE(after.by_mode.modes[l], before.by_mode.modes[l]);
    EXPECT_GE(after.global, before.global);
  }
}

TEST(CountLocalEvals, ProductArithmetic) {
  const auto demo = count_local_evals({6, 18, 3, 4}, 2);
  EXPECT_EQ(demo.total, 2592u);
  ASSERT_EQ(demo.per_element.size(), 6u);
  for (auto s : demo.per_element) EXPECT_EQ(s, 432u);
  const auto one = count_local_evals({1, 1, 1, 1}, 1);
  EXPECT_EQ(one.per_element.at(0), 1u);
  EXPECT_EQ(one.total, 1u);
  const auto small = count_local_evals({2, 3, 2, 2}, 2);
  EXPECT_EQ(small.per_element.at(0), 24u);
  EXPECT_EQ(small.total, 48u);
}

TEST(GlobalEval, DetectsTamperedHierarchy) {
  const TensorShape shape{2, 2, 1, 1};
  auto report = aggregate(constant_tensor(shape, 4.0, 4.0), WeightProfile::equal(shape));
  report.by_mode.modes[0] = 3.0;
  try {
    (void)global_eval(report);
    FAIL() << "tampered report accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Inconsistency);
  }
}
