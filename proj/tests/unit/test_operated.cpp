#include <gtest/gtest.h>

#include "mrb/errors.hpp"
#include "mrb/operated.hpp"
#include "mrb/opring.hpp"
#include "test_support.hpp"

using namespace mrb;
using mrb::support::Rng;

namespace {

OperatedElement word(const OperatedFree& f, std::vector<std::size_t> slots, std::vector<std::size_t> ops,
                     std::size_t x = 0) {
  return OperatedElement::word({std::move(slots), std::move(ops), x});
}

OperatedElement random_element(Rng& rng, const OperatedFree& f, std::size_t max_depth) {
  auto words = f.words(max_depth);
  OperatedElement e;
  for (int k = 0; k < 3; ++k) e.add(words[rng() % words.size()], support::random_scalar(rng));
  return e;
}

}  // namespace

TEST(OperatedFree, ActionExamples) {
  auto inst = support::catalog_instance("scaled_projection(1)");
  OperatedFree f(inst, {"x"});
  OperatedElement e1x = word(f, {0}, {});
  EXPECT_TRUE(f.act(unit_vector(2, 1), e1x).is_zero());
  EXPECT_EQ(f.act({Scalar(1), Scalar(1)}, e1x), e1x);
  EXPECT_EQ(f.act(inst->algebra().unit, e1x), e1x);
  EXPECT_EQ(f.embed(0), word(f, {0}, {}) + word(f, {1}, {}));
}

TEST(OperatedFree, ApplyOperatorExamples) {
  auto inst = support::catalog_instance("scaled_projection(1,2)");
  OperatedFree f(inst, {"x"});
  OperatedElement e1x = word(f, {0}, {});
  EXPECT_EQ(f.apply_operator("1", e1x), word(f, {0, 0}, {0}) + word(f, {1, 0}, {0}));
  EXPECT_EQ(f.to_string(f.apply_operator("1", e1x)), "(e1 . 1 . e1 : x) + (e2 . 1 . e1 : x)");
  EXPECT_TRUE(f.apply_operator(0, OperatedElement{}).is_zero());
  EXPECT_EQ(f.apply_operator(1, f.apply_operator(0, e1x)).max_depth(), 3u);
  EXPECT_THROW(f.apply_operator("9", e1x), UnknownLabel);
}

TEST(OperatedFree, GeneratorsMustBeDistinct) {
  auto inst = support::catalog_instance("trivial(1,1)");
  EXPECT_THROW(OperatedFree(inst, {"x", "x"}), InputError);
  EXPECT_THROW(OperatedFree(inst, {}), InputError);
}

TEST(OperatedFree, WordCountsAndOrder) {
  auto inst = support::catalog_instance("trivial(2,2)");
  OperatedFree f(inst, {"x", "y"});
  auto words = f.words(3);
  // |X| * sum_n d^n s^(n-1)
  EXPECT_EQ(words.size(), 2u * (2 + 4 * 2 + 8 * 4));
  for (std::size_t k = 1; k < words.size(); ++k) EXPECT_TRUE(words[k - 1] < words[k]);
  EXPECT_TRUE(f.ideal_generators(0).empty());
}

TEST(OperatedFree, LeftModuleAxiomsOnRandomElements) {
  Rng rng(4);
  auto inst = support::catalog_instance("upper_triangular");
  OperatedFree f(inst, {"x"});
  const auto& a = inst->algebra();
  for (int trial = 0; trial < 40; ++trial) {
    Vector r = support::random_vector(rng, 3), s = support::random_vector(rng, 3);
    OperatedElement e = random_element(rng, f, 3), g = random_element(rng, f, 3);
    EXPECT_EQ(f.act(r, e + g), f.act(r, e) + f.act(r, g));
    EXPECT_EQ(f.act(r + s, e), f.act(r, e) + f.act(s, e));
    EXPECT_EQ(f.act(a.multiply(r, s), e), f.act(r, f.act(s, e)));
    EXPECT_EQ(f.act(a.unit, e), e);
    // Depth grading.
    EXPECT_LE(f.act(r, e).max_depth(), e.max_depth());
    EXPECT_EQ(f.apply_operator(0, e).max_depth(), e.max_depth() + 1);
  }
}

TEST(OperatedFree, GoldenIdealGenerator) {
  auto inst = support::catalog_instance("scaled_projection(1)");
  OperatedFree f(inst, {"x"});
  OperatedElement g = f.ideal_generator(unit_vector(2, 0), word(f, {0}, {}), 0, 0);
  EXPECT_EQ(f.to_string(g), "(e1 . 1 . e1 : x) - (e1 . 1 . e1 . 1 . e1 : x) - (e2 . 1 . e1 . 1 . e1 : x)");
  EXPECT_EQ(g.max_depth(), 3u);
}

TEST(OperatedFree, TrivialInstanceGeneratorIsNestedOperator) {
  auto inst = support::catalog_instance("trivial(2,2)");
  OperatedFree f(inst, {"x"});
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    Vector r = unit_vector(2, rng() % 2);
    OperatedElement a = random_element(rng, f, 2);
    std::size_t al = rng() % 2, be = rng() % 2;
    OperatedElement expected = Scalar(-1) * f.apply_operator(al, f.act(r, f.apply_operator(be, a)));
    EXPECT_EQ(f.ideal_generator(r, a, al, be), expected);
  }
}

TEST(OperatedFree, IdealGeneratorDepthBound) {
  auto inst = support::catalog_instance("scaled_projection(1,2)");
  OperatedFree f(inst, {"x"});
  for (const auto& g : f.ideal_generators(2)) EXPECT_LE(g.max_depth(), 4u);
}

TEST(Lift, WorkedExample) {
  auto inst = support::catalog_instance("scaled_projection(1,2)");
  OperatedFree f(inst, {"x"});
  auto phi = f.lift({inst->algebra().unit}, regular_left(inst));
  EXPECT_EQ(phi.evaluate(word(f, {0, 0}, {0})), unit_vector(2, 0));
  auto zero = f.lift({Vector(2)}, regular_left(inst));
  EXPECT_TRUE(is_zero(zero.evaluate(word(f, {1, 0, 1}, {1, 0}))));
  EXPECT_THROW(f.lift({}, regular_left(inst)), InputError);
}

TEST(Lift, UniversalProperty) {
  Rng rng(31);
  for (const std::string name : {"scaled_projection(1,2)", "upper_triangular", "trivial(2,2)"}) {
    auto inst = support::catalog_instance(name);
    OperatedFree f(inst, {"x", "y"});
    FdLeftModule target = regular_left(inst);
    const auto& a = inst->algebra();
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<Vector> images{support::random_vector(rng, inst->dim()), support::random_vector(rng, inst->dim())};
      auto phi = f.lift(images, target);
      EXPECT_EQ(phi.evaluate(f.embed(1)), images[1]);
      OperatedElement e = random_element(rng, f, 3);
      Vector r = support::random_vector(rng, inst->dim());
      for (std::size_t w = 0; w < inst->omega_size(); ++w)
        EXPECT_EQ(phi.evaluate(f.apply_operator(w, e)), target.op(w) * phi.evaluate(e));
      EXPECT_EQ(phi.evaluate(f.act(r, e)), a.left_multiplication(r) * phi.evaluate(e));
    }
  }
}

TEST(Lift, KillsIdealGeneratorsInMrbModules) {
  // Independent of the rewriting route: evaluation into an MRB module.
  Rng rng(12);
  for (const auto& name : catalog::names()) {
    auto inst = support::catalog_instance(name);
    if (inst->omega_size() > 2) continue;
    OperatedFree f(inst, {"x"});
    auto phi = f.lift({support::random_vector(rng, inst->dim())}, regular_left(inst));
    for (const auto& g : f.ideal_generators(2)) EXPECT_TRUE(is_zero(phi.evaluate(g))) << name;
  }
}
