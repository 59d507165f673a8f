#include <gtest/gtest.h>

#include "mrb/errors.hpp"
#include "mrb/modules.hpp"
#include "test_support.hpp"

using namespace mrb;
using mrb::support::Rng;

namespace {

// The left module identity evaluated directly on arbitrary vectors, without
// the basis-column bookkeeping of the checker.
bool left_identity_on(const FdLeftModule& m, const Vector& x, const Vector& v) {
  const auto& inst = *m.instance;
  for (std::size_t al = 0; al < inst.omega_size(); ++al)
    for (std::size_t be = 0; be < inst.omega_size(); ++be) {
      const Matrix &ma = m.op(al), &mb = m.op(be);
      Vector px = inst.op(al) * x;
      Vector lhs = m.act(px) * (mb * v);
      Vector rhs = ma * (m.act(x) * (mb * v)) + mb * (m.act(px) * v) + inst.weight(be) * (ma * (m.act(x) * v)) +
                   inst.weight(al) * (mb * (m.act(x) * v));
      if (lhs != rhs) return false;
    }
  return true;
}

FdLeftModule nilpotent_over_trivial() {
  // k^2 over trivial(1,1) with the nilpotent operator e1 -> 0, e2 -> e1.
  auto inst = support::catalog_instance("trivial(1,1)");
  FdLeftModule n;
  n.instance = inst;
  n.dim = 2;
  n.action = {Matrix::identity(2)};
  Matrix op(2, 2);
  op(0, 1) = 1;
  n.operators = {op};
  return n;
}

}  // namespace

TEST(Modules, RegularModulesPass) {
  for (const auto& name : catalog::names()) {
    auto inst = support::catalog_instance(name);
    EXPECT_TRUE(check_left_module(regular_left(inst)).ok()) << name;
    EXPECT_TRUE(check_right_module(regular_right(inst)).ok()) << name;
  }
}

TEST(Modules, PerturbedOperatorFails) {
  Rng rng(1);
  for (const std::string name : {"scaled_projection(1)", "scaled_projection(1,2)", "upper_triangular"}) {
    auto inst = support::catalog_instance(name);
    FdLeftModule m = regular_left(inst);
    m.operators[0](0, 0) += 1;
    Report r = check_left_module(m);
    EXPECT_FALSE(r.ok()) << name;
    bool oracle = true;
    for (std::size_t i = 0; i < inst->dim(); ++i)
      for (std::size_t p = 0; p < m.dim; ++p)
        oracle &= left_identity_on(m, unit_vector(inst->dim(), i), unit_vector(m.dim, p));
    EXPECT_FALSE(oracle);
    FdRightModule r_mod = regular_right(inst);
    r_mod.operators[0](0, 0) += 1;
    EXPECT_FALSE(check_right_module(r_mod).ok()) << name;
  }
}

TEST(Modules, CheckerAgreesWithDirectEvaluation) {
  Rng rng(14);
  auto inst = support::catalog_instance("scaled_projection(1,2)");
  for (int trial = 0; trial < 40; ++trial) {
    FdLeftModule m = regular_left(inst);
    if (trial % 2) m.operators[rng() % 2](rng() % 2, rng() % 2) += support::random_scalar(rng);
    bool oracle = true;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t p = 0; p < 2; ++p) oracle &= left_identity_on(m, unit_vector(2, i), unit_vector(2, p));
    EXPECT_EQ(check_left_module(m).ok(), oracle);
  }
}

TEST(Modules, ShapeErrors) {
  auto inst = support::catalog_instance("scaled_projection(1)");
  FdLeftModule m = regular_left(inst);
  m.action.pop_back();
  EXPECT_THROW(check_left_module(m), InputError);
}

TEST(Bimodule, RegularOverCommutativeInstances) {
  for (const std::string name : {"trivial(2,2)", "scaled_projection(1)", "scaled_projection(1,2)", "scaled_projection(2,3,5)"}) {
    auto inst = support::catalog_instance(name);
    EXPECT_TRUE(check_bimodule(regular_bimodule(inst)).ok()) << name;
  }
}

TEST(Bimodule, RegularOverUpperTriangularFailsCompatibility) {
  // P(x) = E11 x is a right module map but not a left one.
  auto inst = support::catalog_instance("upper_triangular");
  Report r = check_bimodule(regular_bimodule(inst));
  EXPECT_FALSE(r.ok());
  bool saw = false;
  for (const auto& v : r.violations) saw |= v.law == "right operators commute with left action";
  EXPECT_TRUE(saw);
}

TEST(Bimodule, NonCommutingOperatorsAreReported) {
  auto inst = support::catalog_instance("trivial(1,1)");
  FdBimodule b{nilpotent_over_trivial(), {}};
  b.right.instance = inst;
  b.right.dim = 2;
  b.right.action = {Matrix::identity(2)};
  Matrix other(2, 2);
  other(1, 0) = 1;
  b.right.operators = {other};
  Report r = check_bimodule(b);
  bool saw = false;
  for (const auto& v : r.violations) saw |= v.law == "operator families commute";
  EXPECT_TRUE(saw);
}

TEST(Quotient, WorkedExample) {
  auto inst = support::catalog_instance("scaled_projection(1)");
  FdLeftModule reg = regular_left(inst);
  Subspace n = Subspace::span(2, {unit_vector(2, 1)});
  FdLeftModule q = quotient_module(reg, n);
  EXPECT_EQ(q.dim, 1u);
  EXPECT_TRUE(check_left_module(q).ok());
  EXPECT_TRUE(check_hom(quotient_map(reg, n)).ok());
  EXPECT_EQ(quotient_module(reg, Subspace(2)).dim, 2u);
  EXPECT_EQ(quotient_module(reg, Subspace::full(2)).dim, 0u);
}

TEST(Quotient, NonClosedSubspaceNamesGenerator) {
  auto inst = support::catalog_instance("scaled_projection(1)");
  FdLeftModule reg = regular_left(inst);
  try {
    quotient_module(reg, Subspace::span(2, {{Scalar(1), Scalar(1)}}));
    FAIL() << "expected a closure violation";
  } catch (const ClosureViolation& e) {
    EXPECT_FALSE(e.generator().empty());
  }
}

TEST(Quotient, RandomGeneratedSubmodulesGiveValidQuotients) {
  Rng rng(8);
  for (const auto& name : catalog::names()) {
    auto inst = support::catalog_instance(name);
    std::vector<FdLeftModule> parts{regular_left(inst), regular_left(inst)};
    FdLeftModule m = direct_sum<Side::left>(inst, parts).sum;
    for (int trial = 0; trial < 5; ++trial) {
      Subspace n = generated_submodule(m, {support::random_vector(rng, m.dim)});
      FdLeftModule q = quotient_module(m, n);
      EXPECT_EQ(q.dim, m.dim - n.dim());
      EXPECT_TRUE(check_left_module(q).ok()) << name;
      EXPECT_TRUE(check_hom(quotient_map(m, n)).ok()) << name;
      auto sub = submodule(m, n);
      EXPECT_TRUE(check_left_module(sub.module).ok()) << name;
      EXPECT_TRUE(check_hom(sub.inclusion).ok()) << name;
    }
  }
}

TEST(DirectSum, InclusionsAndProjections) {
  auto inst = support::catalog_instance("scaled_projection(1,2)");
  std::vector<FdLeftModule> parts{regular_left(inst), regular_left(inst)};
  auto s = direct_sum<Side::left>(inst, parts);
  EXPECT_EQ(s.sum.dim, 4u);
  EXPECT_TRUE(check_left_module(s.sum).ok());
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(compose(s.projections[i], s.inclusions[i]).matrix, Matrix::identity(2));
    EXPECT_TRUE(check_hom(s.inclusions[i]).ok());
    EXPECT_TRUE(check_hom(s.projections[i]).ok());
  }
  EXPECT_EQ(direct_sum<Side::left>(inst, std::span<const FdLeftModule>{}).sum.dim, 0u);
  std::vector<FdLeftModule> one{regular_left(inst)};
  EXPECT_EQ(direct_sum<Side::left>(inst, one).inclusions[0].matrix, Matrix::identity(2));
}

TEST(DirectSum, KernelAdditivity) {
  Rng rng(50);
  auto inst = support::catalog_instance("trivial(2,1)");
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<LeftHom> homs;
    std::size_t expected = 0;
    FdLeftModule reg = regular_left(inst);
    HomSpace h = hom_space(reg, reg);
    for (int k = 0; k < 3; ++k) {
      Vector c = support::random_vector(rng, h.dim(), 1);
      LeftHom f{reg, reg, h.from_coordinates(c)};
      expected += kernel(f.matrix).dim();
      homs.push_back(f);
    }
    LeftHom sum = direct_sum_hom<Side::left>(inst, homs);
    EXPECT_EQ(kernel(sum.matrix).dim(), expected);
  }
}

TEST(ModuleConstants, Examples) {
  auto trivial = support::catalog_instance("trivial(2,2)");
  EXPECT_EQ(module_constants(regular_left(trivial)).dim(), 2u);
  auto sp = support::catalog_instance("scaled_projection(1)");
  EXPECT_EQ(module_constants(regular_left(sp)).dim(), 2u);
  FdLeftModule n = nilpotent_over_trivial();
  EXPECT_TRUE(check_left_module(n).ok());
  EXPECT_EQ(module_constants(n).dim(), 1u);
}

TEST(RestrictedFree, ShapesAndChecks) {
  auto inst = support::catalog_instance("scaled_projection(1)");
  RestrictedFree f = restricted_free(inst, {"x", "y"});
  EXPECT_EQ(f.module.dim, 4u);
  EXPECT_TRUE(check_left_module(f.module).ok());
  auto trivial = support::catalog_instance("trivial(2,1)");
  for (const auto& o : restricted_free(trivial, {"x", "y"}).module.operators) EXPECT_TRUE(o.is_zero());
}

TEST(RestrictedFree, SingletonIsRegular) {
  for (const auto& name : catalog::names()) {
    auto inst = support::catalog_instance(name);
    RestrictedFree f = restricted_free(inst, {"x"});
    FdLeftModule reg = regular_left(inst);
    // r x -> r is the labelled isomorphism; find it inside the hom space too.
    LeftHom iso{f.module, reg, Matrix::identity(reg.dim)};
    EXPECT_TRUE(check_hom(iso).ok()) << name;
    EXPECT_TRUE(hom_space(f.module, reg).contains(iso.matrix));
    EXPECT_TRUE(hom_space(reg, f.module).contains(iso.matrix));
  }
}

TEST(RestrictedFree, LiftReproducesGeneratorsAndRejectsOutsideMc) {
  Rng rng(21);
  auto sp = support::catalog_instance("scaled_projection(1,2)");
  RestrictedFree f = restricted_free(sp, {"x", "y"});
  FdLeftModule reg = regular_left(sp);
  std::vector<Vector> images{support::random_vector(rng, 2), support::random_vector(rng, 2)};
  LeftHom phi = restricted_lift(f, reg, images);
  EXPECT_TRUE(check_hom(phi).ok());
  const Vector& u = sp->algebra().unit;
  for (std::size_t x = 0; x < 2; ++x) {
    Vector gen(4);
    for (std::size_t k = 0; k < 2; ++k) gen[x * 2 + k] = u[k];
    EXPECT_EQ(phi.matrix * gen, images[x]);
  }
  // Uniqueness: the homs agreeing with phi on the generators form a point.
  HomSpace h = hom_space(f.module, reg);
  EXPECT_EQ(h.dim(), 2u * module_constants(reg).dim());

  FdLeftModule n = nilpotent_over_trivial();
  RestrictedFree g = restricted_free(n.instance, {"x"});
  EXPECT_THROW(restricted_lift(g, n, {unit_vector(2, 1)}), PreconditionError);
  EXPECT_TRUE(check_hom(restricted_lift(g, n, {unit_vector(2, 0)})).ok());
}

TEST(HomSpace, Examples) {
  auto sp = support::catalog_instance("scaled_projection(1)");
  FdLeftModule reg = regular_left(sp);
  HomSpace h = hom_space(reg, reg);
  EXPECT_EQ(h.dim(), 2u);
  EXPECT_TRUE(h.contains(Matrix::identity(2)));
  EXPECT_EQ(hom_space(reg, FdLeftModule::zero(sp)).dim(), 0u);
}

TEST(HomSpace, ElementsIntertwine) {
  for (const auto& name : catalog::names()) {
    auto inst = support::catalog_instance(name);
    FdLeftModule reg = regular_left(inst);
    HomSpace h = hom_space(reg, reg);
    EXPECT_TRUE(h.contains(Matrix::identity(reg.dim)));
    for (std::size_t k = 0; k < h.dim(); ++k) EXPECT_TRUE(check_hom(LeftHom{reg, reg, h.element(k)}).ok()) << name;
  }
}

TEST(HomModule, VariantsOverScaledProjection) {
  auto sp = support::catalog_instance("scaled_projection(1,2)");
  FdBimodule bi = regular_bimodule(sp);
  auto a = hom_module_a(bi.right, bi);
  EXPECT_EQ(a.module.dim, 2u);
  EXPECT_TRUE(check_left_module(a.module).ok());
  auto b = hom_module_b(bi.left, bi);
  EXPECT_TRUE(check_right_module(b.module).ok());
  auto c = hom_module_c(bi, bi.left);
  EXPECT_TRUE(check_left_module(c.module).ok());
  auto d = hom_module_d(bi, bi.right);
  EXPECT_TRUE(check_right_module(d.module).ok());
}

TEST(HomModule, ZeroHomSpaceGivesZeroModule) {
  auto sp = support::catalog_instance("scaled_projection(1)");
  FdBimodule bi = regular_bimodule(sp);
  auto a = hom_module_a(FdRightModule::zero(sp), bi);
  EXPECT_EQ(a.module.dim, 0u);
  EXPECT_TRUE(check_left_module(a.module).ok());
}

TEST(HomModule, HypothesisFailureIsReported) {
  auto ut = support::catalog_instance("upper_triangular");
  FdBimodule bi = regular_bimodule(ut);
  EXPECT_THROW(hom_module_c(bi, bi.left), PreconditionError);
}

TEST(Reweight, ModuleExample) {
  auto sp = support::catalog_instance("scaled_projection(1,2)");
  ReweightSpec spec{{"1"}, {{Scalar(1), Scalar(1)}}};
  FdLeftModule m = reweight_module(regular_left(sp), spec);
  EXPECT_EQ(*m.instance, catalog::scaled_projection({Scalar(3)}));
  EXPECT_EQ(m.operators[0], Scalar(3) * sp->op(0));
  EXPECT_TRUE(check_left_module(m).ok());
  FdLeftModule same = reweight_module(regular_left(sp), ReweightSpec::identity(sp->operators()));
  EXPECT_EQ(same.operators, regular_left(sp).operators);
  EXPECT_THROW(reweight_module(regular_left(sp), {{}, {}}), InputError);
}

TEST(Reweight, RandomSpecsKeepModulesValid) {
  Rng rng(60);
  for (const auto& name : catalog::names()) {
    auto inst = support::catalog_instance(name);
    for (int trial = 0; trial < 5; ++trial) {
      ReweightSpec spec;
      for (std::size_t i = 0; i < 2; ++i) {
        spec.labels.push_back("a" + std::to_string(i));
        spec.coefficients.push_back(support::random_vector(rng, inst->omega_size()));
      }
      EXPECT_TRUE(check_left_module(reweight_module(regular_left(inst), spec)).ok()) << name;
      EXPECT_TRUE(check_right_module(reweight_module(regular_right(inst), spec)).ok()) << name;
    }
  }
}

TEST(LiftThroughEpi, Examples) {
  auto sp = support::catalog_instance("scaled_projection(1,2)");
  FdLeftModule reg = regular_left(sp);
  LeftHom id = identity_hom(reg);
  auto same = lift_through_epi(id, id);
  ASSERT_TRUE(same);
  EXPECT_EQ(same->matrix, id.matrix);

  std::vector<FdLeftModule> parts{reg, reg};
  auto sum = direct_sum<Side::left>(sp, parts);
  auto lifted = lift_through_epi(sum.projections[0], id);
  ASSERT_TRUE(lifted);
  EXPECT_EQ(compose(sum.projections[0], *lifted).matrix, id.matrix);

  // theta: N -> N/ker with incompatible operators on the source of phi.
  FdLeftModule n;
  n.instance = support::catalog_instance("trivial(1,1)");
  n.dim = 2;
  n.action = {Matrix::identity(2)};
  Matrix op(2, 2);
  op(0, 1) = 1;
  n.operators = {op};
  Subspace bottom = Subspace::span(2, {unit_vector(2, 0)});
  LeftHom theta = quotient_map(n, bottom);
  FdLeftModule quotient = theta.target;
  EXPECT_FALSE(lift_through_epi(theta, identity_hom(quotient)));
  EXPECT_THROW(lift_through_epi(LeftHom{reg, reg, Matrix(2, 2)}, id), PreconditionError);
}
