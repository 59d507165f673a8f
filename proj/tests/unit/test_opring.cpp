#include <gtest/gtest.h>

#include "mrb/opring.hpp"
#include "test_support.hpp"

using namespace mrb;
using mrb::support::Rng;

namespace {

OpElement random_op_element(Rng& rng, const OperatorRing& ring, std::size_t max_q) {
  auto words = ring.words(max_q);
  OpElement e;
  for (int k = 0; k < 3; ++k) e.add(words[rng() % words.size()], support::random_scalar(rng));
  return e;
}

// Direct left-to-right evaluation of a word on a module, used as an oracle for
// the ring: r_0 Q_1 r_1 ... acts as A(r_0) m_1 A(r_1) ... on column vectors.
Matrix evaluate(const OpWord& w, const FdLeftModule& m) {
  Matrix out = m.action[w.slots[0]];
  for (std::size_t k = 0; k < w.ops.size(); ++k) out = out * m.op(w.ops[k]) * m.action[w.slots[k + 1]];
  return out;
}

Matrix evaluate(const OpElement& e, const FdLeftModule& m) {
  Matrix out(m.dim, m.dim);
  for (const auto& [w, c] : e.terms()) out += c * evaluate(w, m);
  return out;
}

}  // namespace

TEST(OperatorRing, MultiplyExamples) {
  auto inst = support::catalog_instance("scaled_projection(1)");
  OperatorRing ring(inst);
  Vector e1 = unit_vector(2, 0), e2 = unit_vector(2, 1);
  EXPECT_TRUE(ring.multiply(ring.scalar(e1), ring.scalar(e2)).is_zero());
  OpElement b = ring.pure({e1, inst->algebra().unit}, {0});
  EXPECT_EQ(ring.multiply(ring.unit(), b), b);
  EXPECT_EQ(ring.multiply(b, ring.unit()), b);
  const Vector& u = inst->algebra().unit;
  OpElement lhs = ring.multiply(ring.pure({u, e1}, {0}), ring.pure({e1, u}, {0}));
  EXPECT_EQ(lhs, ring.pure({u, e1, u}, {0, 0}));
  for (const auto& [w, c] : lhs.terms()) EXPECT_EQ(w.q_degree(), 2u);
}

TEST(OperatorRing, NormalizeExample) {
  auto inst = support::catalog_instance("scaled_projection(1,2)");
  OperatorRing ring(inst);
  const Vector& u = inst->algebra().unit;
  Vector e2 = unit_vector(2, 1);
  RewriteReport r = ring.normalize(ring.pure({u, e2, u}, {0, 1}));
  OpElement expected = ring.pure({u, e2}, {0}) + Scalar(1, 2) * ring.pure({u, e2}, {1});
  EXPECT_EQ(r.output, expected);
  EXPECT_EQ(ring.to_string(r.output), "e1 Q[1] e2 + 1/2 * e1 Q[2] e2 + e2 Q[1] e2 + 1/2 * e2 Q[2] e2");
  EXPECT_EQ(r.strategy, "leftmost-innermost");
  EXPECT_GT(r.applications, 0u);
}

TEST(OperatorRing, LowDegreeWordsAreFixed) {
  auto inst = support::catalog_instance("upper_triangular");
  OperatorRing ring(inst);
  for (const auto& w : ring.words(1)) {
    RewriteReport r = ring.normalize(OpElement::single(w));
    EXPECT_EQ(r.output, OpElement::single(w));
    EXPECT_EQ(r.applications, 0u);
  }
}

TEST(OperatorRing, NormalFormsHaveDegreeAtMostOne) {
  for (const auto& name : catalog::names()) {
    auto inst = support::catalog_instance(name);
    OperatorRing ring(inst);
    const std::size_t q = inst->dim() * inst->omega_size() > 6 ? 2 : 3;
    for (const auto& w : ring.words(q))
      for (const auto& [v, c] : ring.normal_form(OpElement::single(w)).terms()) EXPECT_LE(v.q_degree(), 1u) << name;
  }
}

TEST(OperatorRing, RelationIsMappedToZeroOnModules) {
  // Evaluating on the regular module (an MRB module) is an independent route:
  // every relation must act as zero, and normal forms act like their inputs.
  Rng rng(3);
  for (const auto& name : catalog::names()) {
    auto inst = support::catalog_instance(name);
    OperatorRing ring(inst);
    FdLeftModule reg = regular_left(inst);
    for (std::size_t al = 0; al < inst->omega_size(); ++al)
      for (std::size_t be = 0; be < inst->omega_size(); ++be)
        for (std::size_t i = 0; i < inst->dim(); ++i)
          EXPECT_TRUE(evaluate(ring.relation(al, unit_vector(inst->dim(), i), be), reg).is_zero()) << name;
    for (int trial = 0; trial < 10; ++trial) {
      OpElement e = random_op_element(rng, ring, 3);
      EXPECT_EQ(evaluate(ring.normal_form(e), reg), evaluate(e, reg)) << name;
    }
  }
}

TEST(OperatorRing, RingLawsAfterNormalization) {
  Rng rng(19);
  for (const std::string name : {"scaled_projection(1,2)", "upper_triangular", "trivial(2,2)"}) {
    auto inst = support::catalog_instance(name);
    OperatorRing ring(inst);
    for (int trial = 0; trial < 20; ++trial) {
      OpElement a = random_op_element(rng, ring, 2), b = random_op_element(rng, ring, 2),
                c = random_op_element(rng, ring, 1);
      EXPECT_EQ(ring.normal_form(ring.multiply(a, ring.multiply(b, c))),
                ring.normal_form(ring.multiply(ring.multiply(a, b), c)));
      EXPECT_EQ(ring.normal_form(ring.multiply(ring.unit(), a)), ring.normal_form(a));
    }
  }
}

TEST(OperatorRing, ModuleIdentityInTheRing) {
  for (const auto& name : catalog::names()) {
    auto inst = support::catalog_instance(name);
    if (inst->omega_size() > 2) continue;
    OperatorRing ring(inst);
    for (std::size_t al = 0; al < inst->omega_size(); ++al)
      for (std::size_t be = 0; be < inst->omega_size(); ++be)
        for (std::size_t i = 0; i < inst->dim(); ++i)
          for (const auto& s : ring.words(1)) {
            OpElement g = ring.relation(al, unit_vector(inst->dim(), i), be);
            EXPECT_TRUE(ring.normal_form(ring.multiply(g, OpElement::single(s))).is_zero()) << name;
          }
  }
}

TEST(Oracle, DegreeOneHasNoRelations) {
  for (const auto& name : catalog::names()) {
    auto inst = support::catalog_instance(name);
    OperatorRing ring(inst);
    TruncatedQuotientOracle oracle(ring, 1);
    const std::size_t d = inst->dim(), s = inst->omega_size();
    EXPECT_EQ(oracle.dim(), d + d * d * s) << name;
    EXPECT_EQ(oracle.relation_count(), 0u);
  }
}

TEST(Oracle, TrivialOneByOne) {
  OperatorRing ring(support::catalog_instance("trivial(1,1)"));
  TruncatedQuotientOracle oracle(ring, 2);
  EXPECT_EQ(oracle.ambient_dim(), 3u);
  EXPECT_EQ(oracle.dim(), 2u);
}

TEST(Oracle, SoundnessAgainstNormalize) {
  // w - NF(w) is always an ideal element; the converse direction (equal
  // classes have equal normal forms) holds only where the rewriting is
  // confluent, i.e. on the trivial and single-operator instances.
  Rng rng(2024);
  for (const auto& name : catalog::names()) {
    auto inst = support::catalog_instance(name);
    OperatorRing ring(inst);
    TruncatedQuotientOracle oracle(ring, 3);
    const std::size_t d = inst->dim(), s = inst->omega_size();
    const bool confluent = confluence_probe(ring, 3).ok();
    if (confluent) EXPECT_EQ(oracle.dim(), d + d * d * s) << name;
    auto words = ring.words(3);
    for (std::size_t k = 0; k < words.size(); k += 1 + words.size() / 200) {
      OpElement w = OpElement::single(words[k]);
      EXPECT_TRUE(oracle.in_ideal(w - ring.normal_form(w))) << name;
    }
    for (int pair = 0; pair < 60; ++pair) {
      OpElement a = OpElement::single(words[rng() % words.size()]);
      OpElement b = OpElement::single(words[rng() % words.size()]);
      if (ring.normal_form(a) == ring.normal_form(b)) EXPECT_TRUE(oracle.in_ideal(a - b)) << name;
      if (confluent) EXPECT_EQ(ring.normal_form(a) == ring.normal_form(b), oracle.in_ideal(a - b)) << name;
    }
  }
}

TEST(Confluence, NoOverlapsBelowDegreeThree) {
  OperatorRing ring(support::catalog_instance("scaled_projection(1,2)"));
  ConfluenceReport r = confluence_probe(ring, 2);
  EXPECT_EQ(r.overlaps_checked, 0u);
  EXPECT_TRUE(r.ok());
}

TEST(Confluence, CatalogAtDegreeThree) {
  for (const auto& name : catalog::names()) {
    auto inst = support::catalog_instance(name);
    OperatorRing ring(inst);
    ConfluenceReport r = confluence_probe(ring, 3);
    EXPECT_GT(r.overlaps_checked, 0u);
    if (inst->omega_size() == 1 || name.rfind("trivial", 0) == 0) EXPECT_TRUE(r.ok()) << name;
    // Every discrepancy is an ideal element, so it must act as zero on MRB
    // modules; both routes are checked.
    std::vector<FdLeftModule> modules{regular_left(inst), restricted_free(inst, {"x", "y"}).module};
    for (const auto& disc : r.discrepancies) {
      EXPECT_TRUE(disc.difference_in_ideal) << name;
      EXPECT_NE(disc.first_normal_form, disc.second_normal_form);
      for (const auto& m : modules)
        EXPECT_EQ(evaluate(disc.first_normal_form, m), evaluate(disc.second_normal_form, m)) << name;
    }
  }
}

TEST(Confluence, ScaledProjectionPairIsNotConfluent) {
  // Finding: two operators already collapse degree-one words, so
  // {r, r Q s} is not independent in the quotient.
  OperatorRing ring(support::catalog_instance("scaled_projection(1,2)"));
  EXPECT_FALSE(confluence_probe(ring, 3).ok());
  EXPECT_LT(TruncatedQuotientOracle(ring, 3).dim(), 10u);
}

TEST(FreeModule, IdealGeneratorsCollapse) {
  for (const std::string name : {"scaled_projection(1)", "scaled_projection(1,2)", "upper_triangular", "trivial(2,2)"}) {
    auto inst = support::catalog_instance(name);
    OperatorRing ring(inst);
    OperatedFree f(inst, {"x"});
    for (const auto& g : f.ideal_generators(2))
      EXPECT_TRUE(ring.free_module_normal_form(ring.translate(g)).is_zero()) << name;
  }
}

TEST(FreeModule, WorkedExamples) {
  auto inst = support::catalog_instance("scaled_projection(1)");
  OperatorRing ring(inst);
  OperatedFree f(inst, {"x"});
  FreeModuleElement unit_x = FreeModuleElement::single({OpWord{{0}, {}}, 0});
  EXPECT_EQ(ring.free_module_normal_form(unit_x), unit_x);
  OperatedElement a = OperatedElement::word({{0}, {}, 0});
  EXPECT_TRUE(ring.free_module_normal_form(ring.translate(f.ideal_generator(unit_vector(2, 0), a, 0, 0))).is_zero());
  FreeModuleElement t = ring.translate(f.apply_operator(0, a));
  for (const auto& [key, c] : t.terms()) EXPECT_EQ(key.first.ops, (std::vector<std::size_t>{0}));
  EXPECT_EQ(ring.to_string(t, {"x"}), "(e1 Q[1] e1 : x) + (e2 Q[1] e1 : x)");
}
