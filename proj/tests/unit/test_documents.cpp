#include <gtest/gtest.h>

#include "mrb/documents.hpp"
#include "mrb/errors.hpp"
#include "test_support.hpp"

using namespace mrb;

TEST(Documents, InstanceRoundTrip) {
  for (const auto& name : catalog::names()) {
    MrbInstance inst = catalog::by_name(name);
    Json j = to_json(inst);
    MrbInstance back = instance_from_json(j);
    EXPECT_EQ(back, inst) << name;
    EXPECT_EQ(to_json(back).dump(), j.dump()) << name;
  }
}

TEST(Documents, MatrixConventionIsColumnImage) {
  // operators[w] row-major: column p is P(e_p).
  MrbInstance inst = catalog::by_name("upper_triangular");
  Json j = to_json(inst);
  Matrix p = matrix_from_json(j["operators"][inst.omega()[0]], inst.dim(), inst.dim());
  EXPECT_EQ(p, inst.op(0));
}

TEST(Documents, ActionEntriesAreInputThenOutput) {
  // action[i][p][q] is the coefficient of v_q in b_i v_p.
  auto ut = verified_instance(catalog::by_name("upper_triangular"));
  Json j = to_json(regular_left(ut));
  EXPECT_EQ(j["action"][1][2][1], "1");  // E12 E22 = E12
  EXPECT_EQ(j["action"][1][1][2], "0");
  EXPECT_EQ(j["action"][1][0][1], "0");  // E12 E11 = 0
  ModuleDocument back = module_from_json(j);
  EXPECT_EQ(back.left->action, regular_left(ut).action);
}

TEST(Documents, RationalsMustBeStrings) {
  EXPECT_THROW(scalar_from_json(Json(1)), InputError);
  EXPECT_THROW(scalar_from_json(Json("1/0")), InputError);
  EXPECT_EQ(scalar_from_json(Json("-3/6")), Scalar(-1, 2));
  EXPECT_THROW(vector_from_json(Json::array({"1"}), 2), InputError);
  EXPECT_THROW(matrix_from_json(Json::array({Json::array({"1", "0"})}), 2, 2), InputError);
}

TEST(Documents, MalformedInstances) {
  Json good = to_json(catalog::by_name("scaled_projection(1)"));
  Json missing = good;
  missing.erase("unit");
  EXPECT_THROW(instance_from_json(missing), InputError);
  Json short_sc = good;
  short_sc["structure_constants"].erase(1);
  EXPECT_THROW(instance_from_json(short_sc), MalformedPresentation);
  Json bad_weight = good;
  bad_weight["weights"] = Json::object({{"zz", "1"}});
  EXPECT_THROW(instance_from_json(bad_weight), UnknownLabel);
  Json dim = good;
  dim["dim"] = -1;
  EXPECT_THROW(instance_from_json(dim), InputError);
}

TEST(Documents, InstancesFromJsonAreUnchecked) {
  MrbInstance inst = instance_from_json(to_json(catalog::by_name("trivial(1,1)")));
  EXPECT_FALSE(inst.verified());
  EXPECT_TRUE(check_mrb_identity(inst).ok());
  EXPECT_TRUE(load_instance("trivial(1,1)").verified());
  EXPECT_THROW(load_instance("no_such_file.json"), InputError);
}

TEST(Documents, ModuleRoundTrip) {
  auto inst = support::catalog_instance("scaled_projection(1,2)");
  FdLeftModule reg = regular_left(inst);
  ModuleDocument doc = module_from_json(to_json(reg));
  ASSERT_TRUE(doc.left);
  EXPECT_EQ(doc.side, "left");
  EXPECT_EQ(doc.left->action, reg.action);
  EXPECT_EQ(doc.left->operators, reg.operators);

  Json by_name = to_json(reg);
  by_name["instance"] = "scaled_projection(1,2)";
  EXPECT_TRUE(check_left_module(*module_from_json(by_name).left).ok());

  FdBimodule bi = regular_bimodule(inst);
  ModuleDocument b = module_from_json(to_json(bi));
  ASSERT_TRUE(b.bimodule);
  EXPECT_EQ(b.bimodule->right.action, bi.right.action);
  EXPECT_TRUE(check_bimodule(*b.bimodule).ok());
}

TEST(Documents, MalformedModules) {
  auto inst = support::catalog_instance("scaled_projection(1)");
  Json j = to_json(regular_left(inst));
  Json side = j;
  side["side"] = "middle";
  EXPECT_THROW(module_from_json(side), InputError);
  Json ops = j;
  ops["operators"] = Json::object();
  EXPECT_THROW(module_from_json(ops), InputError);
  Json action = j;
  action["action"].erase(0);
  EXPECT_THROW(module_from_json(action), InputError);
}

TEST(Documents, ReweightSpec) {
  Json j = {{"labels", Json::array({"a"})}, {"coefficients", Json::array({Json::array({"1", "1"})})}};
  ReweightSpec s = reweight_spec_from_json(j);
  EXPECT_EQ(s.labels, std::vector<std::string>{"a"});
  EXPECT_EQ(s.coefficients[0], (Vector{Scalar(1), Scalar(1)}));
  EXPECT_THROW(reweight_spec_from_json(Json::object({{"labels", Json::array({"a"})}})), InputError);
}

TEST(Documents, ReportShape) {
  MrbInstance good = catalog::scaled_projection({Scalar(1)});
  MrbInstance bad(good.algebra(), good.operators(), {Scalar(-1)});
  Json r = to_json(check_mrb_identity(bad));
  EXPECT_FALSE(r["ok"].get<bool>());
  ASSERT_FALSE(r["violations"].empty());
  EXPECT_TRUE(r["violations"][0].contains("law"));
  EXPECT_TRUE(r["violations"][0]["at"].is_array());
  EXPECT_TRUE(r["violations"][0]["residual"][0].is_string());
}
