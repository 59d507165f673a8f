#include <regex>

#include "mrb/algebra.hpp"
#include "mrb/errors.hpp"

namespace mrb::catalog {

namespace {

std::vector<std::string> numbered_labels(std::size_t s) {
  std::vector<std::string> labels;
  for (std::size_t w = 0; w < s; ++w) labels.push_back(std::to_string(w + 1));
  return labels;
}

MrbInstance checked(MrbInstance inst) {
  check_mrb_identity(inst);
  return inst;
}

}  // namespace

MrbInstance trivial(const AlgebraPresentation& algebra, std::size_t s) {
  OperatorFamily family{numbered_labels(s), std::vector<Matrix>(s, Matrix(algebra.dim, algebra.dim))};
  return checked(MrbInstance(algebra, std::move(family), WeightFamily(s)));
}

MrbInstance trivial(std::size_t d, std::size_t s) {
  if (d == 0) throw InputError("trivial instance needs dim >= 1");
  return trivial(AlgebraPresentation::componentwise(d), s);
}

MrbInstance scaled_projection(const std::vector<Scalar>& c) {
  if (c.empty()) throw InputError("scaled_projection needs at least one coefficient");
  Matrix p(2, 2);
  p(0, 0) = 1;
  OperatorFamily family;
  WeightFamily weights;
  family.labels = numbered_labels(c.size());
  for (const auto& x : c) {
    if (sgn(x) == 0) throw InputError("scaled_projection coefficients must be nonzero");
    family.matrices.push_back(x * p);
    weights.push_back(-x / 2);
  }
  return checked(MrbInstance(AlgebraPresentation::componentwise(2), std::move(family), std::move(weights)));
}

MrbInstance upper_triangular() {
  AlgebraPresentation a;
  a.dim = 3;
  a.basis_labels = {"E11", "E12", "E22"};
  a.structure.assign(3, std::vector<Vector>(3, Vector(3)));
  a.structure[0][0][0] = 1;  // E11 E11 = E11
  a.structure[0][1][1] = 1;  // E11 E12 = E12
  a.structure[1][2][1] = 1;  // E12 E22 = E12
  a.structure[2][2][2] = 1;  // E22 E22 = E22
  a.unit = {1, 0, 1};
  Matrix p(3, 3);
  p(0, 0) = 1;
  p(1, 1) = 1;
  OperatorFamily family{{"1", "2"}, {p, Scalar(-1) * p}};
  WeightFamily weights{Scalar(-1, 2), Scalar(1, 2)};
  return checked(MrbInstance(std::move(a), std::move(family), std::move(weights)));
}

MrbInstance by_name(std::string_view name) {
  static const std::regex trivial_re(R"(trivial\((\d+),(\d+)\))");
  static const std::regex scaled_re(R"(scaled_projection\(([^()]*)\))");
  std::string text;
  for (char ch : name)
    if (ch != ' ') text.push_back(ch);
  std::smatch m;
  if (std::regex_match(text, m, trivial_re))
    return trivial(std::stoul(m[1].str()), std::stoul(m[2].str()));
  if (std::regex_match(text, m, scaled_re)) {
    std::vector<Scalar> c;
    std::string args = m[1].str();
    std::size_t start = 0;
    while (start <= args.size()) {
      std::size_t comma = args.find(',', start);
      std::string piece = args.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      c.push_back(parse_scalar(piece));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return scaled_projection(c);
  }
  if (text == "upper_triangular") return upper_triangular();
  throw InputError("unknown catalog instance '" + std::string(name) + "'");
}

std::vector<std::string> names() {
  return {"trivial(1,1)",           "trivial(2,2)",           "trivial(3,3)",
          "scaled_projection(1)",   "scaled_projection(1,2)", "scaled_projection(2,3,5)",
          "upper_triangular"};
}

}  // namespace mrb::catalog
