#include "mrb/algebra.hpp"

#include "mrb/errors.hpp"

namespace mrb {

std::size_t label_index(const std::vector<std::string>& labels, std::string_view label,
                        std::string_view what) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  throw UnknownLabel("unknown " + std::string(what) + " '" + std::string(label) + "'");
}

void AlgebraPresentation::validate_shape() const {
  if (basis_labels.size() != dim)
    throw MalformedPresentation("basis has " + std::to_string(basis_labels.size()) +
                                " labels, expected " + std::to_string(dim));
  if (unit.size() != dim) throw MalformedPresentation("unit length does not match dim");
  if (structure.size() != dim) throw MalformedPresentation("structure constants: wrong outer size");
  for (const auto& row : structure) {
    if (row.size() != dim) throw MalformedPresentation("structure constants: wrong middle size");
    for (const auto& v : row)
      if (v.size() != dim) throw MalformedPresentation("structure constants: wrong inner size");
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      if (basis_labels[i] == basis_labels[j])
        throw MalformedPresentation("duplicate basis label '" + basis_labels[i] + "'");
}

Vector AlgebraPresentation::multiply(const Vector& x, const Vector& y) const {
  Vector out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (sgn(y[j]) == 0) continue;
      axpy(out, x[i] * y[j], structure[i][j]);
    }
  }
  return out;
}

Matrix AlgebraPresentation::left_multiplication(const Vector& x) const {
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) m(k, j) += x[i] * structure[i][j][k];
  }
  return m;
}

Matrix AlgebraPresentation::right_multiplication(const Vector& x) const {
  Matrix m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    if (sgn(x[j]) == 0) continue;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k) m(k, i) += x[j] * structure[i][j][k];
  }
  return m;
}

std::size_t AlgebraPresentation::basis_index(std::string_view label) const {
  return label_index(basis_labels, label, "basis element");
}

AlgebraPresentation AlgebraPresentation::componentwise(std::size_t d) {
  AlgebraPresentation a;
  a.dim = d;
  for (std::size_t i = 0; i < d; ++i) a.basis_labels.push_back("e" + std::to_string(i + 1));
  a.structure.assign(d, std::vector<Vector>(d, Vector(d)));
  for (std::size_t i = 0; i < d; ++i) a.structure[i][i][i] = 1;
  a.unit.assign(d, Scalar(1));
  return a;
}

Report check_presentation(const AlgebraPresentation& a) {
  a.validate_shape();
  Report report;
  const std::size_t d = a.dim;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Vector left = a.multiply(a.basis_product(i, j), unit_vector(d, k));
        Vector right = a.multiply(unit_vector(d, i), a.basis_product(j, k));
        ++report.evaluated;
        Vector residual = left - right;
        if (!is_zero(residual))
          report.add("associativity",
                     {{"i", a.basis_labels[i]}, {"j", a.basis_labels[j]}, {"k", a.basis_labels[k]}},
                     std::move(residual));
      }
  for (std::size_t i = 0; i < d; ++i) {
    Vector b = unit_vector(d, i);
    Vector left = a.multiply(a.unit, b) - b;
    Vector right = a.multiply(b, a.unit) - b;
    report.evaluated += 2;
    if (!is_zero(left)) report.add("left unit", {{"i", a.basis_labels[i]}}, std::move(left));
    if (!is_zero(right)) report.add("right unit", {{"i", a.basis_labels[i]}}, std::move(right));
  }
  return report;
}

std::size_t OperatorFamily::index_of(std::string_view label) const {
  return label_index(labels, label, "operator label");
}

MrbInstance::MrbInstance(AlgebraPresentation algebra, OperatorFamily operators, WeightFamily weights)
    : algebra_(std::move(algebra)), operators_(std::move(operators)), weights_(std::move(weights)) {
  algebra_.validate_shape();
  if (operators_.matrices.size() != operators_.labels.size())
    throw MalformedPresentation("operator family: label and matrix counts differ");
  for (std::size_t w = 0; w < operators_.size(); ++w) {
    const Matrix& m = operators_.matrices[w];
    if (m.rows() != algebra_.dim || m.cols() != algebra_.dim)
      throw MalformedPresentation("operator '" + operators_.labels[w] + "' has the wrong shape");
    for (std::size_t v = w + 1; v < operators_.size(); ++v)
      if (operators_.labels[w] == operators_.labels[v])
        throw MalformedPresentation("duplicate operator label '" + operators_.labels[w] + "'");
  }
  if (weights_.size() != operators_.size())
    throw MalformedPresentation("weight family does not match operator labels");
}

bool MrbInstance::operator==(const MrbInstance& other) const {
  return algebra_.dim == other.algebra_.dim && algebra_.structure == other.algebra_.structure &&
         algebra_.unit == other.algebra_.unit && operators_.labels == other.operators_.labels &&
         operators_.matrices == other.operators_.matrices && weights_ == other.weights_;
}

Report mrb_identity_violations(const MrbInstance& inst) {
  const auto& a = inst.algebra();
  const std::size_t d = inst.dim();
  const std::size_t s = inst.omega_size();
  Report report;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vector r1 = unit_vector(d, i);
      Vector r2 = unit_vector(d, j);
      Vector r1r2 = a.basis_product(i, j);
      for (std::size_t al = 0; al < s; ++al)
        for (std::size_t be = 0; be < s; ++be) {
          const Matrix& pa = inst.op(al);
          const Matrix& pb = inst.op(be);
          Vector pa_r1 = pa * r1;
          Vector pb_r2 = pb * r2;
          Vector lhs = a.multiply(pa_r1, pb_r2);
          Vector rhs = pa * a.multiply(r1, pb_r2);
          rhs = rhs + pb * a.multiply(pa_r1, r2);
          axpy(rhs, inst.weight(be), pa * r1r2);
          axpy(rhs, inst.weight(al), pb * r1r2);
          ++report.evaluated;
          Vector residual = lhs - rhs;
          if (!is_zero(residual))
            report.add("mrb identity",
                       {{"r1", a.basis_labels[i]},
                        {"r2", a.basis_labels[j]},
                        {"alpha", inst.omega()[al]},
                        {"beta", inst.omega()[be]}},
                       std::move(residual));
        }
    }
  return report;
}

Report check_mrb_identity(MrbInstance& inst) {
  Report report = check_presentation(inst.algebra());
  if (!report.ok()) {
    inst.verified_ = false;
    return report;
  }
  report = mrb_identity_violations(inst);
  inst.verified_ = report.ok();
  return report;
}

InstancePtr verified_instance(MrbInstance inst) {
  Report r = check_mrb_identity(inst);
  if (!r.ok())
    throw PreconditionError("instance fails the multiple Rota-Baxter identity (" +
                            std::to_string(r.violations.size()) + " violations)");
  return std::make_shared<const MrbInstance>(std::move(inst));
}

ReweightSpec ReweightSpec::identity(const OperatorFamily& family) {
  ReweightSpec spec;
  spec.labels = family.labels;
  for (std::size_t w = 0; w < family.size(); ++w)
    spec.coefficients.push_back(unit_vector(family.size(), w));
  return spec;
}

void validate_reweight_spec(const ReweightSpec& spec, std::size_t source_labels) {
  if (spec.coefficients.empty()) throw InputError("reweight spec defines an empty family");
  if (spec.labels.size() != spec.coefficients.size())
    throw InputError("reweight spec: label and coefficient row counts differ");
  for (const auto& row : spec.coefficients)
    if (row.size() != source_labels)
      throw InputError("reweight spec: coefficient row length does not match the label set");
  for (std::size_t i = 0; i < spec.labels.size(); ++i)
    for (std::size_t j = i + 1; j < spec.labels.size(); ++j)
      if (spec.labels[i] == spec.labels[j])
        throw InputError("reweight spec: duplicate label '" + spec.labels[i] + "'");
}

MrbInstance reweight(const MrbInstance& inst, const ReweightSpec& spec) {
  if (!inst.verified()) throw PreconditionError("reweight requires a verified instance");
  validate_reweight_spec(spec, inst.omega_size());
  OperatorFamily family;
  WeightFamily weights;
  family.labels = spec.labels;
  for (const auto& row : spec.coefficients) {
    Matrix p(inst.dim(), inst.dim());
    Scalar lambda = 0;
    for (std::size_t w = 0; w < row.size(); ++w) {
      if (sgn(row[w]) == 0) continue;
      p += row[w] * inst.op(w);
      lambda += row[w] * inst.weight(w);
    }
    family.matrices.push_back(std::move(p));
    weights.push_back(lambda);
  }
  MrbInstance out(inst.algebra(), std::move(family), std::move(weights));
  check_mrb_identity(out);
  return out;
}

}  // namespace mrb
