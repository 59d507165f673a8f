#include "mrb/documents.hpp"

#include <fstream>

#include "mrb/errors.hpp"

namespace mrb {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) throw InputError(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::vector<Matrix> matrix_list(const Json& j, std::size_t count, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != count)
    throw InputError(std::string(what) + " must list " + std::to_string(count) + " matrices");
  std::vector<Matrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m, n, n));
  return out;
}

std::vector<Matrix> labelled_matrices(const Json& j, const std::vector<std::string>& labels, std::size_t n,
                                      const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + " must be an object keyed by label");
  if (j.size() != labels.size())
    throw InputError(std::string(what) + " must have one entry per operator label");
  std::vector<Matrix> out;
  for (const auto& label : labels) {
    auto it = j.find(label);
    if (it == j.end()) throw UnknownLabel(std::string(what) + " lacks label '" + label + "'");
    out.push_back(matrix_from_json(*it, n, n));
  }
  return out;
}

Json labelled_json(const std::vector<Matrix>& ms, const std::vector<std::string>& labels) {
  Json out = Json::object();
  for (std::size_t w = 0; w < labels.size(); ++w) out[labels[w]] = to_json(ms[w]);
  return out;
}

template <Side S>
FdModule<S> structure(InstancePtr inst, std::size_t dim, const Json& action, const Json& operators) {
  FdModule<S> m;
  m.instance = std::move(inst);
  m.dim = dim;
  m.action = matrix_list(action, m.instance->dim(), dim, "action");
  for (auto& a : m.action) a = a.transpose();
  m.operators = labelled_matrices(operators, m.instance->omega(), dim, "operators");
  m.validate_shape();
  return m;
}

}  // namespace

Json to_json(const Scalar& s) { return to_string(s); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Scalar scalar_from_json(const Json& j) {
  if (!j.is_string()) throw InputError("rationals must be given as strings");
  return parse_scalar(j.get<std::string>());
}

Vector vector_from_json(const Json& j, std::size_t length) {
  if (!j.is_array() || j.size() != length)
    throw InputError("expected a vector of length " + std::to_string(length));
  Vector v;
  for (const auto& x : j) v.push_back(scalar_from_json(x));
  return v;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw InputError("expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  std::vector<Vector> rs;
  for (const auto& r : j) rs.push_back(vector_from_json(r, cols));
  return Matrix::from_rows(rs, cols);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

MrbInstance instance_from_json(const Json& j) {
  AlgebraPresentation a;
  a.dim = size_field(j, "dim");
  const Json& basis = field(j, "basis");
  if (!basis.is_array()) throw MalformedPresentation("basis must be an array of names");
  for (const auto& b : basis) {
    if (!b.is_string()) throw MalformedPresentation("basis names must be strings");
    a.basis_labels.push_back(b.get<std::string>());
  }
  const Json& sc = field(j, "structure_constants");
  if (!sc.is_array() || sc.size() != a.dim) throw MalformedPresentation("structure_constants must be dim x dim x dim");
  for (const auto& row : sc) {
    if (!row.is_array() || row.size() != a.dim)
      throw MalformedPresentation("structure_constants must be dim x dim x dim");
    std::vector<Vector> r;
    for (const auto& c : row) r.push_back(vector_from_json(c, a.dim));
    a.structure.push_back(std::move(r));
  }
  a.unit = vector_from_json(field(j, "unit"), a.dim);
  a.validate_shape();

  OperatorFamily ops;
  const Json& omega = field(j, "omega");
  if (!omega.is_array()) throw InputError("omega must be an array of labels");
  for (const auto& w : omega) {
    if (!w.is_string()) throw InputError("omega labels must be strings");
    ops.labels.push_back(w.get<std::string>());
  }
  ops.matrices = labelled_matrices(field(j, "operators"), ops.labels, a.dim, "operators");
  const Json& wj = field(j, "weights");
  if (!wj.is_object() || wj.size() != ops.labels.size()) throw InputError("weights must have one entry per label");
  WeightFamily weights;
  for (const auto& label : ops.labels) {
    auto it = wj.find(label);
    if (it == wj.end()) throw UnknownLabel("weights lack label '" + label + "'");
    weights.push_back(scalar_from_json(*it));
  }
  return MrbInstance(std::move(a), std::move(ops), std::move(weights));
}

Json to_json(const MrbInstance& inst) {
  const auto& a = inst.algebra();
  Json sc = Json::array();
  for (const auto& row : a.structure) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(to_json(c));
    sc.push_back(std::move(r));
  }
  Json weights = Json::object();
  for (std::size_t w = 0; w < inst.omega_size(); ++w) weights[inst.omega()[w]] = to_json(inst.weight(w));
  return {{"dim", a.dim},
          {"basis", a.basis_labels},
          {"structure_constants", std::move(sc)},
          {"unit", to_json(a.unit)},
          {"omega", inst.omega()},
          {"operators", labelled_json(inst.operators().matrices, inst.omega())},
          {"weights", std::move(weights)}};
}

MrbInstance load_instance(std::string_view ref, const std::filesystem::path& base) {
  std::filesystem::path path(ref);
  if (path.is_relative() && !base.empty()) path = base / path;
  std::error_code ec;
  if (std::filesystem::is_regular_file(path, ec)) return instance_from_json(read_json_file(path));
  return catalog::by_name(ref);
}

MrbInstance instance_from_ref(const Json& ref, const std::filesystem::path& base) {
  if (ref.is_string()) return load_instance(ref.get<std::string>(), base);
  return instance_from_json(ref);
}

ModuleDocument module_from_json(const Json& j, const std::filesystem::path& base) {
  ModuleDocument doc;
  const Json& side = field(j, "side");
  if (!side.is_string()) throw InputError("side must be a string");
  doc.side = side.get<std::string>();
  InstancePtr inst = verified_instance(instance_from_ref(field(j, "instance"), base));
  const std::size_t dim = size_field(j, "dim");
  if (doc.side == "left") {
    doc.left = structure<Side::left>(inst, dim, field(j, "action"), field(j, "operators"));
  } else if (doc.side == "right") {
    doc.right = structure<Side::right>(inst, dim, field(j, "action"), field(j, "operators"));
  } else if (doc.side == "bimodule") {
    auto right_inst = j.contains("right_instance")
                          ? verified_instance(instance_from_ref(j["right_instance"], base))
                          : inst;
    FdBimodule b;
    b.left = structure<Side::left>(inst, dim, field(j, "action"), field(j, "operators"));
    b.right = structure<Side::right>(right_inst, dim, field(j, "right_action"), field(j, "right_operators"));
    doc.bimodule = std::move(b);
  } else {
    throw InputError("side must be \"left\", \"right\" or \"bimodule\"");
  }
  return doc;
}

ModuleDocument load_module(const std::filesystem::path& path) {
  return module_from_json(read_json_file(path), path.parent_path());
}

template <Side S>
Json to_json(const FdModule<S>& m) {
  Json action = Json::array();
  for (const auto& a : m.action) action.push_back(to_json(a.transpose()));
  return {{"instance", to_json(*m.instance)},
          {"dim", m.dim},
          {"action", std::move(action)},
          {"operators", labelled_json(m.operators, m.instance->omega())},
          {"side", S == Side::left ? "left" : "right"}};
}

template Json to_json(const FdModule<Side::left>&);
template Json to_json(const FdModule<Side::right>&);

Json to_json(const FdBimodule& m) {
  Json out = to_json(m.left);
  Json right = to_json(m.right);
  out["side"] = "bimodule";
  out["right_instance"] = right["instance"];
  out["right_action"] = right["action"];
  out["right_operators"] = right["operators"];
  return out;
}

ReweightSpec reweight_spec_from_json(const Json& j) {
  ReweightSpec spec;
  const Json& labels = field(j, "labels");
  const Json& rows = field(j, "coefficients");
  if (!labels.is_array() || !rows.is_array()) throw InputError("reweight spec needs label and coefficient arrays");
  for (const auto& l : labels) {
    if (!l.is_string()) throw InputError("reweight labels must be strings");
    spec.labels.push_back(l.get<std::string>());
  }
  for (const auto& r : rows) {
    if (!r.is_array()) throw InputError("coefficient rows must be arrays");
    spec.coefficients.push_back(vector_from_json(r, r.size()));
  }
  return spec;
}

Json to_json(const Report& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    Json at = Json::array();
    for (const auto& [k, x] : v.at) at.push_back({k, x});
    violations.push_back({{"law", v.law}, {"at", std::move(at)}, {"residual", to_json(v.residual)}});
  }
  return {{"ok", r.ok()}, {"evaluated", r.evaluated}, {"violations", std::move(violations)}};
}

Json to_json(const HomSpace& h) {
  Json basis = Json::array();
  for (std::size_t k = 0; k < h.dim(); ++k) basis.push_back(to_json(h.element(k)));
  return {{"dim", h.dim()}, {"source_dim", h.source_dim}, {"target_dim", h.target_dim}, {"basis", std::move(basis)}};
}

Json to_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& v : s.basis()) basis.push_back(to_json(v));
  return {{"dim", s.dim()}, {"ambient_dim", s.ambient_dim()}, {"basis", std::move(basis)}};
}

Json to_json(const ProbeResult& p) {
  Json out = {{"probe", p.name},
              {"dims",
               {{"source_tensor", p.source_tensor_dim},
                {"target_tensor", p.target_tensor_dim},
                {"induced_rank", p.induced_rank}}},
              {"verdict", p.preserved ? "preserved" : "broken"}};
  out["witness"] = p.witness ? to_json(*p.witness) : Json(nullptr);
  return out;
}

}  // namespace mrb
