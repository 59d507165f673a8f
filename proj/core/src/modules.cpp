#include "mrb/modules.hpp"

#include "mrb/errors.hpp"

namespace mrb {

namespace {

const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }

std::string basis_label(const FdModule<Side::left>& m, std::size_t i) {
  return m.instance->algebra().basis_labels[i];
}
std::string basis_label(const FdModule<Side::right>& m, std::size_t i) {
  return m.instance->algebra().basis_labels[i];
}

std::string vec_label(std::size_t p) { return "v" + std::to_string(p + 1); }

// Adds one violation per nonzero column of the residual matrix.
void report_columns(Report& report, const std::string& law,
                    std::vector<std::pair<std::string, std::string>> at, const Matrix& residual) {
  for (std::size_t p = 0; p < residual.cols(); ++p) {
    ++report.evaluated;
    Vector col = residual.column(p);
    if (is_zero(col)) continue;
    auto where = at;
    where.emplace_back("v", vec_label(p));
    report.add(law, std::move(where), std::move(col));
  }
}

}  // namespace

bool same_instance(const InstancePtr& a, const InstancePtr& b) {
  if (!a || !b) return false;
  return a == b || *a == *b;
}

template <Side S>
void FdModule<S>::validate_shape() const {
  if (!instance) throw InputError("module has no instance");
  if (action.size() != instance->dim())
    throw InputError(std::string(side_name(S)) + " module: expected " +
                     std::to_string(instance->dim()) + " action matrices");
  if (operators.size() != instance->omega_size())
    throw InputError(std::string(side_name(S)) + " module: expected " +
                     std::to_string(instance->omega_size()) + " operator matrices");
  for (const auto& a : action)
    if (a.rows() != dim || a.cols() != dim) throw InputError("module action matrix has the wrong shape");
  for (const auto& o : operators)
    if (o.rows() != dim || o.cols() != dim) throw InputError("module operator matrix has the wrong shape");
}

template <Side S>
Matrix FdModule<S>::act(const Vector& r) const {
  Matrix out(dim, dim);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (sgn(r[i]) != 0) out += r[i] * action[i];
  return out;
}

template <Side S>
FdModule<S> FdModule<S>::zero(InstancePtr inst) {
  FdModule<S> m;
  m.dim = 0;
  m.action.assign(inst->dim(), Matrix(0, 0));
  m.operators.assign(inst->omega_size(), Matrix(0, 0));
  m.instance = std::move(inst);
  return m;
}

template struct FdModule<Side::left>;
template struct FdModule<Side::right>;

template <Side S>
Report check_action(const FdModule<S>& m) {
  m.validate_shape();
  const auto& alg = m.instance->algebra();
  const std::size_t d = alg.dim;
  Report report;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Matrix lhs = S == Side::left ? m.action[i] * m.action[j] : m.action[j] * m.action[i];
      Matrix residual = lhs - m.act(alg.basis_product(i, j));
      report_columns(report, "action associativity",
                     {{"i", alg.basis_labels[i]}, {"j", alg.basis_labels[j]}}, residual);
    }
  report_columns(report, "action unit", {}, m.act(alg.unit) - Matrix::identity(m.dim));
  return report;
}

template Report check_action(const FdLeftModule&);
template Report check_action(const FdRightModule&);

Report check_left_module(const FdLeftModule& m) {
  Report report = check_action(m);
  const auto& inst = *m.instance;
  const std::size_t d = inst.dim();
  const std::size_t s = inst.omega_size();
  for (std::size_t i = 0; i < d; ++i) {
    Vector b = unit_vector(d, i);
    const Matrix& a_i = m.action[i];
    for (std::size_t al = 0; al < s; ++al) {
      Matrix l_pb = m.act(inst.op(al) * b);
      for (std::size_t be = 0; be < s; ++be) {
        const Matrix& ma = m.op(al);
        const Matrix& mb = m.op(be);
        Matrix residual = l_pb * mb - ma * a_i * mb - mb * l_pb - inst.weight(be) * (ma * a_i) -
                          inst.weight(al) * (mb * a_i);
        report_columns(report, "left module identity",
                       {{"x", basis_label(m, i)}, {"alpha", inst.omega()[al]}, {"beta", inst.omega()[be]}},
                       residual);
      }
    }
  }
  return report;
}

Report check_right_module(const FdRightModule& m) {
  Report report = check_action(m);
  const auto& inst = *m.instance;
  const std::size_t d = inst.dim();
  const std::size_t s = inst.omega_size();
  for (std::size_t i = 0; i < d; ++i) {
    Vector x = unit_vector(d, i);
    const Matrix& r_x = m.action[i];
    for (std::size_t al = 0; al < s; ++al) {
      Matrix r_px = m.act(inst.op(al) * x);
      for (std::size_t be = 0; be < s; ++be) {
        const Matrix& ma = m.op(al);
        const Matrix& mb = m.op(be);
        Matrix residual = mb * r_px - mb * r_x * ma - r_px * mb - inst.weight(be) * (r_x * ma) -
                          inst.weight(al) * (r_x * mb);
        report_columns(report, "right module identity",
                       {{"x", basis_label(m, i)}, {"alpha", inst.omega()[al]}, {"beta", inst.omega()[be]}},
                       residual);
      }
    }
  }
  return report;
}

Report check_bimodule(const FdBimodule& m) {
  if (m.left.dim != m.right.dim) throw InputError("bimodule sides have different dimensions");
  Report report = check_left_module(m.left);
  report.merge(check_right_module(m.right));
  const auto& li = *m.left.instance;
  const auto& ri = *m.right.instance;
  for (std::size_t i = 0; i < li.dim(); ++i)
    for (std::size_t j = 0; j < ri.dim(); ++j)
      report_columns(report, "actions commute",
                     {{"r", li.algebra().basis_labels[i]}, {"r'", ri.algebra().basis_labels[j]}},
                     m.left.action[i] * m.right.action[j] - m.right.action[j] * m.left.action[i]);
  for (std::size_t i = 0; i < li.dim(); ++i)
    for (std::size_t w = 0; w < ri.omega_size(); ++w)
      report_columns(report, "right operators commute with left action",
                     {{"r", li.algebra().basis_labels[i]}, {"omega", ri.omega()[w]}},
                     m.right.op(w) * m.left.action[i] - m.left.action[i] * m.right.op(w));
  for (std::size_t j = 0; j < ri.dim(); ++j)
    for (std::size_t w = 0; w < li.omega_size(); ++w)
      report_columns(report, "left operators commute with right action",
                     {{"r'", ri.algebra().basis_labels[j]}, {"omega", li.omega()[w]}},
                     m.left.op(w) * m.right.action[j] - m.right.action[j] * m.left.op(w));
  for (std::size_t w = 0; w < li.omega_size(); ++w)
    for (std::size_t v = 0; v < ri.omega_size(); ++v)
      report_columns(report, "operator families commute",
                     {{"omega", li.omega()[w]}, {"omega'", ri.omega()[v]}},
                     m.right.op(v) * m.left.op(w) - m.left.op(w) * m.right.op(v));
  return report;
}

template <Side S>
Report check_hom(const ModuleHom<S>& f) {
  const auto& inst = *f.source.instance;
  if (!same_instance(f.source.instance, f.target.instance))
    throw InputError("hom source and target live over different instances");
  if (f.matrix.rows() != f.target.dim || f.matrix.cols() != f.source.dim)
    throw InputError("hom matrix has the wrong shape");
  Report report;
  for (std::size_t i = 0; i < inst.dim(); ++i)
    report_columns(report, "hom intertwines action", {{"r", inst.algebra().basis_labels[i]}},
                   f.matrix * f.source.action[i] - f.target.action[i] * f.matrix);
  for (std::size_t w = 0; w < inst.omega_size(); ++w)
    report_columns(report, "hom intertwines operator", {{"omega", inst.omega()[w]}},
                   f.matrix * f.source.op(w) - f.target.op(w) * f.matrix);
  return report;
}

template Report check_hom(const LeftHom&);
template Report check_hom(const RightHom&);

template <Side S>
ModuleHom<S> identity_hom(const FdModule<S>& m) {
  return {m, m, Matrix::identity(m.dim)};
}

template <Side S>
ModuleHom<S> compose(const ModuleHom<S>& g, const ModuleHom<S>& f) {
  if (g.source.dim != f.target.dim) throw InputError("cannot compose homs: dimension mismatch");
  return {f.source, g.target, g.matrix * f.matrix};
}

template LeftHom identity_hom(const FdLeftModule&);
template RightHom identity_hom(const FdRightModule&);
template LeftHom compose(const LeftHom&, const LeftHom&);
template RightHom compose(const RightHom&, const RightHom&);

FdLeftModule regular_left(InstancePtr inst) {
  FdLeftModule m;
  m.dim = inst->dim();
  for (std::size_t i = 0; i < inst->dim(); ++i)
    m.action.push_back(inst->algebra().left_multiplication(unit_vector(inst->dim(), i)));
  m.operators = inst->operators().matrices;
  m.instance = std::move(inst);
  return m;
}

FdRightModule regular_right(InstancePtr inst) {
  FdRightModule m;
  m.dim = inst->dim();
  for (std::size_t i = 0; i < inst->dim(); ++i)
    m.action.push_back(inst->algebra().right_multiplication(unit_vector(inst->dim(), i)));
  m.operators = inst->operators().matrices;
  m.instance = std::move(inst);
  return m;
}

FdBimodule regular_bimodule(InstancePtr inst) { return {regular_left(inst), regular_right(inst)}; }

template <Side S>
Subspace generated_submodule(const FdModule<S>& m, const std::vector<Vector>& seeds) {
  Subspace span = Subspace::span(m.dim, seeds);
  while (true) {
    std::vector<Vector> next = span.basis();
    for (const auto& v : span.basis()) {
      for (const auto& a : m.action) next.push_back(a * v);
      for (const auto& o : m.operators) next.push_back(o * v);
    }
    Subspace grown = Subspace::span(m.dim, next);
    if (grown.dim() == span.dim()) return grown;
    span = std::move(grown);
  }
}

template Subspace generated_submodule(const FdLeftModule&, const std::vector<Vector>&);
template Subspace generated_submodule(const FdRightModule&, const std::vector<Vector>&);

template <Side S>
void require_closed(const FdModule<S>& m, const Subspace& n) {
  if (n.ambient_dim() != m.dim) throw InputError("subspace ambient dimension does not match the module");
  const auto& inst = *m.instance;
  for (std::size_t k = 0; k < n.dim(); ++k) {
    const Vector& v = n.basis()[k];
    for (std::size_t i = 0; i < m.action.size(); ++i)
      if (!n.contains(m.action[i] * v))
        throw ClosureViolation("action of " + inst.algebra().basis_labels[i], k);
    for (std::size_t w = 0; w < m.operators.size(); ++w)
      if (!n.contains(m.operators[w] * v)) throw ClosureViolation("operator " + inst.omega()[w], k);
  }
}

template void require_closed(const FdLeftModule&, const Subspace&);
template void require_closed(const FdRightModule&, const Subspace&);

template <Side S>
Submodule<S> submodule(const FdModule<S>& m, const Subspace& n) {
  require_closed(m, n);
  auto restrict = [&](const Matrix& a) {
    Matrix out(n.dim(), n.dim());
    for (std::size_t k = 0; k < n.dim(); ++k) {
      Vector c = *n.coordinates(a * n.basis()[k]);
      for (std::size_t r = 0; r < n.dim(); ++r) out(r, k) = c[r];
    }
    return out;
  };
  FdModule<S> sub;
  sub.instance = m.instance;
  sub.dim = n.dim();
  for (const auto& a : m.action) sub.action.push_back(restrict(a));
  for (const auto& o : m.operators) sub.operators.push_back(restrict(o));
  Matrix inc = n.dim() == 0 ? Matrix(m.dim, 0) : Matrix::from_columns(n.basis(), m.dim);
  return {sub, {sub, m, inc}};
}

template Submodule<Side::left> submodule(const FdLeftModule&, const Subspace&);
template Submodule<Side::right> submodule(const FdRightModule&, const Subspace&);

template <Side S>
FdModule<S> quotient_module(const FdModule<S>& m, const Subspace& n) {
  require_closed(m, n);
  QuotientSpace q = quotient_space(m.dim, n.basis());
  Matrix sec = q.section();
  FdModule<S> out;
  out.instance = m.instance;
  out.dim = q.dim;
  for (const auto& a : m.action) out.action.push_back(q.project * a * sec);
  for (const auto& o : m.operators) out.operators.push_back(q.project * o * sec);
  return out;
}

template <Side S>
ModuleHom<S> quotient_map(const FdModule<S>& m, const Subspace& n) {
  FdModule<S> target = quotient_module(m, n);
  return {m, target, quotient_space(m.dim, n.basis()).project};
}

template FdLeftModule quotient_module(const FdLeftModule&, const Subspace&);
template FdRightModule quotient_module(const FdRightModule&, const Subspace&);
template LeftHom quotient_map(const FdLeftModule&, const Subspace&);
template RightHom quotient_map(const FdRightModule&, const Subspace&);

template <Side S>
DirectSum<S> direct_sum(InstancePtr inst, std::span<const FdModule<S>> parts) {
  for (const auto& p : parts)
    if (!same_instance(inst, p.instance)) throw InputError("direct sum parts live over different instances");
  DirectSum<S> out;
  out.sum.instance = inst;
  for (const auto& p : parts) out.sum.dim += p.dim;
  for (std::size_t i = 0; i < inst->dim(); ++i) {
    std::vector<Matrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.action[i]);
    out.sum.action.push_back(block_diagonal(blocks));
  }
  for (std::size_t w = 0; w < inst->omega_size(); ++w) {
    std::vector<Matrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.operators[w]);
    out.sum.operators.push_back(block_diagonal(blocks));
  }
  std::size_t offset = 0;
  for (const auto& p : parts) {
    Matrix inc(out.sum.dim, p.dim);
    Matrix proj(p.dim, out.sum.dim);
    for (std::size_t k = 0; k < p.dim; ++k) {
      inc(offset + k, k) = 1;
      proj(k, offset + k) = 1;
    }
    out.inclusions.push_back({p, out.sum, std::move(inc)});
    out.projections.push_back({out.sum, p, std::move(proj)});
    offset += p.dim;
  }
  return out;
}

template DirectSum<Side::left> direct_sum(InstancePtr, std::span<const FdLeftModule>);
template DirectSum<Side::right> direct_sum(InstancePtr, std::span<const FdRightModule>);

template <Side S>
ModuleHom<S> direct_sum_hom(InstancePtr inst, std::span<const ModuleHom<S>> parts) {
  std::vector<FdModule<S>> sources, targets;
  std::vector<Matrix> blocks;
  for (const auto& p : parts) {
    sources.push_back(p.source);
    targets.push_back(p.target);
    blocks.push_back(p.matrix);
  }
  auto src = direct_sum<S>(inst, sources);
  auto tgt = direct_sum<S>(inst, targets);
  return {src.sum, tgt.sum, block_diagonal(blocks)};
}

template LeftHom direct_sum_hom(InstancePtr, std::span<const LeftHom>);
template RightHom direct_sum_hom(InstancePtr, std::span<const RightHom>);

Subspace module_constants(const FdLeftModule& m) {
  m.validate_shape();
  const auto& inst = *m.instance;
  std::vector<Matrix> eqs;
  for (std::size_t w = 0; w < inst.omega_size(); ++w)
    for (std::size_t i = 0; i < inst.dim(); ++i)
      eqs.push_back(m.op(w) * m.action[i] - m.act(inst.op(w) * unit_vector(inst.dim(), i)));
  if (eqs.empty()) return Subspace::full(m.dim);
  return nullspace_basis(vstack(eqs, m.dim));
}

RestrictedFree restricted_free(InstancePtr inst, const std::vector<std::string>& generators) {
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (generators[i] == generators[j]) throw InputError("duplicate generator '" + generators[i] + "'");
  FdLeftModule reg = regular_left(inst);
  const std::size_t n = generators.size();
  FdLeftModule m;
  m.instance = inst;
  m.dim = inst->dim() * n;
  for (const auto& a : reg.action) m.action.push_back(block_diagonal(std::vector<Matrix>(n, a)));
  for (const auto& o : reg.operators) m.operators.push_back(block_diagonal(std::vector<Matrix>(n, o)));
  return {std::move(m), generators};
}

LeftHom restricted_lift(const RestrictedFree& f, const FdLeftModule& target,
                        const std::vector<Vector>& images) {
  if (!same_instance(f.module.instance, target.instance))
    throw InputError("restricted lift target lives over a different instance");
  if (images.size() != f.generators.size())
    throw InputError("restricted lift needs one image per generator");
  Subspace mc = module_constants(target);
  const std::size_t d = f.module.instance->dim();
  Matrix out(target.dim, f.module.dim);
  for (std::size_t x = 0; x < images.size(); ++x) {
    if (images[x].size() != target.dim) throw InputError("generator image has the wrong length");
    if (!mc.contains(images[x]))
      throw PreconditionError("image of generator '" + f.generators[x] +
                              "' is not a module constant of the target");
    for (std::size_t k = 0; k < d; ++k) {
      Vector col = target.action[k] * images[x];
      for (std::size_t r = 0; r < target.dim; ++r) out(r, x * d + k) = col[r];
    }
  }
  return {f.module, target, std::move(out)};
}

template <Side S>
FdModule<S> reweight_module(const FdModule<S>& m, const ReweightSpec& spec) {
  auto inst = std::make_shared<const MrbInstance>(reweight(*m.instance, spec));
  FdModule<S> out;
  out.instance = inst;
  out.dim = m.dim;
  out.action = m.action;
  for (const auto& row : spec.coefficients) {
    Matrix o(m.dim, m.dim);
    for (std::size_t w = 0; w < row.size(); ++w)
      if (sgn(row[w]) != 0) o += row[w] * m.operators[w];
    out.operators.push_back(std::move(o));
  }
  return out;
}

template FdLeftModule reweight_module(const FdLeftModule&, const ReweightSpec&);
template FdRightModule reweight_module(const FdRightModule&, const ReweightSpec&);

Subspace kernel(const Matrix& f) { return nullspace_basis(f); }

}  // namespace mrb
