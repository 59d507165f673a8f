#include "mrb/tensor.hpp"

#include "mrb/errors.hpp"

namespace mrb {

namespace {

std::vector<std::pair<std::string, std::string>> pq(std::size_t p, std::size_t q) {
  return {{"m", "v" + std::to_string(p + 1)}, {"n", "v" + std::to_string(q + 1)}};
}

// Throws unless map sends every relation of `source` into the relations of
// `target`, i.e. target.project * map kills them.
void require_well_defined(const QuotientSpace& source, const QuotientSpace& target, const Matrix& map,
                          const std::string& what) {
  for (const auto& w : source.relations.basis())
    if (!is_zero(target.project * (map * w))) throw PreconditionError(what + " is not well defined on cosets");
}

Matrix induced(const TensorSpace& source, const TensorSpace& target, const Matrix& ambient_map,
               const std::string& what) {
  require_well_defined(source.quotient, target.quotient, ambient_map, what);
  return target.quotient.project * ambient_map * source.quotient.section();
}

}  // namespace

std::vector<Vector> tensor_relations(const FdRightModule& m, const FdLeftModule& n) {
  if (!same_instance(m.instance, n.instance)) throw InputError("tensor factors live over different instances");
  m.validate_shape();
  n.validate_shape();
  std::vector<Vector> rels;
  const std::size_t dm = m.dim, dn = n.dim;
  auto add_family = [&](const Matrix& a, const Matrix& b) {
    // (a e_p) (x) e_q - e_p (x) (b e_q)
    Matrix rel = kron(a, Matrix::identity(dn)) - kron(Matrix::identity(dm), b);
    for (std::size_t c = 0; c < rel.cols(); ++c) {
      Vector v = rel.column(c);
      if (!is_zero(v)) rels.push_back(std::move(v));
    }
  };
  for (std::size_t i = 0; i < m.action.size(); ++i) add_family(m.action[i], n.action[i]);
  for (std::size_t w = 0; w < m.operators.size(); ++w) add_family(m.operators[w], n.operators[w]);
  return rels;
}

TensorSpace tensor_product(const FdRightModule& m, const FdLeftModule& n) {
  auto rels = tensor_relations(m, n);
  return {m, n, quotient_space(m.dim * n.dim, rels)};
}

Report check_bilinearity(const TensorSpace& t) {
  const auto& m = t.left;
  const auto& n = t.right;
  const std::size_t dm = m.dim, dn = n.dim;
  const auto& inst = *m.instance;
  Report report;
  auto record = [&](const char* law, std::vector<std::pair<std::string, std::string>> at, Vector r) {
    ++report.evaluated;
    if (!is_zero(r)) report.add(law, std::move(at), std::move(r));
  };
  for (std::size_t p = 0; p < dm; ++p)
    for (std::size_t q = 0; q < dn; ++q) {
      Vector ep = unit_vector(dm, p), eq = unit_vector(dn, q);
      for (std::size_t p2 = 0; p2 < dm; ++p2) {
        Vector ep2 = unit_vector(dm, p2);
        record("additive in the left factor", pq(p, q),
               t.zeta(ep + ep2, eq) - t.zeta(ep, eq) - t.zeta(ep2, eq));
      }
      for (std::size_t q2 = 0; q2 < dn; ++q2) {
        Vector eq2 = unit_vector(dn, q2);
        record("additive in the right factor", pq(p, q),
               t.zeta(ep, eq + eq2) - t.zeta(ep, eq) - t.zeta(ep, eq2));
      }
      for (std::size_t i = 0; i < inst.dim(); ++i) {
        auto at = pq(p, q);
        at.emplace_back("r", inst.algebra().basis_labels[i]);
        record("balanced action", std::move(at), t.zeta(m.action[i] * ep, eq) - t.zeta(ep, n.action[i] * eq));
      }
      for (std::size_t w = 0; w < inst.omega_size(); ++w) {
        auto at = pq(p, q);
        at.emplace_back("omega", inst.omega()[w]);
        record("balanced operator", std::move(at),
               t.zeta(m.operators[w] * ep, eq) - t.zeta(ep, n.operators[w] * eq));
      }
    }
  return report;
}

Matrix induced_map(const TensorSpace& source, const TensorSpace& target, const LeftHom& theta) {
  if (source.left.dim != target.left.dim) throw InputError("induced map: fixed factors differ");
  if (theta.matrix.rows() != target.right.dim || theta.matrix.cols() != source.right.dim)
    throw InputError("induced map: hom does not match the varying factors");
  return induced(source, target, kron(Matrix::identity(source.left.dim), theta.matrix), "id (x) theta");
}

Matrix induced_map(const TensorSpace& source, const TensorSpace& target, const RightHom& theta) {
  if (source.right.dim != target.right.dim) throw InputError("induced map: fixed factors differ");
  if (theta.matrix.rows() != target.left.dim || theta.matrix.cols() != source.left.dim)
    throw InputError("induced map: hom does not match the varying factors");
  return induced(source, target, kron(theta.matrix, Matrix::identity(source.right.dim)), "theta (x) id");
}

FdLeftModule tensor_left_structure(const FdBimodule& m, const TensorSpace& t) {
  if (m.right.dim != t.left.dim) throw InputError("tensor left structure: bimodule does not match the tensor");
  const Report r = check_bimodule(m);
  if (!r.ok()) throw PreconditionError("tensor left structure: bimodule check fails: " + r.violations.front().law);
  const Matrix id = Matrix::identity(t.right.dim);
  FdLeftModule out;
  out.instance = m.left.instance;
  out.dim = t.dim();
  for (const auto& a : m.left.action)
    out.action.push_back(induced(t, t, kron(a, id), "left action on the tensor"));
  for (const auto& o : m.left.operators)
    out.operators.push_back(induced(t, t, kron(o, id), "left operator on the tensor"));
  return out;
}

FdRightModule tensor_right_structure(const TensorSpace& t, const FdBimodule& s) {
  if (s.left.dim != t.right.dim) throw InputError("tensor right structure: bimodule does not match the tensor");
  const Report r = check_bimodule(s);
  if (!r.ok()) throw PreconditionError("tensor right structure: bimodule check fails: " + r.violations.front().law);
  const Matrix id = Matrix::identity(t.left.dim);
  FdRightModule out;
  out.instance = s.right.instance;
  out.dim = t.dim();
  for (const auto& a : s.right.action)
    out.action.push_back(induced(t, t, kron(id, a), "right action on the tensor"));
  for (const auto& o : s.right.operators)
    out.operators.push_back(induced(t, t, kron(id, o), "right operator on the tensor"));
  return out;
}

AdjunctionReport adjunction_check(const FdRightModule& m, const FdBimodule& s, const FdRightModule& t) {
  TensorSpace ms = tensor_product(m, s.left);
  FdRightModule ms_mod = tensor_right_structure(ms, s);
  HomSpace lhs = hom_space(ms_mod, t);
  HomModule<Side::right> hst = hom_module_d(s, t);
  HomSpace rhs = hom_space(m, hst.module);

  AdjunctionReport report;
  report.tensor_dim = ms.dim();
  report.lhs_dim = lhs.dim();
  report.rhs_dim = rhs.dim();
  const std::size_t dm = m.dim, ds = s.dim();

  // theta(f)(m)(s) = f(m (x) s)
  report.theta = Matrix(rhs.dim(), lhs.dim());
  for (std::size_t k = 0; k < lhs.dim(); ++k) {
    Matrix f = lhs.element(k) * ms.quotient.project;  // on the ambient tensor space
    Matrix g(hst.space.dim(), dm);
    for (std::size_t p = 0; p < dm; ++p) {
      Matrix phi(t.dim, ds);
      for (std::size_t q = 0; q < ds; ++q) {
        Vector col = f.column(p * ds + q);
        for (std::size_t r = 0; r < t.dim; ++r) phi(r, q) = col[r];
      }
      auto c = hst.space.coordinates(phi);
      if (!c) throw PreconditionError("adjunction: theta(f)(m) is not a module map");
      for (std::size_t r = 0; r < c->size(); ++r) g(r, p) = (*c)[r];
    }
    auto c = rhs.coordinates(g);
    if (!c) throw PreconditionError("adjunction: theta(f) is not a module map");
    for (std::size_t r = 0; r < c->size(); ++r) report.theta(r, k) = (*c)[r];
  }

  // theta'(g)(m (x) s) = g(m)(s)
  report.theta_prime = Matrix(lhs.dim(), rhs.dim());
  const Matrix section = ms.quotient.section();
  for (std::size_t k = 0; k < rhs.dim(); ++k) {
    Matrix g = rhs.element(k);
    Matrix ambient(t.dim, dm * ds);
    for (std::size_t p = 0; p < dm; ++p) {
      Matrix phi = hst.space.from_coordinates(g.column(p));
      for (std::size_t q = 0; q < ds; ++q)
        for (std::size_t r = 0; r < t.dim; ++r) ambient(r, p * ds + q) = phi(r, q);
    }
    for (const auto& w : ms.quotient.relations.basis())
      if (!is_zero(ambient * w)) throw PreconditionError("adjunction: theta'(g) is not well defined");
    auto c = lhs.coordinates(ambient * section);
    if (!c) throw PreconditionError("adjunction: theta'(g) is not a module map");
    for (std::size_t r = 0; r < c->size(); ++r) report.theta_prime(r, k) = (*c)[r];
  }

  report.theta_then_prime_identity = report.theta_prime * report.theta == Matrix::identity(lhs.dim());
  report.prime_then_theta_identity = report.theta * report.theta_prime == Matrix::identity(rhs.dim());
  return report;
}

namespace {

template <Side S, class Build>
FlatnessReport probe_all(const std::vector<Injection<S>>& injections, Build&& build) {
  FlatnessReport report;
  for (const auto& inj : injections) {
    const auto& map = inj.map;
    if (map.matrix.rows() != map.target.dim || map.matrix.cols() != map.source.dim)
      throw InputError("probe '" + inj.name + "': matrix shape does not match its modules");
    if (rank(map.matrix) != map.source.dim) throw PreconditionError("probe '" + inj.name + "' is not injective");
    auto [source, target, induced_matrix] = build(map);
    ProbeResult r;
    r.name = inj.name;
    r.source_tensor_dim = source;
    r.target_tensor_dim = target;
    r.induced_rank = rank(induced_matrix);
    r.preserved = r.induced_rank == source;
    if (!r.preserved) r.witness = nullspace_basis(induced_matrix).basis().front();
    report.probes.push_back(std::move(r));
  }
  return report;
}

}  // namespace

template <Side S>
std::vector<Injection<S>> catalog_injections(InstancePtr inst) {
  FdModule<S> r;
  if constexpr (S == Side::left)
    r = regular_left(inst);
  else
    r = regular_right(inst);
  const auto zero = FdModule<S>::zero(inst);
  std::vector<Injection<S>> out;
  out.push_back({"zero", {zero, r, Matrix(r.dim, 0)}});
  out.push_back({"identity", identity_hom(r)});
  std::vector<FdModule<S>> parts{r, r};
  auto sum = direct_sum<S>(inst, parts);
  out.push_back({"sum_first", sum.inclusions[0]});
  out.push_back({"sum_second", sum.inclusions[1]});
  const auto& labels = inst->algebra().basis_labels;
  for (std::size_t i = 0; i < r.dim; ++i) {
    Subspace n = generated_submodule(r, {unit_vector(r.dim, i)});
    out.push_back({"generated(" + labels[i] + ")", submodule(r, n).inclusion});
  }
  return out;
}

template std::vector<Injection<Side::left>> catalog_injections(InstancePtr);
template std::vector<Injection<Side::right>> catalog_injections(InstancePtr);

FlatnessReport flatness_probe(const FdRightModule& m, const std::vector<Injection<Side::left>>& injections) {
  return probe_all(injections, [&](const LeftHom& map) {
    TensorSpace src = tensor_product(m, map.source);
    TensorSpace tgt = tensor_product(m, map.target);
    return std::tuple{src.dim(), tgt.dim(), induced_map(src, tgt, map)};
  });
}

FlatnessReport flatness_probe(const FdLeftModule& f, const std::vector<Injection<Side::right>>& injections) {
  return probe_all(injections, [&](const RightHom& map) {
    TensorSpace src = tensor_product(map.source, f);
    TensorSpace tgt = tensor_product(map.target, f);
    return std::tuple{src.dim(), tgt.dim(), induced_map(src, tgt, map)};
  });
}

UnitCheckReport tensor_unit_check(const FdRightModule& m) {
  FdLeftModule r = regular_left(m.instance);
  TensorSpace t = tensor_product(m, r);
  const std::size_t d = m.instance->dim();
  Matrix natural(m.dim, m.dim * d);
  for (std::size_t p = 0; p < m.dim; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      Vector col = m.action[q].column(p);
      for (std::size_t k = 0; k < m.dim; ++k) natural(k, p * d + q) = col[k];
    }
  UnitCheckReport report;
  report.tensor_dim = t.dim();
  report.module_dim = m.dim;
  report.well_defined = true;
  for (const auto& w : t.quotient.relations.basis())
    if (!is_zero(natural * w)) {
      report.well_defined = false;
      break;
    }
  Matrix induced_matrix = natural * t.quotient.section();
  report.rank = rank(induced_matrix);
  report.isomorphism = report.well_defined && t.dim() == m.dim && report.rank == m.dim;
  return report;
}

DirectSumTensorReport direct_sum_tensor_check(const FdRightModule& s, const std::vector<FdLeftModule>& parts) {
  auto sum = direct_sum<Side::left>(s.instance, parts);
  TensorSpace big = tensor_product(s, sum.sum);
  std::vector<TensorSpace> small;
  for (const auto& p : parts) small.push_back(tensor_product(s, p));

  DirectSumTensorReport report;
  report.sum_tensor_dim = big.dim();
  std::size_t total = 0, total_ambient = 0;
  for (const auto& t : small) {
    report.part_dims.push_back(t.dim());
    total += t.dim();
    total_ambient += t.ambient_dim();
  }
  report.dims_add = total == big.dim();

  // Ambient permutation between S (x) (sum M_i) and sum (S (x) M_i).
  const std::size_t ds = s.dim, dsum = sum.sum.dim;
  Matrix perm(total_ambient, ds * dsum);
  std::size_t offset = 0, amb_offset = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t p = 0; p < ds; ++p)
      for (std::size_t q = 0; q < parts[i].dim; ++q) perm(amb_offset + p * parts[i].dim + q, p * dsum + offset + q) = 1;
    offset += parts[i].dim;
    amb_offset += small[i].ambient_dim();
  }
  std::vector<Matrix> projections, sections;
  for (const auto& t : small) {
    projections.push_back(t.quotient.project);
    sections.push_back(t.quotient.section());
  }
  Matrix block_project = block_diagonal(projections);
  Matrix block_section = block_diagonal(sections);
  Matrix perm_t = perm.transpose();

  report.maps_well_defined = true;
  for (const auto& w : big.quotient.relations.basis())
    if (!is_zero(block_project * (perm * w))) report.maps_well_defined = false;
  std::size_t rel_offset = 0;
  for (const auto& t : small) {
    for (const auto& w : t.quotient.relations.basis()) {
      Vector padded(total_ambient);
      for (std::size_t k = 0; k < w.size(); ++k) padded[rel_offset + k] = w[k];
      if (!is_zero(big.quotient.project * (perm_t * padded))) report.maps_well_defined = false;
    }
    rel_offset += t.ambient_dim();
  }

  Matrix f1 = block_project * perm * big.quotient.section();
  Matrix f2 = big.quotient.project * perm_t * block_section;
  report.mutually_inverse = report.dims_add && f1 * f2 == Matrix::identity(total) &&
                            f2 * f1 == Matrix::identity(big.dim());
  return report;
}

SplittingReport splitting_probe(const FdLeftModule& s) {
  SplittingReport report;
  Subspace mc = module_constants(s);
  std::vector<std::string> generators;
  for (std::size_t k = 0; k < mc.dim(); ++k) generators.push_back("g" + std::to_string(k + 1));
  RestrictedFree cover = restricted_free(s.instance, generators);
  LeftHom theta = restricted_lift(cover, s, mc.basis());
  report.applicable = rank(theta.matrix) == s.dim;
  if (!report.applicable) return report;
  report.section = lift_through_epi(theta, identity_hom(s));
  report.splits = report.section.has_value();
  return report;
}

}  // namespace mrb
