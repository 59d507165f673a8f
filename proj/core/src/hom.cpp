#include <functional>

#include "mrb/errors.hpp"
#include "mrb/modules.hpp"

namespace mrb {

Vector flatten(const Matrix& f) { return f.entries(); }

Matrix unflatten(const Vector& v, std::size_t rows, std::size_t cols) { return Matrix(rows, cols, v); }

Matrix HomSpace::element(std::size_t k) const {
  return unflatten(space.basis()[k], target_dim, source_dim);
}

Matrix HomSpace::from_coordinates(const Vector& coords) const {
  return unflatten(space.combine(coords), target_dim, source_dim);
}

std::optional<Vector> HomSpace::coordinates(const Matrix& f) const {
  if (f.rows() != target_dim || f.cols() != source_dim) throw InputError("matrix shape does not match hom space");
  return space.coordinates(flatten(f));
}

namespace {

// Rows of the linear system F X - Y F = 0 in the flattened unknown F.
void append_commutation(std::vector<Vector>& rows, const Matrix& x, const Matrix& y, std::size_t dm,
                        std::size_t dn) {
  for (std::size_t a = 0; a < dn; ++a)
    for (std::size_t c = 0; c < dm; ++c) {
      Vector row(dn * dm);
      for (std::size_t b = 0; b < dm; ++b)
        if (sgn(x(b, c)) != 0) row[a * dm + b] += x(b, c);
      for (std::size_t b = 0; b < dn; ++b)
        if (sgn(y(a, b)) != 0) row[b * dm + c] -= y(a, b);
      if (!is_zero(row)) rows.push_back(std::move(row));
    }
}

// Matrix of an endomorphism of the hom space in hom-space coordinates.
Matrix induced_on_space(const HomSpace& h, const std::function<Matrix(const Matrix&)>& map,
                        const std::string& what) {
  Matrix out(h.dim(), h.dim());
  for (std::size_t k = 0; k < h.dim(); ++k) {
    auto c = h.coordinates(map(h.element(k)));
    if (!c) throw PreconditionError("hom space is not closed under " + what);
    for (std::size_t r = 0; r < h.dim(); ++r) out(r, k) = (*c)[r];
  }
  return out;
}

void require_ok(const Report& r, const std::string& what) {
  if (r.ok()) return;
  throw PreconditionError(what + " fails: " + r.violations.front().law);
}

template <Side S>
FdModule<S> build_hom_module(const HomSpace& h, InstancePtr inst, const std::vector<Matrix>& action,
                             const std::vector<Matrix>& ops, bool post) {
  FdModule<S> out;
  out.instance = inst;
  out.dim = h.dim();
  const auto& labels = inst->algebra().basis_labels;
  for (std::size_t i = 0; i < action.size(); ++i) {
    const Matrix& a = action[i];
    out.action.push_back(induced_on_space(
        h, [&](const Matrix& f) { return post ? Matrix(a * f) : Matrix(f * a); }, "action of " + labels[i]));
  }
  for (std::size_t w = 0; w < ops.size(); ++w) {
    const Matrix& o = ops[w];
    out.operators.push_back(induced_on_space(
        h, [&](const Matrix& f) { return post ? Matrix(o * f) : Matrix(f * o); },
        "operator " + inst->omega()[w]));
  }
  return out;
}

}  // namespace

template <Side S>
HomSpace hom_space(const FdModule<S>& m, const FdModule<S>& n) {
  if (!same_instance(m.instance, n.instance)) throw InputError("hom space between modules over different instances");
  m.validate_shape();
  n.validate_shape();
  const std::size_t dm = m.dim, dn = n.dim;
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < m.action.size(); ++i) append_commutation(rows, m.action[i], n.action[i], dm, dn);
  for (std::size_t w = 0; w < m.operators.size(); ++w)
    append_commutation(rows, m.operators[w], n.operators[w], dm, dn);
  HomSpace h;
  h.source_dim = dm;
  h.target_dim = dn;
  h.space = rows.empty() ? Subspace::full(dm * dn) : nullspace_basis(Matrix::from_rows(rows, dm * dn));
  return h;
}

template HomSpace hom_space(const FdLeftModule&, const FdLeftModule&);
template HomSpace hom_space(const FdRightModule&, const FdRightModule&);

HomModule<Side::left> hom_module_a(const FdRightModule& m, const FdBimodule& n) {
  if (!same_instance(m.instance, n.right.instance))
    throw PreconditionError("hom module (a): source and bimodule right side use different instances");
  require_ok(check_right_module(m), "hom module (a): right module source");
  require_ok(check_bimodule(n), "hom module (a): bimodule target");
  HomSpace h = hom_space(m, n.right);
  auto mod = build_hom_module<Side::left>(h, n.left.instance, n.left.action, n.left.operators, true);
  return {std::move(mod), std::move(h)};
}

HomModule<Side::right> hom_module_b(const FdLeftModule& m, const FdBimodule& n) {
  if (!same_instance(m.instance, n.left.instance))
    throw PreconditionError("hom module (b): source and bimodule left side use different instances");
  require_ok(check_left_module(m), "hom module (b): left module source");
  require_ok(check_bimodule(n), "hom module (b): bimodule target");
  HomSpace h = hom_space(m, n.left);
  auto mod = build_hom_module<Side::right>(h, n.right.instance, n.right.action, n.right.operators, true);
  return {std::move(mod), std::move(h)};
}

HomModule<Side::left> hom_module_c(const FdBimodule& m, const FdLeftModule& n) {
  if (!same_instance(m.left.instance, n.instance))
    throw PreconditionError("hom module (c): bimodule left side and target use different instances");
  require_ok(check_bimodule(m), "hom module (c): bimodule source");
  require_ok(check_left_module(n), "hom module (c): left module target");
  HomSpace h = hom_space(m.left, n);
  auto mod = build_hom_module<Side::left>(h, m.right.instance, m.right.action, m.right.operators, false);
  return {std::move(mod), std::move(h)};
}

HomModule<Side::right> hom_module_d(const FdBimodule& m, const FdRightModule& n) {
  if (!same_instance(m.right.instance, n.instance))
    throw PreconditionError("hom module (d): bimodule right side and target use different instances");
  require_ok(check_bimodule(m), "hom module (d): bimodule source");
  require_ok(check_right_module(n), "hom module (d): right module target");
  HomSpace h = hom_space(m.right, n);
  auto mod = build_hom_module<Side::right>(h, m.left.instance, m.left.action, m.left.operators, false);
  return {std::move(mod), std::move(h)};
}

std::optional<LeftHom> lift_through_epi(const LeftHom& theta, const LeftHom& phi) {
  if (theta.matrix.rows() != theta.target.dim || theta.matrix.cols() != theta.source.dim ||
      phi.matrix.rows() != phi.target.dim || phi.matrix.cols() != phi.source.dim)
    throw InputError("lift: hom matrix shape does not match its modules");
  if (phi.target.dim != theta.target.dim) throw InputError("lift: phi and theta have different targets");
  if (!same_instance(theta.source.instance, phi.source.instance))
    throw InputError("lift: modules live over different instances");
  if (rank(theta.matrix) != theta.target.dim) throw PreconditionError("lift: theta is not surjective");

  HomSpace h = hom_space(phi.source, theta.source);
  std::vector<Vector> cols;
  for (std::size_t k = 0; k < h.dim(); ++k) cols.push_back(flatten(theta.matrix * h.element(k)));
  const std::size_t n = phi.target.dim * phi.source.dim;
  Matrix system = cols.empty() ? Matrix(n, 0) : Matrix::from_columns(cols, n);
  auto sol = solve(system, flatten(phi.matrix));
  if (!sol) return std::nullopt;
  Matrix lifted = h.dim() == 0 ? Matrix(theta.source.dim, phi.source.dim) : h.from_coordinates(sol->particular);
  return LeftHom{phi.source, theta.source, std::move(lifted)};
}

}  // namespace mrb
