#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mrb/algebra.hpp"
#include "mrb/linalg.hpp"
#include "mrb/report.hpp"

namespace mrb {

enum class Side { left, right };

/// Finite-dimensional module over an instance. action[i] is the matrix of
/// v -> b_i v (left) or v -> v b_i (right); column p holds the image of v_p.
/// operators[w] is the matrix of m_w, aligned with the instance labels.
template <Side S>
struct FdModule {
  InstancePtr instance;
  std::size_t dim = 0;
  std::vector<Matrix> action;
  std::vector<Matrix> operators;

  static constexpr Side side = S;

  /// Throws InputError when matrix shapes or counts disagree with the instance.
  void validate_shape() const;
  /// Matrix of the action of an arbitrary algebra element.
  Matrix act(const Vector& r) const;
  const Matrix& op(std::size_t w) const { return operators[w]; }

  static FdModule zero(InstancePtr inst);
};

using FdLeftModule = FdModule<Side::left>;
using FdRightModule = FdModule<Side::right>;

/// Left structure over one instance and right structure over another on the
/// same underlying space.
struct FdBimodule {
  FdLeftModule left;
  FdRightModule right;

  std::size_t dim() const { return left.dim; }
};

template <Side S>
struct ModuleHom {
  FdModule<S> source;
  FdModule<S> target;
  Matrix matrix;  // target.dim x source.dim
};

using LeftHom = ModuleHom<Side::left>;
using RightHom = ModuleHom<Side::right>;

bool same_instance(const InstancePtr& a, const InstancePtr& b);

/// Associativity against the structure constants and the unit law.
template <Side S>
Report check_action(const FdModule<S>& m);

/// Action laws plus the left operator identity on every basis pair.
Report check_left_module(const FdLeftModule& m);
/// Action laws plus the right operator identity on every basis pair.
Report check_right_module(const FdRightModule& m);

template <Side S>
Report check_module(const FdModule<S>& m) {
  if constexpr (S == Side::left)
    return check_left_module(m);
  else
    return check_right_module(m);
}

/// Both one-sided checks and the three compatibility families. The operator
/// families are required to commute for every pair of labels.
Report check_bimodule(const FdBimodule& m);

/// Residual report for f as a module map: action and operator intertwining.
template <Side S>
Report check_hom(const ModuleHom<S>& f);

template <Side S>
ModuleHom<S> identity_hom(const FdModule<S>& m);
template <Side S>
ModuleHom<S> compose(const ModuleHom<S>& g, const ModuleHom<S>& f);  // g after f

FdLeftModule regular_left(InstancePtr inst);
FdRightModule regular_right(InstancePtr inst);
/// R over itself on both sides with P as both operator families.
FdBimodule regular_bimodule(InstancePtr inst);

/// Smallest subspace containing the seeds and closed under the action and
/// every operator.
template <Side S>
Subspace generated_submodule(const FdModule<S>& m, const std::vector<Vector>& seeds);

/// Throws ClosureViolation when n is not stable under the action or some
/// operator.
template <Side S>
void require_closed(const FdModule<S>& m, const Subspace& n);

template <Side S>
struct Submodule {
  FdModule<S> module;  // coordinates in the basis of the subspace
  ModuleHom<S> inclusion;
};

template <Side S>
Submodule<S> submodule(const FdModule<S>& m, const Subspace& n);

template <Side S>
FdModule<S> quotient_module(const FdModule<S>& m, const Subspace& n);
template <Side S>
ModuleHom<S> quotient_map(const FdModule<S>& m, const Subspace& n);

template <Side S>
struct DirectSum {
  FdModule<S> sum;
  std::vector<ModuleHom<S>> inclusions;
  std::vector<ModuleHom<S>> projections;
};

template <Side S>
DirectSum<S> direct_sum(InstancePtr inst, std::span<const FdModule<S>> parts);

/// Block-diagonal sum of homs between the corresponding sums.
template <Side S>
ModuleHom<S> direct_sum_hom(InstancePtr inst, std::span<const ModuleHom<S>> parts);

/// {m : m_w(b_i m) = P_w(b_i) m for all i, w}.
Subspace module_constants(const FdLeftModule& m);

struct RestrictedFree {
  FdLeftModule module;  // coordinate (x, k) at index x * dim R + k
  std::vector<std::string> generators;
};

RestrictedFree restricted_free(InstancePtr inst, const std::vector<std::string>& generators);

/// Unique hom F -> target with x -> images[x]; every image must lie in the
/// module constants of target (PreconditionError otherwise).
LeftHom restricted_lift(const RestrictedFree& f, const FdLeftModule& target,
                        const std::vector<Vector>& images);

/// Subspace of target.dim x source.dim matrices, flattened row-major
/// (entry (a, b) at a * source_dim + b).
struct HomSpace {
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  Subspace space;

  std::size_t dim() const { return space.dim(); }
  Matrix element(std::size_t k) const;
  Matrix from_coordinates(const Vector& coords) const;
  std::optional<Vector> coordinates(const Matrix& f) const;
  bool contains(const Matrix& f) const { return coordinates(f).has_value(); }
};

Vector flatten(const Matrix& f);
Matrix unflatten(const Vector& v, std::size_t rows, std::size_t cols);

/// Linear maps commuting with the action of every basis element and with the
/// operators.
template <Side S>
HomSpace hom_space(const FdModule<S>& m, const FdModule<S>& n);

/// Hom modules for the four side configurations. Each returns the module
/// on hom-space coordinates together with the hom space it lives on.
template <Side S>
struct HomModule {
  FdModule<S> module;
  HomSpace space;
};

/// m right over R, n an R''-R bimodule: left R''-module, q(f) = n^{R''} f.
HomModule<Side::left> hom_module_a(const FdRightModule& m, const FdBimodule& n);
/// m left over R, n an R-R'' bimodule: right R''-module, q(f) = n^{R''} f.
HomModule<Side::right> hom_module_b(const FdLeftModule& m, const FdBimodule& n);
/// m an R-R' bimodule, n left over R: left R'-module, q(f) = f m^{R'}.
HomModule<Side::left> hom_module_c(const FdBimodule& m, const FdLeftModule& n);
/// m an R'-R bimodule, n right over R: right R'-module, q(f) = f m^{R'}.
HomModule<Side::right> hom_module_d(const FdBimodule& m, const FdRightModule& n);

/// Module over reweight(instance, spec) with m_i = sum_w a_{i,w} m_w.
template <Side S>
FdModule<S> reweight_module(const FdModule<S>& m, const ReweightSpec& spec);

/// Some phi_bar : S -> M in the hom space with theta o phi_bar = phi, if any.
/// theta : M -> N must be surjective.
std::optional<LeftHom> lift_through_epi(const LeftHom& theta, const LeftHom& phi);

Subspace kernel(const Matrix& f);

}  // namespace mrb
