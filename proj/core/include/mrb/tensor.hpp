#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mrb/linalg.hpp"
#include "mrb/modules.hpp"
#include "mrb/report.hpp"

namespace mrb {

/// M (x) N for a right module M and a left module N, as the quotient of the
/// plain tensor space (index p * dim N + q) by the balancing relations.
struct TensorSpace {
  FdRightModule left;
  FdLeftModule right;
  QuotientSpace quotient;

  std::size_t dim() const { return quotient.dim; }
  std::size_t ambient_dim() const { return quotient.ambient_dim; }
  /// Coset of m (x) n.
  Vector zeta(const Vector& m, const Vector& n) const { return quotient.project * kron(m, n); }
};

/// The action-balancing relation vectors (m b_i) (x) n - m (x) (b_i n) on basis
/// pairs, followed by the operator-balancing ones m_w(m) (x) n - m (x) n_w(n).
std::vector<Vector> tensor_relations(const FdRightModule& m, const FdLeftModule& n);

TensorSpace tensor_product(const FdRightModule& m, const FdLeftModule& n);

/// All four relation families evaluated through zeta on basis instantiations.
Report check_bilinearity(const TensorSpace& t);

/// id (x) theta : M (x) S -> M (x) N, for theta : S -> N of left modules.
Matrix induced_map(const TensorSpace& source, const TensorSpace& target, const LeftHom& theta);
/// theta (x) id : S (x) M -> N (x) M, for theta : S -> N of right modules.
Matrix induced_map(const TensorSpace& source, const TensorSpace& target, const RightHom& theta);

/// t = M.right (x) S: the left module r'(m (x) s) = (r'm) (x) s with
/// q_w = m^{R'}_w (x) id.
FdLeftModule tensor_left_structure(const FdBimodule& m, const TensorSpace& t);
/// t = M (x) S.left: the right module (m (x) s) r' = m (x) (s r') with
/// q_w = id (x) s^{R'}_w.
FdRightModule tensor_right_structure(const TensorSpace& t, const FdBimodule& s);

struct AdjunctionReport {
  std::size_t tensor_dim = 0;
  std::size_t lhs_dim = 0;  // Hom(M (x) S, T)
  std::size_t rhs_dim = 0;  // Hom(M, Hom(S, T))
  Matrix theta;             // rhs_dim x lhs_dim, in hom-space coordinates
  Matrix theta_prime;       // lhs_dim x rhs_dim
  bool theta_then_prime_identity = false;
  bool prime_then_theta_identity = false;

  bool ok() const {
    return lhs_dim == rhs_dim && theta_then_prime_identity && prime_then_theta_identity;
  }
};

/// M right over R, S an R-R' bimodule, T right over R'.
AdjunctionReport adjunction_check(const FdRightModule& m, const FdBimodule& s, const FdRightModule& t);

template <Side S>
struct Injection {
  std::string name;
  ModuleHom<S> map;
};

struct ProbeResult {
  std::string name;
  std::size_t source_tensor_dim = 0;
  std::size_t target_tensor_dim = 0;
  std::size_t induced_rank = 0;
  bool preserved = false;
  std::optional<Vector> witness;  // kernel vector of the induced map when broken
};

struct FlatnessReport {
  std::vector<ProbeResult> probes;

  bool all_preserved() const {
    for (const auto& p : probes)
      if (!p.preserved) return false;
    return true;
  }
};

/// Fixed probe set over an instance, in this order: zero -> R, the identity
/// of R, the two inclusions R -> R (+) R, and the inclusion of the submodule
/// of R generated by each basis element.
template <Side S>
std::vector<Injection<S>> catalog_injections(InstancePtr inst);

/// M (x) - applied to each injection of left modules.
FlatnessReport flatness_probe(const FdRightModule& m, const std::vector<Injection<Side::left>>& injections);
/// - (x) F applied to each injection of right modules.
FlatnessReport flatness_probe(const FdLeftModule& f, const std::vector<Injection<Side::right>>& injections);

struct UnitCheckReport {
  std::size_t tensor_dim = 0;
  std::size_t module_dim = 0;
  bool well_defined = false;  // m (x) r -> m r kills every relation
  std::size_t rank = 0;
  bool isomorphism = false;
};

UnitCheckReport tensor_unit_check(const FdRightModule& m);

struct DirectSumTensorReport {
  std::size_t sum_tensor_dim = 0;          // dim S (x) (sum M_i)
  std::vector<std::size_t> part_dims;      // dim S (x) M_i
  bool dims_add = false;
  bool maps_well_defined = false;
  bool mutually_inverse = false;

  bool ok() const { return dims_add && maps_well_defined && mutually_inverse; }
};

DirectSumTensorReport direct_sum_tensor_check(const FdRightModule& s, const std::vector<FdLeftModule>& parts);

struct SplittingReport {
  bool applicable = false;   // module constants generate the module
  bool splits = false;       // identity lifts through the restricted free cover
  std::optional<LeftHom> section;
};

/// Covers S by the restricted free module on a basis of MC(S) and tries to
/// lift the identity of S through the cover.
SplittingReport splitting_probe(const FdLeftModule& s);

}  // namespace mrb
