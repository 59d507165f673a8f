#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mrb/linalg.hpp"
#include "mrb/report.hpp"

namespace mrb {

/// Index of `label` in `labels`; throws UnknownLabel naming `what`.
std::size_t label_index(const std::vector<std::string>& labels, std::string_view label,
                        std::string_view what);

/// Finite-dimensional unital algebra given by structure constants
/// b_i * b_j = sum_k c[i][j][k] b_k.
struct AlgebraPresentation {
  std::size_t dim = 0;
  std::vector<std::string> basis_labels;
  std::vector<std::vector<Vector>> structure;  // structure[i][j] has length dim
  Vector unit;

  /// Throws MalformedPresentation when array shapes disagree with dim.
  void validate_shape() const;

  Vector multiply(const Vector& x, const Vector& y) const;
  const Vector& basis_product(std::size_t i, std::size_t j) const { return structure[i][j]; }
  /// Matrix of v -> x * v.
  Matrix left_multiplication(const Vector& x) const;
  /// Matrix of v -> v * x.
  Matrix right_multiplication(const Vector& x) const;
  std::size_t basis_index(std::string_view label) const;

  /// k^d with b_i b_j = delta_ij b_i, basis e1..ed, unit (1,..,1).
  static AlgebraPresentation componentwise(std::size_t d);
};

/// Associativity on every basis triple and the two unit laws on every basis
/// element.
Report check_presentation(const AlgebraPresentation& a);

struct OperatorFamily {
  std::vector<std::string> labels;
  std::vector<Matrix> matrices;  // aligned with labels

  std::size_t size() const { return labels.size(); }
  std::size_t index_of(std::string_view label) const;
};

/// Weights aligned with the operator labels.
using WeightFamily = std::vector<Scalar>;

class MrbInstance;
Report check_mrb_identity(MrbInstance& inst);

/// An algebra with an operator family and weights. Immutable once built; the
/// verified flag is set only by check_mrb_identity.
class MrbInstance {
 public:
  MrbInstance(AlgebraPresentation algebra, OperatorFamily operators, WeightFamily weights);

  const AlgebraPresentation& algebra() const { return algebra_; }
  const OperatorFamily& operators() const { return operators_; }
  const WeightFamily& weights() const { return weights_; }
  bool verified() const { return verified_; }

  std::size_t dim() const { return algebra_.dim; }
  std::size_t omega_size() const { return operators_.size(); }
  const std::vector<std::string>& omega() const { return operators_.labels; }
  const Matrix& op(std::size_t w) const { return operators_.matrices[w]; }
  const Scalar& weight(std::size_t w) const { return weights_[w]; }

  bool operator==(const MrbInstance& other) const;

 private:
  friend Report check_mrb_identity(MrbInstance& inst);

  AlgebraPresentation algebra_;
  OperatorFamily operators_;
  WeightFamily weights_;
  bool verified_ = false;
};

using InstancePtr = std::shared_ptr<const MrbInstance>;

/// Evaluates the coupled identity on every basis pair and every label pair
/// without touching the verified flag.
Report mrb_identity_violations(const MrbInstance& inst);

/// Runs check_mrb_identity and wraps the result; throws PreconditionError when
/// the instance fails.
InstancePtr verified_instance(MrbInstance inst);

/// Coefficient rows A_i over the source label set; row i defines
/// P_i = sum_w A_i[w] P_w and lambda_i = sum_w A_i[w] lambda_w.
struct ReweightSpec {
  std::vector<std::string> labels;
  std::vector<Vector> coefficients;

  static ReweightSpec identity(const OperatorFamily& family);
};

void validate_reweight_spec(const ReweightSpec& spec, std::size_t source_labels);
MrbInstance reweight(const MrbInstance& inst, const ReweightSpec& spec);

namespace catalog {

MrbInstance trivial(std::size_t d, std::size_t s);
/// Zero operators and weights over an arbitrary presentation.
MrbInstance trivial(const AlgebraPresentation& algebra, std::size_t s);
MrbInstance scaled_projection(const std::vector<Scalar>& c);
/// 2x2 upper-triangular matrices (basis E11, E12, E22) with the projection
/// onto span{E11, E12} along span{E22} and its negative.
MrbInstance upper_triangular();

/// Resolves "trivial(d,s)", "scaled_projection(c1,c2,...)" and
/// "upper_triangular"; throws InputError otherwise.
MrbInstance by_name(std::string_view name);
std::vector<std::string> names();

}  // namespace catalog

}  // namespace mrb
