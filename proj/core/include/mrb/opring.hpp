#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mrb/algebra.hpp"
#include "mrb/operated.hpp"

namespace mrb {

/// r_0 Q_{w_1} r_1 ... Q_{w_k} r_k with basis-index slots; q_degree = k.
struct OpWord {
  std::vector<std::size_t> slots;  // length k + 1
  std::vector<std::size_t> ops;    // length k

  std::size_t q_degree() const { return ops.size(); }
  bool operator==(const OpWord&) const = default;
};

/// Canonical order: q_degree, then (slot, label) segments lexicographically.
bool operator<(const OpWord& a, const OpWord& b);

template <class Key>
class LinearCombination {
 public:
  using Terms = std::map<Key, Scalar>;

  LinearCombination() = default;
  static LinearCombination single(Key k, Scalar c = 1) {
    LinearCombination e;
    e.add(k, c);
    return e;
  }

  void add(const Key& k, const Scalar& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (inserted) return;
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
  const Terms& terms() const& { return terms_; }
  Terms terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  LinearCombination& operator+=(const LinearCombination& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  LinearCombination& operator-=(const LinearCombination& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
  friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
  friend LinearCombination operator*(const Scalar& c, const LinearCombination& e) {
    LinearCombination out;
    if (sgn(c) == 0) return out;
    for (const auto& [k, x] : e.terms_) out.terms_.emplace(k, c * x);
    return out;
  }
  bool operator==(const LinearCombination&) const = default;

 private:
  Terms terms_;  // never stores a zero coefficient
};

using OpElement = LinearCombination<OpWord>;

/// Operator word acting on generator index `second`.
using ModuleWord = std::pair<OpWord, std::size_t>;
using FreeModuleElement = LinearCombination<ModuleWord>;

struct RewriteReport {
  OpElement input;
  OpElement output;
  std::size_t applications = 0;
  std::string strategy;
};

/// The operator ring of an instance: free product of R with letters Q_w,
/// presented by basis-slot words and the rewriting rule
/// Q_a r Q_b -> P_a(r) Q_b - Q_b P_a(r) - l_b Q_a r - l_a Q_b r.
class OperatorRing {
 public:
  explicit OperatorRing(InstancePtr inst);

  const MrbInstance& instance() const { return *inst_; }
  const InstancePtr& instance_ptr() const { return inst_; }

  OpElement unit() const;
  OpElement scalar(const Vector& r) const;  // r as a q_degree 0 element
  OpElement q(std::size_t w) const;          // 1 Q_w 1
  /// r_0 Q r_1 ... with arbitrary algebra slots, expanded multilinearly.
  OpElement pure(const std::vector<Vector>& slots, const std::vector<std::size_t>& ops) const;

  /// Concatenation with the boundary slots multiplied; not normalized.
  OpElement multiply(const OpElement& a, const OpElement& b) const;
  OpElement multiply(const OpWord& a, const OpWord& b) const;

  /// One rule application at the redex Q_{ops[pos]} slots[pos+1] Q_{ops[pos+1]}.
  OpElement rewrite_at(const OpWord& w, std::size_t pos) const;
  /// Leftmost-innermost normalization; every output word has q_degree <= 1.
  RewriteReport normalize(const OpElement& e) const;
  OpElement normal_form(const OpElement& e) const { return normalize(e).output; }

  /// The ideal generator Q_a r Q_b - P_a(r) Q_b + Q_b P_a(r) + l_b Q_a r + l_a Q_b r,
  /// built by multiplication only.
  OpElement relation(std::size_t alpha, const Vector& r, std::size_t beta) const;

  /// All basis words with q_degree <= max_qdegree in canonical order.
  std::vector<OpWord> words(std::size_t max_qdegree) const;
  std::size_t word_count(std::size_t max_qdegree) const;

  FreeModuleElement act(const OpElement& a, const FreeModuleElement& m) const;
  FreeModuleElement free_module_normal_form(const FreeModuleElement& e) const;
  /// r_1 . w_1 . ... . r_n : x  ->  (r_1 Q_{w_1} ... r_n, x).
  FreeModuleElement translate(const OperatedElement& e) const;

  std::string to_string(const OpWord& w) const;
  std::string to_string(const OpElement& e) const;
  std::string to_string(const FreeModuleElement& e, const std::vector<std::string>& generators) const;

 private:
  InstancePtr inst_;
};

struct ConfluenceDiscrepancy {
  OpWord word;
  std::size_t first_position = 0;
  std::size_t second_position = 0;
  OpElement first_normal_form;
  OpElement second_normal_form;
  /// Oracle verdict on whether the two normal forms differ by an ideal element.
  bool difference_in_ideal = false;
};

struct ConfluenceReport {
  std::size_t words_checked = 0;
  std::size_t overlaps_checked = 0;
  std::vector<ConfluenceDiscrepancy> discrepancies;

  bool ok() const { return discrepancies.empty(); }
};

/// Reduces every basis word of q_degree 3..max_qdegree starting from each
/// redex position and compares the resulting normal forms.
ConfluenceReport confluence_probe(const OperatorRing& ring, std::size_t max_qdegree);

/// Brute-force truncation of the ideal: all basis words of q_degree <= D span
/// the ambient space; u g v for basis words u, v with deg u + deg v <= D - 2
/// and every ideal generator g span the relations.
class TruncatedQuotientOracle {
 public:
  TruncatedQuotientOracle(const OperatorRing& ring, std::size_t max_qdegree);

  std::size_t max_qdegree() const { return max_qdegree_; }
  std::size_t ambient_dim() const { return words_.size(); }
  std::size_t relation_count() const { return relation_count_; }
  std::size_t relation_rank() const { return echelon_.rank(); }
  std::size_t dim() const { return words_.size() - echelon_.rank(); }

  /// Words indexing a complement of the relation span (lexicographically
  /// first in canonical word order).
  std::vector<OpWord> basis_cosets() const;

  /// Whether e lies in the truncated ideal; throws InputError when e uses a
  /// word beyond the truncation.
  bool in_ideal(const OpElement& e) const;
  SparseVector to_vector(const OpElement& e) const;

 private:
  std::size_t max_qdegree_;
  std::vector<OpWord> words_;
  std::map<OpWord, std::size_t> index_;
  std::size_t relation_count_ = 0;
  SparseEchelon echelon_;
};

}  // namespace mrb
