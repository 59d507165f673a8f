#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mrb/algebra.hpp"
#include "mrb/modules.hpp"

namespace mrb {

/// b_{s_1} . w_1 . b_{s_2} ... w_{n-1} . b_{s_n} : x, with depth n >= 1.
struct OperatedWord {
  std::vector<std::size_t> slots;  // basis indices, length = depth
  std::vector<std::size_t> ops;    // label indices, length = depth - 1
  std::size_t generator = 0;

  std::size_t depth() const { return slots.size(); }
  bool operator==(const OperatedWord&) const = default;
};

/// Canonical order: depth, generator, then (slot, label) segments.
bool operator<(const OperatedWord& a, const OperatedWord& b);

class OperatedElement {
 public:
  using Terms = std::map<OperatedWord, Scalar>;

  OperatedElement() = default;
  static OperatedElement word(OperatedWord w, Scalar c = 1);

  void add(const OperatedWord& w, const Scalar& c);
  const Terms& terms() const& { return terms_; }
  Terms terms() && { return std::move(terms_); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t max_depth() const;

  OperatedElement& operator+=(const OperatedElement& o);
  OperatedElement& operator-=(const OperatedElement& o);
  friend OperatedElement operator+(OperatedElement a, const OperatedElement& b) { return a += b; }
  friend OperatedElement operator-(OperatedElement a, const OperatedElement& b) { return a -= b; }
  friend OperatedElement operator*(const Scalar& c, const OperatedElement& e);
  bool operator==(const OperatedElement&) const = default;

 private:
  Terms terms_;  // never stores a zero coefficient
};

/// Evaluator of the unique operated-module map extending a generator map.
class OperatedModuleHom {
 public:
  OperatedModuleHom(FdLeftModule target, std::vector<Vector> images);

  Vector evaluate(const OperatedWord& w) const;
  Vector evaluate(const OperatedElement& e) const;
  const FdLeftModule& target() const { return target_; }

 private:
  FdLeftModule target_;
  std::vector<Vector> images_;
};

/// The free operated module on a finite generator set over an instance.
class OperatedFree {
 public:
  OperatedFree(InstancePtr inst, std::vector<std::string> generators);

  const MrbInstance& instance() const { return *inst_; }
  const InstancePtr& instance_ptr() const { return inst_; }
  const std::vector<std::string>& generators() const { return generators_; }
  std::size_t generator_index(std::string_view name) const;

  /// 1_R (x) x.
  OperatedElement embed(std::size_t generator) const;
  /// r_1 . w_1 . ... . r_n : x with arbitrary algebra coefficients, expanded
  /// multilinearly.
  OperatedElement pure(const std::vector<Vector>& slots, const std::vector<std::size_t>& ops,
                       std::size_t generator) const;

  OperatedElement act(const Vector& r, const OperatedElement& e) const;
  OperatedElement apply_operator(std::size_t w, const OperatedElement& e) const;
  OperatedElement apply_operator(std::string_view label, const OperatedElement& e) const;

  /// Every basis word with depth between 1 and max_depth, in canonical order.
  std::vector<OperatedWord> words(std::size_t max_depth) const;

  /// P_a(r) m_b(a) - m_a(r m_b(a)) - m_b(P_a(r) a) - l_b m_a(r a) - l_a m_b(r a).
  OperatedElement ideal_generator(const Vector& r, const OperatedElement& a, std::size_t alpha,
                                  std::size_t beta) const;
  /// The generator for every basis r, every basis word of depth <= max_depth
  /// and every label pair; ordered by word, then r, then alpha, then beta.
  std::vector<OperatedElement> ideal_generators(std::size_t max_depth) const;

  OperatedModuleHom lift(const std::vector<Vector>& images, const FdLeftModule& target) const;

  std::string to_string(const OperatedWord& w) const;
  std::string to_string(const OperatedElement& e) const;

 private:
  InstancePtr inst_;
  std::vector<std::string> generators_;
};

}  // namespace mrb
