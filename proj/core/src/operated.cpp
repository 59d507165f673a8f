#include "mrb/operated.hpp"

#include "format.hpp"
#include "mrb/errors.hpp"

namespace mrb {

bool operator<(const OperatedWord& a, const OperatedWord& b) {
  if (a.depth() != b.depth()) return a.depth() < b.depth();
  if (a.generator != b.generator) return a.generator < b.generator;
  for (std::size_t k = 0; k < a.depth(); ++k) {
    if (a.slots[k] != b.slots[k]) return a.slots[k] < b.slots[k];
    if (k < a.ops.size() && a.ops[k] != b.ops[k]) return a.ops[k] < b.ops[k];
  }
  return false;
}

OperatedElement OperatedElement::word(OperatedWord w, Scalar c) {
  OperatedElement e;
  e.add(w, c);
  return e;
}

void OperatedElement::add(const OperatedWord& w, const Scalar& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

std::size_t OperatedElement::max_depth() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.depth();
}

OperatedElement& OperatedElement::operator+=(const OperatedElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

OperatedElement& OperatedElement::operator-=(const OperatedElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

OperatedElement operator*(const Scalar& c, const OperatedElement& e) {
  OperatedElement out;
  if (sgn(c) == 0) return out;
  for (const auto& [w, x] : e.terms_) out.terms_.emplace(w, c * x);
  return out;
}

OperatedModuleHom::OperatedModuleHom(FdLeftModule target, std::vector<Vector> images)
    : target_(std::move(target)), images_(std::move(images)) {
  target_.validate_shape();
  for (const auto& v : images_)
    if (v.size() != target_.dim) throw InputError("generator image has the wrong length");
}

Vector OperatedModuleHom::evaluate(const OperatedWord& w) const {
  if (w.generator >= images_.size()) throw InputError("word uses a generator outside the lifted set");
  Vector v = target_.action[w.slots.back()] * images_[w.generator];
  for (std::size_t k = w.ops.size(); k-- > 0;) v = target_.action[w.slots[k]] * (target_.op(w.ops[k]) * v);
  return v;
}

Vector OperatedModuleHom::evaluate(const OperatedElement& e) const {
  Vector out(target_.dim);
  for (const auto& [w, c] : e.terms()) axpy(out, c, evaluate(w));
  return out;
}

OperatedFree::OperatedFree(InstancePtr inst, std::vector<std::string> generators)
    : inst_(std::move(inst)), generators_(std::move(generators)) {
  if (generators_.empty()) throw InputError("generator set must be nonempty");
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (generators_[i] == generators_[j]) throw InputError("duplicate generator '" + generators_[i] + "'");
}

std::size_t OperatedFree::generator_index(std::string_view name) const {
  return label_index(generators_, name, "generator");
}

OperatedElement OperatedFree::embed(std::size_t generator) const {
  return pure({inst_->algebra().unit}, {}, generator);
}

OperatedElement OperatedFree::pure(const std::vector<Vector>& slots, const std::vector<std::size_t>& ops,
                                   std::size_t generator) const {
  if (slots.empty() || ops.size() + 1 != slots.size()) throw InputError("operated word needs n slots and n-1 labels");
  if (generator >= generators_.size()) throw InputError("generator index out of range");
  for (auto w : ops)
    if (w >= inst_->omega_size()) throw InputError("operator index out of range");
  OperatedElement out;
  OperatedWord w{std::vector<std::size_t>(slots.size()), ops, generator};
  // Multilinear expansion over the slot coordinates.
  auto expand = [&](auto&& self, std::size_t k, const Scalar& coeff) -> void {
    if (k == slots.size()) {
      out.add(w, coeff);
      return;
    }
    for (std::size_t i = 0; i < slots[k].size(); ++i) {
      if (sgn(slots[k][i]) == 0) continue;
      w.slots[k] = i;
      self(self, k + 1, coeff * slots[k][i]);
    }
  };
  expand(expand, 0, Scalar(1));
  return out;
}

OperatedElement OperatedFree::act(const Vector& r, const OperatedElement& e) const {
  const auto& alg = inst_->algebra();
  OperatedElement out;
  for (const auto& [w, c] : e.terms()) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (sgn(r[i]) == 0) continue;
      const Vector& prod = alg.basis_product(i, w.slots[0]);
      for (std::size_t k = 0; k < prod.size(); ++k) {
        if (sgn(prod[k]) == 0) continue;
        OperatedWord nw = w;
        nw.slots[0] = k;
        out.add(nw, c * r[i] * prod[k]);
      }
    }
  }
  return out;
}

OperatedElement OperatedFree::apply_operator(std::size_t op, const OperatedElement& e) const {
  if (op >= inst_->omega_size()) throw InputError("operator index out of range");
  const Vector& unit = inst_->algebra().unit;
  OperatedElement out;
  for (const auto& [w, c] : e.terms())
    for (std::size_t k = 0; k < unit.size(); ++k) {
      if (sgn(unit[k]) == 0) continue;
      OperatedWord nw;
      nw.generator = w.generator;
      nw.slots.reserve(w.slots.size() + 1);
      nw.slots.push_back(k);
      nw.slots.insert(nw.slots.end(), w.slots.begin(), w.slots.end());
      nw.ops.push_back(op);
      nw.ops.insert(nw.ops.end(), w.ops.begin(), w.ops.end());
      out.add(nw, c * unit[k]);
    }
  return out;
}

OperatedElement OperatedFree::apply_operator(std::string_view label, const OperatedElement& e) const {
  return apply_operator(inst_->operators().index_of(label), e);
}

std::vector<OperatedWord> OperatedFree::words(std::size_t max_depth) const {
  const std::size_t d = inst_->dim();
  const std::size_t s = inst_->omega_size();
  std::vector<OperatedWord> out;
  for (std::size_t n = 1; n <= max_depth; ++n) {
    if (n > 1 && s == 0) break;
    for (std::size_t x = 0; x < generators_.size(); ++x) {
      OperatedWord w{std::vector<std::size_t>(n, 0), std::vector<std::size_t>(n - 1, 0), x};
      // Odometer over (slot, label) segments, most significant first.
      while (true) {
        out.push_back(w);
        std::size_t pos = 2 * n - 1;
        bool done = true;
        while (pos-- > 0) {
          bool is_slot = pos % 2 == 0;
          std::size_t& digit = is_slot ? w.slots[pos / 2] : w.ops[pos / 2];
          std::size_t base = is_slot ? d : s;
          if (++digit < base) {
            done = false;
            break;
          }
          digit = 0;
        }
        if (done) break;
      }
    }
  }
  return out;
}

OperatedElement OperatedFree::ideal_generator(const Vector& r, const OperatedElement& a, std::size_t alpha,
                                              std::size_t beta) const {
  const Vector pr = inst_->op(alpha) * r;
  OperatedElement mb_a = apply_operator(beta, a);
  OperatedElement ra = act(r, a);
  OperatedElement g = act(pr, mb_a);
  g -= apply_operator(alpha, act(r, mb_a));
  g -= apply_operator(beta, act(pr, a));
  g -= inst_->weight(beta) * apply_operator(alpha, ra);
  g -= inst_->weight(alpha) * apply_operator(beta, ra);
  return g;
}

std::vector<OperatedElement> OperatedFree::ideal_generators(std::size_t max_depth) const {
  const std::size_t d = inst_->dim();
  const std::size_t s = inst_->omega_size();
  std::vector<OperatedElement> out;
  for (const auto& w : words(max_depth)) {
    OperatedElement a = OperatedElement::word(w);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t al = 0; al < s; ++al)
        for (std::size_t be = 0; be < s; ++be) out.push_back(ideal_generator(unit_vector(d, i), a, al, be));
  }
  return out;
}

OperatedModuleHom OperatedFree::lift(const std::vector<Vector>& images, const FdLeftModule& target) const {
  if (!same_instance(inst_, target.instance)) throw InputError("lift target lives over a different instance");
  if (images.size() != generators_.size()) throw InputError("lift needs one image per generator");
  return OperatedModuleHom(target, images);
}

std::string OperatedFree::to_string(const OperatedWord& w) const {
  const auto& basis = inst_->algebra().basis_labels;
  std::string out = "(";
  for (std::size_t k = 0; k < w.depth(); ++k) {
    out += basis[w.slots[k]];
    if (k < w.ops.size()) out += " . " + inst_->omega()[w.ops[k]] + " . ";
  }
  out += " : " + generators_[w.generator] + ")";
  return out;
}

std::string OperatedFree::to_string(const OperatedElement& e) const {
  std::string out;
  for (const auto& [w, c] : e.terms()) detail::append_term(out, c, to_string(w));
  return out.empty() ? "0" : out;
}

}  // namespace mrb
