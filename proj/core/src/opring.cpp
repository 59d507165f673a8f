#include "mrb/opring.hpp"

#include "format.hpp"
#include "mrb/errors.hpp"

namespace mrb {

bool operator<(const OpWord& a, const OpWord& b) {
  if (a.q_degree() != b.q_degree()) return a.q_degree() < b.q_degree();
  for (std::size_t k = 0; k < a.slots.size(); ++k) {
    if (a.slots[k] != b.slots[k]) return a.slots[k] < b.slots[k];
    if (k < a.ops.size() && a.ops[k] != b.ops[k]) return a.ops[k] < b.ops[k];
  }
  return false;
}

OperatorRing::OperatorRing(InstancePtr inst) : inst_(std::move(inst)) {
  if (!inst_) throw InputError("operator ring needs an instance");
}

OpElement OperatorRing::unit() const { return scalar(inst_->algebra().unit); }

OpElement OperatorRing::scalar(const Vector& r) const { return pure({r}, {}); }

OpElement OperatorRing::q(std::size_t w) const {
  const Vector& u = inst_->algebra().unit;
  return pure({u, u}, {w});
}

OpElement OperatorRing::pure(const std::vector<Vector>& slots, const std::vector<std::size_t>& ops) const {
  if (slots.size() != ops.size() + 1) throw InputError("operator word needs k+1 slots for k letters");
  for (auto w : ops)
    if (w >= inst_->omega_size()) throw InputError("operator index out of range");
  OpElement out;
  OpWord w{std::vector<std::size_t>(slots.size()), ops};
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

OpElement OperatorRing::multiply(const OpWord& a, const OpWord& b) const {
  const Vector& prod = inst_->algebra().basis_product(a.slots.back(), b.slots.front());
  OpElement out;
  OpWord w;
  w.slots.assign(a.slots.begin(), a.slots.end() - 1);
  w.slots.push_back(0);
  const std::size_t boundary = w.slots.size() - 1;
  w.slots.insert(w.slots.end(), b.slots.begin() + 1, b.slots.end());
  w.ops = a.ops;
  w.ops.insert(w.ops.end(), b.ops.begin(), b.ops.end());
  for (std::size_t k = 0; k < prod.size(); ++k) {
    if (sgn(prod[k]) == 0) continue;
    w.slots[boundary] = k;
    out.add(w, prod[k]);
  }
  return out;
}

OpElement OperatorRing::multiply(const OpElement& a, const OpElement& b) const {
  OpElement out;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) out += (ca * cb) * multiply(wa, wb);
  return out;
}

OpElement OperatorRing::rewrite_at(const OpWord& w, std::size_t pos) const {
  if (pos + 1 >= w.q_degree()) throw InputError("no redex at the requested position");
  const std::size_t alpha = w.ops[pos];
  const std::size_t beta = w.ops[pos + 1];
  const Vector r = unit_vector(inst_->dim(), w.slots[pos + 1]);
  const Vector pr = inst_->op(alpha) * r;
  const Vector& u = inst_->algebra().unit;

  OpElement middle = pure({pr, u}, {beta});
  middle -= pure({u, pr}, {beta});
  middle -= inst_->weight(beta) * pure({u, r}, {alpha});
  middle -= inst_->weight(alpha) * pure({u, r}, {beta});

  OpWord prefix{{w.slots.begin(), w.slots.begin() + static_cast<std::ptrdiff_t>(pos) + 1},
                {w.ops.begin(), w.ops.begin() + static_cast<std::ptrdiff_t>(pos)}};
  OpWord suffix{{w.slots.begin() + static_cast<std::ptrdiff_t>(pos) + 2, w.slots.end()},
                {w.ops.begin() + static_cast<std::ptrdiff_t>(pos) + 2, w.ops.end()}};
  return multiply(multiply(OpElement::single(prefix), middle), OpElement::single(suffix));
}

RewriteReport OperatorRing::normalize(const OpElement& e) const {
  RewriteReport report;
  report.input = e;
  report.strategy = "leftmost-innermost";
  OpElement work = e;
  while (!work.is_zero()) {
    auto top = std::prev(work.terms().end());
    if (top->first.q_degree() <= 1) break;
    OpWord w = top->first;
    Scalar c = top->second;
    work.add(w, -c);
    work += c * rewrite_at(w, 0);
    ++report.applications;
  }
  report.output = std::move(work);
  return report;
}

OpElement OperatorRing::relation(std::size_t alpha, const Vector& r, std::size_t beta) const {
  const Vector pr = inst_->op(alpha) * r;
  OpElement g = multiply(multiply(q(alpha), scalar(r)), q(beta));
  g -= multiply(scalar(pr), q(beta));
  g += multiply(q(beta), scalar(pr));
  g += inst_->weight(beta) * multiply(q(alpha), scalar(r));
  g += inst_->weight(alpha) * multiply(q(beta), scalar(r));
  return g;
}

std::vector<OpWord> OperatorRing::words(std::size_t max_qdegree) const {
  const std::size_t d = inst_->dim();
  const std::size_t s = inst_->omega_size();
  std::vector<OpWord> out;
  for (std::size_t k = 0; k <= max_qdegree; ++k) {
    if (k > 0 && s == 0) break;
    OpWord w{std::vector<std::size_t>(k + 1, 0), std::vector<std::size_t>(k, 0)};
    while (true) {
      out.push_back(w);
      std::size_t pos = 2 * k + 1;
      bool done = true;
      while (pos-- > 0) {
        bool is_slot = pos % 2 == 0;
        std::size_t& digit = is_slot ? w.slots[pos / 2] : w.ops[pos / 2];
        if (++digit < (is_slot ? d : s)) {
          done = false;
          break;
        }
        digit = 0;
      }
      if (done) break;
    }
  }
  return out;
}

std::size_t OperatorRing::word_count(std::size_t max_qdegree) const {
  const std::size_t d = inst_->dim();
  const std::size_t s = inst_->omega_size();
  std::size_t total = 0, term = d;
  for (std::size_t k = 0; k <= max_qdegree; ++k) {
    total += term;
    term *= d * s;
  }
  return total;
}

FreeModuleElement OperatorRing::act(const OpElement& a, const FreeModuleElement& m) const {
  FreeModuleElement out;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wm, cm] : m.terms())
      for (const auto& [w, c] : multiply(wa, wm.first).terms()) out.add({w, wm.second}, ca * cm * c);
  return out;
}

FreeModuleElement OperatorRing::free_module_normal_form(const FreeModuleElement& e) const {
  std::map<std::size_t, OpElement> by_generator;
  for (const auto& [key, c] : e.terms()) by_generator[key.second].add(key.first, c);
  FreeModuleElement out;
  for (const auto& [x, part] : by_generator)
    for (const auto& [w, c] : normal_form(part).terms()) out.add({w, x}, c);
  return out;
}

FreeModuleElement OperatorRing::translate(const OperatedElement& e) const {
  FreeModuleElement out;
  for (const auto& [w, c] : e.terms()) out.add({OpWord{w.slots, w.ops}, w.generator}, c);
  return out;
}

std::string OperatorRing::to_string(const OpWord& w) const {
  const auto& basis = inst_->algebra().basis_labels;
  std::string out = basis[w.slots[0]];
  for (std::size_t k = 0; k < w.ops.size(); ++k)
    out += " Q[" + inst_->omega()[w.ops[k]] + "] " + basis[w.slots[k + 1]];
  return out;
}

std::string OperatorRing::to_string(const OpElement& e) const {
  std::string out;
  for (const auto& [w, c] : e.terms()) detail::append_term(out, c, to_string(w));
  return out.empty() ? "0" : out;
}

std::string OperatorRing::to_string(const FreeModuleElement& e, const std::vector<std::string>& generators) const {
  std::string out;
  for (const auto& [key, c] : e.terms()) {
    if (key.second >= generators.size()) throw InputError("generator index out of range");
    detail::append_term(out, c, "(" + to_string(key.first) + " : " + generators[key.second] + ")");
  }
  return out.empty() ? "0" : out;
}

ConfluenceReport confluence_probe(const OperatorRing& ring, std::size_t max_qdegree) {
  ConfluenceReport report;
  std::optional<TruncatedQuotientOracle> oracle;
  for (const auto& w : ring.words(max_qdegree)) {
    if (w.q_degree() < 3) continue;
    ++report.words_checked;
    const std::size_t redexes = w.q_degree() - 1;
    if (redexes < 2) continue;
    ++report.overlaps_checked;
    OpElement first = ring.normal_form(ring.rewrite_at(w, 0));
    for (std::size_t p = 1; p < redexes; ++p) {
      OpElement other = ring.normal_form(ring.rewrite_at(w, p));
      if (other == first) continue;
      if (!oracle) oracle.emplace(ring, max_qdegree);
      report.discrepancies.push_back({w, 0, p, first, other, oracle->in_ideal(first - other)});
    }
  }
  return report;
}

TruncatedQuotientOracle::TruncatedQuotientOracle(const OperatorRing& ring, std::size_t max_qdegree)
    : max_qdegree_(max_qdegree), words_(ring.words(max_qdegree)), echelon_(words_.size()) {
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
  if (max_qdegree < 2) return;
  const auto& inst = ring.instance();
  const std::size_t d = inst.dim();
  std::vector<OpWord> outer = ring.words(max_qdegree - 2);
  for (std::size_t al = 0; al < inst.omega_size(); ++al)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t be = 0; be < inst.omega_size(); ++be) {
        OpElement g = ring.relation(al, unit_vector(d, i), be);
        for (const auto& u : outer) {
          OpElement ug = ring.multiply(OpElement::single(u), g);
          for (const auto& v : outer) {
            if (u.q_degree() + v.q_degree() + 2 > max_qdegree) continue;
            OpElement rel = ring.multiply(ug, OpElement::single(v));
            ++relation_count_;
            echelon_.insert(to_vector(rel));
          }
        }
      }
}

std::vector<OpWord> TruncatedQuotientOracle::basis_cosets() const {
  std::vector<OpWord> out;
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (!echelon_.is_pivot(i)) out.push_back(words_[i]);
  return out;
}

SparseVector TruncatedQuotientOracle::to_vector(const OpElement& e) const {
  SparseVector v;
  v.reserve(e.terms().size());
  for (const auto& [w, c] : e.terms()) {
    auto it = index_.find(w);
    if (it == index_.end()) throw InputError("element exceeds the oracle truncation");
    v.emplace_back(it->second, c);
  }
  // Map order equals index order, so v is already sorted.
  return v;
}

bool TruncatedQuotientOracle::in_ideal(const OpElement& e) const { return echelon_.contains(to_vector(e)); }

}  // namespace mrb
