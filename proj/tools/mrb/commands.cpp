#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "mrb/documents.hpp"
#include "mrb/errors.hpp"
#include "mrb/expression.hpp"
#include "mrb/modules.hpp"
#include "mrb/operated.hpp"
#include "mrb/opring.hpp"
#include "mrb/tensor.hpp"

namespace mrb::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::size_t max_qdegree = 3;
  std::size_t max_depth = 4;
  bool pretty = false;
  std::uint64_t seed = 1;
  std::string variant;
  std::vector<std::string> positional;
};

struct Outcome {
  Json report;
  int code = ExitCode::ok;
};

class Context {
 public:
  Context(const Options& opts, fs::path base) : opts_(opts), base_(std::move(base)) {}

  const Options& opts() const { return opts_; }

  fs::path resolve(const std::string& p) const {
    fs::path path(p);
    return path.is_relative() && !base_.empty() ? base_ / path : path;
  }

  MrbInstance unchecked_instance(const std::string& ref) const { return load_instance(ref, base_); }
  InstancePtr instance(const std::string& ref) const { return verified_instance(load_instance(ref, base_)); }

  ModuleDocument module(const std::string& path) const { return load_module(resolve(path)); }

  // Inline JSON text or a path to a JSON file.
  Json json_argument(const std::string& arg) const {
    std::error_code ec;
    if (fs::is_regular_file(resolve(arg), ec)) return read_json_file(resolve(arg));
    try {
      return Json::parse(arg);
    } catch (const Json::parse_error&) {
      throw InputError("'" + arg + "' is neither a file nor JSON text");
    }
  }

 private:
  const Options& opts_;
  fs::path base_;
};

const std::string& arg(const Options& o, std::size_t k) {
  if (k >= o.positional.size()) throw InputError("missing argument " + std::to_string(k + 1));
  return o.positional[k];
}

FdLeftModule left_module(const ModuleDocument& d) {
  if (!d.left) throw InputError("expected a left module document");
  return *d.left;
}

FdRightModule right_module(const ModuleDocument& d) {
  if (!d.right) throw InputError("expected a right module document");
  return *d.right;
}

FdBimodule bimodule(const ModuleDocument& d) {
  if (!d.bimodule) throw InputError("expected a bimodule document");
  return *d.bimodule;
}

std::vector<Vector> vectors_from_json(const Json& j, std::size_t length) {
  if (!j.is_array()) throw InputError("expected an array of vectors");
  std::vector<Vector> out;
  for (const auto& v : j) out.push_back(vector_from_json(v, length));
  return out;
}

int verdict(bool ok) { return ok ? ExitCode::ok : ExitCode::violations; }

bool uses_operated_syntax(const ExpressionAst& ast) {
  for (const auto& t : ast.terms)
    if (t.word.syntax == ExpressionWord::Syntax::operated_word) return true;
  return false;
}

Outcome check_algebra(const Context& ctx) {
  MrbInstance inst = ctx.unchecked_instance(arg(ctx.opts(), 0));
  Report r = check_mrb_identity(inst);
  Json out = to_json(r);
  out["dim"] = inst.dim();
  out["omega"] = inst.omega();
  return {out, verdict(r.ok())};
}

Outcome check_module_verb(const Context& ctx) {
  ModuleDocument d = ctx.module(arg(ctx.opts(), 0));
  Report r = d.left ? check_left_module(*d.left) : d.right ? check_right_module(*d.right) : check_bimodule(*d.bimodule);
  Json out = to_json(r);
  out["side"] = d.side;
  return {out, verdict(r.ok())};
}

Outcome normalize(const Context& ctx) {
  InstancePtr inst = ctx.instance(arg(ctx.opts(), 0));
  OperatorRing ring(inst);
  ExpressionAst ast = parse_expression(arg(ctx.opts(), 1));
  const auto generators = ast.generators();
  Json out;
  out["input"] = to_string(ast);
  if (generators.empty()) {
    RewriteReport r = ring.normalize(to_op_element(ast, ring));
    out["normal_form"] = ring.to_string(r.output);
    out["applications"] = r.applications;
    out["strategy"] = r.strategy;
    return {out};
  }
  FreeModuleElement e;
  if (uses_operated_syntax(ast)) {
    OperatedFree free(inst, generators);
    e = ring.translate(to_operated_element(ast, free));
  } else {
    e = to_module_element(ast, ring, generators);
  }
  out["generators"] = generators;
  out["normal_form"] = ring.to_string(ring.free_module_normal_form(e), generators);
  return {out};
}

Outcome confluence(const Context& ctx) {
  OperatorRing ring(ctx.instance(arg(ctx.opts(), 0)));
  ConfluenceReport r = confluence_probe(ring, ctx.opts().max_qdegree);
  Json discrepancies = Json::array();
  bool adjudicated = true;
  for (const auto& d : r.discrepancies) {
    adjudicated &= d.difference_in_ideal;
    discrepancies.push_back({{"word", ring.to_string(d.word)},
                             {"positions", {d.first_position, d.second_position}},
                             {"first", ring.to_string(d.first_normal_form)},
                             {"second", ring.to_string(d.second_normal_form)},
                             {"difference_in_ideal", d.difference_in_ideal}});
  }
  Json out{{"max_qdegree", ctx.opts().max_qdegree},
           {"words_checked", r.words_checked},
           {"overlaps_checked", r.overlaps_checked},
           {"confluent", r.ok()},
           {"ok", adjudicated},
           {"discrepancies", std::move(discrepancies)}};
  return {out, verdict(adjudicated)};
}

Outcome oracle(const Context& ctx) {
  InstancePtr inst = ctx.instance(arg(ctx.opts(), 0));
  OperatorRing ring(inst);
  const std::size_t q = ctx.opts().max_qdegree;
  TruncatedQuotientOracle o(ring, q);
  const std::size_t d = inst->dim(), s = inst->omega_size();
  Json out{{"max_qdegree", q},
           {"ambient_dim", o.ambient_dim()},
           {"relation_rank", o.relation_rank()},
           {"dim", o.dim()},
           {"normal_word_count", d + d * d * s}};
  if (ctx.opts().positional.size() > 1) {
    ExpressionAst ast = parse_expression(arg(ctx.opts(), 1));
    OpElement e = to_op_element(ast, ring);
    OpElement nf = ring.normal_form(e);
    out["expression"] = to_string(ast);
    out["normal_form"] = ring.to_string(nf);
    out["in_ideal"] = o.in_ideal(e);
    return {out};
  }
  // Sampled iff-comparison between normal forms and the truncated ideal.
  std::mt19937_64 rng(ctx.opts().seed);
  auto words = ring.words(q);
  std::size_t agree = 0, disagree = 0;
  const std::size_t pairs = 200;
  for (std::size_t k = 0; k < pairs; ++k) {
    OpElement a = OpElement::single(words[rng() % words.size()]);
    OpElement b = OpElement::single(words[rng() % words.size()]);
    (ring.normal_form(a) == ring.normal_form(b)) == o.in_ideal(a - b) ? ++agree : ++disagree;
  }
  out["sweep"] = {{"seed", ctx.opts().seed}, {"pairs", pairs}, {"agreements", agree}, {"disagreements", disagree}};
  return {out};
}

template <Side S>
Json quotient_json(const FdModule<S>& m, const Json& seeds) {
  Subspace n = generated_submodule(m, vectors_from_json(seeds, m.dim));
  FdModule<S> q = quotient_module(m, n);
  return {{"submodule", to_json(n)}, {"quotient", to_json(q)}, {"check", to_json(check_module(q))}};
}

Outcome quotient(const Context& ctx) {
  ModuleDocument d = ctx.module(arg(ctx.opts(), 0));
  Json seeds = ctx.json_argument(arg(ctx.opts(), 1));
  if (d.left) return {quotient_json(*d.left, seeds)};
  if (d.right) return {quotient_json(*d.right, seeds)};
  throw InputError("quotient expects a left or right module");
}

template <Side S>
Json sum_json(const std::vector<FdModule<S>>& parts) {
  for (const auto& p : parts)
    if (!same_instance(p.instance, parts[0].instance)) throw InputError("summands live over different instances");
  DirectSum<S> s = direct_sum<S>(parts[0].instance, parts);
  Json dims = Json::array();
  for (const auto& p : parts) dims.push_back(p.dim);
  return {{"dims", std::move(dims)}, {"sum", to_json(s.sum)}, {"check", to_json(check_module(s.sum))}};
}

Outcome direct_sum_verb(const Context& ctx) {
  if (ctx.opts().positional.empty()) throw InputError("direct-sum needs at least one module");
  std::vector<FdLeftModule> lefts;
  std::vector<FdRightModule> rights;
  for (const auto& path : ctx.opts().positional) {
    ModuleDocument d = ctx.module(path);
    if (d.left)
      lefts.push_back(*d.left);
    else if (d.right)
      rights.push_back(*d.right);
    else
      throw InputError("direct-sum expects one-sided modules");
  }
  if (!lefts.empty() && !rights.empty()) throw InputError("summands must share a side");
  return {lefts.empty() ? sum_json(rights) : sum_json(lefts)};
}

Outcome mc(const Context& ctx) {
  FdLeftModule m = left_module(ctx.module(arg(ctx.opts(), 0)));
  return {{{"module_constants", to_json(module_constants(m))}}};
}

Outcome restricted_free_verb(const Context& ctx) {
  InstancePtr inst = ctx.instance(arg(ctx.opts(), 0));
  std::vector<std::string> gens;
  std::stringstream ss(arg(ctx.opts(), 1));
  for (std::string g; std::getline(ss, g, ',');) gens.push_back(g);
  RestrictedFree f = restricted_free(inst, gens);
  Report r = check_left_module(f.module);
  return {{{"generators", f.generators}, {"module", to_json(f.module)}, {"check", to_json(r)}}, verdict(r.ok())};
}

Outcome hom(const Context& ctx) {
  ModuleDocument a = ctx.module(arg(ctx.opts(), 0)), b = ctx.module(arg(ctx.opts(), 1));
  if (a.left && b.left) return {to_json(hom_space(*a.left, *b.left))};
  if (a.right && b.right) return {to_json(hom_space(*a.right, *b.right))};
  throw InputError("hom expects two modules on the same side");
}

Outcome hom_module(const Context& ctx) {
  ModuleDocument a = ctx.module(arg(ctx.opts(), 0)), b = ctx.module(arg(ctx.opts(), 1));
  const std::string& v = ctx.opts().variant;
  Json out{{"variant", v}};
  Report r;
  auto fill = [&](const auto& h) {
    out["space"] = to_json(h.space);
    out["module"] = to_json(h.module);
    r = check_module(h.module);
  };
  if (v == "a")
    fill(hom_module_a(right_module(a), bimodule(b)));
  else if (v == "b")
    fill(hom_module_b(left_module(a), bimodule(b)));
  else if (v == "c")
    fill(hom_module_c(bimodule(a), left_module(b)));
  else if (v == "d")
    fill(hom_module_d(bimodule(a), right_module(b)));
  else
    throw InputError("--variant must be one of a, b, c, d");
  out["check"] = to_json(r);
  return {out, verdict(r.ok())};
}

Outcome reweight_verb(const Context& ctx) {
  InstancePtr inst = ctx.instance(arg(ctx.opts(), 0));
  MrbInstance out = reweight(*inst, reweight_spec_from_json(ctx.json_argument(arg(ctx.opts(), 1))));
  Report r = check_mrb_identity(out);
  return {{{"instance", to_json(out)}, {"check", to_json(r)}}, verdict(r.ok())};
}

Outcome tensor(const Context& ctx) {
  FdRightModule m = right_module(ctx.module(arg(ctx.opts(), 0)));
  FdLeftModule n = left_module(ctx.module(arg(ctx.opts(), 1)));
  TensorSpace t = tensor_product(m, n);
  Report r = check_bilinearity(t);
  return {{{"dim", t.dim()},
           {"ambient_dim", t.ambient_dim()},
           {"relation_rank", t.ambient_dim() - t.dim()},
           {"bilinearity", to_json(r)}},
          verdict(r.ok())};
}

Outcome adjunction(const Context& ctx) {
  FdRightModule m = right_module(ctx.module(arg(ctx.opts(), 0)));
  FdBimodule s = bimodule(ctx.module(arg(ctx.opts(), 1)));
  FdRightModule t = right_module(ctx.module(arg(ctx.opts(), 2)));
  AdjunctionReport r = adjunction_check(m, s, t);
  return {{{"tensor_dim", r.tensor_dim},
           {"lhs_dim", r.lhs_dim},
           {"rhs_dim", r.rhs_dim},
           {"theta", to_json(r.theta)},
           {"theta_prime", to_json(r.theta_prime)},
           {"theta_then_prime_identity", r.theta_then_prime_identity},
           {"prime_then_theta_identity", r.prime_then_theta_identity},
           {"ok", r.ok()}},
          verdict(r.ok())};
}

Outcome flat_probe(const Context& ctx) {
  ModuleDocument d = ctx.module(arg(ctx.opts(), 0));
  FlatnessReport r;
  if (d.right)
    r = flatness_probe(*d.right, catalog_injections<Side::left>(d.right->instance));
  else if (d.left)
    r = flatness_probe(*d.left, catalog_injections<Side::right>(d.left->instance));
  else
    throw InputError("flat-probe expects a one-sided module");
  Json probes = Json::array();
  for (const auto& p : r.probes) probes.push_back(to_json(p));
  return {{{"side", d.side}, {"probes", std::move(probes)}, {"all_preserved", r.all_preserved()}}};
}

// (r_0 Q r_1 ... r_n, x) acts as A(r_0) m A(r_1) ... A(r_n) on the image of x.
Vector evaluate_module_word(const ModuleWord& w, const FdLeftModule& m, const std::vector<Vector>& images) {
  Vector v = m.action[w.first.slots.back()] * images[w.second];
  for (std::size_t k = w.first.ops.size(); k-- > 0;) v = m.action[w.first.slots[k]] * (m.op(w.first.ops[k]) * v);
  return v;
}

Outcome lift(const Context& ctx) {
  FdLeftModule target = left_module(ctx.module(arg(ctx.opts(), 0)));
  ExpressionAst ast = parse_expression(arg(ctx.opts(), 2));
  const auto generators = ast.generators();
  if (generators.empty()) throw InputError("lift expects a module expression with generators");
  std::vector<Vector> images = vectors_from_json(ctx.json_argument(arg(ctx.opts(), 1)), target.dim);
  if (images.size() != generators.size())
    throw InputError("expected one image per generator (" + std::to_string(generators.size()) + ")");
  OperatedFree free(target.instance, generators);
  OperatedModuleHom phi = free.lift(images, target);
  Vector value(target.dim);
  if (uses_operated_syntax(ast)) {
    value = phi.evaluate(to_operated_element(ast, free));
  } else {
    OperatorRing ring(target.instance);
    for (const auto& [w, c] : to_module_element(ast, ring, generators).terms())
      value = value + c * evaluate_module_word(w, target, images);
  }
  const std::size_t depth = ctx.opts().max_depth >= 2 ? ctx.opts().max_depth - 2 : 0;
  std::size_t checked = 0;
  bool kills = true;
  for (const auto& g : free.ideal_generators(depth)) {
    ++checked;
    kills &= is_zero(phi.evaluate(g));
  }
  return {{{"generators", generators},
           {"value", to_json(value)},
           {"ideal_generators_checked", checked},
           {"kills_ideal_generators", kills}},
          verdict(kills)};
}

const std::map<std::string, std::function<Outcome(const Context&)>>& verbs() {
  static const std::map<std::string, std::function<Outcome(const Context&)>> table{
      {"check-algebra", check_algebra},
      {"check-module", check_module_verb},
      {"normalize", normalize},
      {"confluence", confluence},
      {"oracle", oracle},
      {"quotient", quotient},
      {"direct-sum", direct_sum_verb},
      {"mc", mc},
      {"restricted-free", restricted_free_verb},
      {"hom", hom},
      {"hom-module", hom_module},
      {"reweight", reweight_verb},
      {"tensor", tensor},
      {"adjunction", adjunction},
      {"flat-probe", flat_probe},
      {"lift", lift}};
  return table;
}

Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

void emit(std::ostream& out, const Json& j, bool pretty) { out << (pretty ? j.dump(2) : j.dump()) << '\n'; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, const fs::path& base) {
  Options opts;
  CLI::App app{"Multiple Rota-Baxter module toolkit", "mrb"};
  app.require_subcommand(1);
  app.add_option("--max-qdegree", opts.max_qdegree, "Truncation degree for oracle and confluence")->capture_default_str();
  app.add_option("--max-depth", opts.max_depth, "Depth bound for operated words")->capture_default_str();
  app.add_flag("--pretty", opts.pretty, "Indent the JSON report");
  app.add_option("--seed", opts.seed, "Seed for sampled sweeps")->capture_default_str();
  for (const auto& [name, fn] : verbs()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->add_option("args", opts.positional);
    if (name == "hom-module") sub->add_option("--variant", opts.variant, "a, b, c or d")->required();
  }

  for (const auto& a : args) {
    if (a.rfind("-", 0) == 0) continue;
    if (!verbs().count(a) && !std::all_of(a.begin(), a.end(), ::isdigit)) {
      emit(out, error_json("usage", "unknown verb '" + a + "'"), false);
      return ExitCode::input_error;
    }
    break;
  }
  // CLI11 expands "[a,b]" into a list, so JSON arguments are shielded with
  // a marker byte that is stripped after parsing.
  constexpr char shield = '\x1f';
  // Everything after "--" is positional, including leading minus signs.
  std::vector<std::string> reversed;
  bool literal = false;
  for (const auto& a : args) {
    if (!literal && a == "--") {
      literal = true;
      continue;
    }
    reversed.push_back(literal || (!a.empty() && a.front() == '[') ? shield + a : a);
  }
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ExitCode::ok;
  } catch (const CLI::ParseError& e) {
    emit(out, error_json("usage", e.what()), opts.pretty);
    return ExitCode::input_error;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string verb = sub->get_name();
  for (auto& p : opts.positional)
    if (!p.empty() && p.front() == shield) p.erase(0, 1);
  Context ctx(opts, base);
  try {
    Outcome o = verbs().at(verb)(ctx);
    emit(out, o.report, opts.pretty);
    return o.code;
  } catch (const ParseError& e) {
    Json j = error_json("parse_error", e.what());
    j["line"] = e.line();
    j["column"] = e.column();
    emit(out, j, opts.pretty);
  } catch (const UnknownLabel& e) {
    emit(out, error_json("unknown_label", e.what()), opts.pretty);
  } catch (const MalformedPresentation& e) {
    emit(out, error_json("malformed_presentation", e.what()), opts.pretty);
  } catch (const InputError& e) {
    emit(out, error_json("input_error", e.what()), opts.pretty);
  } catch (const ClosureViolation& e) {
    emit(out, error_json("closure_violation", e.what()), opts.pretty);
  } catch (const PreconditionError& e) {
    emit(out, error_json("precondition", e.what()), opts.pretty);
  }
  return ExitCode::input_error;
}

}  // namespace mrb::cli
