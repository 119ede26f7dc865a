#include "mvcurl/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "mvcurl/cohomology.hpp"
#include "mvcurl/identities.hpp"
#include "mvcurl/json_io.hpp"
#include "mvcurl/printer.hpp"

namespace mvcurl {
namespace {

struct Options {
  std::string input;
  bool json = false;
  std::string volume;
  std::vector<std::string> names;
  unsigned max_degree = 2;
  std::string denominator;
  int k = 0;
  std::uint64_t seed = kDefaultSeed;
  std::size_t cases = 200;
  bool timing = false;
};

struct Output {
  std::ostream& out;
  bool json;
  Json doc;
  std::vector<std::string> lines;

  void line(std::string s) { lines.push_back(std::move(s)); }
  int finish(int code) {
    if (json) {
      doc["exit_code"] = code;
      out << doc.dump(2) << '\n';
    } else {
      for (const auto& l : lines) out << l << '\n';
    }
    return code;
  }
};

Document load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read input file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

class Context {
public:
  Context(Document doc, const Options& opt) : doc_(std::move(doc)), opt_(opt) {}

  const Document& doc() const { return doc_; }
  const ChartPtr& chart() const { return doc_.chart(); }

  // Name of the i-th positional argument, empty when absent.
  std::string name(std::size_t i) const { return i < opt_.names.size() ? opt_.names[i] : std::string(); }

  VolumeForm volume() const {
    if (!opt_.volume.empty()) {
      const auto& b = doc_.get(opt_.volume);
      if (b.kind != BindingKind::Volume) throw ValidationError("binding '" + b.name + "' is not a volume");
      return std::get<VolumeForm>(b.value);
    }
    if (const auto* b = doc_.first_of(BindingKind::Volume)) return std::get<VolumeForm>(b->value);
    return VolumeForm::standard(chart());
  }

  std::pair<std::string, Multivector> multivector(std::size_t pos) const {
    const Binding* b = nullptr;
    if (auto n = name(pos); !n.empty()) {
      b = &doc_.get(n);
    } else {
      b = doc_.first_of(BindingKind::Multivector);
      if (!b) b = doc_.first_of(BindingKind::Lie);
      if (!b) throw ValidationError("document has no multivector binding");
    }
    if (b->kind == BindingKind::Multivector) return {b->name, std::get<Multivector>(b->value)};
    if (b->kind == BindingKind::Lie) return {b->name, lie_poisson(chart(), std::get<StructureConstants>(b->value))};
    if (b->kind == BindingKind::Function) return {b->name, Multivector::scalar(chart(), std::get<RationalFunc>(b->value))};
    throw ValidationError("binding '" + b->name + "' is not a multivector");
  }

  std::pair<std::string, Multivector> graded(std::size_t pos, int grade, const char* what) const {
    auto r = multivector(pos);
    if (r.second.grade() != grade) throw ValidationError("binding '" + r.first + "' is not " + what);
    return r;
  }

  std::pair<std::string, RationalFunc> function(std::size_t pos) const {
    const Binding* b = nullptr;
    if (auto n = name(pos); !n.empty()) {
      b = &doc_.get(n);
    } else {
      b = doc_.first_of(BindingKind::Function);
      if (!b) throw ValidationError("document has no func binding");
    }
    if (b->kind != BindingKind::Function) throw ValidationError("binding '" + b->name + "' is not a function");
    return {b->name, std::get<RationalFunc>(b->value)};
  }

  std::pair<std::string, StructureConstants> lie(std::size_t pos) const {
    const Binding* b = nullptr;
    if (auto n = name(pos); !n.empty()) {
      b = &doc_.get(n);
    } else {
      b = doc_.first_of(BindingKind::Lie);
      if (!b) throw ValidationError("document has no lie binding");
    }
    if (b->kind != BindingKind::Lie) throw ValidationError("binding '" + b->name + "' is not a lie binding");
    return {b->name, std::get<StructureConstants>(b->value)};
  }

  std::string text(const RationalFunc& f) const { return print_canonical(f, *chart()); }

private:
  Document doc_;
  const Options& opt_;
};

using Handler = std::function<int(const Context&, const Options&, Output&)>;

int cmd_curl(const Context& c, const Options&, Output& o) {
  auto [name, a] = c.multivector(0);
  auto r = curl(c.volume(), a);
  o.doc["result"] = to_json(r);
  o.doc["text"] = print_canonical(r);
  o.line(print_canonical(r));
  return 0;
}

int cmd_div(const Context& c, const Options&, Output& o) {
  auto [name, x] = c.graded(0, 1, "a vector field");
  auto r = divergence(c.volume(), x);
  o.doc["result"] = to_json(r);
  o.doc["text"] = c.text(r);
  o.line(c.text(r));
  return 0;
}

int cmd_schouten(const Context& c, const Options& opt, Output& o) {
  if (opt.names.size() != 2) throw ValidationError("schouten needs two binding names");
  auto r = schouten(c.multivector(0).second, c.multivector(1).second);
  o.doc["result"] = to_json(r);
  o.doc["text"] = print_canonical(r);
  o.line(print_canonical(r));
  return 0;
}

int cmd_lm_check(const Context& c, const Options&, Output& o) {
  auto [mname, m] = c.function(0);
  auto [aname, a] = c.multivector(1);
  auto verdict = is_last_multiplier(c.volume(), m, a);
  const int k = verdict.routes_true();
  o.doc["curl_route"] = verdict.curl_route;
  o.doc["witten_route"] = verdict.witten_route;
  o.doc["marsden_route"] = verdict.marsden_route;
  if (!verdict.unanimous()) throw MathError("multiplier routes disagree (" + std::to_string(k) + "/3 routes)");
  const bool ok = verdict.value();
  o.doc["result"] = ok;
  o.line(std::string("last multiplier: ") + (ok ? "true" : "false") + " (" + std::to_string(ok ? k : 3 - k) +
         "/3 routes)");
  return ok ? 0 : 1;
}

int report_basis(const Context& c, Output& o, const std::vector<RationalFunc>& basis, const char* label) {
  Json items = Json::array();
  Json texts = Json::array();
  o.line("dimension: " + std::to_string(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    items.push_back(to_json(basis[i]));
    texts.push_back(c.text(basis[i]));
    o.line(std::string(label) + std::to_string(i + 1) + " = " + c.text(basis[i]));
  }
  o.doc["dimension"] = basis.size();
  o.doc["basis"] = items;
  o.doc["text"] = texts;
  if (basis.empty()) o.line("none in ansatz");
  return basis.empty() ? 1 : 0;
}

int cmd_lm_solve(const Context& c, const Options& opt, Output& o) {
  auto [name, a] = c.multivector(0);
  AnsatzSpace space = AnsatzSpace::polynomial(c.chart(), opt.max_degree);
  if (!opt.denominator.empty()) {
    const auto& b = c.doc().get(opt.denominator);
    if (b.kind != BindingKind::Function) throw ValidationError("denominator '" + b.name + "' is not a function");
    space = AnsatzSpace::with_denominator(c.chart(), opt.max_degree, std::get<RationalFunc>(b.value));
  }
  return report_basis(c, o, lm_solve(c.volume(), a, space), "m");
}

int cmd_jacobi(const Context& c, const Options&, Output& o) {
  auto [name, pi] = c.graded(0, 2, "a bivector");
  auto r = jacobi_residual(pi);
  const bool ok = r.is_zero();
  o.doc["residual"] = to_json(r);
  o.doc["text"] = print_canonical(r);
  o.doc["result"] = ok;
  o.line("jacobi residual: " + print_canonical(r));
  o.line(std::string("poisson: ") + (ok ? "true" : "false"));
  return ok ? 0 : 1;
}

int cmd_modular(const Context& c, const Options&, Output& o) {
  auto [name, pi] = c.graded(0, 2, "a bivector");
  auto r = modular_field(c.volume(), pi);
  o.doc["result"] = to_json(r);
  o.doc["text"] = print_canonical(r);
  o.doc["exact"] = r.is_zero();
  o.line("modular field: " + print_canonical(r));
  o.line(std::string("exact: ") + (r.is_zero() ? "true" : "false"));
  return 0;
}

int cmd_hamiltonian(const Context& c, const Options&, Output& o) {
  auto [name, pi] = c.graded(0, 2, "a bivector");
  auto [fname, f] = c.function(1);
  auto r = hamiltonian_field(pi, f);
  o.doc["result"] = to_json(r);
  o.doc["text"] = print_canonical(r);
  o.line(print_canonical(r));
  return 0;
}

int cmd_casimir(const Context& c, const Options& opt, Output& o) {
  auto [name, pi] = c.graded(0, 2, "a bivector");
  return report_basis(c, o, casimir_solve(pi, AnsatzSpace::polynomial(c.chart(), opt.max_degree)), "f");
}

int cmd_unimodular(const Context& c, const Options& opt, Output& o) {
  auto [name, pi] = c.graded(0, 2, "a bivector");
  if (!is_poisson(pi)) throw NotPoisson("binding '" + name + "' is not a Poisson bivector");
  auto rho = unimodularity_check(c.volume(), pi, opt.max_degree);
  o.doc["result"] = rho.has_value();
  if (rho) {
    o.doc["witness"] = to_json(*rho);
    o.doc["text"] = c.text(*rho);
    o.line("unimodular: true (rho = " + c.text(*rho) + ")");
    return 0;
  }
  o.line("unimodular: no witness of degree <= " + std::to_string(opt.max_degree));
  return 1;
}

int cmd_lie_poisson(const Context& c, const Options&, Output& o) {
  auto [name, g] = c.lie(0);
  auto r = lie_poisson(c.chart(), g);
  o.doc["result"] = to_json(r);
  o.doc["text"] = print_canonical(r);
  o.line(print_canonical(r));
  return 0;
}

int cmd_cohomology(const Context& c, const Options& opt, Output& o) {
  auto [name, pi] = c.graded(0, 2, "a bivector");
  auto r = truncated_exact_cohomology(c.volume(), pi, opt.k, opt.max_degree);
  o.doc["result"] = to_json(r);
  o.line("k = " + std::to_string(r.k) + ", degree <= " + std::to_string(r.domain_degree_bound) + " (truncated)");
  o.line("exact cochains: " + std::to_string(r.dim_exact_k));
  o.line("kernel: " + std::to_string(r.dim_kernel));
  o.line("image: " + std::to_string(r.dim_image_from_km1));
  o.line("truncated H: " + std::to_string(r.truncated_h_dim));
  return 0;
}

int cmd_identities(const Options& opt, Output& o) {
  auto report = run_identity_suite(opt.seed, opt.cases);
  Json items = Json::array();
  for (const auto& r : report.outcomes) {
    items.push_back({{"name", r.name}, {"cases", r.cases}, {"failures", r.failures}, {"first_failure", r.first_failure}});
    std::string l = r.name + ": " + std::to_string(r.cases - r.failures) + "/" + std::to_string(r.cases);
    if (r.failures) l += " FAILED, " + r.first_failure;
    if (opt.timing) l += " (" + std::to_string(r.seconds) + " s)";
    o.line(l);
  }
  o.doc["seed"] = report.seed;
  o.doc["identities"] = items;
  o.doc["result"] = report.all_passed();
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact multivector calculus: curl, Schouten bracket, last multipliers, Poisson tools.", "mvcurl"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::pair<std::string, std::pair<const char*, Handler>>> commands{
      {"curl", {"curl D_V of a multivector", cmd_curl}},
      {"div", {"divergence of a vector field", cmd_div}},
      {"schouten", {"Schouten bracket of two multivectors", cmd_schouten}},
      {"lm-check", {"check a last multiplier [FUNC] [MV]", cmd_lm_check}},
      {"lm-solve", {"solve for last multipliers in a polynomial ansatz", cmd_lm_solve}},
      {"jacobi", {"[P,P] for a bivector", cmd_jacobi}},
      {"modular", {"modular vector field of a bivector", cmd_modular}},
      {"hamiltonian", {"Hamiltonian field [P] [FUNC]", cmd_hamiltonian}},
      {"casimir", {"Casimir functions in a polynomial ansatz", cmd_casimir}},
      {"unimodular", {"search a Hamiltonian witness for the modular field", cmd_unimodular}},
      {"lie-poisson", {"Lie-Poisson bivector of a lie binding", cmd_lie_poisson}},
      {"cohomology", {"truncated exact Poisson cohomology", cmd_cohomology}},
  };
  std::map<std::string, Handler> handlers;
  for (const auto& [name, spec] : commands) {
    auto* sub = app.add_subcommand(name, spec.first);
    sub->add_option("--input", opt.input, "DSL document")->required();
    sub->add_flag("--json", opt.json, "machine-readable output");
    sub->add_option("--volume", opt.volume, "volume binding (default: first volume, else unit density)");
    sub->add_option("names", opt.names, "binding names");
    if (name == "lm-solve" || name == "casimir" || name == "unimodular" || name == "cohomology")
      sub->add_option("--max-degree", opt.max_degree, "polynomial degree bound")->required();
    if (name == "lm-solve") sub->add_option("--denominator", opt.denominator, "func binding used as denominator");
    if (name == "cohomology") sub->add_option("--k", opt.k, "cochain grade")->required()->check(CLI::NonNegativeNumber);
    handlers[name] = spec.second;
  }
  auto* ident = app.add_subcommand("identities", "random exact identity suite");
  ident->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  ident->add_option("--cases", opt.cases, "cases per identity")->capture_default_str();
  ident->add_flag("--json", opt.json, "machine-readable output");
  ident->add_flag("--timing", opt.timing, "print per-identity wall time");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Output o{out, opt.json, Json::object(), {}};
  o.doc["command"] = command;
  try {
    if (command == "identities") return o.finish(cmd_identities(opt, o));
    Context ctx(load(opt.input), opt);
    return o.finish(handlers.at(command)(ctx, opt, o));
  } catch (const ParseError& e) {
    err << opt.input << ":" << e.what() << '\n';
    return 2;
  } catch (const NotPoisson& e) {
    err << "not Poisson: " << e.what() << '\n';
    return 3;
  } catch (const MathError& e) {
    err << "math error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace mvcurl
