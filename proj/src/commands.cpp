#include "perfclose/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "perfclose/errors.hpp"
#include "perfclose/verify.hpp"
#include "perfclose/workspace.hpp"

namespace perfclose {

namespace {

using Json = nlohmann::ordered_json;

struct Globals {
  std::uint64_t p = 2;
  std::string workspace;
  bool json = false;
  std::uint64_t seed = kDefaultFactorSeed;
  int level_cap = kDefaultLevelCap;
};

struct Invocation {
  std::string path;
  std::string name;
  std::string a;
  std::string b;
  std::string expr;
  std::vector<std::string> exprs;
  std::string lambda = "t";
  int levels = 3;
  int order_samples = 50;
  int vn_count = 20;
  int picard_samples = 200;
  int dim = 4;
  int surjectivity_samples = 100;
  int conversion_samples = 100;
  int perfect_cases = 50;
  int arithmetic_cases = 500;
};

struct Outcome {
  Json inputs = Json::object();
  Json result = Json::object();
  std::vector<CheckResult> checks;
  std::string text;
  bool mutated = false;
};

void build_app(CLI::App& app, Globals* globals, Invocation& inv) {
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  if (globals) {
    app.add_option("--p", globals->p, "characteristic, a prime below 2^31");
    app.add_option("--workspace", globals->workspace, "JSON file holding named definitions; created on first save");
    app.add_flag("--json", globals->json, "emit one JSON document per command");
    app.add_option("--seed", globals->seed, "seed for random corpora and polynomial splitting");
    app.add_option("--level-cap", globals->level_cap, "largest root level any operation may create");
  }

  auto leaf = [&inv](CLI::App* parent, const std::string& name, const std::string& desc, const std::string& path) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->callback([&inv, path] { inv.path = path; });
    return s;
  };
  auto group = [&app](const std::string& name, const std::string& desc) {
    CLI::App* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    return g;
  };

  leaf(&app, "eval", "print the canonical form and level of an expression", "eval")
      ->add_option("expr", inv.expr, "element expression")
      ->required();

  CLI::App* elem = group("elem", "named elements");
  CLI::App* s = leaf(elem, "def", "name an element for later expressions", "elem def");
  s->add_option("name", inv.name)->required();
  s->add_option("expr", inv.expr)->required();

  CLI::App* ext = group("ext", "finitely generated purely inseparable extensions of K");
  s = leaf(ext, "def", "define K(expr, ...)", "ext def");
  s->add_option("name", inv.name)->required();
  s->add_option("exprs", inv.exprs, "generators")->required();
  s = leaf(ext, "degree", "print [L:K]", "ext degree");
  s->add_option("name", inv.name)->required();
  s = leaf(ext, "member", "is expr in L", "ext member");
  s->add_option("name", inv.name)->required();
  s->add_option("expr", inv.expr)->required();
  s = leaf(ext, "includes", "is B a subfield of A", "ext includes");
  s->add_option("A", inv.a)->required();
  s->add_option("B", inv.b)->required();
  s = leaf(ext, "meet", "intersection of A and B", "ext meet");
  s->add_option("A", inv.a)->required();
  s->add_option("B", inv.b)->required();
  s = leaf(ext, "join", "compositum of A and B", "ext join");
  s->add_option("A", inv.a)->required();
  s->add_option("B", inv.b)->required();

  CLI::App* cls = group("class", "the character group (K^perf)*/K*");
  s = leaf(cls, "eq", "do e1 and e2 have the same class", "class eq");
  s->add_option("e1", inv.a)->required();
  s->add_option("e2", inv.b)->required();
  s = leaf(cls, "in", "is the class of expr trivial in (K^perf)*/L*", "class in");
  s->add_option("ext", inv.name)->required();
  s->add_option("expr", inv.expr)->required();
  s = leaf(cls, "print", "print the fingerprint of the class", "class print");
  s->add_option("expr", inv.expr)->required();

  CLI::App* triple = group("triple", "objects (K^d, k^d, psi)");
  s = leaf(triple, "def", "define a triple from the matrix psi", "triple def");
  s->add_option("name", inv.name)->required();
  s->add_option("matrix", inv.expr, "e.g. [[rt(t,1), 0],[1, t]]")->required();
  s = leaf(triple, "class", "class of a rank-1 triple", "triple class");
  s->add_option("name", inv.name)->required();
  s = leaf(triple, "pullback", "re-read a triple over an extension", "triple pullback");
  s->add_option("name", inv.name)->required();
  s->add_option("ext", inv.a)->required();

  CLI::App* verify = group("verify", "property suites");
  s = leaf(verify, "order-reversal", "inclusion and injectivity on random extension pairs", "verify order-reversal");
  s->add_option("--levels", inv.levels, "generators live in F_p(t^(1/p^levels))");
  s->add_option("--samples", inv.order_samples, "number of random cases");
  s = leaf(verify, "vn", "pairwise distinct classes of v_n = 1 + lambda^n lambda^(1/p)", "verify vn");
  s->add_option("--lambda", inv.lambda, "element of K that is not a p-th power");
  s->add_option("--count", inv.vn_count, "number of elements v_0 .. v_(count-1)");
  s = leaf(verify, "picard", "kernel and multiplicativity of the class map", "verify picard");
  s->add_option("--samples", inv.picard_samples, "number of random cases");
  s = leaf(verify, "surjectivity", "pullback of the witness triple over K(rt(t,1))", "verify surjectivity");
  s->add_option("--dim", inv.dim, "largest dimension");
  s->add_option("--samples", inv.surjectivity_samples, "number of random cases");
  s = leaf(verify, "level-conversion", "level-i representations against triples", "verify level-conversion");
  s->add_option("--samples", inv.conversion_samples, "number of random cases");
  s = leaf(verify, "perfect-base", "objects defined over the base are trivial", "verify perfect-base");
  s->add_option("--cases", inv.perfect_cases, "number of random cases");
  s = leaf(verify, "arithmetic", "field, Frobenius and factorization suites", "verify arithmetic");
  s->add_option("--cases", inv.arithmetic_cases, "number of random cases");
  leaf(verify, "all", "every suite with its default size", "verify all");
}

std::vector<std::vector<std::string>> split_commands(const std::vector<std::string>& args) {
  std::vector<std::vector<std::string>> out(1);
  for (const std::string& tok : args) {
    if (tok == ";") {
      out.emplace_back();
    } else if (tok.size() > 1 && tok.back() == ';') {
      out.back().push_back(tok.substr(0, tok.size() - 1));
      out.emplace_back();
    } else {
      out.back().push_back(tok);
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& seg) { return seg.empty(); }), out.end());
  return out;
}

std::string bool_text(bool b) { return b ? "true\n" : "false\n"; }

std::string basis_text(const InsepExt& e) {
  std::string out = "degree " + std::to_string(e.degree()) + "\nbasis ";
  for (std::size_t i = 0; i < e.basis().size(); ++i) out += (i ? ", " : "") + e.basis()[i].to_string();
  return out + "\n";
}

Json basis_json(const InsepExt& e) {
  Json basis = Json::array();
  for (const auto& b : e.basis()) basis.push_back(b.to_string());
  return Json{{"degree", e.degree()}, {"basis", basis}};
}

Json fingerprint_json(const Fingerprint& fp) {
  Json exps = Json::array();
  for (const auto& [poly, e] : fp.exponents) exps.push_back({{"factor", poly.to_string("s")}, {"exponent", e}});
  return Json{{"level", fp.level}, {"trivial", fp.is_trivial()}, {"factors", exps}, {"text", fp.to_string()}};
}

Outcome run_suites(const std::vector<SuiteReport>& suites) {
  Outcome o;
  Json list = Json::array();
  std::ostringstream text;
  for (const auto& suite : suites) {
    for (const auto& c : suite.checks) {
      o.checks.push_back(c);
      text << (c.pass ? "PASS " : "FAIL ") << suite.suite << ": " << c.name << " (" << c.detail << ")\n";
    }
    text << suite.suite << ": " << suite.passed() << "/" << suite.checks.size() << " checks pass\n";
    list.push_back({{"suite", suite.suite}, {"passed", suite.passed()}, {"total", suite.checks.size()}});
  }
  o.result = Json{{"suites", list}};
  o.text = text.str();
  return o;
}

Outcome execute(const Invocation& inv, Workspace& ws, const Globals& g) {
  const PrimeModulus m = ws.modulus();
  const int cap = ws.level_cap();
  Outcome o;
  const std::string& cmd = inv.path;

  if (cmd == "eval") {
    const PerfElem x = ws.parse(inv.expr);
    o.inputs = {{"expr", inv.expr}};
    o.result = {{"canonical", x.to_string()}, {"level", x.level()}};
    o.text = x.to_string() + "\nlevel " + std::to_string(x.level()) + "\n";
  } else if (cmd == "elem def") {
    ws.define_element(inv.name, inv.expr);
    o.inputs = {{"name", inv.name}, {"expr", inv.expr}};
    o.result = {{"canonical", ws.element(inv.name).to_string()}};
    o.mutated = true;
  } else if (cmd == "ext def") {
    ws.define_extension(inv.name, inv.exprs);
    o.inputs = {{"name", inv.name}, {"generators", inv.exprs}};
    o.result = basis_json(*ws.extension(inv.name));
    o.mutated = true;
  } else if (cmd == "ext degree") {
    const Exp d = ws.extension(inv.name)->degree();
    o.inputs = {{"name", inv.name}};
    o.result = {{"degree", d}};
    o.text = std::to_string(d) + "\n";
  } else if (cmd == "ext member") {
    const bool b = ws.extension(inv.name)->member(ws.parse(inv.expr));
    o.inputs = {{"name", inv.name}, {"expr", inv.expr}};
    o.result = {{"member", b}};
    o.text = bool_text(b);
  } else if (cmd == "ext includes") {
    const bool b = ws.extension(inv.a)->includes(*ws.extension(inv.b));
    o.inputs = {{"A", inv.a}, {"B", inv.b}};
    o.result = {{"includes", b}};
    o.text = bool_text(b);
  } else if (cmd == "ext meet" || cmd == "ext join") {
    const InsepExt& a = *ws.extension(inv.a);
    const InsepExt& b = *ws.extension(inv.b);
    const InsepExt e = cmd == "ext meet" ? intersection(a, b, cap) : compositum(a, b, cap);
    o.inputs = {{"A", inv.a}, {"B", inv.b}};
    o.result = basis_json(e);
    o.text = basis_text(e);
  } else if (cmd == "class eq") {
    const bool b = class_eq(class_of(ws.parse(inv.a)), class_of(ws.parse(inv.b)));
    o.inputs = {{"e1", inv.a}, {"e2", inv.b}};
    o.result = {{"equal", b}};
    o.text = bool_text(b);
  } else if (cmd == "class in") {
    const bool b = class_coarsen(ws.parse(inv.expr), ws.extension(inv.name)).is_trivial();
    o.inputs = {{"ext", inv.name}, {"expr", inv.expr}};
    o.result = {{"trivial", b}};
    o.text = bool_text(b);
  } else if (cmd == "class print") {
    const CharClass c = class_of(ws.parse(inv.expr));
    o.inputs = {{"expr", inv.expr}};
    o.result = fingerprint_json(c.fingerprint());
    o.text = c.fingerprint().to_string() + "\n";
  } else if (cmd == "triple def") {
    ws.define_triple(inv.name, inv.expr);
    o.inputs = {{"name", inv.name}, {"matrix", inv.expr}};
    o.result = {{"dim", ws.triple(inv.name).dim()}, {"psi", matrix_string(ws.triple(inv.name).psi())}};
    o.mutated = true;
  } else if (cmd == "triple class") {
    const CharClass c = rank1_class(ws.triple(inv.name));
    o.inputs = {{"name", inv.name}};
    o.result = fingerprint_json(c.fingerprint());
    o.text = c.fingerprint().to_string() + "\n";
  } else if (cmd == "triple pullback") {
    const BaseExt& l = ws.extension(inv.a);
    const TannakianTriple y = pullback_extension(ws.triple(inv.name), l);
    o.inputs = {{"name", inv.name}, {"ext", inv.a}};
    o.result = {{"psi", matrix_string(y.psi())}, {"base_degree", l->degree()}};
    o.text = "psi " + matrix_string(y.psi()) + "\nbase degree " + std::to_string(l->degree()) + "\n";
  } else if (cmd.rfind("verify ", 0) == 0) {
    std::vector<SuiteReport> suites;
    Json inputs{{"seed", g.seed}};
    if (cmd == "verify order-reversal") {
      inputs["levels"] = inv.levels;
      inputs["samples"] = inv.order_samples;
      suites.push_back(verify_order_reversal(m, inv.levels, inv.order_samples, g.seed, cap));
    } else if (cmd == "verify vn") {
      const PerfElem lambda = ws.parse(inv.lambda);
      if (!lambda.is_in_base()) throw DomainError("lambda must lie in K");
      inputs = {{"lambda", inv.lambda}, {"count", inv.vn_count}};
      suites.push_back(verify_vn(lambda.value(), inv.vn_count));
    } else if (cmd == "verify picard") {
      inputs["samples"] = inv.picard_samples;
      suites.push_back(verify_picard(m, inv.picard_samples, g.seed));
    } else if (cmd == "verify surjectivity") {
      inputs["dim"] = inv.dim;
      inputs["samples"] = inv.surjectivity_samples;
      suites.push_back(verify_surjectivity(m, inv.dim, inv.surjectivity_samples, g.seed));
    } else if (cmd == "verify level-conversion") {
      inputs["samples"] = inv.conversion_samples;
      suites.push_back(verify_level_conversion(m, inv.conversion_samples, g.seed, cap));
    } else if (cmd == "verify perfect-base") {
      inputs["cases"] = inv.perfect_cases;
      suites.push_back(verify_perfect_base(m, inv.perfect_cases, g.seed));
    } else if (cmd == "verify arithmetic") {
      inputs["cases"] = inv.arithmetic_cases;
      suites.push_back(verify_arithmetic(m, inv.arithmetic_cases, g.seed, cap));
    } else {
      suites = verify_all(m, g.seed, cap);
    }
    o = run_suites(suites);
    o.inputs = inputs;
  } else {
    throw DomainError("unknown command '" + cmd + "'");
  }
  o.inputs["p"] = m.value();
  return o;
}

// CLI11 reads its argument vector back to front.
std::vector<std::string> reversed(std::vector<std::string> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

Workspace open_workspace(CLI::App& app, const Globals& g) {
  namespace fs = std::filesystem;
  if (!g.workspace.empty() && fs::exists(g.workspace)) {
    Workspace ws = Workspace::load(g.workspace);
    if (app.count("--p") && ws.modulus().value() != g.p) {
      throw DomainError("workspace uses p = " + std::to_string(ws.modulus().value()));
    }
    if (app.count("--level-cap") && ws.level_cap() != g.level_cap) {
      throw DomainError("workspace uses level cap " + std::to_string(ws.level_cap()));
    }
    return ws;
  }
  return Workspace(PrimeModulus(g.p), g.level_cap);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto segments = split_commands(args);
  Globals globals;
  std::optional<Workspace> ws;
  int code = kExitOk;

  for (std::size_t i = 0; i < std::max<std::size_t>(segments.size(), 1); ++i) {
    Invocation inv;
    CLI::App app("Exact arithmetic in the perfect closure of F_p(t).", "perfclose");
    app.footer("Separate several commands with ';' to run them against one workspace.");
    build_app(app, i == 0 ? &globals : nullptr, inv);
    try {
      app.parse(reversed(segments.empty() ? std::vector<std::string>{} : segments[i]));
    } catch (const CLI::ParseError& e) {
      const int rc = app.exit(e, out, err);
      return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
      if (i == 0) {
        set_factor_seed(globals.seed);
        ws.emplace(open_workspace(app, globals));
      }
      Outcome o = execute(inv, *ws, globals);
      if (o.mutated && !globals.workspace.empty()) ws->save(globals.workspace);
      if (globals.json) {
        Json checks = Json::array();
        for (const auto& c : o.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        Json doc{{"command", inv.path}, {"inputs", o.inputs}, {"result", o.result}, {"checks", checks}};
        out << doc.dump() << "\n";
      } else {
        out << o.text;
      }
      if (std::any_of(o.checks.begin(), o.checks.end(), [](const CheckResult& c) { return !c.pass; })) {
        code = kExitCheckFailed;
      }
    } catch (const ParseError& e) {
      err << "parse error at " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace perfclose
