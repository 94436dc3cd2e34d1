#include "multirel_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "multirel/acceptance.hpp"
#include "multirel/demos.hpp"
#include "multirel/io.hpp"
#include "multirel/lawlab/engine.hpp"
#include "multirel/lawlab/eval.hpp"
#include "multirel/lawlab/parser.hpp"
#include "multirel/lawlab/typecheck.hpp"
#include "multirel/testing_hooks.hpp"

namespace multirel::cli {

namespace {

using lawlab::Goal;
using lawlab::Mode;

struct Options {
  std::string sets;
  std::vector<std::string> binds;
  std::string expr;
  std::string file;
  std::string mode = "exhaustive";
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
  std::string format;
  std::string filter;
  unsigned max_space = 24;
  std::string demo;
  bool list = false;
  bool corrupt_unit = false;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::SpaceTooLarge:
    case ErrorKind::CardinalityLimit:
    case ErrorKind::ResultTooLarge:
      return kLimit;
    default:
      return kUsage;
  }
}

// "X=1,Y=2" or "X=1 Y=2".
std::vector<std::pair<std::string, std::size_t>> parse_sets(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<std::pair<std::string, std::size_t>> out;
  for (std::string item; in >> item;) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw Error(ErrorKind::InvalidArgument, "--sets expects NAME=N entries, got `" + item + "`");
    }
    std::size_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoul(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("");
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidArgument, "bad cardinality in `" + item + "`");
    }
    out.emplace_back(item.substr(0, eq), n);
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "--sets declares no sets");
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

int depth_of(const ElementLiteral& e) { return e.exact_depth().value_or(e.lower_depth()); }

ObjType pow_n(const std::string& base, int k) { return ObjType{base, static_cast<unsigned>(k)}; }

// NAME=LITERAL or NAME:SRC<->TGT=LITERAL. Without a type, the source is the
// first declared set and the target the last, powered to the literal's depth.
lawlab::ScopeVar parse_bind(const Universe& u, const std::string& text, Relation& value) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw Error(ErrorKind::InvalidArgument, "--bind expects NAME=VALUE, got `" + text + "`");
  std::string head = trim(std::string_view(text).substr(0, eq));
  const std::string body = text.substr(eq + 1);
  const auto lit = parse_relation_literal(body);
  lawlab::RelTypeDecl type;
  std::string name = head;
  if (const auto colon = head.find(':'); colon != std::string::npos) {
    name = trim(std::string_view(head).substr(0, colon));
    type = lawlab::parse_rel_type(head.substr(colon + 1));
    lawlab::require_known_sets(u, type);
  } else {
    int ds = 0, dt = 1;
    if (!lit.pairs.empty()) {
      dt = 0;
      for (const auto& [a, b] : lit.pairs) {
        ds = std::max(ds, depth_of(a));
        dt = std::max(dt, depth_of(b));
      }
    }
    type = {pow_n(u.base_sets().front().first, ds), pow_n(u.base_sets().back().first, dt)};
  }
  if (name.empty()) throw Error(ErrorKind::InvalidArgument, "--bind needs a variable name");
  value = to_relation(u, lit, type.src, type.tgt);
  return {name, type};
}

bool as_json(const Options& o, bool json_default) { return o.format.empty() ? json_default : o.format == "json"; }

int cmd_eval(const Options& o, std::ostream& out) {
  if (o.sets.empty()) throw Error(ErrorKind::InvalidArgument, "eval needs --sets");
  if (o.expr.empty()) throw Error(ErrorKind::InvalidArgument, "eval needs --expr");
  const Universe u = Universe::declare(parse_sets(o.sets));
  std::vector<lawlab::ScopeVar> scope;
  lawlab::Env env;
  for (const auto& b : o.binds) {
    Relation r;
    auto v = parse_bind(u, b, r);
    if (std::any_of(scope.begin(), scope.end(), [&](const auto& s) { return s.name == v.name; })) {
      throw Error(ErrorKind::InvalidArgument, "`" + v.name + "` bound twice");
    }
    scope.push_back(std::move(v));
    env.push_back(std::move(r));
  }

  lawlab::TermPtr term;
  try {
    term = lawlab::parse_term(o.expr);
  } catch (const SourceError& term_error) {
    // Not a term: maybe a formula such as `R <=H S`.
    lawlab::FormulaPtr f;
    try {
      f = lawlab::parse_formula(o.expr);
    } catch (const SourceError&) {
      throw term_error;
    }
    const int slots = lawlab::typecheck_formula(u, scope, *f);
    env.resize(static_cast<std::size_t>(slots));
    lawlab::precompute_closed(u, *f);
    const bool v = lawlab::holds(u, *f, env, o.max_space);
    if (as_json(o, false)) {
      out << nlohmann::json{{"expr", o.expr}, {"value", v}}.dump() << "\n";
    } else {
      out << (v ? "true" : "false") << "\n";
    }
    return kOk;
  }
  lawlab::typecheck_term(u, scope, *term);
  const Relation r = lawlab::eval(u, *term, env);
  if (as_json(o, false)) {
    const lawlab::RelTypeDecl t{r.src(), r.tgt()};
    out << nlohmann::json{{"expr", o.expr}, {"type", t.to_string()}, {"value", to_json(u, r)}}.dump() << "\n";
  } else {
    out << to_text(u, r) << "\n";
  }
  return kOk;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read `" + path + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_laws(const Options& o, Goal goal, std::ostream& out) {
  auto file = lawlab::parse_law_file(read_file(o.file));
  if (!o.sets.empty()) file.sets = parse_sets(o.sets);
  lawlab::EngineOptions eo;
  eo.mode = o.mode == "sample" ? Mode::Sample : Mode::Exhaustive;
  eo.samples = o.samples;
  eo.seed = o.seed;
  eo.jobs = o.jobs;
  eo.max_space_bits = o.max_space;
  const Universe u = lawlab::universe_of(file);
  const bool json = as_json(o, true);
  bool all = true;
  for (const auto& law : file.laws) {
    const auto rep = lawlab::run_law(u, lawlab::prepare_law(u, file.vars, law, goal), goal, eo);
    all = all && rep.success();
    out << (json ? lawlab::to_json(u, rep).dump() : lawlab::to_text(u, rep)) << "\n";
    out.flush();
  }
  return all ? kOk : kFound;
}

int cmd_demo(const Options& o, std::ostream& out) {
  if (o.list || o.demo.empty()) {
    for (const auto& n : demo_names()) out << n << "\n";
    return o.demo.empty() && !o.list ? kUsage : kOk;
  }
  const auto rep = run_demo(o.demo);
  out << (as_json(o, false) ? to_json(rep).dump() : to_text(rep)) << "\n";
  return rep.pass() ? kOk : kFound;
}

std::string fixed(double v, int digits) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

int cmd_selftest(const Options& o, std::ostream& out) {
  testing::set_corrupt_unit(o.corrupt_unit);
  AcceptanceOptions ao;
  ao.jobs = o.jobs;
  const bool json = as_json(o, false);
  bool all = true;
  int ran = 0;
  for (const auto& c : criteria()) {
    if (!matches(c, o.filter)) continue;
    ++ran;
    const auto r = run_criterion(c, ao);
    all = all && r.pass();
    if (json) {
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& k : r.checks) {
        nlohmann::json j{{"name", k.name}, {"pass", k.pass}};
        if (!k.pass) j["witness"] = k.witness;
        checks.push_back(std::move(j));
      }
      out << nlohmann::json{{"criterion", r.id},          {"title", r.title},
                            {"pass", r.pass()},           {"seconds", r.seconds},
                            {"budget_seconds", r.budget_seconds}, {"error", r.error},
                            {"checks", checks}}
                 .dump()
          << "\n";
    } else {
      std::string title = r.title;
      title.resize(std::max<std::size_t>(title.size(), 56), ' ');
      out << std::setw(3) << r.id << "  " << (r.pass() ? "PASS" : "FAIL") << "  " << title << std::setw(8)
          << fixed(r.seconds, 2) << "s / " << fixed(r.budget_seconds, 0) << "s  " << r.summary() << "\n";
    }
    out.flush();
  }
  testing::set_corrupt_unit(false);
  if (ran == 0) throw Error(ErrorKind::InvalidArgument, "no criterion matches `" + o.filter + "`");
  if (!json) out << (all ? "all criteria pass" : "some criteria FAIL") << "\n";
  return all ? kOk : kFound;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite multirelation workbench: evaluate terms, check laws, search for counterexamples."};
  app.name("multirel");
  app.require_subcommand(1);
  Options o;

  auto format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto engine = [&](CLI::App* c) {
    c->add_option("--sets", o.sets, "Override the file's sets, e.g. \"X=1,Y=2\"");
    c->add_option("--mode", o.mode, "Search mode")->check(CLI::IsMember({"exhaustive", "sample"}));
    c->add_option("--samples", o.samples, "Samples in sample mode");
    c->add_option("--seed", o.seed, "Seed in sample mode");
    c->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1U, 1024U));
    c->add_option("--max-space", o.max_space, "Exhaustive cap as log2 of the assignment count")
        ->check(CLI::Range(0U, 63U));
    format(c);
  };

  auto* ev = app.add_subcommand("eval", "Evaluate a term (or formula) under bindings");
  ev->add_option("--sets", o.sets, "Base sets, e.g. \"X=1,Y=2\"")->required();
  ev->add_option("--bind", o.binds, "NAME=LITERAL or NAME:SRC<->TGT=LITERAL; repeatable");
  ev->add_option("--expr", o.expr, "Term or formula")->required();
  ev->add_option("--max-space", o.max_space, "Quantifier cap as log2 of a homset size")->check(CLI::Range(0U, 63U));
  format(ev);

  auto* ck = app.add_subcommand("check", "Check every law of a file");
  ck->add_option("file", o.file, "Law file")->required();
  engine(ck);
  auto* fd = app.add_subcommand("find", "Search for witnesses of every law of a file");
  fd->add_option("file", o.file, "Law file")->required();
  engine(fd);

  auto* dm = app.add_subcommand("demo", "Reproduce a worked example");
  dm->add_option("name", o.demo, "Demo name");
  dm->add_flag("--list", o.list, "List demo names");
  format(dm);

  auto* st = app.add_subcommand("selftest", "Run the acceptance suite");
  st->add_option("--filter", o.filter, "Criterion number, tag (e.g. closures) or title fragment");
  st->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1U, 1024U));
  st->add_flag("--corrupt-unit", o.corrupt_unit, "Mutation hook: corrupt the unit constant");
  format(st);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*ev) return cmd_eval(o, out);
    if (*ck) return cmd_laws(o, Goal::Check, out);
    if (*fd) return cmd_laws(o, Goal::Find, out);
    if (*dm) return cmd_demo(o, out);
    return cmd_selftest(o, out);
  } catch (const Error& e) {
    testing::set_corrupt_unit(false);
    err << "multirel: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace multirel::cli
