#include "multirel/lawlab/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include "multirel/io.hpp"
#include "multirel/lawlab/eval.hpp"
#include "multirel/lawlab/typecheck.hpp"
#include "multirel/random.hpp"

namespace multirel::lawlab {

namespace {

struct VarShape {
  ObjType src, tgt;
  std::size_t ns = 0, nt = 0;
  unsigned bits = 0;
  std::size_t slot = 0;
};

std::vector<VarShape> shapes(const Universe& u, const PreparedLaw& law) {
  std::vector<VarShape> out;
  for (std::size_t i = 0; i < law.search.size(); ++i) {
    const auto& v = law.search[i];
    VarShape s{v.type.src, v.type.tgt, u.cardinality(v.type.src), u.cardinality(v.type.tgt), 0,
               static_cast<std::size_t>(law.search_slots[i])};
    s.bits = static_cast<unsigned>(s.ns * s.nt);
    out.push_back(s);
  }
  return out;
}

// Assignment k of the exhaustive enumeration: first variable most significant.
void decode(const std::vector<VarShape>& vs, std::uint64_t k, Env& env) {
  for (std::size_t i = vs.size(); i-- > 0;) {
    const VarShape& s = vs[i];
    const std::uint64_t code = s.bits == 0 ? 0 : k & ((std::uint64_t{1} << s.bits) - 1);
    if (s.bits < 64) k >>= s.bits;
    env[s.slot] = Relation::from_code(s.src, s.tgt, s.ns, s.nt, code);
  }
}

// Sample k: every row gets uniformly random target bits from stream k.
void sample(const std::vector<VarShape>& vs, const SplitMix64& root, std::uint64_t k, Env& env) {
  SplitMix64 rng = root.split(k);
  for (const VarShape& s : vs) {
    Relation r(s.src, s.tgt, s.ns, s.nt);
    for (std::size_t i = 0; i < s.ns; ++i) {
      for (std::size_t w = 0; w * 64 < s.nt; ++w) {
        const std::size_t width = std::min<std::size_t>(64, s.nt - 64 * w);
        const std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
        r.row(i).set_word(w, rng() & mask);
      }
    }
    env[s.slot] = std::move(r);
  }
}

// Untyped binders named like a declared variable take its declared type.
void adopt_declared_types(Formula& f, const std::vector<VarDecl>& decls) {
  for (Binder& b : f.binders) {
    if (b.type) continue;
    const auto it = std::find_if(decls.begin(), decls.end(), [&](const VarDecl& d) { return d.name == b.name; });
    if (it != decls.end()) b.type = it->type;
  }
  for (const auto& k : f.kids) adopt_declared_types(*k, decls);
}

}  // namespace

std::string_view to_string(Mode m) { return m == Mode::Exhaustive ? "exhaustive" : "sample"; }

nlohmann::json to_json(const Universe& u, const LawReport& r) {
  nlohmann::json j;
  j["law"] = r.law;
  j["verdict"] = r.verdict;
  if (r.space_bits < 64) {
    j["space"] = std::uint64_t{1} << r.space_bits;
  } else {
    j["space"] = "2^" + std::to_string(r.space_bits);
  }
  j["checked"] = r.checked;
  nlohmann::json b = nlohmann::json::object();
  for (const auto& [name, rel] : r.binding) b[name] = to_json(u, rel);
  j["binding"] = std::move(b);
  j["elapsed_ms"] = r.elapsed_ms;
  j["mode"] = std::string(to_string(r.mode));
  if (r.mode == Mode::Sample) j["seed"] = r.seed;
  j["evidence"] = "finite-universe";
  return j;
}

std::string to_text(const Universe& u, const LawReport& r) {
  std::string s = r.law + ": " + r.verdict;
  const std::string space = r.space_bits < 64 ? std::to_string(std::uint64_t{1} << r.space_bits)
                                              : "2^" + std::to_string(r.space_bits);
  if (r.verdict == "valid") {
    s += " on this universe (all " + space + " assignments)";
  } else if (r.verdict == "sampled_pass" || r.verdict == "none_found") {
    s += " (" + std::to_string(r.checked) + " of " + space + " assignments" +
         (r.mode == Mode::Sample ? ", seed " + std::to_string(r.seed) : "") + ")";
  } else {
    s += " after " + std::to_string(r.checked) + " assignments";
  }
  for (const auto& [name, rel] : r.binding) s += "\n  " + name + " = " + to_text(u, rel);
  return s;
}

PreparedLaw prepare_law(const Universe& u, const std::vector<VarDecl>& decls, const Law& law, Goal goal) {
  PreparedLaw p;
  p.name = law.display_name();

  const auto free = free_variables(*law.formula);
  std::vector<ScopeVar> scope;
  for (const auto& d : decls) {
    if (std::find(free.begin(), free.end(), d.name) == free.end()) continue;
    if (std::any_of(scope.begin(), scope.end(), [&](const ScopeVar& s) { return s.name == d.name; })) {
      throw SourceError(ErrorKind::TypeError, d.loc.line, d.loc.column, "variable `" + d.name + "` declared twice");
    }
    scope.push_back(ScopeVar{d.name, d.type});
    p.search.push_back(d);
    p.search_slots.push_back(static_cast<int>(scope.size()) - 1);
  }
  for (const auto& name : free) {
    if (std::none_of(scope.begin(), scope.end(), [&](const ScopeVar& s) { return s.name == name; })) {
      throw SourceError(ErrorKind::TypeError, law.loc.line, law.loc.column, "undeclared variable `" + name + "`");
    }
  }

  adopt_declared_types(*law.formula, decls);
  p.slots = typecheck_formula(u, scope, *law.formula);

  const auto peel = goal == Goal::Check ? Formula::Kind::Forall : Formula::Kind::Exists;
  FormulaPtr body = law.formula;
  while (body->kind == peel) {
    for (const Binder& b : body->binders) {
      p.search.push_back(VarDecl{b.name, b.resolved, body->loc});
      p.search_slots.push_back(b.slot);
    }
    body = body->kids[0];
  }
  p.body = body;
  precompute_closed(u, *p.body);
  return p;
}

unsigned space_bits(const Universe& u, const std::vector<VarDecl>& vars) {
  unsigned bits = 0;
  for (const auto& v : vars) bits += static_cast<unsigned>(u.cardinality(v.type.src) * u.cardinality(v.type.tgt));
  return bits;
}

std::uint64_t estimate_space(const Universe& u, const std::vector<VarDecl>& vars) {
  const unsigned bits = space_bits(u, vars);
  if (bits > 63) throw Error(ErrorKind::SpaceTooLarge, "assignment space 2^" + std::to_string(bits));
  return std::uint64_t{1} << bits;
}

LawReport run_law(const Universe& u, const PreparedLaw& law, Goal goal, const EngineOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  LawReport rep;
  rep.law = law.name;
  rep.mode = opt.mode;
  rep.seed = opt.seed;
  rep.space_bits = space_bits(u, law.search);

  const auto vs = shapes(u, law);
  std::uint64_t n = 0;
  if (opt.mode == Mode::Exhaustive) {
    if (rep.space_bits > opt.max_space_bits) {
      throw Error(ErrorKind::SpaceTooLarge, "`" + law.name + "`: assignment space 2^" + std::to_string(rep.space_bits) +
                                                " exceeds the exhaustive cap 2^" + std::to_string(opt.max_space_bits) +
                                                "; use --mode sample");
    }
    n = std::uint64_t{1} << rep.space_bits;
  } else {
    n = opt.samples;
  }

  const SplitMix64 root(opt.seed);
  const unsigned bits_cap = std::max(opt.max_space_bits, 1U);
  auto assign = [&](std::uint64_t k, Env& env) {
    if (opt.mode == Mode::Exhaustive) {
      decode(vs, k, env);
    } else {
      sample(vs, root, k, env);
    }
  };
  // A finding is a counterexample for check and a witness for find.
  auto finding = [&](Env& env) { return holds(u, *law.body, env, bits_cap) != (goal == Goal::Check); };

  const unsigned jobs = static_cast<unsigned>(std::clamp<std::uint64_t>(opt.jobs, 1, std::max<std::uint64_t>(n, 1)));
  std::atomic<std::uint64_t> best{n};
  std::vector<std::exception_ptr> errors(jobs);
  auto worker = [&](unsigned w) {
    try {
      const std::uint64_t lo = n / jobs * w + std::min<std::uint64_t>(w, n % jobs);
      const std::uint64_t hi = lo + n / jobs + (w < n % jobs ? 1 : 0);
      Env env(static_cast<std::size_t>(law.slots));
      for (std::uint64_t k = lo; k < hi && k < best.load(std::memory_order_relaxed); ++k) {
        assign(k, env);
        if (finding(env)) {
          std::uint64_t cur = best.load();
          while (k < cur && !best.compare_exchange_weak(cur, k)) {
          }
          return;
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
      best.store(0);
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const std::uint64_t b = best.load();
  if (b < n) {
    Env env(static_cast<std::size_t>(law.slots));
    assign(b, env);
    if (!finding(env)) throw Error(ErrorKind::InvalidArgument, "internal: finding does not reproduce");
    rep.checked = b + 1;
    rep.verdict = goal == Goal::Check ? "counterexample" : "witness";
    for (std::size_t i = 0; i < law.search.size(); ++i) {
      rep.binding.emplace_back(law.search[i].name, env[static_cast<std::size_t>(law.search_slots[i])]);
    }
  } else {
    rep.checked = n;
    if (goal == Goal::Find) {
      rep.verdict = "none_found";
    } else {
      rep.verdict = opt.mode == Mode::Exhaustive ? "valid" : "sampled_pass";
    }
  }
  rep.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Universe universe_of(const LawFile& file, const UniverseLimits& limits) {
  if (file.sets.empty()) throw Error(ErrorKind::TypeError, "no sets declared");
  return Universe::declare(file.sets, limits);
}

std::vector<LawReport> run_file(const LawFile& file, Goal goal, const EngineOptions& opt,
                                const UniverseLimits& limits) {
  const Universe u = universe_of(file, limits);
  std::vector<LawReport> out;
  for (const auto& law : file.laws) out.push_back(run_law(u, prepare_law(u, file.vars, law, goal), goal, opt));
  return out;
}

}  // namespace multirel::lawlab
