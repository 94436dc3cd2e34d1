#include "multirel/acceptance.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <initializer_list>

#include "multirel/demos.hpp"
#include "multirel/io.hpp"
#include "multirel/lawlab/engine.hpp"
#include "multirel/lawlab/parser.hpp"
#include "multirel/random.hpp"

namespace multirel {

namespace {

using lawlab::EngineOptions;
using lawlab::Goal;
using lawlab::Mode;

const ObjType X = ObjType::of("X");
const ObjType Y = ObjType::of("Y");

std::string universe_label(const lawlab::LawFile& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.sets.size(); ++i) {
    s += (i ? "," : "") + f.sets[i].first + "=" + std::to_string(f.sets[i].second);
  }
  return s + "] ";
}

struct LawRun {
  Goal goal = Goal::Check;
  Mode mode = Mode::Exhaustive;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
};

// Runs `law` lines against a header of set/var declarations; one check per law.
void laws(std::vector<Check>& out, const AcceptanceOptions& opt, const std::string& header,
          std::initializer_list<std::string_view> bodies, LawRun run = {}) {
  std::string src = header;
  for (auto b : bodies) src += "\nlaw " + std::string(b);
  const auto file = lawlab::parse_law_file(src);
  const Universe u = lawlab::universe_of(file);
  EngineOptions eo;
  eo.mode = run.mode;
  eo.samples = run.samples;
  eo.seed = run.seed;
  eo.jobs = opt.jobs;
  const std::string label = universe_label(file);
  for (const auto& law : file.laws) {
    const auto rep = lawlab::run_law(u, lawlab::prepare_law(u, file.vars, law, run.goal), run.goal, eo);
    out.push_back(Check{label + rep.law, rep.success(), rep.success() ? "" : lawlab::to_text(u, rep)});
  }
}

std::string sets_header(std::size_t x, std::size_t y) {
  return "set X = " + std::to_string(x) + " set Y = " + std::to_string(y);
}

MultiRelation random_mr(SplitMix64& rng, const Universe& u, const ObjType& src, const ObjType& inner) {
  const std::size_t ns = u.cardinality(src), nt = u.cardinality(inner.pow());
  Relation r = Relation::of_type(u, src, inner.pow());
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t w = 0; w * 64 < nt; ++w) {
      const std::size_t width = std::min<std::size_t>(64, nt - 64 * w);
      r.row(i).set_word(w, rng() & (width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1));
    }
  }
  return MultiRelation(std::move(r));
}

std::vector<MultiRelation> random_family(SplitMix64& rng, const Universe& u, const ObjType& src,
                                         const ObjType& inner, std::size_t min_size, std::size_t max_size) {
  const std::size_t n = min_size + rng() % (max_size - min_size + 1);
  std::vector<MultiRelation> f;
  for (std::size_t i = 0; i < n; ++i) f.push_back(random_mr(rng, u, src, inner));
  return f;
}

std::string family_text(const Universe& u, const std::vector<MultiRelation>& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "; " : "") + to_text(u, f[i].rel());
  return s;
}

MultiRelation outer_union(const Universe& u, const ObjType& src, const ObjType& inner,
                          const std::vector<MultiRelation>& f) {
  Relation acc = empty_relation(u, src, inner.pow());
  for (const auto& r : f) acc = unite(acc, r.rel());
  return MultiRelation(std::move(acc));
}

MultiRelation outer_intersection(const std::vector<MultiRelation>& f) {
  Relation acc = f.front().rel();
  for (const auto& r : f) acc = intersect(acc, r.rel());
  return MultiRelation(std::move(acc));
}

// Runs `pred` on `trials` seeded families; records the first failure.
template <class Pred>
void random_families(std::vector<Check>& out, const std::string& name, std::uint64_t seed, int trials, Pred pred) {
  const SplitMix64 root(seed);
  for (int k = 0; k < trials; ++k) {
    SplitMix64 rng = root.split(static_cast<std::uint64_t>(k));
    std::string witness;
    if (!pred(rng, witness)) {
      out.push_back(Check{name, false, "family " + std::to_string(k) + ": " + witness});
      return;
    }
  }
  out.push_back(Check{name, true, {}});
}

void append(std::vector<Check>& out, const OrderReport& rep) {
  for (const auto& c : rep.checks) out.push_back(Check{rep.name + ": " + c.name, c.pass, c.witness});
}

// 1 ---------------------------------------------------------------------------

void demos(std::vector<Check>& out, const AcceptanceOptions&) {
  for (const auto& name : demo_names()) {
    const auto rep = run_demo(name);
    std::string witness;
    for (const auto& c : rep.checks) {
      if (!c.pass) witness += (witness.empty() ? "" : "; ") + c.name;
    }
    out.push_back(Check{"demo " + name, rep.pass(), witness});
  }
}

// 2 ---------------------------------------------------------------------------

void quantales(std::vector<Check>& out, const AcceptanceOptions& opt) {
  const std::string h = sets_header(1, 2) + " var R, S, T : X <-> P(Y)";
  laws(out, opt, h,
       {"R icup S = S icup R", "(R icup S) icup T = R icup (S icup T)", "R icup lu = R", "lu icup R = R",
        "R icap S = S icap R", "(R icap S) icap T = R icap (S icap T)", "R icap li = R", "li icap R = R",
        "0 icup T = 0", "T icup 0 = 0", "0 icap T = 0", "T icap 0 = 0",
        "(R cup S) icup T = (R icup T) cup (S icup T)", "T icup (R cup S) = (T icup R) cup (T icup S)",
        "(R cup S) icap T = (R icap T) cup (S icap T)", "T icap (R cup S) = (T icap R) cup (T icap S)",
        "(R icup S)^i = R^i icap S^i", "(R icap S)^i = R^i icup S^i", "(R cup S)^i = R^i cup S^i",
        "(R cap S)^i = R^i cap S^i", "(~R)^i = ~(R^i)", "R^i^i = R", "R^i = S^i -> R = S"});

  const Universe u = Universe::declare({{"X", 1}, {"Y", 2}});
  for (const bool use_union : {true, false}) {
    const auto op = use_union ? inner_union : inner_intersection;
    const std::string name = std::string(use_union ? "icup" : "icap") + " preserves unions of 1000 random families";
    random_families(out, name, use_union ? 32 : 33, 1000, [&](SplitMix64& rng, std::string& w) {
      const auto f = random_family(rng, u, X, Y, 0, 8);
      const auto s = random_mr(rng, u, X, Y);
      std::vector<MultiRelation> left, right;
      for (const auto& r : f) {
        left.push_back(op(r, s));
        right.push_back(op(s, r));
      }
      const auto big = outer_union(u, X, Y, f);
      const bool ok = op(big, s) == outer_union(u, X, Y, left) && op(s, big) == outer_union(u, X, Y, right);
      if (!ok) w = "F = " + family_text(u, f) + ", S = " + to_text(u, s.rel());
      return ok;
    });
  }
}

// 3 ---------------------------------------------------------------------------

void subquantales(std::vector<Check>& out, const AcceptanceOptions& opt) {
  const std::string h = sets_header(2, 2) + " var R, S : X <-> P(Y)";
  laws(out, opt, h,
       {"down(R icup S) = down(R) icup down(S)", "up(R icap S) = up(R) icap up(S)",
        "up_closed(R) and up_closed(S) -> R icup S = R cap S",
        "down_closed(R) and down_closed(S) -> R icap S = R cap S", "down(li[X,Y]) = U[X,P(Y)]",
        "up(lu[X,Y]) = U[X,P(Y)]", "convex_closed(R) and convex_closed(S) -> convex_closed(R cap S)",
        "conv(R cap S) = conv(R) cap conv(S)"});

  const Universe u = Universe::declare({{"X", 2}, {"Y", 2}});
  random_families(out, "conv preserves intersections of 1000 random families", 34, 1000,
                  [&](SplitMix64& rng, std::string& w) {
                    const auto f = random_family(rng, u, X, Y, 1, 6);
                    std::vector<MultiRelation> closed;
                    for (const auto& r : f) closed.push_back(convex(r));
                    const auto lhs = convex(outer_intersection(f));
                    const auto rhs = outer_intersection(closed);
                    if (lhs == rhs) return true;
                    w = "F = " + family_text(u, f) + "; conv(cap F) = " + to_text(u, lhs.rel()) +
                        ", cap conv(F) = " + to_text(u, rhs.rel());
                    return false;
                  });
  random_families(out, "convex-closed multirelations are closed under intersections (1000 families)", 35, 1000,
                  [&](SplitMix64& rng, std::string& w) {
                    auto f = random_family(rng, u, X, Y, 1, 6);
                    for (auto& r : f) r = convex(r);
                    const auto meet = outer_intersection(f);
                    if (closed_check(ClosureKind::Convex, meet)) return true;
                    w = "F = " + family_text(u, f);
                    return false;
                  });
}

// 4 ---------------------------------------------------------------------------

void down_unit(std::vector<Check>& out, const AcceptanceOptions& opt) {
  for (std::size_t n : {1, 2, 3}) {
    laws(out, opt, "set Y = " + std::to_string(n), {"plift(down(one[Y])) = Om[Y]^"});
  }
  laws(out, opt, sets_header(1, 2) + " var R : X <-> P(Y)",
       {"down(R) = R * down(one[Y])", "down(one[Y]) * down(one[Y]) = down(one[Y])"});
}

// 5 ---------------------------------------------------------------------------

void peleg_closures(std::vector<Check>& out, const AcceptanceOptions& opt) {
  for (std::size_t x : {1, 2}) {
    laws(out, opt, sets_header(x, 2) + " var R : X <-> P(Y) var S : Y <-> P(Y)",
         {"eps[X] * up(R) = up(R)", "inner_total(R) -> up(R) = R * eps[Y]", "eps[Y] = up(one[Y])",
          "down(R * S) = R * down(S)", "down(down(R) * down(S)) = down(R) * down(S)",
          "inner_deterministic(R) -> up(R * S) = R * up(S)",
          "inner_deterministic(R) -> up(R * S) = up(R) * up(S)"});
  }
}

// 6 ---------------------------------------------------------------------------

void quotients(std::vector<Check>& out, const AcceptanceOptions&) {
  const Universe u = Universe::declare({{"X", 1}, {"Y", 2}});
  const auto all = enumerate_homset(u, X, Y);
  for (const auto kind : {PreorderKind::Hoare, PreorderKind::Smyth, PreorderKind::EgliMilner}) {
    const auto q = quotient(kind, u, X, Y);
    const ClosureKind ck = representative_closure(kind);
    const auto closed = std::count_if(all.begin(), all.end(), [&](const auto& r) { return closed_check(ck, r); });
    const std::string k(to_string(kind));
    out.push_back(Check{k + ": class count equals closed multirelations", q.classes.size() == std::size_t(closed),
                        std::to_string(q.classes.size()) + " classes, " + std::to_string(closed) + " closed"});
    if (kind != PreorderKind::EgliMilner) {
      // Down-sets (and up-sets) of the four-element boolean lattice.
      out.push_back(Check{k + ": 6 classes", q.classes.size() == 6, std::to_string(q.classes.size())});
    }
    append(out, verify_quotient(u, q));
  }
}

// 7 ---------------------------------------------------------------------------

void special_orders(std::vector<Check>& out, const AcceptanceOptions&) {
  const Universe u = Universe::declare({{"X", 2}, {"Y", 2}});
  for (const auto c : {SpecialClass::OuterDeterministic, SpecialClass::OuterUnivalent, SpecialClass::InnerUnivalent,
                       SpecialClass::InnerDeterministic}) {
    append(out, class_special_order(c, u, X, Y));
  }
  append(out, det_lattice_check(u, X, Y));
  // Controls: the orders are not antisymmetric on the full homset.
  for (const auto k : {PreorderKind::Hoare, PreorderKind::Smyth, PreorderKind::EgliMilner}) {
    const auto rep = antisymmetry_sweep(k, u, X, Y);
    out.push_back(Check{std::string(to_string(k)) + " is not antisymmetric on all multirelations (control)",
                        !rep.pass(), "no refuting pair"});
  }
}

// 8 ---------------------------------------------------------------------------

void decompositions(std::vector<Check>& out, const AcceptanceOptions&) {
  const Universe u = Universe::declare({{"X", 2}, {"Y", 2}});
  bool all_unions = true;
  std::string lw;
  for (std::uint64_t code = 0; code < 16; ++code) {
    const Relation r = Relation::from_code(X, Y, 2, 2, code);
    Relation acc = empty_relation(u, X, Y);
    for (const auto& s : d_subfunctions(r)) acc = unite(acc, s);
    if (!(acc == r) && all_unions) {
      all_unions = false;
      lw = "R = " + to_text(u, r);
    }
  }
  out.push_back(Check{"every relation is the union of its d-subfunctions (16 relations)", all_unions, lw});

  int uni = 0, uni_ok = 0, full_ok = 0, variant_ok = 0;
  std::string uw, fw, vw;
  for (const auto& r : enumerate_homset(u, X, Y)) {
    if (is_univalent(r.rel())) {
      ++uni;
      if (decompose_univalent(r).reconstructs) {
        ++uni_ok;
      } else if (uw.empty()) {
        uw = "R = " + to_text(u, r.rel());
      }
    }
    if (decompose_full(r, true).reconstructs) {
      ++variant_ok;
    } else if (vw.empty()) {
      vw = "R = " + to_text(u, r.rel());
    }
    if (decompose_full(r).reconstructs) {
      ++full_ok;
    } else if (fw.empty()) {
      fw = "R = " + to_text(u, r.rel());
    }
  }
  out.push_back(Check{"univalent decomposition reconstructs all " + std::to_string(uni) + " univalent R",
                      uni_ok == uni, std::to_string(uni_ok) + " reconstruct; first failure " + uw});
  out.push_back(Check{"full decomposition reconstructs all 256 multirelations", full_ok == 256,
                      std::to_string(full_ok) + " reconstruct; first failure " + fw});
  out.push_back(Check{"decomposition with (a,∅) pairs admitted reconstructs all 256 multirelations",
                      variant_ok == 256, std::to_string(variant_ok) + " reconstruct; first failure " + vw});
}

// 9 ---------------------------------------------------------------------------

void co_composition(std::vector<Check>& out, const AcceptanceOptions& opt) {
  const std::initializer_list<std::string_view> body{
      "R * S = (R @ S^i)^i",
      "R^i = R @ one[Y]^i",
      "one[Y]^i @ one[Y]^i = one[Y]",
      "R @ lu[Y,Y] = (R * li[Y,Y])^i",
      "R @ li[Y,Y] = (R * lu[Y,Y])^i",
      "R * lu[Y,Y] <= R icap R^i",
      "R @ li[Y,Y] <= R icup R^i",
      "0[X,P(Y)] @ S = 0[X,P(Y)]",
      "one[X] @ R = R",
      "lu[X,X] @ R = li[X,Y]",
      "(R cup Q) @ S = (R @ S) cup (Q @ S)",
      "S <= T -> R @ S <= R @ T",
      "R @ (S icap T) <= (R @ S) icap (R @ T)",
      "(R icup Q) @ S <= (R @ S) icap (Q @ S)",
      "S icap S <= S -> (R icup Q) @ S = (R @ S) icap (Q @ S)",
  };
  const std::string decl = " var R, Q : X <-> P(Y) var S, T : Y <-> P(Y)";
  laws(out, opt, sets_header(1, 2) + decl, body);
  laws(out, opt, sets_header(2, 2) + decl, body, LawRun{Goal::Check, Mode::Sample, 10000, 6});

  for (std::size_t x : {1, 2}) {
    const Universe u = Universe::declare({{"X", x}, {"Y", 2}});
    std::vector<MultiRelation> closed;
    for (const auto& t : enumerate_homset(u, Y, Y)) {
      if (is_intersection_closed(t)) closed.push_back(t);
    }
    random_families(out, "[X=" + std::to_string(x) + ",Y=2] big icup @ T = big icap of (R_i @ T), T intersection-closed",
                    36 + x, 1000, [&](SplitMix64& rng, std::string& w) {
                      const auto f = random_family(rng, u, X, Y, 1, 5);
                      const auto& t = closed[rng() % closed.size()];
                      std::vector<MultiRelation> parts;
                      for (const auto& r : f) parts.push_back(co_compose(u, r, t));
                      const auto lhs = co_compose(u, big_inner_union(f), t);
                      if (lhs == big_inner_intersection(parts)) return true;
                      w = "F = " + family_text(u, f) + ", T = " + to_text(u, t.rel());
                      return false;
                    });
  }
}

// 10 --------------------------------------------------------------------------

void basis(std::vector<Check>& out, const AcceptanceOptions& opt) {
  for (std::size_t x : {1, 2}) {
    laws(out, opt,
         sets_header(x, 2) + " var R, S : X <-> P(Y) var T : Y <-> P(Y) var F : X <-> Y var G : Y <-> Y",
         {
             "R cup S = ~(~R cap ~S)",
             "R - S = R cap ~S",
             "0[X,P(Y)] = R cap ~R",
             "U[X,P(Y)] = ~0[X,P(Y)]",
             "up(R) = R icup U",
             "eps[Y] = up(one[Y])",
             "Id[Y] = one[Y] / one[Y]",
             "R^ = ~(~Id / R)",
             "F;G = ~(~F / G^)",
             "R \\ S = ((S^)/(R^))^",
             "syq(R, S) = (R \\ S) cap (R^ / S^)",
             "klift(R) = syq(eps;R^;eps, eps)",
             "Om[Y] = eps[Y] \\ eps[Y]",
             "Cr[Y] = syq(eps[Y], ~eps[Y])",
             "R^i = R;Cr[Y]",
             "R icap S = ((R^i) icup (S^i))^i",
             "down(R) = R icap U",
             "conv(R) = up(R) cap down(R)",
             "lu[Y,Y] = one[Y] icap one[Y]^i",
             "li[X,Y] = lu[X,Y]^i",
             "R^d = ~(R^i)",
             "R @ T = (R * T^i)^i",
             "plift(R) = (syq(one[X]^;eps, eps) * (one[X]^;R;one)); klift(Id)",
             "plift(R) = Id * R",
             "Au[X,Y] = U[X,Y];one[Y]",
             "Ai[X,Y] = Au[X,Y]^i",
             "dom(R) = Id cap R;R^",
             "R <=S S <-> S <= up(R)",
             "R <=H S <-> R <= down(S)",
             "R <=EM S <-> R <=H S and R <=S S",
         });
  }
}

// 11 --------------------------------------------------------------------------

nlohmann::json stable_json(const Universe& u, const lawlab::LawReport& r) {
  auto j = lawlab::to_json(u, r);
  j.erase("elapsed_ms");
  return j;
}

void engine(std::vector<Check>& out, const AcceptanceOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  laws(out, opt, sets_header(1, 2) + " var R : X <-> P(Y)", {"exists R : X <-> P(Y) . R icup R != R"}, LawRun{Goal::Find});
  const double find_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.push_back(Check{"icup non-idempotence witness in under 1 s", find_s < 1.0, std::to_string(find_s) + " s"});

  const std::string h = sets_header(2, 2) + " var R : X <-> P(Y) var S, T : Y <-> P(Y)";
  laws(out, opt, h, {"(R * S) * T <= R * (S * T)"}, LawRun{Goal::Check, Mode::Sample, 100000, 11});
  laws(out, opt, h, {"exists R : X <-> P(Y), S, T : Y <-> P(Y) . (R * S) * T != R * (S * T)"}, LawRun{Goal::Find, Mode::Sample, 100000, 11});

  // Reports must not depend on the number of workers.
  struct Case {
    std::string src;
    Goal goal;
    Mode mode;
  };
  const std::vector<Case> cases{
      {sets_header(1, 2) + " var R, S : X <-> P(Y) law R icup R = R", Goal::Check, Mode::Exhaustive},
      {sets_header(1, 2) + " var R, S : X <-> P(Y) law R icup S = S icup R", Goal::Check, Mode::Exhaustive},
      {sets_header(1, 2) + " var R, S : X <-> P(Y) law exists R : X <-> P(Y) . R icap R != R", Goal::Find, Mode::Exhaustive},
      {h + " law (R * S) * T = R * (S * T)", Goal::Check, Mode::Sample},
  };
  for (const auto& c : cases) {
    const auto file = lawlab::parse_law_file(c.src);
    const Universe u = lawlab::universe_of(file);
    const auto prepared = lawlab::prepare_law(u, file.vars, file.laws.front(), c.goal);
    EngineOptions one;
    one.mode = c.mode;
    one.seed = 5;
    EngineOptions eight = one;
    eight.jobs = 8;
    const auto a = stable_json(u, lawlab::run_law(u, prepared, c.goal, one)).dump();
    const auto b = stable_json(u, lawlab::run_law(u, prepared, c.goal, eight)).dump();
    out.push_back(Check{"--jobs 1 and --jobs 8 agree: " + prepared.name, a == b, a + " vs " + b});
  }
}

std::string lower(std::string_view s) {
  std::string o(s);
  std::transform(o.begin(), o.end(), o.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return o;
}

}  // namespace

bool CriterionResult::pass() const {
  return error.empty() && within_budget() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string CriterionResult::summary() const {
  if (!error.empty()) return "error: " + error;
  for (const auto& c : checks) {
    if (!c.pass) return "failed: " + c.name + (c.witness.empty() ? "" : " -- " + c.witness);
  }
  if (!within_budget()) return "over budget";
  return std::to_string(checks.size()) + " checks";
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "worked examples reproduce", {"demo", "cli", "mrcore", "closures"}, 1, demos},
      {2, "inner union and intersection form commutative quantales", {"mrcore", "quantale"}, 5, quantales},
      {3, "up/down closures give subquantales", {"closures", "quantale"}, 30, subquantales},
      {4, "down-closure by Peleg composition with down(1)", {"closures", "mrcore"}, 5, down_unit},
      {5, "closures and Peleg composition", {"closures", "mrcore"}, 60, peleg_closures},
      {6, "quotients by the preorder equivalences", {"closures", "quotient"}, 5, quotients},
      {7, "orders on special classes", {"closures", "orders"}, 30, special_orders},
      {8, "decomposition theorems", {"relcore", "closures", "decomposition"}, 10, decompositions},
      {9, "co-composition identities", {"mrcore", "cocomposition"}, 60, co_composition},
      {10, "basis definitions", {"lawlab", "basis"}, 60, basis},
      {11, "engine search and determinism", {"lawlab", "engine"}, 60, engine},
  };
  return all;
}

bool matches(const Criterion& c, std::string_view filter) {
  if (filter.empty()) return true;
  if (filter == std::to_string(c.id)) return true;
  const std::string f = lower(filter);
  if (std::any_of(c.tags.begin(), c.tags.end(), [&](const std::string& t) { return t == f; })) return true;
  return lower(c.title).find(f) != std::string::npos;
}

CriterionResult run_criterion(const Criterion& c, const AcceptanceOptions& opt) {
  CriterionResult r;
  r.id = c.id;
  r.title = c.title;
  r.budget_seconds = c.budget_seconds;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(r.checks, opt);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace multirel
