#include "multirel/demos.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "multirel/io.hpp"

namespace multirel {

namespace {

const ObjType X = ObjType::of("X");

// Collects shown relations and checks for one demo.
class Script {
 public:
  Script(DemoReport& rep, std::vector<std::pair<std::string, std::size_t>> sets)
      : rep_(rep), u_(Universe::declare(sets)) {}

  const Universe& u() const { return u_; }

  MultiRelation rel(std::string_view text, const ObjType& src, const ObjType& inner) const {
    return MultiRelation(parse_relation(u_, text, src, inner.pow()));
  }

  const MultiRelation& show(const std::string& name, const MultiRelation& r) {
    rep_.lines.push_back(name + " = " + to_text(u_, r.rel()));
    return r;
  }

  void expect(const std::string& name, bool ok, std::string witness = {}) {
    rep_.checks.push_back(Check{name, ok, ok ? std::string{} : std::move(witness)});
  }

  void eq(const std::string& name, const MultiRelation& a, const MultiRelation& b) {
    expect(name, a == b, "lhs " + to_text(u_, a.rel()) + ", rhs " + to_text(u_, b.rel()));
  }
  void ne(const std::string& name, const MultiRelation& a, const MultiRelation& b) {
    expect(name, !(a == b), "both " + to_text(u_, a.rel()));
  }
  // Proper inclusion a ⊂ b.
  void lt(const std::string& name, const MultiRelation& a, const MultiRelation& b) {
    expect(name, a.rel().subset_of(b.rel()) && !(a == b),
           "lhs " + to_text(u_, a.rel()) + ", rhs " + to_text(u_, b.rel()));
  }

 private:
  DemoReport& rep_;
  Universe u_;
};

MultiRelation cup(const MultiRelation& a, const MultiRelation& b) { return MultiRelation(unite(a.rel(), b.rel())); }
MultiRelation cap(const MultiRelation& a, const MultiRelation& b) {
  return MultiRelation(intersect(a.rel(), b.rel()));
}
bool leq_h(const MultiRelation& r, const MultiRelation& s) { return preorder_leq(PreorderKind::Hoare, r, s); }
bool leq_s(const MultiRelation& r, const MultiRelation& s) { return preorder_leq(PreorderKind::Smyth, r, s); }

void example_3_3(DemoReport& rep) {
  rep.claim = "R icup R = R cup {(a,{a,b})} and R icap R = R cup {(a,∅)}";
  Script s(rep, {{"X", 1}, {"Y", 2}});
  const ObjType Y = ObjType::of("Y");
  const auto r = s.show("R", s.rel("{(a,{a}),(a,{b})}", X, Y));
  const auto ru = s.show("R icup R", inner_union(r, r));
  const auto ri = s.show("R icap R", inner_intersection(r, r));
  s.eq("R icup R = R cup {(a,{a,b})}", ru, cup(r, s.rel("{(a,{a,b})}", X, Y)));
  s.eq("R icap R = R cup {(a,∅)}", ri, cup(r, s.rel("{(a,∅)}", X, Y)));
  s.ne("R icup R != R", ru, r);
  s.ne("R icap R != R", ri, r);
}

void example_4_4(DemoReport& rep) {
  rep.claim = "inner union of down-closed and inner intersection of up-closed multirelations need not be idempotent";
  Script s(rep, {{"X", 1}, {"Y", 2}});
  const ObjType Y = ObjType::of("Y");
  const auto r = s.show("R", s.rel("{(a,{a}),(a,{b})}", X, Y));
  const auto d = s.show("down(R)", down(r));
  const auto dd = s.show("down(R) icup down(R)", inner_union(d, d));
  s.eq("down(R) = {(a,∅),(a,{a}),(a,{b})}", d, s.rel("{(a,∅),(a,{a}),(a,{b})}", X, Y));
  s.eq("down(R) icup down(R) = down(R) cup {(a,{a,b})}", dd, cup(d, s.rel("{(a,{a,b})}", X, Y)));
  s.lt("down(R) < down(R) icup down(R)", d, dd);
  const auto up_r = s.show("up(R)", up(r));
  const auto uu = s.show("up(R) icap up(R)", inner_intersection(up_r, up_r));
  s.eq("up(R) = R icup R", up_r, inner_union(r, r));
  s.eq("up(R) icap up(R) = (R icup R) cup {(a,∅)}", uu, cup(inner_union(r, r), s.rel("{(a,∅)}", X, Y)));
  s.lt("up(R) < up(R) icap up(R)", up_r, uu);
  // The accompanying inclusions, over every S of the same type.
  bool up_ok = true, down_ok = true;
  for (const auto& t : enumerate_homset(s.u(), X, Y)) {
    const auto ut = up(t), dt = down(t);
    up_ok = up_ok && cap(up_r, ut).rel().subset_of(inner_intersection(up_r, ut).rel());
    down_ok = down_ok && cap(d, dt).rel().subset_of(inner_union(d, dt).rel());
  }
  s.expect("up(R) cap up(S) <= up(R) icap up(S) for all S", up_ok);
  s.expect("down(R) cap down(S) <= down(R) icup down(S) for all S", down_ok);
}

void up_comp_fail(DemoReport& rep) {
  rep.claim = "up(lu) * up(li) = lu cup li < U = up(lu) = up(lu * li)";
  Script s(rep, {{"X", 2}});
  const auto& u = s.u();
  const auto lu = s.show("lu", inner_unit_union(u, X, X));
  const auto li = s.show("li", inner_unit_intersection(u, X, X));
  const auto U = MultiRelation(universal_relation(u, X, X.pow()));
  const auto lhs = s.show("up(lu) * up(li)", peleg_compose(u, up(lu), up(li)));
  const auto rhs = s.show("up(lu * li)", up(peleg_compose(u, lu, li)));
  s.eq("up(lu) = U", up(lu), U);
  s.eq("up(lu) * up(li) = U * li", lhs, peleg_compose(u, U, li));
  s.eq("U * li = lu cup li", peleg_compose(u, U, li), cup(lu, li));
  s.lt("lu cup li < U", cup(lu, li), U);
  s.eq("up(lu * li) = U", rhs, U);
  s.expect("lu and li are deterministic", is_deterministic(lu) && is_deterministic(li));
  s.expect("up(lu) * up(li) is not up-closed", !closed_check(ClosureKind::Up, lhs));
}

void example_4_9(DemoReport& rep) {
  rep.claim = "down(1 * 0) = 0 < lu = down(1) * down(0)";
  Script s(rep, {{"X", 2}});
  const auto& u = s.u();
  const auto one = s.show("1", unit(u, X));
  const auto zero = MultiRelation(empty_relation(u, X, X.pow()));
  const auto lu = s.show("lu", inner_unit_union(u, X, X));
  const auto lhs = s.show("down(1 * 0)", down(peleg_compose(u, one, zero)));
  const auto rhs = s.show("down(1) * down(0)", peleg_compose(u, down(one), down(zero)));
  s.eq("down(1 * 0) = down(0) = 0", lhs, zero);
  s.eq("down(1) = 1 cup lu", down(one), cup(one, lu));
  s.eq("lu * 0 = lu", peleg_compose(u, lu, zero), lu);
  s.eq("(1 cup lu) * 0 = lu", peleg_compose(u, cup(one, lu), zero), lu);
  s.eq("down(1) * down(0) = lu", rhs, lu);
  s.lt("0 < lu", lhs, rhs);
  s.expect("1 and 0 are inner deterministic", is_inner_deterministic(one) && is_inner_deterministic(zero));
}

void example_5_11(DemoReport& rep) {
  rep.claim = "R =H S and R =S S but R != S; likewise U;R and U;S; on one point 1 =H U, ~1 =S U";
  {
    Script s(rep, {{"X", 3}});
    const auto& u = s.u();
    const auto r = s.show("R", s.rel("{(a,{a}),(a,{a,b,c})}", X, X));
    const auto sr = s.show("S", s.rel("{(a,{a}),(a,{a,b}),(a,{a,b,c})}", X, X));
    s.expect("R is inner total", is_inner_total(r));
    s.expect("R =H S", equiv(PreorderKind::Hoare, r, sr));
    s.expect("R =S S", equiv(PreorderKind::Smyth, r, sr));
    s.expect("R =EM S", equiv(PreorderKind::EgliMilner, r, sr));
    s.ne("R != S", r, sr);
    const Relation U = universal_relation(u, X, X);
    const auto ur = s.show("U;R", MultiRelation(compose(U, r.rel())));
    const auto us = s.show("U;S", MultiRelation(compose(U, sr.rel())));
    s.expect("U;R is total", is_total(ur.rel()));
    s.expect("U;R =H U;S", equiv(PreorderKind::Hoare, ur, us));
    s.expect("U;R =S U;S", equiv(PreorderKind::Smyth, ur, us));
    s.expect("U;R =EM U;S", equiv(PreorderKind::EgliMilner, ur, us));
    s.ne("U;R != U;S", ur, us);
  }
  {
    Script s(rep, {{"X", 1}});
    const auto& u = s.u();
    const auto one = s.show("1 (|X|=1)", unit(u, X));
    const auto U = s.show("U (|X|=1)", MultiRelation(universal_relation(u, X, X.pow())));
    const auto none = s.show("~1 (|X|=1)", MultiRelation(complement(one.rel())));
    bool all_iu = true;
    for (const auto& t : enumerate_homset(u, X, X)) all_iu = all_iu && is_inner_univalent(t);
    s.expect("all multirelations on one point are inner univalent", all_iu);
    s.expect("1 =H U", equiv(PreorderKind::Hoare, one, U));
    s.expect("~1 =S U", equiv(PreorderKind::Smyth, none, U));
    s.ne("1 != U", one, U);
    s.ne("U != ~1", U, none);
  }
}

void natural_order_fail(DemoReport& rep) {
  rep.claim = "S <=H T and T <=S R, but S icap T = T != S and T icup R = T != R";
  Script s(rep, {{"X", 1}});
  const auto r = s.show("R", s.rel("{(a,∅)}", X, X));
  const auto sr = s.show("S", s.rel("{(a,{a})}", X, X));
  const auto t = s.show("T", cup(r, sr));
  s.expect("S <=H T", leq_h(sr, t));
  s.expect("T <=S R", leq_s(t, r));
  s.eq("S icap T = T", inner_intersection(sr, t), t);
  s.ne("T != S", t, sr);
  s.eq("T icup R = T", inner_union(t, r), t);
  s.ne("T != R", t, r);
}

void preorder_incomparable(DemoReport& rep) {
  rep.claim = "0 <=H 1 and 1 <=S 0 but neither 0 <=S 1 nor 1 <=H 0; 1 <=H lu cup 1 <=S lu, not conversely";
  Script s(rep, {{"X", 2}});
  const auto& u = s.u();
  const auto zero = s.show("0", MultiRelation(empty_relation(u, X, X.pow())));
  const auto one = s.show("1", unit(u, X));
  const auto lu = s.show("lu", inner_unit_union(u, X, X));
  const auto lu1 = s.show("lu cup 1", cup(lu, one));
  s.expect("0 <=H 1", leq_h(zero, one));
  s.expect("1 <=S 0", leq_s(one, zero));
  s.expect("not 0 <=S 1", !leq_s(zero, one));
  s.expect("not 1 <=H 0", !leq_h(one, zero));
  s.expect("1 <=H lu cup 1", leq_h(one, lu1));
  s.expect("lu cup 1 <=S lu", leq_s(lu1, lu));
  s.expect("not 1 <=S lu cup 1", !leq_s(one, lu1));
  s.expect("not lu cup 1 <=H lu", !leq_h(lu1, lu));
  s.expect("lu cup 1 is total", is_total(lu1.rel()));
}

void hoare_not_subset(DemoReport& rep) {
  rep.claim = "{(a,∅)} <=H {(a,{a})} although the relations are disjoint";
  Script s(rep, {{"X", 1}});
  const auto r = s.show("R", s.rel("{(a,∅)}", X, X));
  const auto t = s.show("S", s.rel("{(a,{a})}", X, X));
  s.expect("R and S are deterministic", is_deterministic(r) && is_deterministic(t));
  s.expect("R <=H S", leq_h(r, t));
  s.expect("R cap S = 0", cap(r, t).rel().empty());
  s.expect("not R <= S", !r.rel().subset_of(t.rel()));
}

const std::map<std::string, std::function<void(DemoReport&)>, std::less<>>& registry() {
  static const std::map<std::string, std::function<void(DemoReport&)>, std::less<>> demos{
      {"example-3-3", example_3_3},
      {"example-4-4", example_4_4},
      {"up-comp-fail", up_comp_fail},
      {"example-4-9", example_4_9},
      {"example-5-11", example_5_11},
      {"natural-order-fail", natural_order_fail},
      {"preorder-incomparable", preorder_incomparable},
      {"hoare-not-subset", hoare_not_subset},
  };
  return demos;
}

}  // namespace

bool DemoReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names{"example-3-3",  "example-4-4",        "up-comp-fail",
                                              "example-4-9",  "example-5-11",       "natural-order-fail",
                                              "preorder-incomparable", "hoare-not-subset"};
  return names;
}

DemoReport run_demo(std::string_view name) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw Error(ErrorKind::UnknownDemo, "no demo named `" + std::string(name) + "`");
  DemoReport rep;
  rep.name = it->first;
  it->second(rep);
  return rep;
}

std::string to_text(const DemoReport& r) {
  std::string s = r.name + ": " + r.claim + "\n";
  for (const auto& l : r.lines) s += "  " + l + "\n";
  for (const auto& c : r.checks) {
    s += std::string(c.pass ? "  [pass] " : "  [FAIL] ") + c.name;
    if (!c.witness.empty()) s += " (" + c.witness + ")";
    s += "\n";
  }
  s += r.name + (r.pass() ? ": pass" : ": FAIL");
  return s;
}

nlohmann::json to_json(const DemoReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json j{{"name", c.name}, {"pass", c.pass}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    checks.push_back(std::move(j));
  }
  return {{"demo", r.name}, {"claim", r.claim}, {"relations", r.lines}, {"checks", checks}, {"pass", r.pass()}};
}

}  // namespace multirel
