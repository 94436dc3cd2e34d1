#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "multirel/acceptance.hpp"
#include "multirel/io.hpp"
#include "multirel_cli/cli.hpp"
#include "support.hpp"

using namespace multirel;
using namespace tsupport;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = multirel::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string law_path(const std::string& name) { return std::string(MULTIREL_SOURCE_DIR) + "/laws/" + name; }

std::string temp_law(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("multirel_test_" + name + ".law");
  std::ofstream(p) << text;
  return p.string();
}

std::vector<nlohmann::json> json_lines(const std::string& s) {
  std::vector<nlohmann::json> docs;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) docs.push_back(nlohmann::json::parse(line));
  }
  return docs;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"check"}).code == 2);
  CHECK(run_cli({"check", "/nonexistent/file.law"}).code == 2);
  CHECK(run_cli({"eval", "--sets", "X=1", "--expr"}).code == 2);
  CHECK(run_cli({"eval", "--sets", "X=1", "--expr", "R cup"}).code == 2);
  CHECK(run_cli({"eval", "--sets", "X=1,Y=2", "--expr", "one[Z]"}).code == 2);
  CHECK(run_cli({"check", law_path("prop-3-2.law"), "--mode", "sometimes"}).code == 2);
  const auto unknown = run_cli({"demo", "unknown"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("UnknownDemo") != std::string::npos);
  CHECK(run_cli({"demo"}).code == 2);
}

TEST_CASE("eval") {
  const auto r = run_cli({"eval", "--sets", "X=1,Y=2", "--bind", "R={(a,{a}),(a,{b})}", "--expr", "down(R)"});
  CHECK(r.code == 0);
  CHECK(r.out == "{(a,∅),(a,{a}),(a,{b})}\n");
  const auto icup = run_cli({"eval", "--sets", "X=1,Y=2", "--bind", "R={(a,{a}),(a,{b})}", "--expr", "R icup R"});
  CHECK(icup.out == "{(a,{a}),(a,{b}),(a,{a,b})}\n");
  const auto zero = run_cli({"eval", "--sets", "X=1,Y=2", "--bind", "R = { (a , {a}) }", "--expr", "0[X,P(X)] * R"});
  CHECK(zero.code == 0);
  CHECK(zero.out == "∅\n");
  const auto f = run_cli({"eval", "--sets", "X=1,Y=2", "--bind", "R={(a,{a}),(a,{b})}", "--expr", "R icup R != R"});
  CHECK(f.out == "true\n");
  const auto typed = run_cli({"eval", "--sets", "X=2,Y=1", "--bind", "G:X<->X={(a,b)}", "--expr", "G;G^"});
  CHECK(typed.out == "{(a,a)}\n");
  CHECK(run_cli({"eval", "--sets", "X=1,Y=2", "--bind", "R={(a,{a})}", "--expr", "R ; R"}).code == 2);
  CHECK(run_cli({"eval", "--sets", "X=300", "--expr", "Id[X]"}).code == 3);
}

TEST_CASE("binding syntax and relation JSON round-trip") {
  const auto j = run_cli({"eval", "--sets", "X=1,Y=2", "--bind", "R={(a,{a}),(a,{b})}", "--expr", "down(R)", "--format",
                      "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["type"] == "X <-> P(Y)");
  const Universe u = xy(1, 2);
  const Relation v = relation_from_json(u, doc["value"]);
  CHECK(to_text(u, v) == "{(a,∅),(a,{a}),(a,{b})}");

  Gen g(77);
  for (auto [x, y] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{3, 1}, std::pair{2, 3}}) {
    const Universe uu = xy(x, y);
    for (int i = 0; i < 300; ++i) {
      const auto r = g.rel(uu, X, Y.pow(), 0.3);
      CHECK(parse_relation(uu, to_text(uu, r), X, Y.pow()) == r);
      CHECK(relation_from_json(uu, to_json(uu, r)) == r);
      // Through the CLI: bind, echo, re-parse.
      if (i % 30 == 0) {
        const std::string sets = "X=" + std::to_string(x) + ",Y=" + std::to_string(y);
        const auto e = run_cli({"eval", "--sets", sets, "--bind", "R:X<->P(Y)=" + to_text(uu, r), "--expr", "R",
                            "--format", "json"});
        REQUIRE(e.code == 0);
        CHECK(relation_from_json(uu, nlohmann::json::parse(e.out)["value"]) == r);
      }
    }
  }
}

TEST_CASE("check and find exit codes") {
  const auto ok = run_cli({"check", law_path("prop-3-2.law"), "--mode", "exhaustive", "--jobs", "2"});
  CHECK(ok.code == 0);
  for (const auto& doc : json_lines(ok.out)) CHECK(doc["verdict"] == "valid");
  CHECK(json_lines(ok.out).size() >= 10);

  const auto w = run_cli({"find", law_path("iu-not-idempotent.law")});
  CHECK(w.code == 0);
  const auto docs = json_lines(w.out);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0]["verdict"] == "witness");
  CHECK(docs[0]["binding"].contains("R"));

  const std::string bad = temp_law("bad", "set X = 1\nset Y = 2\nvar R : X <-> P(Y)\nlaw R icup R = R\n");
  const auto ce = run_cli({"check", bad, "--format", "text"});
  CHECK(ce.code == 1);
  CHECK(ce.out.find("counterexample") != std::string::npos);
  CHECK(ce.out.find("R = {") != std::string::npos);

  const std::string none = temp_law("none", "set X = 1\nvar R : X <-> P(X)\nlaw exists R . R != R\n");
  CHECK(run_cli({"find", none}).code == 1);

  const std::string ill = temp_law("ill", "set X = 1\nset Y = 2\nvar R : X <-> P(Y)\nlaw R ; R = R\n");
  const auto te = run_cli({"check", ill});
  CHECK(te.code == 2);
  CHECK(te.err.find("TypeError") != std::string::npos);

  const std::string syn = temp_law("syn", "set X = 1\nlaw = =\n");
  CHECK(run_cli({"check", syn}).code == 2);

  const auto big = run_cli({"check", law_path("peleg.law"), "--sets", "X=2,Y=3"});
  CHECK(big.code == 3);
  CHECK(big.err.find("--mode sample") != std::string::npos);
  CHECK(run_cli({"check", law_path("peleg.law"), "--max-space", "8"}).code == 3);

  const auto sampled =
      run_cli({"check", law_path("peleg.law"), "--sets", "X=2,Y=3", "--mode", "sample", "--samples", "200", "--seed", "3"});
  CHECK(sampled.code == 0);
  for (const auto& doc : json_lines(sampled.out)) CHECK(doc["verdict"] == "sampled_pass");
}

TEST_CASE("every shipped law file checks or finds") {
  for (const char* f : {"prop-3-2.law", "closures.law", "peleg.law", "up-comp-fail.law", "basis.law"}) {
    CAPTURE(f);
    CHECK(run_cli({"check", law_path(f)}).code == 0);
  }
  CHECK(run_cli({"find", law_path("peleg-not-assoc.law"), "--mode", "sample", "--samples", "100000", "--seed", "1"})
            .code == 0);
}

TEST_CASE("reports are independent of --jobs") {
  auto strip = [](const std::string& out) {
    auto docs = json_lines(out);
    for (auto& d : docs) d.erase("elapsed_ms");
    return docs;
  };
  const std::string bad =
      temp_law("assoc", "set X = 1\nset Y = 2\nvar R : X <-> P(Y)\nvar S, T : Y <-> P(Y)\nlaw (R*S)*T = R*(S*T)\n");
  const auto a = run_cli({"check", bad, "--jobs", "1"});
  const auto b = run_cli({"check", bad, "--jobs", "8"});
  CHECK(a.code == 1);
  CHECK(strip(a.out) == strip(b.out));
}

TEST_CASE("demos") {
  const auto list = run_cli({"demo", "--list"});
  CHECK(list.code == 0);
  for (const char* name : {"example-3-3", "example-4-4", "up-comp-fail", "example-4-9", "example-5-11",
                           "natural-order-fail", "preorder-incomparable", "hoare-not-subset"}) {
    CAPTURE(name);
    CHECK(list.out.find(name) != std::string::npos);
    const auto d = run_cli({"demo", name});
    CHECK(d.code == 0);
    CHECK(d.out.find(std::string(name) + ": pass") != std::string::npos);
    const auto j = run_cli({"demo", name, "--format", "json"});
    CHECK(nlohmann::json::parse(j.out)["pass"] == true);
  }
}

TEST_CASE("selftest filtering and the mutation hook") {
  const auto closures = run_cli({"selftest", "--filter", "closures", "--format", "json"});
  std::vector<int> ran, expected;
  for (const auto& doc : json_lines(closures.out)) ran.push_back(doc["criterion"].get<int>());
  for (const auto& c : multirel::criteria()) {
    if (multirel::matches(c, "closures")) expected.push_back(c.id);
    CHECK(multirel::matches(c, std::to_string(c.id)));
  }
  CHECK(ran == expected);
  CHECK(ran.size() < multirel::criteria().size());
  for (int id : ran) {
    const auto& c = multirel::criteria()[static_cast<std::size_t>(id - 1)];
    CHECK(std::find(c.tags.begin(), c.tags.end(), "closures") != c.tags.end());
  }

  CHECK(run_cli({"selftest", "--filter", "4"}).code == 0);
  const auto corrupt = run_cli({"selftest", "--filter", "4", "--corrupt-unit"});
  CHECK(corrupt.code == 1);
  CHECK(corrupt.out.find("FAIL") != std::string::npos);
  CHECK(run_cli({"selftest", "--filter", "4"}).code == 0);  // the hook does not leak
  CHECK(run_cli({"selftest", "--filter", "no-such-criterion"}).code == 2);
}
