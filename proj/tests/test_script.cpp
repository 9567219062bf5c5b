#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "homlab/session.hpp"

using namespace homlab;
namespace sc = homlab::script;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Report run_text(const std::string& text, RunOptions opt = {}) {
  Session s(opt);
  return s.run(sc::parse(text));
}

const ojson& last_result(const Report& r) { return r.doc["results"].back(); }

}  // namespace

TEST(ScriptParse, ReadsDeclarationsAndCommands) {
  auto s = sc::parse("ring R = F5[x:1, y:1]/(x*y); module M = coker R [[x]]; compute ext 1 M M;");
  ASSERT_EQ(s.statements.size(), 3u);
  auto& r = std::get<sc::RingDecl>(s.statements[0]);
  auto& lit = std::get<sc::RingLiteral>(r.value);
  EXPECT_EQ(lit.p, 5u);
  ASSERT_EQ(lit.vars.size(), 2u);
  EXPECT_EQ(lit.vars[1].name, "y");
  EXPECT_EQ(lit.ideal[0].text, "x*y");
  auto& m = std::get<sc::ModuleDecl>(s.statements[1]);
  EXPECT_EQ(m.constructor, "coker");
  ASSERT_EQ(m.args.size(), 2u);
  EXPECT_EQ(m.args[1].kind, sc::Arg::Kind::Matrix);
  auto& c = std::get<sc::Command>(s.statements[2]);
  EXPECT_EQ(c.verb, "compute");
  EXPECT_EQ(c.target, "ext");
  EXPECT_EQ(c.args[0].value, 1);
}

TEST(ScriptParse, ReadsCampaignOptions) {
  auto s = sc::parse("verify fitting --ring R0 --exhaustive --max-dim 3;");
  auto& c = std::get<sc::Command>(s.statements[0]);
  EXPECT_EQ(c.verb, "verify");
  EXPECT_EQ(c.target, "fitting");
  ASSERT_EQ(c.options.size(), 3u);
  EXPECT_EQ(*c.option("ring")->value, "R0");
  EXPECT_FALSE(c.option("exhaustive")->value.has_value());
  EXPECT_EQ(*c.option("max-dim")->value, "3");
}

TEST(ScriptParse, ReportsLineAndColumn) {
  try {
    sc::parse("ring R = F5[x, y]/(x*y)\nmodule M = coker R [[x]];");
    FAIL() << "expected a syntax error";
  } catch (const sc::ScriptError& e) {
    EXPECT_EQ(e.pos().line, 2);
    EXPECT_EQ(e.pos().column, 1);
    EXPECT_NE(e.message().find("expected ';'"), std::string::npos);
  }
  EXPECT_THROW(sc::parse("module M = coker R [[x, y];"), sc::ScriptError);
  EXPECT_THROW(sc::parse("frobnicate R;"), sc::ScriptError);
  EXPECT_THROW(sc::parse("ring R = G5[x];"), sc::ScriptError);
}

TEST(ScriptParse, PrintedScriptsReparseToEqualTrees) {
  const char* texts[] = {
      "ring R = F5[x:1, y:1]/(x*y); module M = coker R [[x]]; compute ext 1 M M;",
      "ring C = F5[x:2,y:3]/( y^2 - x^3 ); module W = canonical C; compute module W;",
      "ring A = sqzero; module M = coker A [[x, y], [0, x]] degrees [0, 0]; check minsyz M;",
      "module S = sum A B C; module T = shift S -2; compute iso S T; search MM --samples 5;",
      "oracle-check --samples 3 --top 2; module Q = quotient R (x*(y+x), y^2);",
      "# comment\nverify all --exhaustive --ring F2[x:1]/(x^4);",
  };
  for (const char* t : texts) {
    auto a = sc::parse(t);
    auto b = sc::parse(sc::print(a));
    EXPECT_EQ(a, b) << t;
    EXPECT_EQ(sc::print(a), sc::print(b));
  }
}

TEST(ScriptParse, SampleScriptsRoundTrip) {
  const std::filesystem::path dir = HOMLAB_SAMPLES_DIR;
  std::size_t seen = 0;
  for (auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() != ".hom") continue;
    ++seen;
    auto a = sc::parse(slurp(e.path()));
    EXPECT_EQ(a, sc::parse(sc::print(a))) << e.path();
  }
  EXPECT_GE(seen, 3u);
}

TEST(ScriptParse, RandomTreesRoundTrip) {
  std::mt19937_64 rng(17);
  const char* idents[] = {"R", "M", "N2", "x_1", "sqzero", "fitting"};
  const char* polys[] = {"x", "x*y+y^2", "-x^3+2*y", "(x+y)^2", "0", "3"};
  auto pick = [&](auto& arr) { return std::string(arr[rng() % std::size(arr)]); };
  for (int trial = 0; trial < 200; ++trial) {
    sc::Script s;
    for (int k = 0; k < 4; ++k) {
      auto arg = [&] {
        sc::Arg a;
        switch (rng() % 5) {
          case 0: a.kind = sc::Arg::Kind::Ident; a.ident = pick(idents); break;
          case 1: a.kind = sc::Arg::Kind::Int; a.value = static_cast<std::int64_t>(rng() % 9) - 4; break;
          case 2:
            a.kind = sc::Arg::Kind::Matrix;
            a.matrix.assign(1 + rng() % 2, {});
            for (auto& row : a.matrix)
              for (int j = 0; j < 2; ++j) row.push_back({pick(polys), {}});
            break;
          case 3: a.kind = sc::Arg::Kind::IntList; a.ints = {1, -2}; break;
          default: a.kind = sc::Arg::Kind::PolyList; a.polys = {{pick(polys), {}}, {pick(polys), {}}};
        }
        return a;
      };
      switch (rng() % 3) {
        case 0: {
          sc::RingLiteral lit{static_cast<std::uint32_t>(rng() % 2 ? 5 : 3), {{"x", 1}, {"y", 1 + static_cast<int>(rng() % 3)}}, {}};
          if (rng() % 2) lit.ideal.push_back({pick(polys), {}});
          s.statements.push_back(sc::RingDecl{pick(idents), lit, {}});
          break;
        }
        case 1: {
          sc::ModuleDecl d{pick(idents), "coker", {}, {}};
          for (int i = 0; i < 3; ++i) d.args.push_back(arg());
          s.statements.push_back(d);
          break;
        }
        default: {
          sc::Command c{"verify", pick(idents), {}, {}, {}};
          if (rng() % 2) {
            c.verb = "compute";
            c.args.push_back(arg());
          }
          c.options.push_back({"samples", std::to_string(rng() % 50), {}});
          if (rng() % 2) c.options.push_back({"exhaustive", std::nullopt, {}});
          s.statements.push_back(c);
        }
      }
    }
    EXPECT_EQ(sc::parse(sc::print(s)), s) << sc::print(s);
  }
}

TEST(ScriptElaborate, InfersGeneratorDegrees) {
  Session s({});
  auto r = s.run(sc::parse("ring R = F5[x:1, y:1]/(x*y); module M = coker R [[x, y^2], [1, y]];"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(s.module("M").generator_degrees(), (std::vector<int>{0, 1}));
}

TEST(ScriptElaborate, NamesTheOffendingEntry) {
  auto r = run_text("ring R = F5[x:1, y:1]/(x*y);\nmodule M = coker R [[x+y^2]];");
  EXPECT_EQ(r.exit_code, 1);
  const std::string msg = last_result(r)["message"];
  EXPECT_NE(msg.find("entry (1, 1) 'x+y^2' is not homogeneous"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 2"), std::string::npos);

  auto r2 = run_text("ring R = F5[x:1, y:1];\nmodule M = coker R [[x, y], [x^2, 1]];");
  EXPECT_NE(last_result(r2)["message"].get<std::string>().find("entry (2, 2) '1'"), std::string::npos);

  auto r3 = run_text("ring R = F5[x:1, y:1];\nmodule M = coker R [[x, y^2]] degrees [0];\nmodule N = coker R [[x], [x]] degrees [0, 1];");
  EXPECT_NE(last_result(r3)["message"].get<std::string>().find("entry (2, 1) 'x' has the wrong degree"), std::string::npos);
}

TEST(ScriptElaborate, RejectsUnknownNames) {
  auto r = run_text("ring R = F5[x:1];\ncompute depth Q;");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(last_result(r)["message"].get<std::string>().find("unknown module 'Q'"), std::string::npos);
  auto r2 = run_text("module M = free S 2;");
  EXPECT_NE(last_result(r2)["message"].get<std::string>().find("unknown ring 'S'"), std::string::npos);
  auto r3 = run_text("ring R = F5[x:1]; module M = quotient R (z);");
  EXPECT_NE(last_result(r3)["message"].get<std::string>().find("unknown variable 'z'"), std::string::npos);
  auto r4 = run_text("ring R = F4[x:1];");
  EXPECT_EQ(r4.exit_code, 1);
}

TEST(ScriptRun, ConditionsNeededReport) {
  auto r = run_text(slurp(std::filesystem::path(HOMLAB_SAMPLES_DIR) / "conditionsneeded.hom"));
  EXPECT_EQ(r.exit_code, 0);
  const ojson* check = nullptr;
  for (auto& x : r.doc["results"])
    if (x["kind"] == "check") check = &x;
  ASSERT_NE(check, nullptr);
  const auto& facts = (*check)["verdict"]["facts"];
  EXPECT_EQ(facts["ext1_dim"], 0);
  EXPECT_EQ(facts["M_free"], false);
  EXPECT_NE(r.text.find("ext1_dim: 0"), std::string::npos);
  EXPECT_NE(r.text.find("M_free: false"), std::string::npos);
}

TEST(ScriptRun, ComputeCommands) {
  auto r = run_text("ring A = F2[x:1]; module K = residue A; compute frobenius K;");
  ASSERT_EQ(r.exit_code, 1);
  EXPECT_NE(last_result(r)["message"].get<std::string>().find("unknown computation"), std::string::npos);
  auto r3 = run_text(
      "ring A = F2[x:1, y:1]/(x^2, x*y, y^2); module K = residue A; module M = maximal A; module KK = sum K K;"
      "compute type A; compute exts 1 K K; compute resolution K 2; compute localiso M KK; compute iso M KK;");
  ASSERT_EQ(r3.exit_code, 0) << r3.text;
  const auto& res = r3.doc["results"];
  EXPECT_EQ(res[0]["type"], 2);
  EXPECT_EQ(res[1]["ext"][1]["length"], 2);
  EXPECT_EQ(res[2]["betti"], (std::vector<int>{1, 2, 4}));
  EXPECT_EQ(res[3]["isomorphic"], "true");
  EXPECT_EQ(res[4]["isomorphic"], "false");  // m sits in degree 1
}

TEST(ScriptRun, VerifyIsDeterministic) {
  RunOptions opt;
  opt.seed = 42;
  const std::string text = "verify minsyz --samples 40; verify fitting --samples 20;";
  auto a = run_text(text, opt);
  opt.jobs = 3;
  auto b = run_text(text, opt);
  EXPECT_EQ(a.doc.dump(), b.doc.dump());
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.doc["results"][0]["campaigns"][0]["seed"], 42);
}

TEST(ScriptRun, VerifiedCounterexampleGivesExitTwo) {
  auto r = run_text("search MNFree --ring node --samples 5;");
  EXPECT_EQ(r.exit_code, 2);
  const auto& ce = r.doc["results"][0]["campaigns"][0]["counterexamples"];
  ASSERT_EQ(ce.size(), 1u);
  EXPECT_EQ(ce[0]["instance"]["modules"][0]["relations"][0][0], "x");
}

TEST(ScriptRun, TimingOnlyWhenAsked) {
  auto r = run_text("verify MM --samples 3;");
  EXPECT_FALSE(r.doc["results"][0]["campaigns"][0].contains("seconds"));
  RunOptions opt;
  opt.timing = true;
  auto t = run_text("verify MM --samples 3;", opt);
  EXPECT_TRUE(t.doc["results"][0]["campaigns"][0].contains("seconds"));
}
