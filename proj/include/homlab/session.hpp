#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "campaign.hpp"
#include "json.hpp"
#include "script.hpp"

namespace homlab {

inline constexpr const char* kVersion = "1.0.0";

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------------------
// JSON views. Field order is fixed; timing appears only when asked for.

inline ojson module_json(const FPModule& M) {
  const auto& base = M.ring()->base();
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < M.num_generators(); ++i) {
    ojson row = ojson::array();
    for (auto& c : M.relations()) row.push_back(format_polynomial(c[i], base));
    rows.push_back(std::move(row));
  }
  return ojson{{"generator_degrees", M.generator_degrees()}, {"relations", std::move(rows)}};
}

inline ojson depth_json(int d) { return d == kInfiniteDepth ? ojson("inf") : ojson(d); }

inline ojson module_summary(const FPModule& M) {
  ojson j{{"presentation", describe(M)}};
  j["zero"] = M.is_zero();
  j["mu"] = mu(M);
  j["krull_dim"] = M.krull_dim();
  if (M.finite_length()) {
    j["length"] = M.length();
  } else {
    j["length"] = nullptr;
  }
  j["hilbert_numerator"] = M.hilbert_numerator().to_string();
  j["depth"] = depth_json(depth(M));
  return j;
}

inline ojson verdict_json(const Verdict& v, bool timing) {
  ojson hyp = ojson::array();
  for (auto& s : v.hypotheses.slots()) {
    ojson h{{"name", s.name}, {"value", to_string(s.value)}};
    if (!s.detail.empty()) h["detail"] = s.detail;
    hyp.push_back(std::move(h));
  }
  ojson facts = ojson::object();
  for (auto& f : v.facts) {
    switch (f.kind) {
      case Verdict::Fact::Kind::Bool: facts[f.key] = f.value == "true"; break;
      case Verdict::Fact::Kind::Int: facts[f.key] = std::stoll(f.value); break;
      default: facts[f.key] = f.value;
    }
  }
  ojson j{{"statement", v.statement},
          {"conclusion", to_string(v.conclusion)},
          {"reason", v.reason},
          {"hypotheses", std::move(hyp)},
          {"facts", std::move(facts)},
          {"seed", v.seed}};
  if (timing) j["seconds"] = v.seconds;
  return j;
}

inline ojson instance_json(const Instance& I) {
  ojson mods = ojson::array();
  for (auto& m : I.modules) {
    ojson x{{"name", m.name}, {"presentation", describe(m.module)}};
    x.update(module_json(m.module));
    mods.push_back(std::move(x));
  }
  return ojson{{"origin", I.origin}, {"parameter", I.parameter}, {"modules", std::move(mods)}};
}

inline ojson summary_json(const CampaignSummary& s, bool timing) {
  ojson reasons = ojson::object();
  for (auto& [r, c] : s.inconclusive_reasons) reasons[r] = c;
  ojson ce = ojson::array();
  for (auto& [I, v] : s.counterexamples) ce.push_back(ojson{{"instance", instance_json(I)}, {"verdict", verdict_json(v, timing)}});
  ojson j{{"statement", s.statement},
          {"ring", s.ring},
          {"seed", s.seed},
          {"samples", s.samples},
          {"exhaustive", s.exhaustive},
          {"max_dim", s.max_dim},
          {"budget", s.budget},
          {"oracle", s.oracle},
          {"fixed_instances", s.fixed_instances},
          {"enumerated_modules", s.enumerated_modules},
          {"enumerated_instances", s.enumerated_instances},
          {"instances", s.instances},
          {"holds", s.holds},
          {"fails", s.fails},
          {"inconclusive", s.inconclusive},
          {"errors", s.errors},
          {"unconfirmed_fails", s.unconfirmed_fails},
          {"inconclusive_reasons", std::move(reasons)},
          {"oracle_checked", s.oracle_checked},
          {"oracle_disagreements", s.oracle_disagreements},
          {"notes", s.notes},
          {"counterexamples", std::move(ce)}};
  if (!s.verdicts.empty()) {
    ojson vs = ojson::array();
    for (auto& v : s.verdicts) vs.push_back(verdict_json(v, timing));
    j["verdicts"] = std::move(vs);
  }
  if (timing) j["seconds"] = s.seconds;
  return j;
}

// ---------------------------------------------------------------------------------------
// Sessions.

struct RunOptions {
  std::uint64_t seed = 1;
  std::size_t budget = 256;
  unsigned jobs = 1;
  OracleMode oracle = OracleMode::On;
  bool timing = false;
  bool verdicts = false;
};

struct Report {
  ojson doc;
  std::string text;
  int exit_code = 0;
};

class Session {
 public:
  explicit Session(RunOptions opt) : opt_(opt) {}

  /// Runs every statement in order. Elaboration and compute errors stop the run with exit code 1.
  Report run(const script::Script& sc) {
    for (auto& st : sc.statements) {
      try {
        if (auto* r = std::get_if<script::RingDecl>(&st)) {
          declare_ring(*r);
        } else if (auto* m = std::get_if<script::ModuleDecl>(&st)) {
          declare_module(*m);
        } else {
          execute(std::get<script::Command>(st));
        }
      } catch (const script::ScriptError& e) {
        record_error(script::print(st), e.what());
        break;
      } catch (const std::exception& e) {
        record_error(script::print(st), position_of(st) + e.what());
        break;
      }
    }
    return report();
  }

  /// Runs one command outside a script (the CLI subcommands).
  Report run(const script::Command& c) {
    try {
      execute(c);
    } catch (const script::ScriptError& e) {
      record_error(script::print(script::Statement{c}), e.message());
    } catch (const std::exception& e) {
      record_error(script::print(script::Statement{c}), e.what());
    }
    return report();
  }

  Report report() const {
    Report r;
    ojson rings = ojson::array();
    for (auto& name : ring_order_) {
      auto& R = *rings_.at(name);
      rings.push_back(ojson{{"name", name},
                            {"ring", ring_to_string(R)},
                            {"p", R.base().p()},
                            {"variables", R.base().names},
                            {"weights", R.weights()}});
    }
    r.exit_code = fails_ > 0 ? 2 : (errors_ > 0 ? 1 : 0);
    r.doc = ojson{{"tool", "homlab"},
                  {"version", kVersion},
                  {"environment", {{"seed", opt_.seed}, {"budget", opt_.budget}, {"oracle", to_string(opt_.oracle)}}},
                  {"rings", std::move(rings)},
                  {"results", results_},
                  {"status", {{"exit_code", r.exit_code}, {"fails", fails_}, {"errors", errors_}}}};
    r.text = text_.str();
    if (fails_ || errors_)
      r.text += "status: " + std::to_string(fails_) + " verified fail(s), " + std::to_string(errors_) + " error(s)\n";
    return r;
  }

  RingPtr ring(const std::string& name) const {
    auto it = rings_.find(name);
    if (it != rings_.end()) return it->second;
    if (auto b = builtin_ring(name)) return *b;
    throw std::invalid_argument("unknown ring '" + name + "'");
  }

  const FPModule& module(const std::string& name) const {
    auto it = modules_.find(name);
    if (it == modules_.end()) throw std::invalid_argument("unknown module '" + name + "'");
    return it->second;
  }

  /// A builtin ring name, a ring declared in this session, or a ring literal.
  RingPtr resolve_ring(const std::string& text) {
    if (rings_.count(text) || builtin_ring(text)) return ring(text);
    auto v = script::Parser(text).parse_ring_only();
    if (auto* name = std::get_if<std::string>(&v)) return ring(*name);
    return elaborate_ring(std::get<script::RingLiteral>(v), {});
  }

 private:
  using Arg = script::Arg;
  using Kind = script::Arg::Kind;

  RunOptions opt_;
  std::map<std::string, RingPtr> rings_;
  std::vector<std::string> ring_order_;
  std::map<std::string, FPModule> modules_;
  ojson results_ = ojson::array();
  std::ostringstream text_;
  std::size_t fails_ = 0, errors_ = 0;

  static std::string position_of(const script::Statement& st) {
    script::SourcePos p = std::visit([](auto& x) { return x.pos; }, st);
    return "line " + std::to_string(p.line) + ", column " + std::to_string(p.column) + ": ";
  }

  void record_error(const std::string& command, const std::string& message) {
    ++errors_;
    results_.push_back(ojson{{"command", command}, {"kind", "error"}, {"message", message}});
    text_ << "> " << command << "\n  error: " << message << "\n";
  }

  void push(const script::Command& c, const std::string& kind, ojson payload, const std::string& text) {
    ojson j{{"command", script::print(script::Statement{c})}, {"kind", kind}};
    j.update(payload);
    results_.push_back(std::move(j));
    text_ << "> " << script::print(script::Statement{c}) << "\n" << text;
  }

  // -- elaboration ------------------------------------------------------------------------

  static Polynomial parse_entry(const PolyRing& base, const script::PolyText& t, const std::string& where) {
    try {
      return parse_polynomial(base, t.text);
    } catch (const PolyParseError& e) {
      throw script::ScriptError(t.pos, where + " '" + t.text + "': " + e.what());
    }
  }

  RingPtr elaborate_ring(const script::RingLiteral& lit, script::SourcePos pos) {
    std::vector<std::string> names;
    std::vector<int> weights;
    std::set<std::string> seen;
    for (auto& v : lit.vars) {
      if (!seen.insert(v.name).second) throw script::ScriptError(pos, "variable '" + v.name + "' declared twice");
      names.push_back(v.name);
      weights.push_back(v.weight);
    }
    if (names.empty()) throw script::ScriptError(pos, "a ring needs at least one variable");
    std::optional<PolyRing> base;
    try {
      base.emplace(lit.p, weights, names);
    } catch (const std::exception& e) {
      throw script::ScriptError(pos, e.what());
    }
    std::vector<Polynomial> gens;
    for (auto& g : lit.ideal) {
      Polynomial f = parse_entry(*base, g, "ideal generator");
      if (!f.is_homogeneous()) throw script::ScriptError(g.pos, "ideal generator '" + g.text + "' is not homogeneous");
      gens.push_back(std::move(f));
    }
    try {
      return std::make_shared<const QuotientRing>(*base, gens);
    } catch (const std::exception& e) {
      throw script::ScriptError(pos, e.what());
    }
  }

  void declare_ring(const script::RingDecl& d) {
    if (rings_.count(d.name)) throw script::ScriptError(d.pos, "ring '" + d.name + "' declared twice");
    RingPtr R;
    if (auto* name = std::get_if<std::string>(&d.value)) {
      auto b = builtin_ring(*name);
      if (!b) {
        auto it = rings_.find(*name);
        if (it == rings_.end()) throw script::ScriptError(d.pos, "unknown ring '" + *name + "'");
        R = it->second;
      } else {
        R = *b;
      }
    } else {
      R = elaborate_ring(std::get<script::RingLiteral>(d.value), d.pos);
    }
    rings_[d.name] = R;
    ring_order_.push_back(d.name);
  }

  static const Arg& need(const std::vector<Arg>& args, std::size_t i, Kind k, const char* what, script::SourcePos pos) {
    if (i >= args.size()) throw script::ScriptError(pos, std::string("missing ") + what);
    if (args[i].kind != k) throw script::ScriptError(args[i].pos, std::string("expected ") + what);
    return args[i];
  }

  static void no_more(const std::vector<Arg>& args, std::size_t n, script::SourcePos pos) {
    if (args.size() > n) throw script::ScriptError(args[n].pos, "unexpected argument '" + script::print(args[n]) + "'");
    (void)pos;
  }

  RingPtr ring_arg(const std::vector<Arg>& args, std::size_t i, script::SourcePos pos) {
    const Arg& a = need(args, i, Kind::Ident, "a ring name", pos);
    try {
      return ring(a.ident);
    } catch (const std::invalid_argument& e) {
      throw script::ScriptError(a.pos, e.what());
    }
  }

  const FPModule& module_arg(const std::vector<Arg>& args, std::size_t i, script::SourcePos pos) const {
    const Arg& a = need(args, i, Kind::Ident, "a module name", pos);
    auto it = modules_.find(a.ident);
    if (it == modules_.end()) throw script::ScriptError(a.pos, "unknown module '" + a.ident + "'");
    return it->second;
  }

  static std::int64_t int_arg(const std::vector<Arg>& args, std::size_t i, const char* what, script::SourcePos pos,
                              std::int64_t lo = 0) {
    const Arg& a = need(args, i, Kind::Int, what, pos);
    if (a.value < lo) throw script::ScriptError(a.pos, std::string(what) + " must be at least " + std::to_string(lo));
    return a.value;
  }

  static std::vector<Polynomial> polys(const RingPtr& R, const Arg& a) {
    std::vector<Polynomial> out;
    for (auto& t : a.polys) {
      Polynomial f = parse_entry(R->base(), t, "entry");
      if (!f.is_homogeneous()) throw script::ScriptError(t.pos, "entry '" + t.text + "' is not homogeneous");
      out.push_back(std::move(f));
    }
    return out;
  }

  /// coker RING MATRIX [degrees LIST]; rows are generators, columns are relations.
  static FPModule cokernel(const RingPtr& R, const std::vector<Arg>& args, script::SourcePos pos) {
    const Arg& m = need(args, 1, Kind::Matrix, "a matrix", pos);
    const std::size_t n = m.matrix.size();
    const std::size_t cols = n ? m.matrix[0].size() : 0;
    for (std::size_t i = 0; i < n; ++i)
      if (m.matrix[i].size() != cols)
        throw script::ScriptError(m.matrix[i].empty() ? m.pos : m.matrix[i][0].pos,
                                  "row " + std::to_string(i + 1) + " has " + std::to_string(m.matrix[i].size()) +
                                      " entries, expected " + std::to_string(cols));
    auto label = [&](std::size_t i, std::size_t j) {
      return "entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ") '" + m.matrix[i][j].text + "'";
    };
    std::vector<std::vector<Polynomial>> e(n, std::vector<Polynomial>(cols));
    std::vector<std::vector<std::optional<int>>> deg(n, std::vector<std::optional<int>>(cols));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        e[i][j] = parse_entry(R->base(), m.matrix[i][j], "entry");
        e[i][j] = R->normal_form(e[i][j]);
        if (e[i][j].is_zero()) continue;
        if (!e[i][j].is_homogeneous()) throw script::ScriptError(m.matrix[i][j].pos, label(i, j) + " is not homogeneous");
        deg[i][j] = e[i][j].homogeneous_degree();
      }

    std::vector<std::optional<int>> g(n), c(cols);
    if (args.size() > 2) {
      const Arg& kw = need(args, 2, Kind::Ident, "'degrees'", pos);
      if (kw.ident != "degrees") throw script::ScriptError(kw.pos, "expected 'degrees'");
      const Arg& d = need(args, 3, Kind::IntList, "a list of generator degrees", pos);
      if (d.ints.size() != n)
        throw script::ScriptError(d.pos, "expected " + std::to_string(n) + " generator degrees, got " + std::to_string(d.ints.size()));
      no_more(args, 4, pos);
      for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<int>(d.ints[i]);
    }
    // Propagate c_j = g_i + deg(e_ij) through the bipartite graph of nonzero entries.
    const bool given = args.size() > 2;
    for (std::size_t root = 0; root < n; ++root) {
      if (g[root]) continue;
      g[root] = 0;
      std::vector<std::size_t> component{root};
      std::vector<std::size_t> stack{root};
      while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < cols; ++j) {
          if (!deg[i][j]) continue;
          const int cj = *g[i] + *deg[i][j];
          if (c[j] && *c[j] != cj) throw script::ScriptError(m.matrix[i][j].pos, label(i, j) + " makes the matrix inhomogeneous");
          if (c[j]) continue;
          c[j] = cj;
          for (std::size_t k = 0; k < n; ++k) {
            if (!deg[k][j]) continue;
            const int gk = cj - *deg[k][j];
            if (g[k] && *g[k] != gk) throw script::ScriptError(m.matrix[k][j].pos, label(k, j) + " makes the matrix inhomogeneous");
            if (!g[k]) {
              g[k] = gk;
              component.push_back(k);
              stack.push_back(k);
            }
          }
        }
      }
      int lo = 0;
      for (auto k : component) lo = std::min(lo, *g[k]);
      for (auto k : component) *g[k] -= lo;
    }
    if (given) {
      for (std::size_t j = 0; j < cols; ++j) {
        std::optional<int> need_deg;
        for (std::size_t i = 0; i < n; ++i) {
          if (!deg[i][j]) continue;
          const int d = *g[i] + *deg[i][j];
          if (need_deg && *need_deg != d)
            throw script::ScriptError(m.matrix[i][j].pos, label(i, j) + " has the wrong degree for column " +
                                                              std::to_string(j + 1) + " (needs " +
                                                              std::to_string(*need_deg - *g[i]) + ")");
          need_deg = d;
        }
      }
    }
    std::vector<int> gd;
    for (auto& x : g) gd.push_back(*x);
    std::vector<Column> rel;
    for (std::size_t j = 0; j < cols; ++j) {
      Column col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = e[i][j];
      rel.push_back(std::move(col));
    }
    return FPModule(R, gd, rel);
  }

  FPModule construct(const script::ModuleDecl& d) {
    const auto& a = d.args;
    const auto pos = d.pos;
    const std::string& k = d.constructor;
    auto mod = [&](std::size_t i) -> const FPModule& { return module_arg(a, i, pos); };
    auto same_ring = [&](const FPModule& x, const FPModule& y) {
      if (!x.ring()->same_ring(*y.ring())) throw script::ScriptError(pos, "modules live over different rings");
    };
    if (k == "coker") return cokernel(ring_arg(a, 0, pos), a, pos);
    if (k == "free") {
      RingPtr R = ring_arg(a, 0, pos);
      no_more(a, 2, pos);
      if (a.size() < 2) return FPModule::free(R, {0});
      if (a[1].kind == Kind::Int) return FPModule::free(R, std::vector<int>(static_cast<std::size_t>(int_arg(a, 1, "a rank", pos)), 0));
      const Arg& l = need(a, 1, Kind::IntList, "a rank or a list of degrees", pos);
      return FPModule::free(R, std::vector<int>(l.ints.begin(), l.ints.end()));
    }
    if (k == "residue" || k == "k") {
      no_more(a, 1, pos);
      return FPModule::residue_field(ring_arg(a, 0, pos));
    }
    if (k == "quotient" || k == "ideal") {
      RingPtr R = ring_arg(a, 0, pos);
      no_more(a, 2, pos);
      auto gens = polys(R, need(a, 1, Kind::PolyList, "a list of polynomials", pos));
      return k == "quotient" ? FPModule::quotient(R, gens) : ideal_module(R, gens);
    }
    if (k == "maximal") {
      no_more(a, 1, pos);
      return maximal_ideal(ring_arg(a, 0, pos));
    }
    if (k == "canonical") {
      no_more(a, 1, pos);
      return canonical_module(ring_arg(a, 0, pos));
    }
    if (k == "syzygy") {
      no_more(a, 2, pos);
      const std::size_t n = a.size() > 1 ? static_cast<std::size_t>(int_arg(a, 1, "a syzygy index", pos, 1)) : 1;
      return syzygy_module(mod(0), n);
    }
    if (k == "dual") {
      no_more(a, 1, pos);
      return dual(mod(0));
    }
    if (k == "matlis") {
      no_more(a, 1, pos);
      return matlis_dual(mod(0));
    }
    if (k == "transpose") {
      no_more(a, 1, pos);
      return transpose(mod(0));
    }
    if (k == "minimal") {
      no_more(a, 1, pos);
      return minimal_presentation(mod(0));
    }
    if (k == "socle") {
      no_more(a, 1, pos);
      return socle(mod(0));
    }
    if (k == "sum") {
      if (a.empty()) throw script::ScriptError(pos, "sum needs at least one module");
      std::vector<FPModule> parts;
      for (std::size_t i = 0; i < a.size(); ++i) {
        parts.push_back(mod(i));
        same_ring(parts.front(), parts.back());
      }
      return direct_sum(parts);
    }
    if (k == "power") {
      no_more(a, 2, pos);
      return power(mod(0), static_cast<std::size_t>(int_arg(a, 1, "an exponent", pos)));
    }
    if (k == "shift") {
      no_more(a, 2, pos);
      return mod(0).shifted(static_cast<int>(int_arg(a, 1, "a shift", pos, INT32_MIN)));
    }
    if (k == "hom" || k == "tensor") {
      no_more(a, 2, pos);
      same_ring(mod(0), mod(1));
      return k == "hom" ? hom_module(mod(0), mod(1)) : tensor_module(mod(0), mod(1));
    }
    if (k == "ext") {
      no_more(a, 3, pos);
      const auto i = static_cast<std::size_t>(int_arg(a, 0, "an Ext index", pos));
      same_ring(mod(1), mod(2));
      return ext_module(mod(1), mod(2), i);
    }
    throw script::ScriptError(pos, "unknown module constructor '" + k + "'");
  }

  void declare_module(const script::ModuleDecl& d) {
    if (modules_.count(d.name)) throw script::ScriptError(d.pos, "module '" + d.name + "' declared twice");
    modules_.emplace(d.name, construct(d));
  }

  // -- commands -----------------------------------------------------------------------------

  void execute(const script::Command& c) {
    if (c.verb == "compute") return compute(c);
    if (c.verb == "check") return check(c);
    if (c.verb == "verify" || c.verb == "search") return verify(c);
    if (c.verb == "oracle-check") return oracle_check(c);
    throw script::ScriptError(c.pos, "unknown command '" + c.verb + "'");
  }

  static std::string text_of(const ojson& j, const std::string& indent = "  ") {
    std::string s;
    for (auto it = j.begin(); it != j.end(); ++it) {
      const ojson& v = it.value();
      const bool objects = v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const ojson& x) { return x.is_object(); });
      if (v.is_object()) {
        s += indent + it.key() + ":\n" + text_of(v, indent + "  ");
      } else if (objects) {
        for (std::size_t i = 0; i < v.size(); ++i)
          s += indent + it.key() + "[" + std::to_string(i) + "]:\n" + text_of(v[i], indent + "  ");
      } else {
        s += indent + it.key() + ": " + (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) + "\n";
      }
    }
    return s;
  }

  void allow_options(const script::Command& c, std::initializer_list<std::string_view> names) const {
    for (auto& o : c.options) {
      bool ok = false;
      for (auto n : names) ok = ok || o.name == n;
      if (!ok) throw script::ScriptError(o.pos, "unknown option '--" + o.name + "' for " + c.verb);
    }
  }

  void compute(const script::Command& c) {
    allow_options(c, {});
    const auto& a = c.args;
    const auto pos = c.pos;
    const std::string& w = c.target;
    auto mod = [&](std::size_t i) -> const FPModule& { return module_arg(a, i, pos); };
    ojson out;
    if (w == "module") {
      no_more(a, 1, pos);
      out = module_summary(mod(0));
      out.update(module_json(mod(0)));
    } else if (w == "ext") {
      no_more(a, 3, pos);
      const auto i = static_cast<std::size_t>(int_arg(a, 0, "an Ext index", pos));
      out = ojson{{"index", i}};
      out.update(module_summary(ext_module(mod(1), mod(2), i)));
    } else if (w == "exts") {
      no_more(a, 3, pos);
      const auto top = static_cast<std::size_t>(int_arg(a, 0, "a top index", pos));
      auto E = ext_modules(mod(1), mod(2), top);
      ojson list = ojson::array();
      for (std::size_t i = 0; i <= top; ++i) {
        ojson e{{"index", i}};
        e.update(module_summary(E[i]));
        list.push_back(std::move(e));
      }
      out = ojson{{"ext", std::move(list)}};
    } else if (w == "hom" || w == "tensor") {
      no_more(a, 2, pos);
      out = module_summary(w == "hom" ? hom_module(mod(0), mod(1)) : tensor_module(mod(0), mod(1)));
    } else if (w == "depth") {
      no_more(a, 1, pos);
      auto dt = depth_and_type(mod(0));
      out = ojson{{"depth", depth_json(dt.depth)}, {"type", dt.type}};
    } else if (w == "type") {
      no_more(a, 1, pos);
      RingPtr R = ring_arg(a, 0, pos);
      auto dt = depth_and_type(FPModule::free(R, {0}));
      out = ojson{{"depth", depth_json(dt.depth)}, {"type", dt.type}};
    } else if (w == "gorenstein") {
      no_more(a, 1, pos);
      auto g = gorenstein_test(ring_arg(a, 0, pos));
      out = ojson{{"gorenstein", g.gorenstein}, {"canonical_mu", g.canonical_mu}, {"type", g.type}, {"consistent", g.consistent}};
    } else if (w == "free" || w == "freesummand") {
      no_more(a, 1, pos);
      out = ojson{{w == "free" ? "free" : "free_summand", w == "free" ? is_free(mod(0)) : has_free_summand(mod(0))}};
    } else if (w == "fitting") {
      no_more(a, 2, pos);
      out = ojson{{"index", a[0].value},
                  {"ideal", fitting_ideal(mod(1), static_cast<int>(int_arg(a, 0, "a fitting index", pos, -1))).to_string()}};
    } else if (w == "annihilator") {
      no_more(a, 1, pos);
      out = ojson{{"ideal", annihilator(mod(0)).to_string()}};
    } else if (w == "trace") {
      no_more(a, 1, pos);
      auto t = trace_ideal(mod(0));
      out = ojson{{"ideal", t.trace.to_string()}, {"free_summand", t.witness.has_value()}};
    } else if (w == "socle") {
      no_more(a, 1, pos);
      out = module_summary(socle(mod(0)));
    } else if (w == "resolution") {
      no_more(a, 2, pos);
      auto res = resolution(mod(0), static_cast<std::size_t>(int_arg(a, 1, "a length", pos)));
      out = ojson{{"betti", res.betti()}, {"degrees", res.degrees}, {"minimal", res.minimal}};
    } else if (w == "iso" || w == "localiso") {
      no_more(a, 2, pos);
      IsoOptions io{opt_.budget, opt_.seed};
      auto r = w == "iso" ? is_isomorphic(mod(0), mod(1), io) : is_locally_isomorphic(mod(0), mod(1), io);
      out = ojson{{"isomorphic", to_string(r.verdict)}, {"reason", r.reason}};
    } else {
      throw script::ScriptError(pos, "unknown computation '" + w + "'");
    }
    push(c, "compute", out, text_of(out));
  }

  void check(const script::Command& c) {
    allow_options(c, {});
    const StatementDef* stmt = nullptr;
    try {
      stmt = &statement(c.target);
    } catch (const std::invalid_argument& e) {
      throw script::ScriptError(c.pos, e.what());
    }
    const auto& a = c.args;
    const std::size_t want = stmt->roles.size() + (stmt->parameter.empty() ? 0 : 1);
    if (a.size() != want) {
      std::string usage = "check " + stmt->id;
      for (auto& r : stmt->roles) usage += " " + r;
      if (!stmt->parameter.empty()) usage += " " + stmt->parameter;
      throw script::ScriptError(c.pos, "expected: " + usage);
    }
    Instance I;
    I.origin = "script";
    for (std::size_t i = 0; i < stmt->roles.size(); ++i) {
      I.modules.push_back(InstanceModule{stmt->roles[i], module_arg(a, i, c.pos), std::nullopt});
      if (!I[i].ring()->same_ring(*I[0].ring())) throw script::ScriptError(a[i].pos, "modules live over different rings");
    }
    if (!stmt->parameter.empty()) I.parameter = int_arg(a, stmt->roles.size(), stmt->parameter.c_str(), c.pos);
    if (stmt->needs_depth_zero && depth(I[0].ring()) != 0)
      throw script::ScriptError(c.pos, "statement '" + stmt->id + "' needs a ring of depth zero");
    CheckOptions opt;
    opt.iso.budget = opt_.budget;
    opt.iso.seed = opt_.seed;
    Verdict v = stmt->evaluate(I, opt);
    v.seed = opt.iso.seed;
    ojson out{{"verdict", verdict_json(v, opt_.timing)}};
    if (v.conclusion == Outcome::Fails) {
      SampleContext ctx(I[0].ring());
      if (auto why = detail::refute_fail(*stmt, ctx, I, opt, opt_.oracle, derive_seed(opt_.seed, 3, 0))) {
        out["confirmed"] = false;
        out["withdrawn_because"] = *why;
      } else {
        out["confirmed"] = true;
        out["instance"] = instance_json(I);
        ++fails_;
      }
    }
    std::string t = "  verdict: " + std::string(to_string(v.conclusion)) + "\n";
    if (!v.reason.empty()) t += "  reason: " + v.reason + "\n";
    for (auto& s : v.hypotheses.slots()) t += "  hypothesis " + s.name + ": " + to_string(s.value) + "\n";
    for (auto& f : v.facts) t += "  " + f.key + ": " + f.value + "\n";
    if (out.contains("confirmed")) t += "  confirmed: " + std::string(out["confirmed"].get<bool>() ? "true" : "false") + "\n";
    push(c, "check", out, t);
  }

  static std::size_t size_option(const script::Command& c, const char* name, std::size_t fallback) {
    auto* o = c.option(name);
    if (!o) return fallback;
    if (!o->value) throw script::ScriptError(o->pos, std::string("--") + name + " needs a value");
    try {
      std::size_t used = 0;
      long long v = std::stoll(*o->value, &used);
      if (used != o->value->size() || v < 0) throw std::invalid_argument("");
      return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw script::ScriptError(o->pos, std::string("--") + name + " needs a non-negative integer");
    }
  }

  static bool flag_option(const script::Command& c, const char* name) {
    auto* o = c.option(name);
    if (o && o->value) throw script::ScriptError(o->pos, std::string("--") + name + " takes no value");
    return o != nullptr;
  }

  static std::string summary_text(const CampaignSummary& s) {
    std::ostringstream t;
    t << "  " << s.statement << " over " << s.ring << ": " << s.instances << " instances, " << s.holds << " hold, "
      << s.fails << " fail, " << s.inconclusive << " inconclusive, " << s.errors << " errors\n";
    if (s.enumerated_modules)
      t << "  enumerated " << s.enumerated_modules << " modules into " << s.enumerated_instances << " instances\n";
    for (auto& [r, n] : s.inconclusive_reasons) t << "    inconclusive x" << n << ": " << r << "\n";
    if (s.unconfirmed_fails) t << "  withdrawn fails: " << s.unconfirmed_fails << "\n";
    if (s.oracle_checked) t << "  oracle refereed " << s.oracle_checked << ", disagreements " << s.oracle_disagreements << "\n";
    for (auto& n : s.notes) t << "  note: " << n << "\n";
    for (auto& [I, v] : s.counterexamples) {
      t << "  COUNTEREXAMPLE (" << I.origin << ", parameter " << I.parameter << "): " << v.reason << "\n";
      for (auto& m : I.modules) t << "    " << m.name << " = " << describe(m.module) << "\n";
      for (auto& f : v.facts) t << "    " << f.key << ": " << f.value << "\n";
    }
    return t.str();
  }

  void verify(const script::Command& c) {
    allow_options(c, {"ring", "samples", "seed", "exhaustive", "max-dim", "budget"});
    CampaignConfig cfg;
    cfg.samples = size_option(c, "samples", 100);
    cfg.seed = c.option("seed") ? size_option(c, "seed", 0) : opt_.seed;
    cfg.budget = size_option(c, "budget", opt_.budget);
    cfg.exhaustive = flag_option(c, "exhaustive");
    cfg.max_dim = size_option(c, "max-dim", 3);
    cfg.jobs = opt_.jobs;
    cfg.oracle = opt_.oracle;
    cfg.keep_verdicts = opt_.verdicts;
    cfg.stop_at_first_fail = c.verb == "search";
    if (auto* o = c.option("ring")) {
      if (!o->value) throw script::ScriptError(o->pos, "--ring needs a value");
      cfg.ring = resolve_ring(*o->value);
      cfg.ring_name = *o->value;
    }
    std::vector<std::string> ids;
    if (c.target == "all") {
      for (auto& s : statements()) ids.push_back(s.id);
    } else {
      try {
        ids.push_back(statement(c.target).id);
      } catch (const std::invalid_argument& e) {
        throw script::ScriptError(c.pos, e.what());
      }
    }
    ojson list = ojson::array();
    std::string text;
    for (auto& id : ids) {
      const StatementDef& stmt = statement(id);
      cfg.statement = id;
      RingPtr R = cfg.ring && !stmt.pinned_ring ? cfg.ring : *builtin_ring(stmt.default_ring);
      if (c.target == "all") {
        if (stmt.needs_depth_zero && depth(R) != 0) {
          list.push_back(ojson{{"statement", id}, {"skipped", "needs a ring of depth zero"}});
          text += "  " + id + ": skipped, needs a ring of depth zero\n";
          continue;
        }
        if (cfg.exhaustive && (!stmt.exhaust || !R->is_artinian())) {
          list.push_back(ojson{{"statement", id}, {"skipped", "no exhaustive mode here"}});
          text += "  " + id + ": skipped, no exhaustive mode here\n";
          continue;
        }
      }
      auto sum = run_campaign(cfg);
      fails_ += sum.fails;
      errors_ += sum.errors;
      list.push_back(summary_json(sum, opt_.timing));
      text += summary_text(sum);
    }
    push(c, c.verb, ojson{{"campaigns", std::move(list)}}, text);
  }

  void oracle_check(const script::Command& c) {
    allow_options(c, {"ring", "samples", "seed", "top"});
    const std::size_t samples = size_option(c, "samples", 200);
    const std::size_t top = size_option(c, "top", 4);
    const std::uint64_t seed = c.option("seed") ? size_option(c, "seed", 0) : opt_.seed;
    std::vector<std::pair<std::string, RingPtr>> rings;
    if (auto* o = c.option("ring")) {
      if (!o->value) throw script::ScriptError(o->pos, "--ring needs a value");
      rings.emplace_back(*o->value, resolve_ring(*o->value));
    } else {
      for (const char* n : {"sqzero", "cube", "quartic"}) rings.emplace_back(n, *builtin_ring(n));
    }
    ojson rows = ojson::array();
    std::ostringstream t;
    t << "  ring        samples  agree  disagree  (Ext^0..Ext^" << top << ")\n";
    for (auto& [name, R] : rings) {
      auto row = engine_agreement(name, R, samples, seed, top, opt_.jobs);
      errors_ += row.disagree;
      rows.push_back(ojson{{"ring", name},
                           {"presentation", ring_to_string(*R)},
                           {"samples", row.samples},
                           {"top", row.top},
                           {"agree", row.agree},
                           {"disagree", row.disagree},
                           {"disagreements", row.disagreements}});
      char line[128];
      std::snprintf(line, sizeof line, "  %-10s  %7zu  %5zu  %8zu\n", name.c_str(), row.samples, row.agree, row.disagree);
      t << line;
      for (auto& d : row.disagreements) t << "    " << d << "\n";
    }
    push(c, "oracle-check", ojson{{"seed", seed}, {"rows", std::move(rows)}}, t.str());
  }
};

}  // namespace homlab
