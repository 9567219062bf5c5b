// Acceptance runner: one PASS/FAIL line per criterion. Exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "homlab/session.hpp"

namespace {

using namespace homlab;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kAgreementSamples = 200;
constexpr std::size_t kAgreementTop = 4;
constexpr std::size_t kCampaignSamples = 500;
constexpr std::size_t kMaxDim = 3;
constexpr double kMaxInconclusiveRate = 0.05;

struct Result {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Result()> run;
};

RingPtr ring(const char* name) { return *builtin_ring(name); }

std::string counts(const CampaignSummary& s) {
  std::ostringstream o;
  o << s.instances << " instances (" << s.enumerated_instances << " enumerated), " << s.holds << " holds, " << s.fails
    << " fails, " << s.inconclusive << " inconclusive, " << s.errors << " errors";
  if (s.oracle_checked) o << ", oracle " << s.oracle_checked << "/" << s.oracle_disagreements;
  return o.str();
}

void log_reasons(const CampaignSummary& s) {
  for (auto& [why, n] : s.inconclusive_reasons) std::cout << "    inconclusive x" << n << ": " << why << "\n";
  for (auto& n : s.notes) std::cout << "    note: " << n << "\n";
}

CampaignSummary campaign(const std::string& id, const char* ring_name, bool exhaustive, bool keep = false) {
  CampaignConfig c;
  c.statement = id;
  c.ring_name = ring_name;
  c.ring = ring(ring_name);
  c.samples = kCampaignSamples;
  c.seed = kSeed;
  c.exhaustive = exhaustive;
  c.max_dim = kMaxDim;
  c.keep_verdicts = keep;
  return run_campaign(c);
}

bool clean(const CampaignSummary& s) { return s.fails == 0 && s.errors == 0 && s.oracle_disagreements == 0; }

bool fact_is(const Verdict& v, const std::string& key, const std::string& value) {
  auto* f = v.find(key);
  return f && *f == value;
}

Result engine_agreement_all() {
  Result out{true, ""};
  for (const char* name : {"sqzero", "cube", "quartic"}) {
    auto row = engine_agreement(name, ring(name), kAgreementSamples, kSeed, kAgreementTop);
    out.pass = out.pass && row.disagree == 0 && row.agree == kAgreementSamples;
    out.detail += std::string(out.detail.empty() ? "" : "; ") + name + " " + std::to_string(row.agree) + "/" +
                  std::to_string(row.samples) + " agree";
    for (auto& d : row.disagreements) std::cout << "    " << name << " " << d << "\n";
  }
  return out;
}

Result node_example() {
  SampleContext ctx(ring("node"));
  auto M = detail::quotient_by_variable(ctx, 0, "M").module;
  auto E = ext_modules(M, M, 2);
  const FPModule k = FPModule::residue_field(ctx.ring);
  const bool e0 = is_locally_isomorphic(E[0], M).verdict == Tri::True;
  const bool e1 = E[1].is_zero();
  const bool e2 = is_locally_isomorphic(E[2], k).verdict == Tri::True;
  const bool summand = has_free_summand(M);
  std::ostringstream o;
  o << "Ext^0 = M " << e0 << ", Ext^1 = 0 " << e1 << ", Ext^2 = k " << e2 << ", free summand " << summand;
  return {e0 && e1 && e2 && !summand, o.str()};
}

Result minsyz() {
  auto s = campaign("minsyz", "sqzero", true);
  log_reasons(s);
  return {clean(s) && s.enumerated_instances > 0, counts(s)};
}

Result fitting() {
  auto ex = campaign("fitting", "cube", true);
  auto rnd = campaign("fitting", "sqzero", false);
  log_reasons(ex);
  log_reasons(rnd);
  const std::size_t inst = ex.instances + rnd.instances, inc = ex.inconclusive + rnd.inconclusive;
  const double rate = inst ? static_cast<double>(inc) / static_cast<double>(inst) : 1.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "; inconclusive rate %.4f < %.2f", rate, kMaxInconclusiveRate);
  return {clean(ex) && clean(rnd) && ex.enumerated_instances > 0 && rate < kMaxInconclusiveRate,
          "cube " + counts(ex) + "; sqzero " + counts(rnd) + buf};
}

Result multiplicativity() {
  auto s = campaign("type", "sqzero", false);
  log_reasons(s);
  SampleContext ctx(ring("node"));
  std::size_t used = 0, equal = 0;
  for (auto& I : detail::all_pairs(detail::small_family(ctx, true), 1, "family")) {
    if (!ext_vanishes(I[0], I[1], 1, 1)) continue;
    ++used;
    auto v = check_nu(I[0], I[1], 1);
    if (v.conclusion == homlab::Outcome::Holds) ++equal;
  }
  return {clean(s) && s.holds == s.instances && used > 0 && equal == used,
          "t=0 " + counts(s) + "; t=1 node " + std::to_string(equal) + "/" + std::to_string(used) + " pairs with Ext^1 = 0"};
}

Result mfree() {
  auto s = campaign("Mfree", "sqzero", false, true);
  log_reasons(s);
  std::size_t faithful = 0, faithful_free = 0;
  for (auto& v : s.verdicts)
    if (v.conclusion == homlab::Outcome::Holds && fact_is(v, "N_faithful", "true")) {
      ++faithful;
      if (fact_is(v, "M_free_of_rank_r", "true")) ++faithful_free;
    }
  return {clean(s) && s.holds > 0 && faithful == faithful_free,
          counts(s) + "; faithful N " + std::to_string(faithful_free) + "/" + std::to_string(faithful) + " give M = R^r"};
}

Result dualfree() {
  auto s = campaign("dualfree", "sqzero", false, true);
  log_reasons(s);
  std::size_t witnessed = 0, held = 0;
  for (auto& v : s.verdicts)
    if (v.conclusion == homlab::Outcome::Holds) {
      ++held;
      if (v.find("free_summand_generator")) ++witnessed;
    }
  auto R = ring("node");
  auto v = check_dualfree(direct_sum(FPModule::free(R, {0}), FPModule::residue_field(R)));
  const bool rk = v.conclusion == homlab::Outcome::Inconclusive &&
                  v.reason.find("ext_M_R_vanishing_1_to_t is false") != std::string::npos;
  return {clean(s) && held > 0 && witnessed == held && rk,
          counts(s) + "; witnesses " + std::to_string(witnessed) + "/" + std::to_string(held) + "; R+k on node: " +
              to_string(v.conclusion) + " (" + v.reason + ")"};
}

Result gorenstein() {
  const std::pair<const char*, std::int64_t> want[] = {{"sqzero", 2}, {"cube", 1}, {"cusp", 1}};
  Result out{true, ""};
  for (auto& [name, t] : want) {
    auto R = ring(name);
    auto g = gorenstein_test(R);
    const std::int64_t ty = type(FPModule::free(R, {0}));
    const bool ok = ty == t && g.type == t && g.consistent && g.gorenstein == (g.canonical_mu == 1) &&
                    static_cast<std::int64_t>(g.canonical_mu) == t;
    out.pass = out.pass && ok;
    out.detail += std::string(out.detail.empty() ? "" : "; ") + name + " type " + std::to_string(ty) + " mu(w) " +
                  std::to_string(g.canonical_mu) + (g.gorenstein ? " gorenstein" : " not gorenstein");
  }
  return out;
}

Result tensor_depth() {
  SampleContext ctx(ring("node"));
  std::size_t vanishing = 0, good = 0, pairs = 0;
  for (auto& I : detail::all_pairs(detail::small_family(ctx, false), 0, "family")) {
    ++pairs;
    if (!ext_vanishes(I[0], I[1], 1, 1)) continue;
    ++vanishing;
    auto T = tensor_module(I[0], hom_module(I[1], canonical_module(ctx.ring)));
    const bool d1 = depth(T) == 1;
    const bool v = check_tensor_cm(I[0], I[1]).conclusion == homlab::Outcome::Holds;
    if (d1 && v) ++good;
  }
  return {vanishing > 0 && good == vanishing, std::to_string(good) + "/" + std::to_string(vanishing) +
                                                  " Ext^1-vanishing pairs of " + std::to_string(pairs) + " have depth 1"};
}

Result determinism() {
  auto once = [](unsigned jobs) {
    RunOptions o;
    o.seed = kSeed;
    o.jobs = jobs;
    o.verdicts = true;
    Session s(o);
    script::Command c;
    c.verb = "verify";
    c.target = "all";
    c.options.push_back({"samples", "20", {}});
    return s.run(c).doc.dump();
  };
  const std::string a = once(1), b = once(1), c = once(2);
  return {a == b && a == c, std::to_string(a.size()) + " bytes, rerun " + (a == b ? "identical" : "differs") +
                                ", two jobs " + (a == c ? "identical" : "differs")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "engine agreement on Ext^0..4", 300, engine_agreement_all},
      {2, "node M = S = R/(x) regression", 5, node_example},
      {3, "minsyz four-way equivalence", 600, minsyz},
      {4, "fitting biconditional", 900, fitting},
      {5, "nu_t multiplicativity", 300, multiplicativity},
      {6, "Mfree quotient freeness", 600, mfree},
      {7, "dual freeness", 300, dualfree},
      {8, "Gorenstein type", 120, gorenstein},
      {9, "tensor depth on node MCM pairs", 120, tensor_depth},
      {10, "verify determinism", 600, determinism},
  };
  int failed = 0;
  for (auto& c : criteria) {
    const auto t0 = Clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool pass = r.pass && secs < c.limit_seconds;
    failed += !pass;
    char t[64];
    std::snprintf(t, sizeof t, "%.2fs < %.0fs", secs, c.limit_seconds);
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << r.detail << " (" << t << ")"
              << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
