#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "oracle.hpp"
#include "poly_parser.hpp"
#include "theorems.hpp"

namespace homlab {

// ---------------------------------------------------------------------------------------
// Seeds.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Independent seed for item `index` of stream `stream` under a campaign seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ splitmix64(stream)) + index);
}

// ---------------------------------------------------------------------------------------
// Named rings.

inline std::string ring_to_string(const QuotientRing& R) {
  const auto& b = R.base();
  std::string s = "F" + std::to_string(b.p()) + "[";
  for (int v = 0; v < b.nvars(); ++v)
    s += (v ? ", " : "") + b.names[static_cast<std::size_t>(v)] + ":" + std::to_string(b.weights[static_cast<std::size_t>(v)]);
  s += "]";
  if (!R.ideal_gens().empty()) {
    s += "/(";
    for (std::size_t i = 0; i < R.ideal_gens().size(); ++i)
      s += (i ? ", " : "") + format_polynomial(R.ideal_gens()[i], b);
    s += ")";
  }
  return s;
}

inline RingPtr ring_from_text(std::uint32_t p, std::vector<std::string> names, std::vector<int> weights,
                              const std::vector<std::string>& ideal) {
  PolyRing base(p, std::move(weights), std::move(names));
  std::vector<Polynomial> gens;
  for (auto& g : ideal) gens.push_back(parse_polynomial(base, g));
  return std::make_shared<const QuotientRing>(base, gens);
}

struct NamedRing {
  std::string name;
  std::function<RingPtr()> make;
};

inline const std::vector<NamedRing>& builtin_rings() {
  static const std::vector<NamedRing> rings{
      {"sqzero", [] { return ring_from_text(2, {"x", "y"}, {1, 1}, {"x^2", "x*y", "y^2"}); }},
      {"cube", [] { return ring_from_text(3, {"x"}, {1}, {"x^3"}); }},
      {"quartic", [] { return ring_from_text(2, {"x"}, {1}, {"x^4"}); }},
      {"node", [] { return ring_from_text(5, {"x", "y"}, {1, 1}, {"x*y"}); }},
      {"cusp", [] { return ring_from_text(5, {"x", "y"}, {2, 3}, {"y^2-x^3"}); }},
      {"plane", [] { return ring_from_text(5, {"x", "y"}, {1, 1}, {}); }},
  };
  return rings;
}

inline std::optional<RingPtr> builtin_ring(std::string_view name) {
  for (auto& r : builtin_rings())
    if (r.name == name) return r.make();
  return std::nullopt;
}

// ---------------------------------------------------------------------------------------
// Instances and samplers.

struct InstanceModule {
  std::string name;
  FPModule module;
  /// Independent linear model of the same module, when it was built by the oracle.
  std::optional<LinModule> lin;
};

struct Instance {
  std::vector<InstanceModule> modules;
  std::int64_t parameter = 0;
  std::string origin;

  const FPModule& operator[](std::size_t i) const { return modules.at(i).module; }
};

struct SampleContext {
  RingPtr ring;
  std::optional<oracle::LinRing> lin;  // set for Artinian rings

  explicit SampleContext(RingPtr r) : ring(std::move(r)) {
    if (ring->is_artinian()) lin = oracle::lin_ring(*ring);
  }
};

struct DrawParams {
  std::size_t max_generators = 2;
  std::size_t max_relations = 3;
  int max_generator_degree = 1;
};

/// Random presentation over any ring: homogeneous columns with random forms as entries.
inline FPModule random_presentation(const RingPtr& R, std::mt19937_64& rng, const DrawParams& prm) {
  const std::size_t g = 1 + rng() % prm.max_generators;
  std::vector<int> deg;
  for (std::size_t i = 0; i < g; ++i)
    deg.push_back(i == 0 ? 0 : static_cast<int>(rng() % static_cast<std::uint64_t>(prm.max_generator_degree + 1)));
  const int top = *std::max_element(deg.begin(), deg.end());
  const int wmax = *std::max_element(R->weights().begin(), R->weights().end());
  const std::size_t s = rng() % (prm.max_relations + 1);
  std::vector<Column> rel;
  for (std::size_t j = 0; j < s; ++j) {
    const int e = top + 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(wmax + 1));
    Column c(g);
    for (std::size_t i = 0; i < g; ++i)
      if (rng() % 4 != 0) c[i] = random_form(R->base(), e - deg[i], rng);
    rel.push_back(std::move(c));
  }
  return FPModule(R, deg, rel);
}

/// A random nonzero module; after a few zero draws the last one is returned as is.
inline InstanceModule draw(const SampleContext& ctx, std::mt19937_64& rng, const std::string& name,
                           const DrawParams& prm = {}) {
  InstanceModule out;
  for (int tries = 0; tries < 8; ++tries) {
    if (ctx.lin) {
      auto m = oracle::random_module(*ctx.lin, rng, {prm.max_generators, prm.max_relations, prm.max_generator_degree});
      out = InstanceModule{name, m.as_fp(ctx.ring), m.lin};
    } else {
      out = InstanceModule{name, random_presentation(ctx.ring, rng, prm), std::nullopt};
    }
    if (!out.module.is_zero()) break;
  }
  return out;
}

inline InstanceModule ring_module(const SampleContext& ctx, const std::string& name) {
  std::optional<LinModule> lin;
  if (ctx.lin) lin = oracle::regular_module(*ctx.lin);
  return InstanceModule{name, FPModule::free(ctx.ring, {0}), lin};
}

/// Same module with a redundant generator and relation added, relations reshuffled.
inline FPModule rerandomize(const FPModule& M, std::mt19937_64& rng) {
  const RingPtr& R = M.ring();
  const auto& F = R->field();
  std::vector<int> deg = M.generator_degrees();
  const std::size_t n = deg.size();
  if (n == 0) return M;
  const std::size_t pick = rng() % n;
  const int d = deg[pick] + static_cast<int>(rng() % 2) * R->weights().front();
  Column extra(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    if (deg[i] <= d) extra[i] = random_form(R->base(), d - deg[i], rng);
  extra[pick] = add(extra[pick], random_form(R->base(), d - deg[pick], rng), F);
  extra[n] = Polynomial::constant(F.neg(1));
  std::vector<Column> rel;
  for (auto& c : M.relations()) {
    Column big = c;
    big.push_back(Polynomial{});
    rel.push_back(std::move(big));
  }
  std::shuffle(rel.begin(), rel.end(), rng);
  rel.push_back(extra);
  deg.push_back(d);
  return FPModule(R, deg, rel);
}

// ---------------------------------------------------------------------------------------
// Statement registry.

struct StatementDef {
  std::string id;
  std::string summary;
  std::string default_ring;
  bool needs_depth_zero = false;
  std::function<Verdict(const Instance&, const CheckOptions&)> evaluate;
  /// Random instance; empty when the statement only has fixed instances.
  std::function<Instance(const SampleContext&, std::mt19937_64&)> sample;
  /// Instances always evaluated first.
  std::function<std::vector<Instance>(const SampleContext&)> fixed;
  /// Instances built from an exhaustive module list.
  std::function<std::vector<Instance>(const SampleContext&, const std::vector<InstanceModule>&)> exhaust;
  /// Worked examples are evaluated over their own ring only.
  bool pinned_ring = false;
  /// Module names in instance order, and the name of the integer parameter if any.
  std::vector<std::string> roles;
  std::string parameter;

  StatementDef& pinned() {
    pinned_ring = true;
    return *this;
  }
};

namespace detail {

inline Instance make_instance(std::vector<InstanceModule> mods, std::int64_t parameter, std::string origin) {
  return Instance{std::move(mods), parameter, std::move(origin)};
}

inline InstanceModule quotient_by_variable(const SampleContext& ctx, int v, const std::string& name) {
  return InstanceModule{name, FPModule::quotient(ctx.ring, {Polynomial::monomial(ctx.ring->base().var(v))}), std::nullopt};
}

/// R, R/(x_v) for each variable, and m (when there are two variables).
inline std::vector<InstanceModule> small_family(const SampleContext& ctx, bool with_maximal) {
  std::vector<InstanceModule> f{ring_module(ctx, "R")};
  for (int v = 0; v < ctx.ring->nvars(); ++v)
    f.push_back(quotient_by_variable(ctx, v, "R/(" + ctx.ring->base().names[static_cast<std::size_t>(v)] + ")"));
  if (with_maximal) f.push_back(InstanceModule{"m", maximal_ideal(ctx.ring), std::nullopt});
  return f;
}

inline std::vector<Instance> all_pairs(const std::vector<InstanceModule>& mods, std::int64_t parameter,
                                       const std::string& origin) {
  std::vector<Instance> out;
  for (auto& a : mods)
    for (auto& b : mods) {
      InstanceModule x = a, y = b;
      x.name = "M";
      y.name = "N";
      out.push_back(make_instance({x, y}, parameter, origin + " " + a.name + "," + b.name));
    }
  return out;
}

inline InstanceModule renamed(InstanceModule m, std::string name) {
  m.name = std::move(name);
  return m;
}

inline InstanceModule with_free_summand(const SampleContext& ctx, const InstanceModule& m) {
  InstanceModule out{m.name, direct_sum(FPModule::free(ctx.ring, {0}), m.module), std::nullopt};
  if (m.lin && ctx.lin) {
    LinModule L = oracle::regular_module(*ctx.lin);
    LinModule S{L.field, L.weights, L.degrees, {}};
    S.degrees.insert(S.degrees.end(), m.lin->degrees.begin(), m.lin->degrees.end());
    const std::size_t a = L.dim(), b = m.lin->dim();
    for (std::size_t v = 0; v < L.action.size(); ++v) {
      DenseMatrix A(a + b, a + b);
      for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j) A(i, j) = L.action[v](i, j);
      for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j) A(a + i, a + j) = m.lin->action[v](i, j);
      S.action.push_back(std::move(A));
    }
    out.lin = std::move(S);
  }
  return out;
}

/// A module together with a redundant generator that a unit relation kills.
inline FPModule with_redundant_generator(const FPModule& X) {
  std::vector<int> deg = X.generator_degrees();
  std::vector<Column> rel;
  for (auto& c : X.relations()) {
    Column big = c;
    big.push_back(Polynomial{});
    rel.push_back(std::move(big));
  }
  Column unit(deg.size() + 1);
  unit.back() = Polynomial::constant(1);
  rel.push_back(unit);
  deg.push_back(0);
  return FPModule(X.ring(), deg, rel);
}

inline std::int64_t depth_parameter(const FPModule& M) {
  int d = depth(M);
  return d == kInfiniteDepth ? 0 : d;
}

}  // namespace detail

inline const std::vector<StatementDef>& statements() {
  using detail::make_instance;
  using detail::renamed;
  static const std::vector<StatementDef> defs = [] {
    std::vector<StatementDef> s;

    s.push_back(StatementDef{
        "minsyz", "depth zero: R | M, M faithful, Soc(R)M != 0 and M not a minimal syzygy agree for syzygies M",
        "sqzero", true,
        [](const Instance& I, const CheckOptions& o) { return check_minsyz(syzygy_witness(I[0]), o); },
        [](const SampleContext& ctx, std::mt19937_64& rng) {
          FPModule X;
          for (int tries = 0; tries < 8; ++tries) {
            X = draw(ctx, rng, "X").module;
            if (!X.relations().empty() && !minimal_presentation(X).relations().empty()) break;
          }
          if (rng() % 4 == 0) X = detail::with_redundant_generator(X);
          return make_instance({InstanceModule{"X", X, std::nullopt}}, 0, "sample");
        },
        nullptr,
        [](const SampleContext&, const std::vector<InstanceModule>& mods) {
          std::vector<Instance> out;
          for (auto& m : mods) out.push_back(make_instance({renamed(m, "X")}, 0, "enumerated " + m.name));
          return out;
        }});

    s.push_back(StatementDef{
        "fitting", "N of finite length: Hom(M, N) = N^r iff mu(M) = r and I_{r-1}(M) N = 0", "cube", false,
        [](const Instance& I, const CheckOptions& o) {
          return check_fitting(I[0], I[1], static_cast<std::size_t>(I.parameter), o);
        },
        [](const SampleContext& ctx, std::mt19937_64& rng) {
          auto M = draw(ctx, rng, "M"), N = draw(ctx, rng, "N");
          const std::int64_t r = rng() % 2 ? static_cast<std::int64_t>(mu(M.module)) : static_cast<std::int64_t>(rng() % 4);
          return make_instance({M, N}, r, "sample");
        },
        nullptr,
        [](const SampleContext&, const std::vector<InstanceModule>& mods) {
          std::vector<Instance> out;
          for (std::int64_t r = 1; r <= 3; ++r)
            for (auto& i : detail::all_pairs(mods, r, "enumerated")) out.push_back(std::move(i));
          return out;
        }});

    s.push_back(StatementDef{
        "fittingM", "M of finite length with Hom(M, M) = M^r: I_{r-1}(M) = Ann M", "cube", false,
        [](const Instance& I, const CheckOptions& o) {
          return check_fittingM(I[0], static_cast<std::size_t>(I.parameter), o);
        },
        [](const SampleContext& ctx, std::mt19937_64& rng) {
          auto M = draw(ctx, rng, "M");
          return make_instance({M}, static_cast<std::int64_t>(mu(M.module)), "sample");
        },
        nullptr,
        [](const SampleContext&, const std::vector<InstanceModule>& mods) {
          std::vector<Instance> out;
          for (auto& m : mods)
            out.push_back(make_instance({renamed(m, "M")}, static_cast<std::int64_t>(mu(m.module)), "enumerated " + m.name));
          return out;
        }});

    s.push_back(StatementDef{
        "fittingbest", "Hom(M, N) = N^r and Ass N = Min N: I_{r-1}(M) N = 0", "sqzero", false,
        [](const Instance& I, const CheckOptions& o) { return check_fittingbest(I[0], I[1], o); },
        [](const SampleContext& ctx, std::mt19937_64& rng) {
          return make_instance({draw(ctx, rng, "M"), draw(ctx, rng, "N")}, 0, "sample");
        },
        nullptr,
        [](const SampleContext&, const std::vector<InstanceModule>& mods) { return detail::all_pairs(mods, 0, "enumerated"); }});

    s.push_back(StatementDef{
        "fittingbestsharp", "the converse fails: M = m, N = R over a ring of depth one", "cusp", false,
        [](const Instance& I, const CheckOptions& o) { return check_fittingbest_nonconverse(I[0], I[1], 1, o); },
        nullptr,
        [](const SampleContext& ctx) {
          return std::vector<Instance>{make_instance(
              {InstanceModule{"M", maximal_ideal(ctx.ring), std::nullopt}, ring_module(ctx, "N")}, 1, "fixed m,R")};
        },
        nullptr}.pinned());

    s.push_back(StatementDef{
        "Mfree", "Hom(M, N) = N^r with depth and Ext conditions: M/IM free over R/I, M free if N faithful", "sqzero",
        false,
        [](const Instance& I, const CheckOptions& o) { return check_Mfree(I[0], I[1], static_cast<int>(I.parameter), o); },
        [](const SampleContext& ctx, std::mt19937_64& rng) {
          InstanceModule M = rng() % 3 == 0 ? InstanceModule{"M", FPModule::free(ctx.ring, std::vector<int>(1 + rng() % 2, 0)),
                                                             std::nullopt}
                                            : draw(ctx, rng, "M");
          InstanceModule N = rng() % 3 == 0 ? ring_module(ctx, "N") : draw(ctx, rng, "N");
          const std::int64_t s = detail::depth_parameter(N.module) + static_cast<std::int64_t>(rng() % 2);
          return make_instance({M, N}, s, "sample");
        },
        [](const SampleContext& ctx) {
          auto fam = detail::small_family(ctx, false);
          std::vector<Instance> out;
          for (auto& i : detail::all_pairs(fam, 0, "family")) {
            i.parameter = std::max<std::int64_t>(1, detail::depth_parameter(i[1]));
            out.push_back(std::move(i));
          }
          return out;
        },
        [](const SampleContext&, const std::vector<InstanceModule>& mods) { return detail::all_pairs(mods, 0, "enumerated"); }});

    s.push_back(StatementDef{
        "MM", "cyclic M with Ass R in Ass M = Min M and Ext^{1..max(1,t)}(M, M) = 0 is free", "sqzero", false,
        [](const Instance& I, const CheckOptions& o) { return check_MM(I[0], o); },
        [](const SampleContext& ctx, std::mt19937_64& rng) {
          return make_instance({draw(ctx, rng, "M", {1, 3, 0})}, 0, "sample");
        },
        [](const SampleContext& ctx) {
          std::vector<Instance> out;
          for (auto& m : detail::small_family(ctx, false)) out.push_back(make_instance({renamed(m, "M")}, 0, "family " + m.name));
          return out;
        },
        [](const SampleContext&, const std::vector<InstanceModule>& mods) {
          std::vector<Instance> out;
          for (auto& m : mods)
            if (mu(m.module) == 1) out.push_back(make_instance({renamed(m, "M")}, 0, "enumerated " + m.name));
          return out;
        }});

    s.push_back(StatementDef{
        "dualfree", "depth zero: R | M* implies R | M; depth t: Ext^{1..t}(M, R) = 0 and M* free imply M free", "sqzero",
        false, [](const Instance& I, const CheckOptions& o) { return check_dualfree(I[0], o); },
        [](const SampleContext& ctx, std::mt19937_64& rng) {
          auto M = draw(ctx, rng, "M");
          if (rng() % 3 == 0) M = detail::with_free_summand(ctx, M);
          return make_instance({M}, 0, "sample");
        },
        [](const SampleContext& ctx) {
          if (depth(ctx.ring) == 0) return std::vector<Instance>{};
          InstanceModule M{"M", direct_sum(FPModule::free(ctx.ring, {0}), FPModule::residue_field(ctx.ring)), std::nullopt};
          return std::vector<Instance>{make_instance({M}, 0, "fixed R+k")};
        },
        [](const SampleContext&, const std::vector<InstanceModule>& mods) {
          std::vector<Instance> out;
          for (auto& m : mods) out.push_back(make_instance({renamed(m, "M")}, 0, "enumerated " + m.name));
          return out;
        }});

    auto hom_free_spec = [](HomFreeMode mode, std::string summary) {
      return StatementDef{
          statement_id(mode), std::move(summary), "sqzero", false,
          [mode](const Instance& I, const CheckOptions& o) { return check_hom_free(I[0], I[1], mode, o); },
          [](const SampleContext& ctx, std::mt19937_64& rng) {
            InstanceModule M = rng() % 3 == 0 ? ring_module(ctx, "M") : draw(ctx, rng, "M");
            InstanceModule N{"N", FPModule(), std::nullopt};
            for (int tries = 0; tries < 8 && (tries == 0 || N.module.is_zero()); ++tries)
              N.module = first_syzygy(draw(ctx, rng, "X").module).module;
            if (rng() % 4 == 0) {
              N.module = FPModule::free(ctx.ring, std::vector<int>(1 + rng() % 2, 0));
            } else if (rng() % 2 == 0) {
              N = detail::with_free_summand(ctx, N);
            }
            return make_instance({M, N}, 0, "sample");
          },
          [](const SampleContext& ctx) { return detail::all_pairs(detail::small_family(ctx, true), 0, "family"); },
          nullptr};
    };
    s.push_back(hom_free_spec(HomFreeMode::FreeSummand, "M deep, N in Omega Deep, Hom(M, N) deeply faithful: R | N"));
    s.push_back(hom_free_spec(HomFreeMode::NFree, "M deep, N in Omega Deep, Hom(M, N) free: N free"));
    s.push_back(hom_free_spec(HomFreeMode::MFree, "M deep, N in Omega Deep, Hom(M, N) free, Ext^{1..t}(M, R) = 0: M free"));

    s.push_back(StatementDef{
        "genhunekehanes", "M, N maximal Cohen-Macaulay: Ext^{1..d}(M, N) = 0 iff M (x) N^v maximal Cohen-Macaulay",
        "node", false, [](const Instance& I, const CheckOptions& o) { return check_tensor_cm(I[0], I[1], o); },
        [](const SampleContext& ctx, std::mt19937_64& rng) {
          return make_instance({draw(ctx, rng, "M"), draw(ctx, rng, "N")}, 0, "sample");
        },
        [](const SampleContext& ctx) { return detail::all_pairs(detail::small_family(ctx, false), 0, "family"); },
        [](const SampleContext&, const std::vector<InstanceModule>& mods) { return detail::all_pairs(mods, 0, "enumerated"); }});

    s.push_back(StatementDef{
        "testgor", "Ext^{1..d}(M, R) = 0, M -> M^vv iso and M^v = M*: R Gorenstein", "sqzero", false,
        [](const Instance& I, const CheckOptions& o) { return check_testgor(I[0], o); },
        [](const SampleContext& ctx, std::mt19937_64& rng) { return make_instance({draw(ctx, rng, "M")}, 0, "sample"); },
        [](const SampleContext& ctx) {
          std::vector<Instance> out;
          for (auto& m : detail::small_family(ctx, true)) out.push_back(make_instance({renamed(m, "M")}, 0, "family " + m.name));
          return out;
        },
        [](const SampleContext&, const std::vector<InstanceModule>& mods) {
          std::vector<Instance> out;
          for (auto& m : mods) out.push_back(make_instance({renamed(m, "M")}, 0, "enumerated " + m.name));
          return out;
        }});

    s.push_back(StatementDef{
        "type", "depth M, N >= t and Ext^{1..t}(M, N) = 0: nu_t(Hom(M, N)) = mu(M) nu_t(N)", "sqzero", false,
        [](const Instance& I, const CheckOptions& o) { return check_nu(I[0], I[1], static_cast<int>(I.parameter), o); },
        [](const SampleContext& ctx, std::mt19937_64& rng) {
          return make_instance({draw(ctx, rng, "M"), draw(ctx, rng, "N")}, depth(ctx.ring), "sample");
        },
        [](const SampleContext& ctx) {
          if (ctx.ring->is_artinian()) return std::vector<Instance>{};
          return detail::all_pairs(detail::small_family(ctx, true), depth(ctx.ring), "family");
        },
        [](const SampleContext& ctx, const std::vector<InstanceModule>& mods) {
          return detail::all_pairs(mods, depth(ctx.ring), "enumerated");
        }});

    s.push_back(StatementDef{
        "homcutdown", "x regular on R and N: Hom(M, N)/x embeds in Hom(M/xM, N/xN), equal when Ext^1(M, N) = 0",
        "node", false,
        [](const Instance& I, const CheckOptions& o) { return check_homcutdown(I[0], I[1], o.iso.seed); },
        [](const SampleContext& ctx, std::mt19937_64& rng) {
          return make_instance({draw(ctx, rng, "M"), draw(ctx, rng, "N")}, 0, "sample");
        },
        [](const SampleContext& ctx) { return detail::all_pairs(detail::small_family(ctx, true), 0, "family"); },
        nullptr});

    s.push_back(StatementDef{
        "conditionsneeded", "M = S = R/(x) over k[x,y]/(xy): Ext^1(M, S) = 0 yet M is not free", "node", false,
        [](const Instance& I, const CheckOptions& o) { return check_conditionsneeded(I[0], I[1], o); }, nullptr,
        [](const SampleContext& ctx) {
          auto q = detail::quotient_by_variable(ctx, 0, "M");
          return std::vector<Instance>{make_instance({q, renamed(q, "S")}, 0, "fixed R/(x),R/(x)")};
        },
        nullptr}.pinned());

    const std::map<std::string, std::pair<std::vector<std::string>, std::string>> roles{
        {"minsyz", {{"X"}, ""}},
        {"fitting", {{"M", "N"}, "r"}},
        {"fittingM", {{"M"}, "r"}},
        {"fittingbest", {{"M", "N"}, ""}},
        {"fittingbestsharp", {{"M", "N"}, ""}},
        {"Mfree", {{"M", "N"}, "s"}},
        {"MM", {{"M"}, ""}},
        {"dualfree", {{"M"}, ""}},
        {"freesummandsMN", {{"M", "N"}, ""}},
        {"MNFree", {{"M", "N"}, ""}},
        {"Extt", {{"M", "N"}, ""}},
        {"genhunekehanes", {{"M", "N"}, ""}},
        {"testgor", {{"M"}, ""}},
        {"type", {{"M", "N"}, "t"}},
        {"homcutdown", {{"M", "N"}, ""}},
        {"conditionsneeded", {{"M", "S"}, ""}},
    };
    for (auto& x : s) {
      auto& r = roles.at(x.id);
      x.roles = r.first;
      x.parameter = r.second;
    }
    return s;
  }();
  return defs;
}

inline const StatementDef& statement(std::string_view id) {
  for (auto& s : statements())
    if (s.id == id) return s;
  throw std::invalid_argument("unknown statement '" + std::string(id) + "'");
}

// ---------------------------------------------------------------------------------------
// Oracle confirmation.

enum class OracleMode { Off, On, Referee };

inline const char* to_string(OracleMode m) {
  switch (m) {
    case OracleMode::Off: return "off";
    case OracleMode::On: return "on";
    default: return "referee";
  }
}

inline std::optional<OracleMode> parse_oracle_mode(std::string_view s) {
  if (s == "off") return OracleMode::Off;
  if (s == "on") return OracleMode::On;
  if (s == "referee") return OracleMode::Referee;
  return std::nullopt;
}

/// Recomputes mu, socle dimension and Ext^0..Ext^top for every pair of modules with a
/// linear model, with the ring itself added. Returns the first disagreement.
inline std::optional<std::string> oracle_disagreement(const SampleContext& ctx, const Instance& I, std::size_t top = 2) {
  if (!ctx.lin) return std::nullopt;
  std::vector<InstanceModule> mods;
  for (auto& m : I.modules)
    if (m.lin) mods.push_back(m);
  if (mods.empty()) return std::nullopt;
  mods.push_back(ring_module(ctx, "R"));
  for (auto& m : mods) {
    if (mu(m.module) != oracle::lin_mu(*m.lin)) return "mu of " + m.name;
    if (detail::socle_dim_or_zero(m.module) != static_cast<std::int64_t>(oracle::lin_socle_dim(*m.lin)))
      return "socle of " + m.name;
  }
  for (auto& a : mods)
    for (auto& b : mods)
      if (ext_dims(a.module, b.module, top) != oracle::lin_ext_dims(*ctx.lin, *a.lin, *b.lin, top))
        return "Ext(" + a.name + ", " + b.name + ")";
  return std::nullopt;
}

// ---------------------------------------------------------------------------------------
// Campaigns.

struct CampaignConfig {
  std::string statement;
  std::string ring_name;
  RingPtr ring;  // defaults to the statement's ring
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::size_t budget = 256;  // isomorphism-search budget per instance
  bool exhaustive = false;
  std::size_t max_dim = 3;
  std::uint64_t enumeration_budget = 1u << 16;
  unsigned jobs = 1;
  OracleMode oracle = OracleMode::On;
  bool stop_at_first_fail = false;
  bool keep_verdicts = false;
};

struct CampaignSummary {
  std::string statement, ring;
  std::uint64_t seed = 0;
  std::size_t samples = 0, budget = 0, max_dim = 0;
  bool exhaustive = false;
  std::string oracle;
  std::size_t fixed_instances = 0, enumerated_instances = 0, enumerated_modules = 0;
  std::size_t instances = 0, holds = 0, fails = 0, inconclusive = 0, errors = 0;
  std::map<std::string, std::size_t> inconclusive_reasons;
  std::size_t unconfirmed_fails = 0, oracle_checked = 0, oracle_disagreements = 0;
  std::vector<std::string> notes;
  std::vector<std::pair<Instance, Verdict>> counterexamples;
  std::vector<Verdict> verdicts;  // in instance order, if requested
  double seconds = 0;
};

namespace detail {

/// Strips instance-specific numbers so that reasons aggregate.
inline std::string reason_key(const Verdict& v) {
  std::string r = v.reason;
  auto cut = r.find(" (");
  if (cut != std::string::npos) r = r.substr(0, cut);
  return r;
}

struct InstanceResult {
  Verdict verdict;
  bool error = false;
  bool unconfirmed = false;
  bool oracle_checked = false;
  std::optional<std::string> oracle_disagreement;
};

/// The counterexample protocol: a fail stands only if the oracle agrees on every invariant,
/// a second seed reproduces it, and re-randomized presentations reproduce it.
inline std::optional<std::string> refute_fail(const StatementDef& stmt, const SampleContext& ctx, const Instance& I,
                                              const CheckOptions& opt, OracleMode oracle, std::uint64_t seed) {
  if (oracle != OracleMode::Off)
    if (auto d = oracle_disagreement(ctx, I)) return "oracle disagrees on " + *d;
  CheckOptions second = opt;
  second.iso.seed = splitmix64(opt.iso.seed);
  if (stmt.evaluate(I, second).conclusion != Outcome::Fails) return "not reproduced under a second seed";
  std::mt19937_64 rng(seed);
  Instance J = I;
  for (auto& m : J.modules) {
    m.module = rerandomize(m.module, rng);
  }
  if (stmt.evaluate(J, opt).conclusion != Outcome::Fails) return "not reproduced after re-randomizing presentations";
  return std::nullopt;
}

}  // namespace detail

/// All instances of a campaign, in evaluation order.
inline std::vector<Instance> campaign_instances(const StatementDef& stmt, const SampleContext& ctx,
                                                const CampaignConfig& cfg, CampaignSummary& sum) {
  std::vector<Instance> out;
  if (stmt.fixed) {
    auto f = stmt.fixed(ctx);
    sum.fixed_instances = f.size();
    out.insert(out.end(), f.begin(), f.end());
  }
  if (cfg.exhaustive) {
    if (!stmt.exhaust) throw std::invalid_argument("statement '" + stmt.id + "' has no exhaustive mode");
    if (!ctx.lin) throw std::invalid_argument("exhaustive mode needs an Artinian ring");
    auto en = oracle::enumerate_modules(*ctx.lin, cfg.max_dim, cfg.enumeration_budget, cfg.seed);
    if (en.sampled) sum.notes.push_back("enumeration budget exhausted: some degree patterns were sampled, not exhausted");
    std::vector<InstanceModule> mods;
    for (std::size_t i = 0; i < en.modules.size(); ++i)
      mods.push_back(InstanceModule{"E" + std::to_string(i), oracle::to_fp(ctx.ring, en.modules[i]), en.modules[i]});
    sum.enumerated_modules = mods.size();
    auto e = stmt.exhaust(ctx, mods);
    sum.enumerated_instances = e.size();
    out.insert(out.end(), e.begin(), e.end());
  }
  if (stmt.sample) {
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      std::mt19937_64 rng(derive_seed(cfg.seed, 1, i));
      out.push_back(stmt.sample(ctx, rng));
      out.back().origin += " " + std::to_string(i);
    }
  } else if (cfg.samples > 0 && !stmt.fixed) {
    sum.notes.push_back("statement has no sampler");
  }
  return out;
}

inline CampaignSummary run_campaign(const CampaignConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const StatementDef& stmt = statement(cfg.statement);
  const bool own_ring = !cfg.ring || stmt.pinned_ring;
  RingPtr ring = own_ring ? *builtin_ring(stmt.default_ring) : cfg.ring;
  CampaignSummary sum;
  sum.statement = stmt.id;
  sum.ring = own_ring ? stmt.default_ring : (cfg.ring_name.empty() ? ring_to_string(*ring) : cfg.ring_name);
  if (cfg.ring && stmt.pinned_ring) sum.notes.push_back("worked example: evaluated over " + stmt.default_ring);
  sum.seed = cfg.seed;
  sum.samples = cfg.samples;
  sum.budget = cfg.budget;
  sum.exhaustive = cfg.exhaustive;
  sum.max_dim = cfg.exhaustive ? cfg.max_dim : 0;
  sum.oracle = to_string(cfg.oracle);
  if (stmt.needs_depth_zero && depth(ring) != 0)
    throw std::invalid_argument("statement '" + stmt.id + "' needs a ring of depth zero");

  SampleContext ctx(ring);
  auto instances = campaign_instances(stmt, ctx, cfg, sum);
  std::vector<detail::InstanceResult> results(instances.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};

  auto work = [&] {
    while (!stop) {
      const std::size_t i = next++;
      if (i >= instances.size()) return;
      auto& res = results[i];
      const Instance& I = instances[i];
      CheckOptions opt;
      opt.iso.budget = cfg.budget;
      opt.iso.seed = derive_seed(cfg.seed, 2, i);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        res.verdict = stmt.evaluate(I, opt);
        if (cfg.oracle == OracleMode::Referee && ctx.lin) {
          res.oracle_checked = true;
          res.oracle_disagreement = oracle_disagreement(ctx, I);
        }
        if (res.verdict.conclusion == Outcome::Fails) {
          if (auto why = detail::refute_fail(stmt, ctx, I, opt, cfg.oracle, derive_seed(cfg.seed, 3, i))) {
            res.unconfirmed = true;
            res.verdict.conclusion = Outcome::Inconclusive;
            res.verdict.reason = "fail withdrawn: " + *why + "; " + res.verdict.reason;
          } else if (cfg.stop_at_first_fail) {
            stop = true;
          }
        }
      } catch (const std::exception& e) {
        res.error = true;
        res.verdict.statement = stmt.id;
        res.verdict.conclusion = Outcome::Inconclusive;
        res.verdict.reason = std::string("error: ") + e.what();
      }
      res.verdict.seed = opt.iso.seed;
      res.verdict.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(std::max<std::size_t>(1, instances.size()))));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  // Fold in instance order; with stop_at_first_fail only the prefix up to the first fail counts.
  std::size_t limit = instances.size();
  if (cfg.stop_at_first_fail)
    for (std::size_t i = 0; i < instances.size(); ++i)
      if (results[i].verdict.conclusion == Outcome::Fails && !results[i].error) {
        limit = i + 1;
        break;
      }
  for (std::size_t i = 0; i < limit; ++i) {
    auto& r = results[i];
    if (r.verdict.statement.empty()) continue;  // skipped after an early stop
    ++sum.instances;
    if (r.error) ++sum.errors;
    if (r.unconfirmed) ++sum.unconfirmed_fails;
    if (r.oracle_checked) ++sum.oracle_checked;
    if (r.oracle_disagreement) ++sum.oracle_disagreements;
    switch (r.verdict.conclusion) {
      case Outcome::Holds: ++sum.holds; break;
      case Outcome::Fails:
        ++sum.fails;
        sum.counterexamples.emplace_back(instances[i], r.verdict);
        break;
      default:
        ++sum.inconclusive;
        ++sum.inconclusive_reasons[detail::reason_key(r.verdict)];
    }
    if (cfg.keep_verdicts) sum.verdicts.push_back(r.verdict);
  }
  if (limit < instances.size()) sum.notes.push_back("stopped at the first confirmed counterexample");
  sum.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sum;
}

// ---------------------------------------------------------------------------------------
// Engine agreement.

struct AgreementRow {
  std::string ring;
  std::size_t samples = 0, agree = 0, disagree = 0;
  std::size_t top = 0;
  std::vector<std::string> disagreements;
};

/// Random finite-length pairs (M, N): dim Ext^i(M, N) for i <= top by both engines.
inline AgreementRow engine_agreement(const std::string& name, const RingPtr& R, std::size_t samples, std::uint64_t seed,
                                     std::size_t top = 4, unsigned jobs = 1) {
  if (!R->is_artinian()) throw std::invalid_argument("engine agreement needs an Artinian ring");
  auto L = oracle::lin_ring(*R);
  AgreementRow row{name, samples, 0, 0, top, {}};
  std::vector<std::optional<std::string>> bad(samples);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    while (true) {
      const std::size_t i = next++;
      if (i >= samples) return;
      std::mt19937_64 rng(derive_seed(seed, 4, i));
      auto M = oracle::random_module(L, rng), N = oracle::random_module(L, rng);
      auto gb = ext_dims(M.as_fp(R), N.as_fp(R), top);
      auto lin = oracle::lin_ext_dims(L, M.lin, N.lin, top);
      if (gb != lin) {
        std::string s = "sample " + std::to_string(i) + ":";
        for (std::size_t k = 0; k <= top; ++k) s += " " + std::to_string(gb[k]) + "/" + std::to_string(lin[k]);
        bad[i] = s;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::max(1u, jobs); ++j) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& b : bad) {
    if (b) {
      ++row.disagree;
      row.disagreements.push_back(*b);
    } else {
      ++row.agree;
    }
  }
  return row;
}

}  // namespace homlab
