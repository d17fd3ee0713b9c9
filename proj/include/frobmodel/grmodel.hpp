#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "rootsys.hpp"

namespace frobmodel {

inline u64 ipow(u64 b, u64 e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

// the quotient Gamma_i / Gamma_{v+1} of U_J at height r over F_p
struct ModelContext {
  ParabolicContext pc;
  int i = 1;
  int top = 2;  // v + 1
  int r = 1;
  u32 p = 3;

  int v() const { return top - 1; }
  bool in_range(const Root& g) const {
    int l = pc.level(g);
    return l >= i && l < top;
  }
  std::vector<Root> roots() const {
    std::vector<Root> out;
    for (const Root& g : pc.roots())
      if (in_range(g)) out.push_back(g);
    return out;
  }
  // pairs of in-range roots summing to b
  std::vector<std::pair<Root, Root>> pairs(const Root& b) const {
    std::vector<std::pair<Root, Root>> out;
    for (auto& pr : pc.summand_pairs(b))
      if (in_range(pr.first) && in_range(pr.second)) out.push_back(pr);
    return out;
  }
  ModelContext with_r(int r2) const {
    ModelContext c = *this;
    c.r = r2;
    return c;
  }
};

inline ModelContext make_model_context(const ParabolicContext& pc, int i, int v_plus_1, int r, u32 p) {
  require_odd_prime(p);
  require(i >= 1 && i < v_plus_1, ErrorCode::domain, "need 1 <= i < v+1");
  require(r >= 1, ErrorCode::domain, "need r >= 1");
  require(r <= 8, ErrorCode::config, "r too large");
  return {pc, i, v_plus_1, r, p};
}

// the whole radical: i = 1, v + 1 = max level + 1
inline ModelContext full_model_context(const ParabolicContext& pc, int r, u32 p) {
  return make_model_context(pc, 1, pc.max_level() + 1, r, p);
}

inline Weight scaled(const Root& g, u64 factor) {
  Weight w(g.c.size());
  for (size_t k = 0; k < g.c.size(); ++k) w[k] = static_cast<long long>(factor) * g.c[k];
  return w;
}

struct ModelGenerator {
  Root root;
  int twist = 0;
  bool power = false;  // stands for (x_root^(twist))^exponent
  u64 exponent = 1;
  size_t var = 0;  // index in the ring
};

struct ModelRelation {
  std::string family;  // "S2" or "I"
  Root beta;
  int l = 0, l2 = 0;  // S2: l2 = l + 1 + j
  Poly poly;
};

struct ModelPresentation {
  std::string kind;
  ModelContext ctx;
  RingPtr ring;
  std::vector<ModelGenerator> gens;
  std::vector<ModelRelation> relations;
  std::vector<std::string> warnings;

  IdealPresentation ideal() const {
    std::vector<Poly> rels;
    for (auto& m : relations) rels.push_back(m.poly);
    return IdealPresentation(ring, rels);
  }
  std::optional<size_t> find(const Root& g, int twist) const {
    for (auto& m : gens)
      if (m.root == g && m.twist == twist) return m.var;
    return std::nullopt;
  }
  const ModelGenerator& generator(const Root& g, int twist) const {
    for (auto& m : gens)
      if (m.root == g && m.twist == twist) return m;
    fail(ErrorCode::domain, "no generator for " + root_label(g) + " twist " + std::to_string(twist));
  }
  Poly var(const Root& g, int twist) const { return Poly::variable(ring, generator(g, twist).var); }
  // (x_g^(l))^{p^{r-l-1}}, written with the generators that exist
  Poly power(const Root& g, int twist) const {
    const auto& m = generator(g, twist);
    Poly x = Poly::variable(ring, m.var);
    return m.power ? x : x.pow(ipow(ctx.p, ctx.r - twist - 1));
  }
};

inline std::string model_var_id(const Root& g, int twist, bool power) {
  return std::string(power ? "z[" : "x[") + root_label(g) + "](" + std::to_string(twist) + ")";
}

namespace detail {

// generators for roots of level in [lo, hi], twist-major then root order
inline ModelPresentation model_ring(const ModelContext& ctx, int lo, int hi, const std::string& kind) {
  ModelPresentation P;
  P.kind = kind;
  P.ctx = ctx;
  std::vector<VariableDescriptor> vars;
  for (int l = 0; l < ctx.r; ++l)
    for (const Root& g : ctx.roots()) {
      int lev = ctx.pc.level(g);
      if (lev < lo || lev > hi) continue;
      ModelGenerator m;
      m.root = g;
      m.twist = l;
      m.power = lev > ctx.i;
      m.exponent = m.power ? ipow(ctx.p, ctx.r - l - 1) : 1;
      m.var = vars.size();
      u64 wf = m.power ? ipow(ctx.p, ctx.r) : ipow(ctx.p, l + 1);
      vars.push_back({model_var_id(g, l, m.power), Parity::even, static_cast<int>(2 * m.exponent), scaled(g, wf)});
      P.gens.push_back(m);
    }
  P.ring = make_ring(ctx.p, vars, ctx.pc.rank());
  return P;
}

inline bool equal_up_to_sign(const Poly& a, const Poly& b) { return a == b || a == -b; }

inline void add_relations(ModelPresentation& P) {
  const ModelContext& ctx = P.ctx;
  const u32 p = ctx.p;
  std::vector<ModelRelation> s2, fam_i;
  for (const Root& b : ctx.roots()) {
    int lev = ctx.pc.level(b);
    if (lev > ctx.v()) continue;
    auto pairs = ctx.pairs(b);
    if (pairs.empty()) continue;
    // every root of the pairs must have a generator in this presentation
    bool present = true;
    for (auto& [a, a2] : pairs) present = present && P.find(a, 0) && P.find(a2, 0);
    if (!present) continue;
    if (lev == 2 * ctx.i) {
      for (int l = 0; l < ctx.r; ++l)
        for (int j = 0; l + 1 + j < ctx.r; ++j) {
          Poly f(P.ring);
          u64 e = ipow(p, j + 1);
          for (auto& [a, a2] : pairs)
            f += P.var(a, l).pow(e) * P.var(a2, l + 1 + j) - P.var(a2, l).pow(e) * P.var(a, l + 1 + j);
          if (!f.is_zero()) s2.push_back({"S2", b, l, l + 1 + j, f});
        }
    }
    for (int l = 0; l < ctx.r; ++l)
      for (int l2 = l + 1; l2 < ctx.r; ++l2) {
        Poly f(P.ring);
        for (auto& [a, a2] : pairs) f += P.power(a, l) * P.power(a2, l2) - P.power(a2, l) * P.power(a, l2);
        if (!f.is_zero()) fam_i.push_back({"I", b, l, l2, f});
      }
  }
  P.relations = s2;
  for (auto& m : fam_i) {
    bool dup = false;
    for (auto& s : s2) dup = dup || equal_up_to_sign(s.poly, m.poly);
    if (!dup) P.relations.push_back(m);
  }
}

inline void add_pairing_warnings(ModelPresentation& P) {
  auto rep = check_pairing_hypothesis(P.ctx.pc, P.ctx.p);
  for (auto& w : rep.witnesses)
    P.warnings.push_back("pairing hypothesis fails at level-2 root " + root_label(w.beta) +
                         "; uniqueness arguments downstream are unjustified");
}

}  // namespace detail

inline ModelPresentation build_S_star(const ModelContext& ctx) {
  auto P = detail::model_ring(ctx, ctx.i, ctx.v(), "S*");
  detail::add_pairing_warnings(P);
  return P;
}

inline std::vector<Poly> build_relation_ideal(const ModelContext& ctx) {
  auto P = build_S_star(ctx);
  detail::add_relations(P);
  std::vector<Poly> out;
  for (auto& m : P.relations) out.push_back(m.poly);
  return out;
}

inline ModelPresentation build_Sbar(const ModelContext& ctx) {
  auto P = build_S_star(ctx);
  P.kind = "Sbar";
  detail::add_relations(P);
  return P;
}

// generators of level < v with the same relations
inline ModelPresentation build_Q(const ModelContext& ctx) {
  auto P = detail::model_ring(ctx, ctx.i, ctx.v() - 1, "Q");
  detail::add_relations(P);
  detail::add_pairing_warnings(P);
  return P;
}

// free factor on the level-v generators
inline ModelPresentation build_top(const ModelContext& ctx) {
  return detail::model_ring(ctx, ctx.v(), ctx.v(), "top");
}

struct AlgebraMap {
  RingPtr source, target;
  std::vector<Poly> images;

  Poly apply(const Poly& f) const {
    require(f.ring() == source, ErrorCode::domain, "map applied outside its source");
    return substitute(f, target, images);
  }
  AlgebraMap then(const AlgebraMap& g) const {
    require(g.source == target, ErrorCode::domain, "maps do not compose");
    AlgebraMap h{source, g.target, {}};
    for (auto& im : images) h.images.push_back(g.apply(im));
    return h;
  }
};

// source relations that do not reduce to 0 in the target ideal
inline std::vector<Poly> check_well_defined(const AlgebraMap& m, const std::vector<Poly>& source_relations,
                                            const GroebnerBasis& target) {
  std::vector<Poly> bad;
  for (auto& f : source_relations) {
    Poly nf = normal_form(m.apply(f), target);
    if (!nf.is_zero()) bad.push_back(nf);
  }
  return bad;
}

// graded pieces of a presentation, degree -> weight -> dim
inline std::map<long long, std::map<Weight, long long>> hilbert_table(const ModelPresentation& P, long long max_degree,
                                                                      const GroebnerBasis* G = nullptr,
                                                                      long long bound = -1) {
  GroebnerBasis own;
  if (!G) {
    own = buchberger(P.ideal());
    G = &own;
  }
  std::map<long long, std::map<Weight, long long>> out;
  for (long long d = 0; d <= max_degree; d += 2) out[d] = graded_character(*G, d, bound);
  return out;
}

struct SplittingCheck {
  long long max_degree = 0;
  std::map<long long, long long> sbar, convolution;
  bool by_degree = true, by_weight = true;
};

inline SplittingCheck check_splitting(const ModelContext& ctx, long long max_degree, long long bound = -1) {
  auto S = build_Sbar(ctx), Q = build_Q(ctx), T = build_top(ctx);
  auto hs = hilbert_table(S, max_degree, nullptr, bound);
  auto hq = hilbert_table(Q, max_degree, nullptr, bound);
  auto ht = hilbert_table(T, max_degree, nullptr, bound);
  SplittingCheck c;
  c.max_degree = max_degree;
  for (long long d = 0; d <= max_degree; d += 2) {
    std::map<Weight, long long> conv;
    for (long long a = 0; a <= d; a += 2)
      for (auto& [wq, nq] : hq[a])
        for (auto& [wt, nt] : ht[d - a]) {
          Weight w = wq;
          for (size_t k = 0; k < w.size(); ++k) w[k] += wt[k];
          conv[w] += nq * nt;
        }
    long long s = 0, cv = 0;
    for (auto& [w, n] : hs[d]) s += n;
    for (auto& [w, n] : conv) cv += n;
    c.sbar[d] = s;
    c.convolution[d] = cv;
    if (s != cv) c.by_degree = false;
    std::map<Weight, long long> lhs;
    for (auto& [w, n] : hs[d])
      if (n) lhs[w] = n;
    std::map<Weight, long long> rhs;
    for (auto& [w, n] : conv)
      if (n) rhs[w] = n;
    if (lhs != rhs) c.by_weight = false;
  }
  return c;
}

// ---- coordinate algebra k[V_r(U)] and theta ----

struct CoordinateVariable {
  Root root;
  int twist = 0;
  size_t var = 0;
};

struct CoordinateRelation {
  Root beta;
  int l = 0, l2 = 0;
  Poly poly;
};

struct CoordinatePresentation {
  ModelContext ctx;
  RingPtr ring;
  std::vector<CoordinateVariable> vars;
  std::vector<CoordinateRelation> relations;

  IdealPresentation ideal() const {
    std::vector<Poly> rels;
    for (auto& m : relations) rels.push_back(m.poly);
    return IdealPresentation(ring, rels);
  }
  Poly var(const Root& g, int twist) const {
    for (auto& v : vars)
      if (v.root == g && v.twist == twist) return Poly::variable(ring, v.var);
    fail(ErrorCode::domain, "no coordinate for " + root_label(g));
  }
};

// type A: the root a_s + ... + a_{t-1} is the matrix entry (s, t)
inline std::string coordinate_var_id(const Root& g, int twist) {
  int s = -1, t = -1;
  for (size_t k = 0; k < g.c.size(); ++k)
    if (g.c[k]) {
      if (s < 0) s = static_cast<int>(k) + 1;
      t = static_cast<int>(k) + 2;
    }
  return "X^{" + std::to_string(s) + "," + std::to_string(t) + "}(" + std::to_string(twist) + ")";
}

inline CoordinatePresentation vr_coordinate_algebra(const ModelContext& ctx) {
  require(ctx.pc.system().family == 'A', ErrorCode::config, "coordinate algebras are built for type A only");
  int N = ctx.pc.rank() + 1;
  require(static_cast<int>(ctx.p) >= N, ErrorCode::config,
          "p = " + std::to_string(ctx.p) + " < N = " + std::to_string(N) + ": the p-th power map on u is not zero");
  CoordinatePresentation C;
  C.ctx = ctx;
  std::vector<VariableDescriptor> vd;
  for (int l = 0; l < ctx.r; ++l)
    for (const Root& g : ctx.roots()) {
      C.vars.push_back({g, l, vd.size()});
      vd.push_back({coordinate_var_id(g, l), Parity::even, static_cast<int>(2 * ipow(ctx.p, ctx.r - l - 1)),
                    scaled(g, ipow(ctx.p, ctx.r))});
    }
  C.ring = make_ring(ctx.p, vd, ctx.pc.rank());
  for (const Root& b : ctx.roots()) {
    auto pairs = ctx.pairs(b);
    if (pairs.empty()) continue;
    for (int l = 0; l < ctx.r; ++l)
      for (int l2 = l + 1; l2 < ctx.r; ++l2) {
        Poly f(C.ring);
        for (auto& [a, a2] : pairs) f += C.var(a, l) * C.var(a2, l2) - C.var(a, l2) * C.var(a2, l);
        if (!f.is_zero()) C.relations.push_back({b, l, l2, f});
      }
  }
  return C;
}

inline AlgebraMap theta_substitution(const CoordinatePresentation& C, const ModelPresentation& Sbar) {
  AlgebraMap m{C.ring, Sbar.ring, {}};
  for (auto& v : C.vars) m.images.push_back(Sbar.power(v.root, v.twist));
  return m;
}

struct RelationPowerCheck {
  Root beta;
  int l = 0, l2 = 0;
  std::string family;
  u64 exponent = 1;
  bool ok = false;
};

struct ThetaReport {
  size_t relations = 0;
  std::vector<Poly> failures;  // nonzero normal forms
  std::vector<RelationPowerCheck> power_identity;
  size_t power_identity_failures = 0;
  bool generator_powers_in_image = true;
};

inline ThetaReport theta_check(const ModelContext& ctx) {
  auto C = vr_coordinate_algebra(ctx);
  auto S = build_Sbar(ctx);
  auto th = theta_substitution(C, S);
  auto G = buchberger(S.ideal());
  ThetaReport rep;
  rep.relations = C.relations.size();
  for (auto& rel : C.relations) {
    Poly img = th.apply(rel.poly);
    Poly nf = normal_form(img, G);
    if (!nf.is_zero()) rep.failures.push_back(nf);
    RelationPowerCheck pc{rel.beta, rel.l, rel.l2, "", 1, false};
    std::optional<Poly> target;
    if (ctx.pc.level(rel.beta) == 2 * ctx.i) {
      pc.family = "S2";
      pc.exponent = ipow(ctx.p, ctx.r - rel.l2 - 1);
      for (auto& m : S.relations)
        if (m.family == "S2" && m.beta == rel.beta && m.l == rel.l && m.l2 == rel.l2) target = m.poly.pow(pc.exponent);
    } else {
      pc.family = "I";
      Poly f(S.ring);
      for (auto& [a, a2] : ctx.pairs(rel.beta))
        f += S.power(a, rel.l) * S.power(a2, rel.l2) - S.power(a2, rel.l) * S.power(a, rel.l2);
      target = f;
    }
    pc.ok = target && detail::equal_up_to_sign(img, *target);
    if (!pc.ok) ++rep.power_identity_failures;
    rep.power_identity.push_back(pc);
  }
  // (x_a^(l))^{p^{r-1}} = theta(X^a(l))^{p^l}
  for (auto& g : S.gens) {
    if (g.power) continue;
    Poly lhs = S.var(g.root, g.twist).pow(ipow(ctx.p, ctx.r - 1));
    Poly rhs = th.apply(C.var(g.root, g.twist)).pow(ipow(ctx.p, g.twist));
    if (lhs != rhs) rep.generator_powers_in_image = false;
  }
  return rep;
}

struct ThetaDegree {
  u64 formula = 0;
  std::optional<long long> fiber_count;
};

// fiber of theta over X = 1 for U_3; its length is the degree of the extension
inline long long theta_fiber_count(int r, u32 p) {
  ParabolicContext pc(build_root_system('A', 2), {});
  auto ctx = make_model_context(pc, 1, 3, r, p);
  auto Q = build_Q(ctx);
  std::vector<Poly> rels;
  for (auto& m : Q.relations) rels.push_back(m.poly);
  for (auto& g : Q.gens) rels.push_back(Q.power(g.root, g.twist) - Poly::constant(Q.ring, 1));
  return count_standard_monomials(buchberger(Q.ring, rels));
}

inline ThetaDegree theta_degree_U3(int r, u32 p, bool cross_check = true) {
  require(r >= 1, ErrorCode::domain, "need r >= 1");
  require_odd_prime(p);
  ThetaDegree d;
  d.formula = ipow(p, static_cast<u64>((r + 2) * (r - 1) / 2));
  if (cross_check && r <= 3) d.fiber_count = theta_fiber_count(r, p);
  return d;
}

// ---- the p-th power map (-)^[p] from level r to level r-1 ----

inline AlgebraMap bracket_p(const ModelPresentation& src, const ModelPresentation& dst) {
  require(src.ctx.r >= 2, ErrorCode::domain, "bracket_p needs r >= 2");
  require(dst.ctx.r == src.ctx.r - 1, ErrorCode::domain, "bracket_p target must have level r-1");
  AlgebraMap m{src.ring, dst.ring, {}};
  for (auto& g : src.gens) {
    if (g.twist == src.ctx.r - 1) {
      m.images.push_back(Poly(dst.ring));
    } else if (g.power) {
      m.images.push_back(dst.var(g.root, g.twist).pow(src.ctx.p));
    } else {
      m.images.push_back(dst.var(g.root, g.twist));
    }
  }
  return m;
}

// (-)^[p]^s from level r + s down to the presentation at level r
inline AlgebraMap bracket_composite(const ModelContext& ctx, int s) {
  require(s >= 1, ErrorCode::domain, "need s >= 1");
  auto cur = build_Sbar(ctx.with_r(ctx.r + s));
  std::optional<AlgebraMap> acc;
  for (int k = s; k >= 1; --k) {
    auto nxt = build_Sbar(ctx.with_r(ctx.r + k - 1));
    auto m = bracket_p(cur, nxt);
    acc = acc ? acc->then(m) : m;
    cur = nxt;
  }
  return *acc;
}

// membership in the image of a map whose generator images are pure powers of single variables
inline bool in_monomial_image(const AlgebraMap& m, const Poly& f) {
  const Ring& T = *m.target;
  std::vector<std::vector<u32>> steps(T.size());
  for (auto& im : m.images) {
    if (im.is_zero()) continue;
    require(im.size() == 1 && im.leading().c == 1, ErrorCode::unsupported, "image is not a monomial algebra");
    const Exps& e = im.leading().e;
    size_t var = T.size(), nz = 0;
    for (size_t k = 0; k < e.size(); ++k)
      if (e[k]) { var = k; ++nz; }
    require(nz == 1, ErrorCode::unsupported, "image generator is not a power of one variable");
    steps[var].push_back(e[var]);
  }
  auto reachable = [&](size_t var, u32 n) {
    std::vector<char> ok(n + 1, 0);
    ok[0] = 1;
    for (u32 k = 1; k <= n; ++k)
      for (u32 s : steps[var])
        if (s <= k && ok[k - s]) { ok[k] = 1; break; }
    return ok[n] != 0;
  };
  for (auto& t : f.terms())
    for (size_t k = 0; k < t.e.size(); ++k)
      if (t.e[k] && !reachable(k, t.e[k])) return false;
  return true;
}

struct BracketReport {
  int r = 0;
  size_t relations = 0;
  size_t relation_failures = 0;  // images not in I_{r-1}
  size_t random_pairs = 0;
  size_t multiplicativity_failures = 0;
  struct Collapse {
    int s;
    std::string generator;
    long long degree;
    bool in_image;
  };
  std::vector<Collapse> collapse;  // top-level generators at level r with degree < p^s
};

inline Poly random_poly(const RingPtr& R, std::mt19937_64& rng, int terms, u32 max_exp) {
  std::vector<Term> ts;
  std::uniform_int_distribution<u32> ce(1, R->p() - 1), ee(0, max_exp), pick(0, 2);
  for (int k = 0; k < terms; ++k) {
    Exps e(R->size(), 0);
    for (size_t i = 0; i < e.size(); ++i)
      if (pick(rng) == 0) e[i] = R->odd(i) ? 1 : ee(rng);
    ts.push_back({e, ce(rng)});
  }
  return Poly::from_terms(R, ts);
}

// ctx.r is the source level of (-)^[p]; stabilization checked into level ctx.r for s <= max_s
inline BracketReport bracket_check(const ModelContext& ctx, int max_s, int pairs, u64 seed) {
  require(ctx.r >= 2, ErrorCode::domain, "bracket_p needs r >= 2");
  BracketReport rep;
  rep.r = ctx.r;
  auto src = build_Sbar(ctx);
  auto dst = build_Sbar(ctx.with_r(ctx.r - 1));
  auto m = bracket_p(src, dst);
  auto G = buchberger(dst.ideal());
  for (auto& rel : src.relations) {
    ++rep.relations;
    if (!normal_form(m.apply(rel.poly), G).is_zero()) ++rep.relation_failures;
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < pairs; ++k) {
    Poly f = random_poly(src.ring, rng, 3, 3), g = random_poly(src.ring, rng, 3, 3);
    ++rep.random_pairs;
    if (m.apply(f * g) != m.apply(f) * m.apply(g)) ++rep.multiplicativity_failures;
  }
  auto target = build_Sbar(ctx);
  for (int s = 1; s <= max_s; ++s) {
    auto comp = bracket_composite(ctx, s);
    for (auto& g : target.gens) {
      if (ctx.pc.level(g.root) != ctx.v()) continue;
      long long d = target.ring->var(g.var).coh_degree;
      if (d >= static_cast<long long>(ipow(ctx.p, s))) continue;
      bool in = in_monomial_image(comp, Poly::variable(target.ring, g.var));
      rep.collapse.push_back({s, target.ring->var(g.var).id, d, in});
    }
  }
  return rep;
}

}  // namespace frobmodel
