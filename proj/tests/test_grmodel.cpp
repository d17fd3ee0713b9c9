#include <gtest/gtest.h>

#include "frobmodel/grmodel.hpp"
#include "oracles.hpp"

using namespace frobmodel;

namespace {

ParabolicContext A(int n) { return ParabolicContext(build_root_system('A', n), {}); }
Root R(std::vector<int> c) { return Root{std::move(c)}; }

ModelContext u3(int r, u32 p) { return make_model_context(A(2), 1, 3, r, p); }
ModelContext u4g3(int r, u32 p) { return make_model_context(A(3), 1, 3, r, p); }

// Hilbert function by linear algebra on the relation span, independent of the Groebner code
long long oracle_dim(const ModelPresentation& P, int d) {
  oracle::Vec degs;
  for (auto& v : P.ring->vars()) degs.push_back(v.coh_degree);
  std::vector<std::pair<int, oracle::SPoly>> rels;
  for (auto& m : P.relations) {
    oracle::SPoly sp;
    for (auto& t : m.poly.terms()) sp[oracle::Vec(t.e.begin(), t.e.end())] = t.c;
    rels.emplace_back(static_cast<int>(m.poly.degree()), sp);
  }
  return oracle::quotient_dimension(degs, rels, d, P.ctx.p);
}

std::vector<std::string> ids(const RingPtr& ring) {
  std::vector<std::string> out;
  for (auto& v : ring->vars()) out.push_back(v.id);
  return out;
}

}  // namespace

TEST(SStar, U3Generators) {
  auto P = build_S_star(u3(2, 3));
  EXPECT_TRUE(P.relations.empty());
  EXPECT_EQ(ids(P.ring), (std::vector<std::string>{"x[a1](0)", "x[a2](0)", "z[a1+a2](0)", "x[a1](1)", "x[a2](1)",
                                                   "z[a1+a2](1)"}));
  auto& z0 = P.generator(R({1, 1}), 0);
  EXPECT_TRUE(z0.power);
  EXPECT_EQ(z0.exponent, 3u);
  EXPECT_EQ(P.ring->var(z0.var).coh_degree, 6);
  EXPECT_EQ(P.ring->var(z0.var).weight, (Weight{9, 9}));
  auto& z1 = P.generator(R({1, 1}), 1);
  EXPECT_EQ(z1.exponent, 1u);
  EXPECT_EQ(P.ring->var(z1.var).coh_degree, 2);
  EXPECT_EQ(P.ring->var(P.generator(R({1, 0}), 1).var).weight, (Weight{9, 0}));
  EXPECT_EQ(P.ring->var(P.generator(R({1, 0}), 0).var).weight, (Weight{3, 0}));
}

TEST(SStar, RankOne) {
  auto P = build_S_star(u3(1, 3));
  ASSERT_EQ(P.gens.size(), 3u);
  for (auto& g : P.gens) {
    EXPECT_EQ(g.twist, 0);
    EXPECT_EQ(g.exponent, 1u);
    EXPECT_EQ(P.ring->var(g.var).coh_degree, 2);
  }
}

TEST(SStar, A3UpperRange) {
  auto P = build_S_star(make_model_context(A(3), 2, 4, 1, 3));
  ASSERT_EQ(P.gens.size(), 3u);
  EXPECT_EQ(P.gens.size(), A(3).gamma_roots(2).size());
}

TEST(SStar, InvalidRange) {
  EXPECT_THROW(make_model_context(A(2), 0, 3, 2, 3), Error);
  EXPECT_THROW(make_model_context(A(2), 2, 2, 2, 3), Error);
  EXPECT_THROW(make_model_context(A(2), 1, 3, 0, 3), Error);
  try {
    make_model_context(A(2), 1, 3, 2, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config);
  }
}

TEST(Relations, U3Single) {
  auto S = build_Sbar(u3(2, 3));
  ASSERT_EQ(S.relations.size(), 1u);
  EXPECT_EQ(S.relations[0].family, "S2");
  auto expect = S.var(R({1, 0}), 0).pow(3) * S.var(R({0, 1}), 1) - S.var(R({0, 1}), 0).pow(3) * S.var(R({1, 0}), 1);
  EXPECT_EQ(S.relations[0].poly, expect);
  EXPECT_EQ(S.relations[0].poly.degree(), 8);
  EXPECT_TRUE(normal_form(S.relations[0].poly, buchberger(S.ideal())).is_zero());
}

TEST(Relations, U3RankOneEmpty) { EXPECT_TRUE(build_relation_ideal(u3(1, 3)).empty()); }

TEST(Relations, U4Gamma3TwoS2) {
  auto S = build_Sbar(u4g3(2, 3));
  ASSERT_EQ(S.relations.size(), 2u);
  EXPECT_EQ(S.relations[0].family, "S2");
  EXPECT_EQ(S.relations[1].family, "S2");
  EXPECT_EQ(root_label(S.relations[0].beta), "a1+a2");
  EXPECT_EQ(root_label(S.relations[1].beta), "a2+a3");
}

TEST(Relations, HomogeneousAndWeighted) {
  for (auto ctx : {u3(3, 3), u3(3, 5), u4g3(3, 3), make_model_context(A(4), 1, 3, 2, 3)}) {
    auto S = build_Sbar(ctx);
    for (auto& m : S.relations) {
      EXPECT_TRUE(m.poly.is_homogeneous()) << m.poly.str();
      u64 f = m.family == "S2" ? ipow(ctx.p, m.l2 + 1) : ipow(ctx.p, ctx.r);
      EXPECT_EQ(m.poly.weight(), scaled(m.beta, f)) << m.poly.str();
    }
  }
}

TEST(Relations, PairingWarning) {
  ParabolicContext pc(build_root_system('A', 4), {1, 2});
  auto S = build_Sbar(full_model_context(pc, 2, 3));
  EXPECT_FALSE(S.warnings.empty());
  EXPECT_TRUE(build_Sbar(u3(2, 3)).warnings.empty());
}

TEST(Hilbert, U3Values) {
  auto S = build_Sbar(u3(2, 3));
  auto G = buchberger(S.ideal());
  std::vector<long long> expect{1, 5, 15, 36, 74, 136};
  for (int k = 0; k < 6; ++k) EXPECT_EQ(graded_dimension(G, 2 * k), expect[k]);
}

TEST(Hilbert, MatchesLinearAlgebraOracle) {
  for (auto ctx : {u3(2, 3), u3(3, 3), u4g3(2, 3), u3(2, 5)}) {
    auto S = build_Sbar(ctx);
    auto G = buchberger(S.ideal());
    for (int d = 0; d <= 12; d += 2) EXPECT_EQ(graded_dimension(G, d), oracle_dim(S, d)) << d;
  }
}

TEST(Hilbert, TableWeightsSumToDimension) {
  auto S = build_Sbar(u4g3(2, 3));
  auto tab = hilbert_table(S, 10);
  for (auto& [d, ch] : tab) {
    long long s = 0;
    for (auto& [w, n] : ch) s += n;
    EXPECT_EQ(s, oracle_dim(S, static_cast<int>(d)));
  }
}

TEST(Splitting, ByDegreeAndWeight) {
  for (auto ctx : {u3(2, 3), u3(3, 3), u4g3(2, 3), make_model_context(A(3), 1, 4, 2, 3)}) {
    auto c = check_splitting(ctx, 10);
    EXPECT_TRUE(c.by_degree);
    EXPECT_TRUE(c.by_weight);
    EXPECT_EQ(c.sbar, c.convolution);
  }
}

TEST(Splitting, NoTopLevelMeansSbarIsQ) {
  // A_2 has no roots of level 3, so the top factor is trivial
  auto ctx = make_model_context(A(2), 1, 4, 2, 3);
  auto S = build_Sbar(ctx), Q = build_Q(ctx);
  EXPECT_TRUE(build_top(ctx).gens.empty());
  EXPECT_EQ(ids(S.ring), ids(Q.ring));
  ASSERT_EQ(S.relations.size(), Q.relations.size());
  EXPECT_TRUE(check_splitting(ctx, 10).by_weight);
}

TEST(Coordinate, U3) {
  auto C = vr_coordinate_algebra(u3(2, 3));
  EXPECT_EQ(ids(C.ring), (std::vector<std::string>{"X^{1,2}(0)", "X^{2,3}(0)", "X^{1,3}(0)", "X^{1,2}(1)",
                                                   "X^{2,3}(1)", "X^{1,3}(1)"}));
  ASSERT_EQ(C.relations.size(), 1u);
  auto X = [&](std::vector<int> c, int l) { return C.var(R(c), l); };
  EXPECT_EQ(C.relations[0].poly, X({1, 0}, 0) * X({0, 1}, 1) - X({1, 0}, 1) * X({0, 1}, 0));
}

TEST(Coordinate, U3RankOneFree) { EXPECT_TRUE(vr_coordinate_algebra(u3(1, 3)).relations.empty()); }

TEST(Coordinate, U4Gamma3ConsecutiveChains) {
  auto C = vr_coordinate_algebra(u4g3(2, 5));
  ASSERT_EQ(C.relations.size(), 2u);
  for (auto& rel : C.relations) {
    EXPECT_EQ(rel.beta.height(), 2);
    for (auto& t : rel.poly.terms())
      for (size_t k = 0; k < t.e.size(); ++k)
        if (t.e[k]) EXPECT_EQ(C.vars[k].root.height(), 1);
  }
}

TEST(Coordinate, SmallPrimeRejected) {
  try {
    vr_coordinate_algebra(u4g3(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config);
  }
}

TEST(Theta, U3Example) {
  auto ctx = u3(2, 3);
  auto C = vr_coordinate_algebra(ctx);
  auto S = build_Sbar(ctx);
  auto th = theta_substitution(C, S);
  auto img = th.apply(C.relations[0].poly);
  EXPECT_TRUE(img == S.relations[0].poly || img == -S.relations[0].poly);
}

TEST(Theta, RankOneIsRenaming) {
  auto ctx = u3(1, 3);
  auto C = vr_coordinate_algebra(ctx);
  auto S = build_Sbar(ctx);
  auto th = theta_substitution(C, S);
  for (size_t k = 0; k < C.ring->size(); ++k) EXPECT_EQ(th.images[k], Poly::variable(S.ring, k));
}

class ThetaMatrix : public ::testing::TestWithParam<std::tuple<int, int, u32>> {};

TEST_P(ThetaMatrix, WellDefinedAndPowerIdentity) {
  auto [n, r, p] = GetParam();
  auto ctx = full_model_context(A(n), r, p);
  auto rep = theta_check(ctx);
  EXPECT_TRUE(rep.failures.empty());
  EXPECT_EQ(rep.power_identity_failures, 0u);
  EXPECT_TRUE(rep.generator_powers_in_image);
  EXPECT_EQ(rep.power_identity.size(), rep.relations);
}

INSTANTIATE_TEST_SUITE_P(Grid, ThetaMatrix,
                         ::testing::Values(std::make_tuple(2, 1, 3u), std::make_tuple(2, 2, 3u),
                                           std::make_tuple(2, 3, 3u), std::make_tuple(2, 1, 5u),
                                           std::make_tuple(2, 2, 5u), std::make_tuple(2, 3, 5u),
                                           std::make_tuple(3, 1, 5u), std::make_tuple(3, 2, 5u),
                                           std::make_tuple(3, 3, 5u)));

TEST(ThetaDegree, Values) {
  EXPECT_EQ(theta_degree_U3(1, 3).formula, 1u);
  auto d2 = theta_degree_U3(2, 3);
  EXPECT_EQ(d2.formula, 9u);
  ASSERT_TRUE(d2.fiber_count);
  EXPECT_EQ(*d2.fiber_count, 9);
  auto d3 = theta_degree_U3(3, 3);
  EXPECT_EQ(d3.formula, 243u);
  ASSERT_TRUE(d3.fiber_count);
  EXPECT_EQ(*d3.fiber_count, 243);
  EXPECT_EQ(*theta_degree_U3(2, 5).fiber_count, 25);
  EXPECT_EQ(*theta_degree_U3(1, 5).fiber_count, 1);
}

TEST(Bracket, RankOneRejected) {
  auto S = build_Sbar(u3(1, 3));
  EXPECT_THROW(bracket_p(S, S), Error);
  EXPECT_THROW(bracket_check(u3(1, 3), 1, 1, 1), Error);
}

TEST(Bracket, Examples) {
  auto src = build_Sbar(u3(3, 3)), dst = build_Sbar(u3(2, 3));
  auto m = bracket_p(src, dst);
  Root b = R({1, 1}), a = R({1, 0});
  // (x_b^(0))^{p^2} -> ((x_b^(0))^{p})^p
  EXPECT_EQ(m.apply(src.power(b, 0)), dst.power(b, 0).pow(3));
  EXPECT_EQ(m.apply(src.var(a, 0)), dst.var(a, 0));
  EXPECT_EQ(m.apply(src.var(a, 1)), dst.var(a, 1));
  EXPECT_TRUE(m.apply(src.var(a, 2)).is_zero());
  EXPECT_TRUE(m.apply(src.var(b, 2)).is_zero());
}

TEST(Bracket, Check) {
  for (auto ctx : {u3(2, 3), u3(3, 3), u4g3(2, 3), u4g3(3, 3), u3(2, 5)}) {
    auto rep = bracket_check(ctx, 2, 100, 42);
    EXPECT_EQ(rep.relation_failures, 0u);
    EXPECT_EQ(rep.multiplicativity_failures, 0u);
    EXPECT_EQ(rep.random_pairs, 100u);
    EXPECT_FALSE(rep.collapse.empty());
    for (auto& c : rep.collapse) EXPECT_FALSE(c.in_image) << c.generator << " s=" << c.s;
  }
}

TEST(Bracket, CollapseAgreesWithMonomialScan) {
  // brute force: no source monomial of the same degree maps onto a low-degree top generator
  auto ctx = u3(2, 3);
  auto target = build_Sbar(ctx);
  for (int s = 1; s <= 2; ++s) {
    auto comp = bracket_composite(ctx, s);
    for (auto& g : target.gens) {
      if (ctx.pc.level(g.root) != ctx.v()) continue;
      long long d = target.ring->var(g.var).coh_degree;
      auto goal = Poly::variable(target.ring, g.var);
      bool hit = false;
      for_each_monomial(*comp.source, d, [&](const Exps& e) {
        auto img = comp.apply(Poly::monomial(comp.source, e));
        hit = hit || img == goal;
      });
      EXPECT_EQ(hit, in_monomial_image(comp, goal));
      if (d < static_cast<long long>(ipow(3, s))) EXPECT_FALSE(hit);
    }
  }
  // and x_a^(0) is hit
  auto comp = bracket_composite(ctx, 1);
  EXPECT_TRUE(in_monomial_image(comp, target.var(R({1, 0}), 0)));
}
