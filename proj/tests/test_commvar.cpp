#include <gtest/gtest.h>

#include "frobmodel/commvar.hpp"
#include "oracles.hpp"

using namespace frobmodel;

namespace {

// brute force over F_q^{(N-1) r}, q prime: x[s][l] for nodes s = 0..N-2
template <class Pred>
long long chain_count(int N, int r, long long q, Pred pred) {
  int n = (N - 1) * r;
  long long total = 1, hits = 0;
  for (int k = 0; k < n; ++k) total *= q;
  std::vector<std::vector<long long>> x(N - 1, std::vector<long long>(r));
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int l = 0; l < r; ++l)
      for (int s = 0; s < N - 1; ++s) {
        x[s][l] = c % q;
        c /= q;
      }
    hits += pred(x);
  }
  return hits;
}

bool minors_vanish(const std::vector<std::vector<long long>>& x, int s, int t, long long q) {
  int r = static_cast<int>(x[0].size());
  for (int l = 0; l < r; ++l)
    for (int m = l + 1; m < r; ++m)
      if ((x[s][l] * x[t][m] - x[s][m] * x[t][l]) % q) return false;
  return true;
}

bool node_zero(const std::vector<std::vector<long long>>& x, int s) {
  for (auto v : x[s])
    if (v) return false;
  return true;
}

bool in_Y(const std::vector<std::vector<long long>>& x, long long q) {
  for (size_t s = 0; s + 1 < x.size(); ++s)
    if (!minors_vanish(x, s, s + 1, q)) return false;
  return true;
}

}  // namespace

TEST(YVariety, Shapes) {
  auto Y3 = y_variety_system(3, 2, 3);
  EXPECT_EQ(Y3.ring->size(), 4u);
  EXPECT_EQ(Y3.relations.size(), 1u);
  auto Y4 = y_variety_system(4, 2, 3);
  EXPECT_EQ(Y4.ring->size(), 6u);
  EXPECT_EQ(Y4.relations.size(), 2u);
  auto Y31 = y_variety_system(3, 1, 3);
  EXPECT_EQ(Y31.ring->size(), 2u);
  EXPECT_TRUE(Y31.relations.empty());
  EXPECT_THROW(y_variety_system(2, 2, 3), Error);
}

TEST(YVariety, MatchesChainBruteForce) {
  for (auto [N, r, q] : std::vector<std::tuple<int, int, long long>>{{3, 2, 3}, {3, 3, 3}, {4, 2, 3}, {4, 2, 5}, {5, 2, 3}, {4, 3, 3}}) {
    auto Y = y_variety_system(N, r, static_cast<u32>(q));
    EXPECT_EQ(static_cast<long long>(count_points(Y.ring, Y.relations, q)),
              chain_count(N, r, q, [&](auto& x) { return in_Y(x, q); }))
        << N << " " << r << " " << q;
  }
}

TEST(VU3, ClosedForm) {
  for (int r = 1; r <= 3; ++r)
    for (u64 q : {3u, 5u}) {
      auto V = v_variety_U3(r, static_cast<u32>(q));
      u64 qr = ipow(q, r);
      u64 n = count_points(V.ring, V.relations, q);
      EXPECT_EQ(n, (1 + (q + 1) * (qr - 1)) * qr) << r << " " << q;
      EXPECT_EQ(n, static_cast<u64>(oracle::rank_le1_2xr(r, q)) * qr);
      double e = growth_exponent(n, q);
      EXPECT_LE(std::abs(e - (2 * r + 1)), 0.5 + 1e-9) << r << " " << q;
    }
}

TEST(VU3, ProductLaw) {
  // X_r = Y_r times affine space on the level-2 coordinates
  for (int r = 1; r <= 2; ++r)
    for (u64 q : {3u, 5u}) {
      auto Y = y_variety_system(3, r, static_cast<u32>(q));
      auto X = x_variety_system(3, r, static_cast<u32>(q));
      EXPECT_EQ(count_points(X.ring, X.relations, q), count_points(Y.ring, Y.relations, q) * ipow(q, X.free_rank));
      auto V = v_variety_U3(r, static_cast<u32>(q));
      EXPECT_EQ(count_points(V.ring, V.relations, q), count_points(X.ring, X.relations, q));
    }
}

TEST(VU3, SpecValue) {
  auto V = v_variety_U3(2, 3);
  EXPECT_EQ(count_points(V.ring, V.relations, 3), 297u);
}

TEST(Components, U4Counts) {
  for (long long q : {3, 5}) {
    auto comps = component_candidates_U4(2, static_cast<u32>(q));
    ASSERT_EQ(comps.size(), 3u);
    EXPECT_EQ(comps[0].name, "V1");
    EXPECT_EQ(comps[2].name, "V1&V2");
    auto Y = y_variety_system(4, 2, static_cast<u32>(q));
    long long y = chain_count(4, 2, q, [&](auto& x) { return in_Y(x, q); });
    long long v1 = chain_count(4, 2, q, [&](auto& x) { return node_zero(x, 1); });
    long long v2 = chain_count(4, 2, q, [&](auto& x) {
      return minors_vanish(x, 0, 1, q) && minors_vanish(x, 0, 2, q) && minors_vanish(x, 1, 2, q);
    });
    long long v12 = chain_count(4, 2, q, [&](auto& x) { return node_zero(x, 1) && minors_vanish(x, 0, 2, q); });
    EXPECT_EQ(static_cast<long long>(count_points(Y.ring, Y.relations, q)), y);
    EXPECT_EQ(static_cast<long long>(count_points(comps[0].ring, comps[0].relations, q)), v1);
    EXPECT_EQ(static_cast<long long>(count_points(comps[1].ring, comps[1].relations, q)), v2);
    EXPECT_EQ(static_cast<long long>(count_points(comps[2].ring, comps[2].relations, q)), v12);
    EXPECT_EQ(y, v1 + v2 - v12);
  }
}

TEST(Components, U4KnownValues) {
  auto c3 = component_candidates_U4(2, 3);
  std::vector<u64> got;
  for (auto& c : c3) got.push_back(count_points(c.ring, c.relations, 3));
  EXPECT_EQ(got, (std::vector<u64>{81, 105, 33}));
}

TEST(Components, RankOneIrreducible) {
  auto Y = y_variety_system(4, 1, 3);
  EXPECT_TRUE(Y.relations.empty());
  EXPECT_EQ(count_points(Y.ring, Y.relations, 3), 27u);
  auto rep = conjecture_check(4, 1, {3});
  // at r = 1 the full-diagram member already covers Y
  EXPECT_EQ(rep.counts[1][3], 27u);
}

TEST(Components, Containment) {
  auto comps = component_candidates_U4(2, 3);
  auto Y = y_variety_system(4, 2, 3);
  // Y moved into the shared component ring
  std::vector<Poly> ids;
  for (size_t i = 0; i < Y.ring->size(); ++i) ids.push_back(Poly::variable(comps[0].ring, i));
  VarietySystem Yc{"Y", comps[0].ring, {}, 0};
  for (auto& f : Y.relations) Yc.relations.push_back(substitute(f, comps[0].ring, ids));
  EXPECT_TRUE(contained_in(comps[0], {&Yc}, 3));
  EXPECT_TRUE(contained_in(comps[1], {&Yc}, 3));
  EXPECT_TRUE(contained_in(comps[2], {&comps[0], &comps[1]}, 3));
  EXPECT_FALSE(contained_in(Yc, {&comps[0]}, 3));
  EXPECT_FALSE(contained_in(Yc, {&comps[1]}, 3));
  EXPECT_TRUE(contained_in(comps[0], {&Yc}, 9));
}

TEST(Subdiagrams, Families) {
  auto f3 = subdiagram_components(3, 2);
  ASSERT_EQ(f3.members.size(), 1u);
  EXPECT_EQ(f3.members[0].predicted_dim, 3);
  for (int r = 1; r <= 3; ++r) {
    auto f4 = subdiagram_components(4, r);
    ASSERT_EQ(f4.members.size(), 2u);
    EXPECT_EQ(f4.members[0].predicted_dim, r + 2);
    EXPECT_EQ(f4.members[1].predicted_dim, 2 * r);
    EXPECT_EQ(diagram_label(4, f4.members[1].mask), "{a1} + {a3}");
  }
  auto f5 = subdiagram_components(5, 2);
  ASSERT_EQ(f5.members.size(), 3u);
  EXPECT_EQ(f5.members[0].predicted_dim, 5);
  EXPECT_EQ(f5.members[1].predicted_dim, 5);
  EXPECT_EQ(f5.members[2].predicted_dim, 5);
  std::set<std::string> labels;
  for (auto& m : f5.members) labels.insert(diagram_label(5, m.mask));
  EXPECT_EQ(labels, (std::set<std::string>{"{a1,a2,a3,a4}", "{a1} + {a3,a4}", "{a1,a2} + {a4}"}));
}

TEST(Subdiagrams, EveryMemberIsContainedInY) {
  for (int N : {4, 5}) {
    auto Y = y_variety_system(N, 2, 3);
    for (auto& m : subdiagram_components(N, 2).members) {
      auto C = component_system(N, 2, Y.ring, m.mask);
      EXPECT_TRUE(contained_in(C, {&Y}, 3)) << diagram_label(N, m.mask);
    }
  }
}

TEST(Conjecture, U4Residual) {
  auto rep = conjecture_check(4, 2, {3, 5});
  EXPECT_TRUE(rep.residual_explained);
  EXPECT_EQ(rep.residual[3], 0);
  EXPECT_EQ(rep.residual[5], 0);
  EXPECT_EQ(rep.total[3], 153u);
  EXPECT_EQ(rep.total[5], 1225u);
  EXPECT_EQ(rep.predicted_max_dim, 4);
}

TEST(Conjecture, U5) {
  auto rep = conjecture_check(5, 2, {3});
  long long brute = chain_count(5, 2, 3, [](auto& x) { return in_Y(x, 3); });
  EXPECT_EQ(static_cast<long long>(rep.total[3]), brute);
  EXPECT_EQ(rep.total[3], 657u);
  EXPECT_EQ(rep.family.members.size(), 3u);
  EXPECT_EQ(rep.residual[3], 0);
}

TEST(Conjecture, U3Single) {
  for (int r = 1; r <= 3; ++r) {
    auto rep = conjecture_check(3, r, {3});
    EXPECT_EQ(rep.total[3], 1 + 4 * (ipow(3, r) - 1));
    EXPECT_EQ(rep.residual[3], 0);
  }
}

TEST(Conjecture, Errors) {
  EXPECT_THROW(conjecture_check(4, 2, {}), Error);
  EXPECT_THROW(subdiagram_components(2, 1), Error);
}

TEST(Frobenius, MapsPointsIntoY) {
  auto Y = y_variety_system(3, 2, 3);
  auto c = frobenius_on_points(Y, 9);
  EXPECT_EQ(c.points, 801u);
  EXPECT_EQ(c.points, 1 + 10 * 80u);
  EXPECT_TRUE(c.maps_into);
  EXPECT_TRUE(c.injective);
  auto c4 = frobenius_on_points(y_variety_system(4, 2, 3), 3);
  EXPECT_TRUE(c4.maps_into);
  EXPECT_EQ(c4.points, 153u);
}
