#include <gtest/gtest.h>

#include <random>

#include "frobmodel/groebner.hpp"
#include "frobmodel/points.hpp"
#include "oracles.hpp"

using namespace frobmodel;

namespace {

RingPtr even_ring(u32 p, std::vector<std::string> ids, std::vector<int> degs = {}) {
  std::vector<VariableDescriptor> v;
  for (size_t i = 0; i < ids.size(); ++i) v.push_back({ids[i], Parity::even, degs.empty() ? 2 : degs[i], {}});
  return make_ring(p, v, 0);
}

// two even, two odd, weights in Z^2
RingPtr mixed_ring(u32 p = 3) {
  return make_ring(p,
                   {{"x", Parity::even, 2, {1, 0}},
                    {"z", Parity::even, 4, {0, 1}},
                    {"ya", Parity::odd, 1, {1, 1}},
                    {"yb", Parity::odd, 1, {2, 0}}},
                   2);
}

Poly random_poly(const RingPtr& R, std::mt19937& rng, int terms = 4, int maxexp = 2) {
  std::vector<Term> t;
  std::uniform_int_distribution<int> coef(0, static_cast<int>(R->p()) - 1), ex(0, maxexp), bit(0, 1);
  for (int k = 0; k < terms; ++k) {
    Exps e(R->size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = R->odd(i) ? bit(rng) : ex(rng);
    t.push_back({e, static_cast<u32>(coef(rng))});
  }
  return Poly::from_terms(R, t);
}

Poly V(const RingPtr& R, const std::string& id) { return Poly::variable(R, id); }
Poly C(const RingPtr& R, long long c) { return Poly::constant(R, c); }

}  // namespace

TEST(Poly, OddSquareVanishes) {
  auto R = mixed_ring();
  auto ya = V(R, "ya");
  EXPECT_TRUE((ya * ya).is_zero());
}

TEST(Poly, OddAnticommute) {
  auto R = mixed_ring();
  auto ya = V(R, "ya"), yb = V(R, "yb");
  EXPECT_EQ(ya * yb, -(yb * ya));
  EXPECT_FALSE((ya * yb).is_zero());
}

TEST(Poly, DifferenceOfSquares) {
  auto R = even_ring(3, {"x"});
  auto x = V(R, "x");
  EXPECT_EQ((x + C(R, 1)) * (x - C(R, 1)), x * x - C(R, 1));
  EXPECT_EQ(((x + C(R, 1)) * (x - C(R, 1))).str(), "x^2 - 1");
}

TEST(Poly, CoefficientsReducedModP) {
  auto R = even_ring(5, {"x"});
  auto x = V(R, "x");
  EXPECT_TRUE((x.scale(5)).is_zero());
  EXPECT_EQ(x.scale(7), x.scale(2));
  EXPECT_EQ(x.scale(-1), -x);
}

TEST(Poly, MismatchedRings) {
  auto R = even_ring(3, {"x"}), S = even_ring(3, {"x"});
  EXPECT_THROW(V(R, "x") + V(S, "x"), Error);
  EXPECT_THROW(V(R, "x") * V(S, "x"), Error);
}

TEST(Poly, RingValidation) {
  EXPECT_THROW(make_ring(3, {{"y", Parity::odd, 2, {}}}, 0), Error);
  EXPECT_THROW(make_ring(3, {{"x", Parity::even, 2, {}}, {"x", Parity::even, 2, {}}}, 0), Error);
  EXPECT_THROW(make_ring(4, {{"x", Parity::even, 2, {}}}, 0), Error);
  EXPECT_THROW(make_ring(2, {{"x", Parity::even, 2, {}}}, 0), Error);
}

TEST(PolyProperty, RingLaws) {
  auto R = mixed_ring(5);
  std::mt19937 rng(7);
  for (int it = 0; it < 200; ++it) {
    auto f = random_poly(R, rng), g = random_poly(R, rng), h = random_poly(R, rng);
    EXPECT_EQ(f + g, g + f);
    EXPECT_EQ((f + g) + h, f + (g + h));
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_EQ((f + g) * h, f * h + g * h);
    EXPECT_TRUE((f - f).is_zero());
    EXPECT_EQ(f * C(R, 1), f);
  }
}

TEST(PolyProperty, GradedCommutativity) {
  auto R = mixed_ring(3);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> ex(0, 2), bit(0, 1);
  for (int it = 0; it < 300; ++it) {
    Exps a(4), b(4);
    for (int i = 0; i < 2; ++i) a[i] = ex(rng), b[i] = ex(rng);
    for (int i = 2; i < 4; ++i) a[i] = bit(rng), b[i] = bit(rng);
    auto f = Poly::monomial(R, a), g = Poly::monomial(R, b);
    long long da = R->degree(a), db = R->degree(b);
    auto expect = (da * db) % 2 ? -(g * f) : g * f;
    EXPECT_EQ(f * g, expect);
  }
}

TEST(PolyProperty, FrobeniusAdditiveOnEvenPart) {
  for (u32 p : {3u, 5u, 7u}) {
    auto R = even_ring(p, {"a", "b", "c"});
    std::mt19937 rng(p);
    for (int it = 0; it < 40; ++it) {
      auto f = random_poly(R, rng, 3, 2), g = random_poly(R, rng, 3, 2);
      EXPECT_EQ((f + g).frobenius(), f.frobenius() + g.frobenius());
      EXPECT_EQ((f * g).frobenius(), f.frobenius() * g.frobenius());
    }
  }
}

TEST(PolyProperty, DegreeAndWeightAdditive) {
  auto R = mixed_ring(3);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> ex(0, 3), bit(0, 1);
  for (int it = 0; it < 200; ++it) {
    Exps a(4), b(4);
    for (int i = 0; i < 2; ++i) a[i] = ex(rng), b[i] = ex(rng);
    a[2] = bit(rng), b[3] = bit(rng);
    auto f = Poly::monomial(R, a), g = Poly::monomial(R, b);
    auto fg = f * g;
    ASSERT_FALSE(fg.is_zero());
    EXPECT_EQ(fg.degree(), f.degree() + g.degree());
    auto w = f.weight();
    for (size_t k = 0; k < w.size(); ++k) w[k] += g.weight()[k];
    EXPECT_EQ(fg.weight(), w);
    EXPECT_TRUE(fg.is_homogeneous());
  }
}

TEST(PolyProperty, PowMatchesRepeatedProduct) {
  auto R = even_ring(3, {"a", "b"});
  std::mt19937 rng(5);
  for (int it = 0; it < 20; ++it) {
    auto f = random_poly(R, rng, 3, 1);
    Poly acc = C(R, 1);
    for (int n = 0; n <= 6; ++n) {
      EXPECT_EQ(f.pow(n), acc);
      acc *= f;
    }
  }
}

TEST(Substitute, Homomorphism) {
  auto R = even_ring(5, {"a", "b"}), S = even_ring(5, {"s", "t"});
  std::vector<Poly> img{V(S, "s") * V(S, "t"), V(S, "s") + V(S, "t")};
  std::mt19937 rng(9);
  for (int it = 0; it < 40; ++it) {
    auto f = random_poly(R, rng), g = random_poly(R, rng);
    EXPECT_EQ(substitute(f * g, S, img), substitute(f, S, img) * substitute(g, S, img));
    EXPECT_EQ(substitute(f + g, S, img), substitute(f, S, img) + substitute(g, S, img));
  }
}

TEST(Groebner, SingleVariable) {
  auto R = even_ring(3, {"x", "y"});
  auto G = buchberger(R, {V(R, "x")});
  ASSERT_EQ(G.basis.size(), 1u);
  EXPECT_EQ(G.basis[0], V(R, "x"));
}

TEST(Groebner, ZeroIdeal) {
  auto R = even_ring(3, {"x", "y"});
  EXPECT_TRUE(buchberger(R, {}).basis.empty());
  EXPECT_TRUE(buchberger(R, {Poly(R)}).basis.empty());
}

TEST(Groebner, HandExample) {
  auto R = even_ring(3, {"x", "y"});
  auto x = V(R, "x"), y = V(R, "y");
  IdealPresentation I(R, {x * y - C(R, 1), y * y - x}, false);
  auto G = buchberger(I);
  std::set<std::string> got;
  for (auto& g : G.basis) got.insert(g.str());
  EXPECT_EQ(got, (std::set<std::string>{"x*y - 1", "y^2 - x", "x^2 - y"}));
  EXPECT_EQ(normal_form(x.pow(3), G), C(R, 1));
  EXPECT_EQ(count_standard_monomials(G), 3);
}

TEST(Groebner, NormalForms) {
  auto R = even_ring(3, {"x", "y"});
  auto x = V(R, "x"), y = V(R, "y");
  auto G = buchberger(R, {x * x - y * y, x * y * y});
  EXPECT_TRUE(normal_form(x * (x * x - y * y) + y * (x * y * y), G).is_zero());
  EXPECT_EQ(normal_form(C(R, 1), G), C(R, 1));
}

TEST(Groebner, OddRelationUnsupported) {
  auto R = mixed_ring();
  try {
    buchberger(R, {V(R, "x") * V(R, "ya")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported);
  }
}

TEST(GroebnerProperty, ReducedIdempotentAndStable) {
  auto R = even_ring(5, {"a", "b", "c"});
  std::mt19937 rng(21);
  for (int it = 0; it < 15; ++it) {
    std::vector<Poly> gens{random_poly(R, rng, 3, 2), random_poly(R, rng, 3, 2), random_poly(R, rng, 2, 3)};
    auto G = buchberger(R, gens);
    for (auto& g : gens) EXPECT_TRUE(normal_form(g, G).is_zero());
    for (size_t i = 0; i < G.basis.size(); ++i) {
      EXPECT_EQ(G.basis[i].leading().c, 1u);
      std::vector<Poly> others;
      for (size_t k = 0; k < G.basis.size(); ++k)
        if (k != i) others.push_back(G.basis[k]);
      // reduced: no term of g_i is divisible by another leading term
      for (auto& t : G.basis[i].terms())
        for (auto& o : others) EXPECT_FALSE(gb::divides(o.leading().e, t.e));
    }
    auto G2 = buchberger(R, G.basis);
    ASSERT_EQ(G2.basis.size(), G.basis.size());
    for (size_t i = 0; i < G.basis.size(); ++i) EXPECT_EQ(G2.basis[i], G.basis[i]);
    // normal form is idempotent and linear
    auto f = random_poly(R, rng, 5, 4), h = random_poly(R, rng, 5, 4);
    EXPECT_EQ(normal_form(normal_form(f, G), G), normal_form(f, G));
    EXPECT_EQ(normal_form(f + h, G), normal_form(f, G) + normal_form(h, G));
    EXPECT_TRUE(normal_form(f * gens[0], G).is_zero());
  }
}

TEST(GroebnerProperty, HilbertMatchesLinearAlgebra) {
  // random homogeneous ideals in a weighted polynomial ring
  std::vector<int> degs{2, 2, 4, 6};
  auto R = even_ring(3, {"a", "b", "c", "d"}, degs);
  std::mt19937 rng(33);
  for (int it = 0; it < 12; ++it) {
    std::vector<Poly> rels;
    std::vector<std::pair<int, oracle::SPoly>> orels;
    for (int k = 0; k < 3; ++k) {
      int rd = 4 + 2 * (rng() % 3);
      std::vector<oracle::Vec> mons;
      oracle::monomials_of_degree(degs, rd, mons);
      oracle::SPoly sp;
      std::vector<Term> t;
      for (int m = 0; m < 3; ++m) {
        auto& e = mons[rng() % mons.size()];
        long long c = 1 + rng() % 2;
        sp[e] = (sp[e] + c) % 3;
        t.push_back({Exps(e.begin(), e.end()), static_cast<u32>(c)});
      }
      rels.push_back(Poly::from_terms(R, t));
      orels.emplace_back(rd, sp);
    }
    auto G = buchberger(R, rels);
    for (int d = 0; d <= 14; d += 2) EXPECT_EQ(graded_dimension(G, d), oracle::quotient_dimension(degs, orels, d, 3));
  }
}

TEST(GradedDimension, DegreeZeroAndBound) {
  auto R = even_ring(3, {"x"});
  auto G = buchberger(R, {V(R, "x").pow(3)});
  EXPECT_EQ(graded_dimension(G, 0), 1);
  EXPECT_EQ(graded_dimension(G, 4), 1);
  EXPECT_EQ(graded_dimension(G, 6), 0);
  EXPECT_EQ(graded_dimension(G, 3), 0);
  try {
    graded_dimension(G, 1000, nullptr, 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::resource);
  }
}

TEST(GradedDimension, OddPartFree) {
  auto R = mixed_ring();
  auto G = buchberger(R, {V(R, "x").pow(2)});
  // degree 2: x, ya*yb ; degree 3: x*ya, x*yb
  EXPECT_EQ(graded_dimension(G, 2), 2);
  EXPECT_EQ(graded_dimension(G, 3), 2);
  Weight w{1, 1};
  EXPECT_EQ(graded_dimension(G, 1, &w), 1);
}

TEST(Points, RankOneTwoByTwo) {
  auto R = even_ring(3, {"a0", "a1", "b0", "b1"});
  auto f = V(R, "a0") * V(R, "b1") - V(R, "a1") * V(R, "b0");
  EXPECT_EQ(count_points(R, {f}, 3), 33u);
  EXPECT_EQ(count_points(R, {f}, 3, {0, 1}), 33u);
  auto S = even_ring(5, {"a0", "a1", "b0", "b1"});
  auto g = V(S, "a0") * V(S, "b1") - V(S, "a1") * V(S, "b0");
  EXPECT_EQ(count_points(S, {g}, 5), static_cast<u64>(oracle::rank_le1_2xr(2, 5)));
}

TEST(Points, Trivial) {
  auto R = even_ring(3, {"a", "b", "c"});
  EXPECT_EQ(count_points(R, {}, 3), 27u);
  EXPECT_EQ(count_points(R, {}, 9), 729u);
  auto S = even_ring(5, {"x"});
  EXPECT_EQ(count_points(S, {V(S, "x")}, 5), 1u);
  EXPECT_EQ(count_points(S, {C(S, 1)}, 5), 0u);
}

TEST(Points, ExtensionField) {
  // x^2 + 1 has no root over F_3 and two over F_9
  auto R = even_ring(3, {"x"});
  auto f = V(R, "x").pow(2) + C(R, 1);
  EXPECT_EQ(count_points(R, {f}, 3), 0u);
  EXPECT_EQ(count_points(R, {f}, 9), 2u);
  EXPECT_EQ(count_points(R, {f}, 27), 0u);
  // x^q = x on all of GF(q)
  auto S = even_ring(3, {"x"});
  EXPECT_EQ(count_points(S, {V(S, "x").pow(9) - V(S, "x")}, 9), 9u);
}

TEST(PointsProperty, ProductLaw) {
  // disjoint variable sets multiply
  auto R = even_ring(3, {"a0", "a1", "b0", "b1", "c", "d"});
  auto f = V(R, "a0") * V(R, "b1") - V(R, "a1") * V(R, "b0");
  auto g = V(R, "c") * V(R, "d");
  auto Rg = even_ring(3, {"c", "d"});
  u64 nf = 33, ng = count_points(Rg, {V(Rg, "c") * V(Rg, "d")}, 3);
  EXPECT_EQ(ng, 5u);
  EXPECT_EQ(count_points(R, {f, g}, 3), nf * ng);
}

TEST(Points, Errors) {
  auto R = even_ring(3, {"a", "b", "c", "d"});
  try {
    count_points(R, {}, 3, {10, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::resource);
  }
  try {
    count_points(R, {}, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config);
  }
  EXPECT_THROW(count_points(R, {}, 6), Error);
}

TEST(GaloisField, Axioms) {
  for (u64 q : {9u, 25u, 27u}) {
    GaloisField F(q);
    int units = 0;
    for (u32 a = 0; a < q; ++a) {
      EXPECT_EQ(F.add(a, 0), a);
      EXPECT_EQ(F.mul(a, 1), a);
      EXPECT_EQ(F.pow(a, q), a);
      bool has_inv = false;
      for (u32 b = 0; b < q; ++b) has_inv = has_inv || F.mul(a, b) == 1;
      units += has_inv;
    }
    EXPECT_EQ(units, static_cast<int>(q) - 1);
  }
}
