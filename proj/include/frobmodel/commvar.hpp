#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "grmodel.hpp"
#include "points.hpp"

namespace frobmodel {

struct VarietySystem {
  std::string name;
  RingPtr ring;
  std::vector<Poly> relations;
  u64 free_rank = 0;  // extra free coordinates of the X-level variety
};

// node s (1-based) of the A_{N-1} diagram at twist l
inline std::string chain_var_id(int s, int l) {
  return "X^{" + std::to_string(s) + "," + std::to_string(s + 1) + "}(" + std::to_string(l) + ")";
}

inline RingPtr chain_ring(int N, int r, u32 p) {
  std::vector<VariableDescriptor> vars;
  for (int l = 0; l < r; ++l)
    for (int s = 1; s < N; ++s) {
      Root g = simple_root(N - 1, s - 1);
      vars.push_back({chain_var_id(s, l), Parity::even, static_cast<int>(2 * ipow(p, r - l - 1)), scaled(g, ipow(p, r))});
    }
  return make_ring(p, vars, N - 1);
}

namespace detail {

inline Poly chain_var(const RingPtr& R, int N, int s, int l) {
  return Poly::variable(R, static_cast<size_t>(l) * (N - 1) + (s - 1));
}

// 2x2 minors between nodes s and t over all twist pairs
inline void add_minors(std::vector<Poly>& out, const RingPtr& R, int N, int r, int s, int t) {
  for (int l = 0; l < r; ++l)
    for (int l2 = l + 1; l2 < r; ++l2)
      out.push_back(chain_var(R, N, s, l) * chain_var(R, N, t, l2) - chain_var(R, N, s, l2) * chain_var(R, N, t, l));
}

}  // namespace detail

// Y_r(U_N/Gamma_3): level-1 coordinates, relations from the level-2 summand pairs
inline VarietySystem y_variety_system(int N, int r, u32 p) {
  require(N >= 3, ErrorCode::domain, "need N >= 3");
  require(r >= 1, ErrorCode::domain, "need r >= 1");
  ParabolicContext pc(build_root_system('A', N - 1), {});
  VarietySystem V{"Y_" + std::to_string(r) + "(U_" + std::to_string(N) + "/G_3)", chain_ring(N, r, p), {}, 0};
  for (const Root& b : pc.roots_of_level(2)) {
    V.free_rank += r;
    for (auto& [a, a2] : pc.summand_pairs(b)) {
      int s = 0, t = 0;
      for (int k = 0; k < N - 1; ++k) {
        if (a.c[k]) s = k + 1;
        if (a2.c[k]) t = k + 1;
      }
      detail::add_minors(V.relations, V.ring, N, r, s, t);
    }
  }
  return V;
}

// X_r(U_N/Gamma_3) with the level-2 coordinates appended as free variables
inline VarietySystem x_variety_system(int N, int r, u32 p) {
  auto Y = y_variety_system(N, r, p);
  ParabolicContext pc(build_root_system('A', N - 1), {});
  std::vector<VariableDescriptor> vars = Y.ring->vars();
  for (int l = 0; l < r; ++l)
    for (const Root& b : pc.roots_of_level(2))
      vars.push_back({coordinate_var_id(b, l), Parity::even, static_cast<int>(2 * ipow(p, r - l - 1)),
                      scaled(b, ipow(p, r))});
  auto R = make_ring(p, vars, N - 1);
  VarietySystem X{"X_" + std::to_string(r) + "(U_" + std::to_string(N) + "/G_3)", R, {}, Y.free_rank};
  std::vector<Poly> images;
  for (size_t i = 0; i < Y.ring->size(); ++i) images.push_back(Poly::variable(R, i));
  for (auto& f : Y.relations) X.relations.push_back(substitute(f, R, images));
  return X;
}

// V_r(U_3) from the coordinate algebra
inline VarietySystem v_variety_U3(int r, u32 p) {
  ParabolicContext pc(build_root_system('A', 2), {});
  auto C = vr_coordinate_algebra(full_model_context(pc, r, p));
  std::vector<Poly> rels;
  for (auto& m : C.relations) rels.push_back(m.poly);
  return {"V_" + std::to_string(r) + "(U_3)", C.ring, rels, static_cast<u64>(r)};
}

// connected components of a node set of the path 1..N-1
inline std::vector<std::vector<int>> segments(int N, unsigned mask) {
  std::vector<std::vector<int>> out;
  for (int s = 1; s < N; ++s) {
    if (!(mask >> (s - 1) & 1u)) continue;
    if (out.empty() || out.back().back() != s - 1) out.push_back({});
    out.back().push_back(s);
  }
  return out;
}

inline std::string diagram_label(int N, unsigned mask) {
  std::string s;
  for (auto& seg : segments(N, mask)) {
    if (!s.empty()) s += " + ";
    s += "{";
    for (size_t k = 0; k < seg.size(); ++k) s += (k ? "," : "") + std::string("a") + std::to_string(seg[k]);
    s += "}";
  }
  return s.empty() ? "{}" : s;
}

// removed nodes vanish, all cross-node minors vanish inside each segment
inline VarietySystem component_system(int N, int r, const RingPtr& R, unsigned mask) {
  require(R->size() == static_cast<size_t>((N - 1) * r), ErrorCode::domain, "component system needs the chain ring");
  VarietySystem V{"component " + diagram_label(N, mask), R, {}, 0};
  for (int s = 1; s < N; ++s)
    if (!(mask >> (s - 1) & 1u))
      for (int l = 0; l < r; ++l) V.relations.push_back(detail::chain_var(V.ring, N, s, l));
  for (auto& seg : segments(N, mask))
    for (size_t a = 0; a < seg.size(); ++a)
      for (size_t b = a + 1; b < seg.size(); ++b) detail::add_minors(V.relations, V.ring, N, r, seg[a], seg[b]);
  return V;
}

inline VarietySystem intersect(const VarietySystem& A, const VarietySystem& B) {
  require(A.ring == B.ring, ErrorCode::domain, "systems in different rings");
  VarietySystem V{A.name + " & " + B.name, A.ring, A.relations, 0};
  V.relations.insert(V.relations.end(), B.relations.begin(), B.relations.end());
  return V;
}

// [V1, V2, V1 & V2] for U_4/Gamma_3
inline std::vector<VarietySystem> component_candidates_U4(int r, u32 p) {
  auto R = chain_ring(4, r, p);
  auto V1 = component_system(4, r, R, 0b101);
  auto V2 = component_system(4, r, R, 0b111);
  V1.name = "V1";
  V2.name = "V2";
  auto I = intersect(V1, V2);
  I.name = "V1&V2";
  return {V1, V2, I};
}

struct SubdiagramMember {
  unsigned mask = 0;
  int nodes = 0;
  int components = 0;
  int predicted_dim = 0;
};

struct SubdiagramFamily {
  int N = 0, r = 0;
  std::vector<SubdiagramMember> members;  // full diagram first
};

inline SubdiagramFamily subdiagram_components(int N, int r) {
  require(N >= 3 && N <= 20, ErrorCode::domain, "need 3 <= N <= 20");
  require(r >= 1, ErrorCode::domain, "need r >= 1");
  SubdiagramFamily fam{N, r, {}};
  unsigned full = (1u << (N - 1)) - 1;
  std::vector<unsigned> queue{full};
  std::set<unsigned> seen{full};
  for (size_t k = 0; k < queue.size(); ++k) {
    unsigned m = queue[k];
    size_t comps = segments(N, m).size();
    for (int s = 1; s < N; ++s) {
      if (!(m >> (s - 1) & 1u)) continue;
      unsigned m2 = m & ~(1u << (s - 1));
      if (segments(N, m2).size() == comps + 1 && seen.insert(m2).second) queue.push_back(m2);
    }
  }
  for (unsigned m : queue) {
    SubdiagramMember d{m, __builtin_popcount(m), static_cast<int>(segments(N, m).size()), 0};
    d.predicted_dim = d.nodes + (r - 1) * d.components;
    fam.members.push_back(d);
  }
  return fam;
}

inline double growth_exponent(u64 count, u64 q) { return count ? std::log(double(count)) / std::log(double(q)) : 0.0; }

struct ComponentReport {
  int N = 0, r = 0;
  std::vector<u64> qs;
  SubdiagramFamily family;
  std::map<u64, u64> total;  // q -> |Y_r(F_q)|
  // subset of members (bitmask over family.members) -> q -> count of the intersection
  std::map<unsigned, std::map<u64, u64>> counts;
  std::map<u64, long long> residual;  // |Y| - inclusion-exclusion
  std::map<u64, double> observed_exponent;
  double slope = 0.0;  // two-q estimate when available
  int predicted_max_dim = 0;
  bool dimension_match = false;
  bool residual_explained = false;
};

inline ComponentReport conjecture_check(int N, int r, const std::vector<u64>& qs) {
  require(!qs.empty(), ErrorCode::config, "need at least one q");
  ComponentReport rep;
  rep.N = N;
  rep.r = r;
  rep.qs = qs;
  rep.family = subdiagram_components(N, r);
  size_t k = rep.family.members.size();
  require(k <= 16, ErrorCode::resource, "too many sub-diagrams for inclusion-exclusion");
  for (auto& m : rep.family.members) rep.predicted_max_dim = std::max(rep.predicted_max_dim, m.predicted_dim);
  rep.residual_explained = true;
  for (u64 q : qs) {
    u32 p = split_prime_power(q).first;
    require_odd_prime(p);
    auto Y = y_variety_system(N, r, p);
    rep.total[q] = count_points(Y.ring, Y.relations, q);
    std::vector<VarietySystem> comps;
    for (auto& m : rep.family.members) comps.push_back(component_system(N, r, Y.ring, m.mask));
    long long ie = 0;
    for (unsigned sub = 1; sub < (1u << k); ++sub) {
      std::vector<Poly> rels;
      for (size_t c = 0; c < k; ++c)
        if (sub >> c & 1u) rels.insert(rels.end(), comps[c].relations.begin(), comps[c].relations.end());
      u64 n = count_points(Y.ring, rels, q);
      rep.counts[sub][q] = n;
      ie += (__builtin_popcount(sub) % 2 ? 1 : -1) * static_cast<long long>(n);
    }
    rep.residual[q] = static_cast<long long>(rep.total[q]) - ie;
    if (rep.residual[q] != 0) rep.residual_explained = false;
    rep.observed_exponent[q] = growth_exponent(rep.total[q], q);
  }
  if (qs.size() >= 2) {
    u64 a = qs.front(), b = qs.back();
    rep.slope = std::log(double(rep.total[b]) / double(rep.total[a])) / std::log(double(b) / double(a));
  }
  rep.dimension_match = true;
  for (auto& [q, e] : rep.observed_exponent) rep.dimension_match = rep.dimension_match && std::abs(e - rep.predicted_max_dim) <= 0.5;
  return rep;
}

struct FrobeniusCheck {
  u64 q = 0;
  u64 points = 0;
  bool maps_into = true;
  bool injective = true;
};

// coordinatewise x -> x^p on Y(F_q)
inline FrobeniusCheck frobenius_on_points(const VarietySystem& V, u64 q) {
  GaloisField F(q);
  CompiledSystem sys(V.ring, V.relations, F);
  FrobeniusCheck c{q, 0, true, true};
  std::set<std::vector<u32>> images;
  for_each_point(V.ring, V.relations, F, [&](const std::vector<u32>& x) {
    ++c.points;
    std::vector<u32> y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = F.pow(x[i], F.characteristic());
    if (!sys.vanishes(y)) c.maps_into = false;
    if (!images.insert(y).second) c.injective = false;
  });
  return c;
}

// every point of the first system also satisfies each listed system
inline bool contained_in(const VarietySystem& A, const std::vector<const VarietySystem*>& Bs, u64 q) {
  GaloisField F(q);
  std::vector<CompiledSystem> checks;
  for (auto* B : Bs) {
    require(B->ring == A.ring, ErrorCode::domain, "systems in different rings");
    checks.emplace_back(B->ring, B->relations, F);
  }
  bool ok = true;
  for_each_point(A.ring, A.relations, F, [&](const std::vector<u32>& x) {
    for (auto& c : checks) ok = ok && c.vanishes(x);
  });
  return ok;
}

}  // namespace frobmodel
