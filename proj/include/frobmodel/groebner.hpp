#pragma once

#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "poly.hpp"

namespace frobmodel {

struct GroebnerOptions {
  size_t max_basis = 20000;
  size_t max_pairs = 2000000;
};

struct GroebnerBasis {
  RingPtr ring;
  std::string order = "weighted-degrevlex";
  std::vector<Poly> basis;  // reduced, monic, sorted by leading monomial
};

namespace gb {

inline bool divides(const Exps& a, const Exps& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}
inline Exps lcm(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}
inline Exps quotient(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline bool coprime(const Exps& a, const Exps& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}
inline Poly monic(const Poly& f) {
  if (f.is_zero()) return f;
  return f.scale_fp(f.ring()->field().inv(f.leading().c));
}
// c * x^m * g, g even
inline Poly shift(const Poly& g, const Exps& m, u32 c) {
  std::vector<Term> ts;
  ts.reserve(g.size());
  const Fp& F = g.ring()->field();
  for (const auto& t : g.terms()) {
    Exps e = t.e;
    for (size_t i = 0; i < e.size(); ++i) e[i] += m[i];
    ts.push_back({std::move(e), F.mul(t.c, c)});
  }
  return Poly::from_terms(g.ring(), std::move(ts));
}

inline void require_even(const Poly& f) {
  require(!f.has_odd(), ErrorCode::unsupported, "Groebner bases are only computed in the even subring");
}

}  // namespace gb

// full reduction of f by the list G (any list, not necessarily a basis)
inline Poly reduce(const Poly& f, const std::vector<Poly>& G) {
  gb::require_even(f);
  const RingPtr& R = f.ring();
  const Fp& F = R->field();
  auto cmp = [&](const Exps& a, const Exps& b) { return R->greater(a, b); };
  std::map<Exps, u32, decltype(cmp)> work(cmp);
  for (const auto& t : f.terms()) work.emplace(t.e, t.c);
  std::vector<Term> rem;
  while (!work.empty()) {
    auto it = work.begin();
    Exps e = it->first;
    u32 c = it->second;
    work.erase(it);
    const Poly* div = nullptr;
    for (const auto& g : G)
      if (gb::divides(g.leading().e, e)) {
        div = &g;
        break;
      }
    if (!div) {
      rem.push_back({e, c});
      continue;
    }
    u32 factor = F.mul(c, F.inv(div->leading().c));
    Exps m = gb::quotient(e, div->leading().e);
    bool skip_lead = true;
    for (const auto& t : div->terms()) {
      if (skip_lead) { skip_lead = false; continue; }
      Exps ee = t.e;
      for (size_t i = 0; i < ee.size(); ++i) ee[i] += m[i];
      u32 sub = F.mul(factor, t.c);
      auto [slot, inserted] = work.emplace(ee, F.neg(sub));
      if (!inserted) {
        slot->second = F.sub(slot->second, sub);
        if (!slot->second) work.erase(slot);
      }
    }
  }
  return Poly::from_terms(R, std::move(rem));
}

inline Poly normal_form(const Poly& f, const GroebnerBasis& G) {
  require(f.ring() == G.ring, ErrorCode::domain, "normal form across rings");
  return reduce(f, G.basis);
}

inline GroebnerBasis buchberger(const RingPtr& R, const std::vector<Poly>& input, GroebnerOptions opt = {}) {
  GroebnerBasis out;
  out.ring = R;
  std::vector<Poly> G;
  for (const auto& f : input) {
    require(f.ring() == R, ErrorCode::domain, "relation lives in a different ring");
    gb::require_even(f);
    Poly h = gb::monic(reduce(f, G));
    if (!h.is_zero()) G.push_back(h);
  }
  // pairs ordered by degree of the lcm (normal strategy)
  struct Pair {
    long long deg;
    size_t i, j;
    bool operator<(const Pair& o) const { return std::tie(deg, j, i) < std::tie(o.deg, o.j, o.i); }
  };
  std::set<Pair> pairs;
  std::set<std::pair<size_t, size_t>> done;
  auto add_pairs = [&](size_t j) {
    for (size_t i = 0; i < j; ++i) pairs.insert({R->degree(gb::lcm(G[i].leading().e, G[j].leading().e)), i, j});
  };
  for (size_t j = 0; j < G.size(); ++j) add_pairs(j);
  size_t processed = 0;
  while (!pairs.empty()) {
    Pair pr = *pairs.begin();
    pairs.erase(pairs.begin());
    require(++processed <= opt.max_pairs, ErrorCode::resource, "Buchberger pair budget exceeded");
    done.insert({pr.i, pr.j});
    const Exps& a = G[pr.i].leading().e;
    const Exps& b = G[pr.j].leading().e;
    if (gb::coprime(a, b)) continue;
    Exps l = gb::lcm(a, b);
    // chain criterion
    bool redundant = false;
    for (size_t k = 0; k < G.size() && !redundant; ++k) {
      if (k == pr.i || k == pr.j || !gb::divides(G[k].leading().e, l)) continue;
      auto key = [](size_t x, size_t y) { return std::make_pair(std::min(x, y), std::max(x, y)); };
      redundant = done.count(key(pr.i, k)) && done.count(key(pr.j, k));
    }
    if (redundant) continue;
    Poly s = gb::shift(G[pr.i], gb::quotient(l, a), 1) - gb::shift(G[pr.j], gb::quotient(l, b), 1);
    Poly h = gb::monic(reduce(s, G));
    if (h.is_zero()) continue;
    G.push_back(h);
    require(G.size() <= opt.max_basis, ErrorCode::resource, "Groebner basis size budget exceeded");
    add_pairs(G.size() - 1);
  }
  // minimal then reduced
  std::vector<Poly> minimal;
  for (size_t i = 0; i < G.size(); ++i) {
    bool drop = false;
    for (size_t k = 0; k < G.size() && !drop; ++k) {
      if (k == i) continue;
      const Exps& lk = G[k].leading().e;
      const Exps& li = G[i].leading().e;
      drop = gb::divides(lk, li) && (lk != li || k < i);
    }
    if (!drop) minimal.push_back(G[i]);
  }
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    Poly tail = minimal[i] - Poly::from_terms(R, {minimal[i].leading()});
    Poly red = Poly::from_terms(R, {minimal[i].leading()}) + reduce(tail, others);
    out.basis.push_back(gb::monic(red));
  }
  std::sort(out.basis.begin(), out.basis.end(),
            [&](const Poly& x, const Poly& y) { return R->greater(y.leading().e, x.leading().e); });
  return out;
}

inline GroebnerBasis buchberger(const IdealPresentation& I, GroebnerOptions opt = {}) {
  return buchberger(I.ring, I.relations, opt);
}

inline bool is_standard(const Exps& e, const GroebnerBasis& G) {
  for (const auto& g : G.basis)
    if (gb::divides(g.leading().e, e)) return false;
  return true;
}

// default bound on exhaustive monomial enumeration
inline long long default_degree_bound(u32 p) { return 2LL * p * p + 2; }

// visit every monomial of the given coh degree (odd exponents 0/1)
inline void for_each_monomial(const Ring& R, long long degree, const std::function<void(const Exps&)>& visit,
                              size_t max_count = 50000000) {
  Exps e(R.size(), 0);
  size_t count = 0;
  std::function<void(size_t, long long)> rec = [&](size_t i, long long left) {
    if (i == R.size()) {
      if (left == 0) {
        require(++count <= max_count, ErrorCode::resource, "monomial enumeration budget exceeded");
        visit(e);
      }
      return;
    }
    long long d = R.var(i).coh_degree;
    long long top = R.odd(i) ? std::min<long long>(1, left / d) : left / d;
    for (long long k = 0; k <= top; ++k) {
      e[i] = static_cast<u32>(k);
      rec(i + 1, left - k * d);
    }
    e[i] = 0;
  };
  rec(0, degree);
}

// weight -> dimension of the degree-d piece of ring / (ideal with basis G), odd part free
inline std::map<Weight, long long> graded_character(const GroebnerBasis& G, long long degree,
                                                    long long bound = -1) {
  const Ring& R = *G.ring;
  if (bound < 0) bound = default_degree_bound(R.p());
  require(degree <= bound, ErrorCode::resource, "degree exceeds the enumeration bound");
  std::map<Weight, long long> out;
  if (degree < 0) return out;
  Exps even(R.size());
  for_each_monomial(R, degree, [&](const Exps& e) {
    for (size_t i = 0; i < e.size(); ++i) even[i] = R.odd(i) ? 0 : e[i];
    if (is_standard(even, G)) ++out[R.weight(e)];
  });
  return out;
}

inline long long graded_dimension(const GroebnerBasis& G, long long degree, const Weight* weight = nullptr,
                                  long long bound = -1) {
  auto ch = graded_character(G, degree, bound);
  if (weight) {
    auto it = ch.find(*weight);
    return it == ch.end() ? 0 : it->second;
  }
  long long s = 0;
  for (auto& [w, n] : ch) s += n;
  return s;
}

inline long long graded_dimension(const IdealPresentation& P, long long degree, const Weight* weight = nullptr,
                                  long long bound = -1) {
  return graded_dimension(buchberger(P), degree, weight, bound);
}

// number of standard monomials of a zero-dimensional ideal in an even ring
inline long long count_standard_monomials(const GroebnerBasis& G, long long max_count = 10000000) {
  const Ring& R = *G.ring;
  for (size_t i = 0; i < R.size(); ++i) {
    bool pure = false;
    for (const auto& g : G.basis) {
      const Exps& e = g.leading().e;
      bool only_i = e[i] > 0;
      for (size_t k = 0; k < e.size() && only_i; ++k) only_i = k == i || e[k] == 0;
      pure = pure || only_i;
    }
    require(pure, ErrorCode::domain, "ideal is not zero-dimensional");
  }
  long long count = 0;
  Exps e(R.size(), 0);
  // standard monomials form an order ideal; walk it variable by variable
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == R.size()) {
      require(++count <= max_count, ErrorCode::resource, "standard monomial count budget exceeded");
      return;
    }
    for (e[i] = 0;; ++e[i]) {
      Exps probe = e;
      for (size_t k = i + 1; k < probe.size(); ++k) probe[k] = 0;
      if (!is_standard(probe, G)) break;
      rec(i + 1);
    }
    e[i] = 0;
  };
  rec(0);
  return count;
}

}  // namespace frobmodel
