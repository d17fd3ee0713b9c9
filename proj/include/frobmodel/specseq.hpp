#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grmodel.hpp"

namespace frobmodel {

// E_2 of the extension Gamma_v/Gamma_{v+1} -> U_J/Gamma_{v+1} -> U_J/Gamma_v, height r
struct BigradedPage {
  ParabolicContext pc;
  int v = 2;
  int r = 1;
  u32 p = 3;
  RingPtr ring;
  std::vector<Root> roots;  // levels 1..v
  std::vector<bool> fiber;  // per variable

  size_t xi(const Root& g, int l) const { return index(g, l, 0); }
  size_t yi(const Root& g, int l) const { return index(g, l, 1); }
  // zero when the twist is truncated
  Poly x(const Root& g, int l) const { return l >= r ? Poly(ring) : Poly::variable(ring, xi(g, l)); }
  Poly y(const Root& g, int l) const { return l >= r ? Poly(ring) : Poly::variable(ring, yi(g, l)); }
  Root root_of(size_t var) const { return roots[(var / 2) % roots.size()]; }
  int twist_of(size_t var) const { return static_cast<int>(var / (2 * roots.size())); }

  std::pair<long long, long long> bidegree(const Exps& e) const {
    long long a = 0, b = 0;
    for (size_t i = 0; i < e.size(); ++i) (fiber[i] ? b : a) += static_cast<long long>(e[i]) * ring->var(i).coh_degree;
    return {a, b};
  }

 private:
  size_t index(const Root& g, int l, int odd) const {
    require(l >= 0 && l < r, ErrorCode::domain, "twist out of range");
    for (size_t k = 0; k < roots.size(); ++k)
      if (roots[k] == g) return (static_cast<size_t>(l) * roots.size() + k) * 2 + odd;
    fail(ErrorCode::domain, "root not on the page: " + root_label(g));
  }
};

inline BigradedPage make_page(const ParabolicContext& pc, int v, int r, u32 p) {
  require_odd_prime(p);
  require(v >= 2, ErrorCode::domain, "fiber level must be >= 2");
  require(r >= 1 && r <= 8, ErrorCode::domain, "need 1 <= r <= 8");
  BigradedPage P{pc, v, r, p, nullptr, {}, {}};
  for (const Root& g : pc.roots())
    if (pc.level(g) <= v) P.roots.push_back(g);
  std::vector<VariableDescriptor> vars;
  for (int l = 0; l < r; ++l)
    for (const Root& g : P.roots) {
      std::string tag = root_label(g) + "](" + std::to_string(l) + ")";
      vars.push_back({"x[" + tag, Parity::even, 2, scaled(g, ipow(p, l + 1))});
      vars.push_back({"y[" + tag, Parity::odd, 1, scaled(g, ipow(p, l))});
      P.fiber.push_back(pc.level(g) == v);
      P.fiber.push_back(pc.level(g) == v);
    }
  P.ring = make_ring(p, vars, pc.rank());
  return P;
}

inline Poly d2_on_y(const BigradedPage& P, const Root& b, int l) {
  require(P.pc.level(b) == P.v, ErrorCode::domain, "d2 is defined on fiber classes of level v");
  Poly f(P.ring);
  for (auto& [a, a2] : P.pc.summand_pairs(b)) f += P.y(a, l) * P.y(a2, l);
  return f;
}

// value of d_{2p^j+1} on (x_b^(l))^{p^j}
inline Poly transgression_power(const BigradedPage& P, const Root& b, int l, int j) {
  require(l >= 0 && j >= 0, ErrorCode::domain, "need l, j >= 0");
  require(P.pc.level(b) == P.v, ErrorCode::domain, "transgression is defined on fiber classes of level v");
  Poly f(P.ring);
  if (l + 1 + j >= P.r) return f;
  u64 e = ipow(P.p, j);
  for (auto& [a, a2] : P.pc.summand_pairs(b))
    f += P.x(a, l).pow(e) * P.y(a2, l + 1 + j) - P.x(a2, l).pow(e) * P.y(a, l + 1 + j);
  return f;
}

// odd derivation determined by its values on generators
struct Derivation {
  RingPtr ring;
  std::vector<Poly> values;

  Poly apply(const Poly& f) const {
    const Ring& R = *ring;
    Poly out(ring);
    for (const auto& t : f.terms()) {
      // product of generators in variable order; Leibniz with the Koszul sign
      long long before = 0;
      for (size_t i = 0; i < t.e.size(); ++i) {
        if (!t.e[i]) continue;
        if (!values[i].is_zero()) {
          Exps left(R.size(), 0), right(R.size(), 0);
          for (size_t k = 0; k < i; ++k) left[k] = t.e[k];
          for (size_t k = i + 1; k < t.e.size(); ++k) right[k] = t.e[k];
          Exps rest(R.size(), 0);
          rest[i] = t.e[i] - 1;
          long long coeff = R.odd(i) ? 1 : t.e[i];
          Poly term = Poly::monomial(ring, left) * Poly::monomial(ring, rest) * values[i] * Poly::monomial(ring, right);
          term = term.scale(coeff).scale_fp(t.c);
          out += before % 2 ? -term : term;
        }
        before += static_cast<long long>(t.e[i]) * R.var(i).coh_degree;
      }
    }
    return out;
  }
};

inline Derivation d2_derivation(const BigradedPage& P) {
  Derivation d{P.ring, std::vector<Poly>(P.ring->size(), Poly(P.ring))};
  for (int l = 0; l < P.r; ++l)
    for (const Root& g : P.roots)
      if (P.pc.level(g) == P.v) d.values[P.yi(g, l)] = d2_on_y(P, g, l);
  return d;
}

struct SteenrodOp {
  bool bockstein = false;
  u64 k = 0;
  std::string str() const { return std::string(bockstein ? "bP^" : "P^") + std::to_string(k); }
};

namespace detail {

inline u32 binom_mod_p(u64 n, u64 k, u32 p) {
  // Lucas
  u64 r = 1;
  while (n || k) {
    u64 a = n % p, b = k % p;
    if (b > a) return 0;
    u64 c = 1;
    for (u64 i = 0; i < b; ++i) c = c * (a - i) / (i + 1);
    r = r * (c % p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<u32>(r);
}

}  // namespace detail

// the encoded fragment: P(x^(l)) = x^(l+1) + (x^(l))^p, P(y^(l)) = y^(l+1), bP^0(y^(l)) = x^(l), Cartan rule
inline Poly steenrod_apply(const BigradedPage& P, SteenrodOp op, const Poly& f) {
  require(f.ring() == P.ring, ErrorCode::domain, "Steenrod operation outside the page ring");
  bool pw = op.k == 0;
  for (u64 q = 1; q <= op.k && !pw; q *= P.p) pw = q == op.k;
  require(pw, ErrorCode::unsupported, op.str() + " is outside the encoded fragment (k must be 0 or a power of p)");
  const Ring& R = *P.ring;
  const u64 K = op.k;
  Poly out(P.ring);
  for (const auto& t : f.terms()) {
    std::vector<Poly> Pu(K + 1, Poly(P.ring)), Bu(K + 1, Poly(P.ring));
    Pu[0] = Poly::constant(P.ring, 1);
    long long du = 0;
    for (size_t i = 0; i < t.e.size(); ++i) {
      if (!t.e[i]) continue;
      Root g = P.root_of(i);
      int l = P.twist_of(i);
      std::vector<Poly> Pv(K + 1, Poly(P.ring)), Bv(K + 1, Poly(P.ring));
      if (R.odd(i)) {
        Pv[0] = P.y(g, l + 1);
        Bv[0] = P.x(g, l);
      } else {
        u64 m = t.e[i];
        for (u64 a = 0; a <= std::min<u64>(m, K); ++a) {
          u32 c = detail::binom_mod_p(m, a, P.p);
          if (!c) continue;
          Pv[a] = (P.x(g, l + 1).pow(m - a) * P.x(g, l).pow(P.p * a)).scale_fp(c);
        }
      }
      std::vector<Poly> Pn(K + 1, Poly(P.ring)), Bn(K + 1, Poly(P.ring));
      for (u64 a = 0; a <= K; ++a)
        for (u64 b = 0; a + b <= K; ++b) {
          if (!Pu[a].is_zero() && !Pv[b].is_zero()) Pn[a + b] += Pu[a] * Pv[b];
          if (!Bu[a].is_zero() && !Pv[b].is_zero()) Bn[a + b] += Bu[a] * Pv[b];
          if (!Pu[a].is_zero() && !Bv[b].is_zero()) Bn[a + b] += du % 2 ? -(Pu[a] * Bv[b]) : Pu[a] * Bv[b];
        }
      Pu = std::move(Pn);
      Bu = std::move(Bn);
      du += static_cast<long long>(t.e[i]) * R.var(i).coh_degree;
    }
    out += (op.bockstein ? Bu[K] : Pu[K]).scale_fp(t.c);
  }
  return out;
}

// n[l] = exponent of x_b^(l)
inline bool permanent_cycle_monomial(const std::vector<u64>& n, int r, u32 p) {
  require(static_cast<int>(n.size()) == r, ErrorCode::domain, "one exponent per twist");
  for (int l = 0; l < r; ++l)
    if (n[l] % ipow(p, r - l - 1)) return false;
  return true;
}

struct DifferentialValue {
  bool permanent = true;
  int page = 0;  // 2p^j + 1
  Poly value;
};

// run d_{2p^j+1}, j = 0, 1, ..., on prod (x_b^(l))^{n_l} using the transgression values and the derivation rule
inline DifferentialValue evaluate_fiber_differentials(const BigradedPage& P, const Root& b, const std::vector<u64>& n) {
  require(static_cast<int>(n.size()) == P.r, ErrorCode::domain, "one exponent per twist");
  DifferentialValue out{true, 0, Poly(P.ring)};
  for (int j = 0; j + 1 < P.r; ++j) {
    u64 q = ipow(P.p, j);
    Poly d(P.ring);
    for (int l = 0; l + 1 + j < P.r; ++l) {
      if (!n[l]) continue;
      require(n[l] % q == 0, ErrorCode::internal, "class did not survive to this page");
      u64 m = n[l] / q;
      Poly rest = Poly::constant(P.ring, 1);
      for (int k = 0; k < P.r; ++k) rest *= P.x(b, k).pow(k == l ? n[k] - q : n[k]);
      d += (rest * transgression_power(P, b, l, j)).scale(static_cast<long long>(m % P.p));
    }
    if (!d.is_zero()) return {false, static_cast<int>(2 * q + 1), d};
  }
  return out;
}

// ---- Andersen-Jantzen E_1 ----

struct AJEnumeration {
  RingPtr ring;  // x_g^(n-1) degree 2 weight p^n g, y_g^(n-1) degree 1 weight p^{n-1} g
  std::vector<Root> lie_weights;
  std::vector<Exps> monomials;
  u64 nodes = 0;
};

inline RingPtr aj_ring(const std::vector<Root>& lie_weights, int r, u32 p, size_t rank) {
  std::vector<VariableDescriptor> vars;
  for (int n = 1; n <= r; ++n)
    for (size_t k = 0; k < lie_weights.size(); ++k) {
      std::string tag = root_label(lie_weights[k]) + "](" + std::to_string(n - 1) + ")";
      if (lie_weights.size() != std::set<Root>(lie_weights.begin(), lie_weights.end()).size())
        tag = root_label(lie_weights[k]) + "#" + std::to_string(k) + "](" + std::to_string(n - 1) + ")";
      vars.push_back({"x[" + tag, Parity::even, 2, scaled(lie_weights[k], ipow(p, n))});
      vars.push_back({"y[" + tag, Parity::odd, 1, scaled(lie_weights[k], ipow(p, n - 1))});
    }
  return make_ring(p, vars, rank);
}

inline AJEnumeration aj_E1_enumerate(const std::vector<Root>& lie_weights, int r, u32 p, long long degree,
                                     const Weight& target, u64 budget = 50000000) {
  require_odd_prime(p);
  require(r >= 1, ErrorCode::domain, "need r >= 1");
  require(!lie_weights.empty(), ErrorCode::domain, "no Lie weights");
  size_t rank = lie_weights.front().c.size();
  require(target.size() == rank, ErrorCode::domain, "target weight dimension");
  AJEnumeration out{aj_ring(lie_weights, r, p, rank), lie_weights, {}, 0};
  const Ring& R = *out.ring;
  for (long long w : target)
    if (w < 0) return out;
  if (degree < 0) return out;
  Exps e(R.size(), 0);
  Weight left = target;
  std::function<void(size_t, long long)> rec = [&](size_t i, long long dleft) {
    require(++out.nodes <= budget, ErrorCode::resource, "AJ enumeration budget exceeded");
    if (i == R.size()) {
      bool zero = dleft == 0;
      for (long long w : left) zero = zero && w == 0;
      if (zero) out.monomials.push_back(e);
      return;
    }
    const auto& v = R.var(i);
    for (u32 k = 0;; ++k) {
      if (k > 0) {
        if (R.odd(i) && k > 1) break;
        if (dleft < v.coh_degree) break;
        bool fits = true;
        for (size_t c = 0; c < rank; ++c) fits = fits && left[c] >= v.weight[c];
        if (!fits) break;
        dleft -= v.coh_degree;
        for (size_t c = 0; c < rank; ++c) left[c] -= v.weight[c];
      }
      e[i] = k;
      rec(i + 1, dleft);
    }
    for (size_t c = 0; c < rank; ++c) left[c] += static_cast<long long>(e[i]) * v.weight[c];
    e[i] = 0;
  };
  rec(0, degree);
  return out;
}

struct UniquenessReport {
  Root beta;
  int r = 0;
  u32 p = 0;
  long long degree = 0;
  Weight weight;
  AJEnumeration raw;
  std::vector<std::string> labels;  // per raw monomial: target / boundary / d1-source / unclassified
  long long surviving = 0;
};

inline UniquenessReport uniqueness_witness(const ParabolicContext& pc, const Root& b, int r, u32 p) {
  int v = pc.classify_root(b).level;
  require(v >= 2, ErrorCode::domain, "beta must have level >= 2");
  auto hyp = check_pairing_hypothesis(pc, p);
  require(hyp.holds, ErrorCode::precondition, "pairing hypothesis fails for this context");
  std::vector<Root> lie;
  for (const Root& g : pc.roots())
    if (pc.level(g) <= v) lie.push_back(g);
  UniquenessReport rep;
  rep.beta = b;
  rep.r = r;
  rep.p = p;
  rep.degree = 2 * static_cast<long long>(ipow(p, r - 1));
  rep.weight = scaled(b, ipow(p, r));
  rep.raw = aj_E1_enumerate(lie, r, p, rep.degree, rep.weight);
  const Ring& R = *rep.raw.ring;
  auto var_of = [&](const Root& g, int twist, bool odd) {
    for (size_t k = 0; k < lie.size(); ++k)
      if (lie[k] == g) return (static_cast<size_t>(twist) * lie.size() + k) * 2 + (odd ? 1 : 0);
    fail(ErrorCode::internal, "missing Lie weight");
  };
  auto pairs = pc.summand_pairs(b);
  for (const Exps& e : rep.raw.monomials) {
    std::string label = "unclassified";
    Exps target(R.size(), 0);
    target[var_of(b, 0, false)] = static_cast<u32>(ipow(p, r - 1));
    if (e == target) {
      label = "target";
    } else if (r >= 2) {
      for (auto& [a, a2] : pairs)
        if (e[var_of(a, 1, true)] && e[var_of(a2, 1, true)]) label = "boundary";
      if (label == "unclassified" && e[var_of(b, 1, true)]) label = "d1-source";
    }
    rep.labels.push_back(label);
    if (label == "target" || label == "unclassified") ++rep.surviving;
  }
  return rep;
}

}  // namespace frobmodel
