#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "commvar.hpp"
#include "specseq.hpp"

namespace frobmodel {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string measured;
  double seconds = 0.0;
};

namespace acceptance {

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

inline ParabolicContext typeA(int n, std::vector<int> J = {}) { return ParabolicContext(build_root_system('A', n), J); }

inline CriterionResult theta_degree() {
  CriterionResult c{1, "theta degree formula and fiber cross-check", true, "", 0};
  std::ostringstream os;
  struct Case { u32 p; int r; u64 want; };
  for (Case k : {Case{3, 2, 9}, Case{3, 3, 243}, Case{5, 2, 25}}) {
    auto t0 = Clock::now();
    auto d = theta_degree_U3(k.r, k.p);
    double s = since(t0);
    bool ok = d.formula == k.want && d.fiber_count && *d.fiber_count == static_cast<long long>(k.want) && s < 10.0;
    c.pass = c.pass && ok;
    os << "(p=" << k.p << ",r=" << k.r << ") formula " << d.formula << " fiber " << (d.fiber_count ? *d.fiber_count : -1)
       << " in " << s << "s; ";
  }
  c.measured = os.str();
  return c;
}

inline CriterionResult v_r_u3() {
  CriterionResult c{2, "V_r(U_3) point counts and growth", true, "", 0};
  std::ostringstream os;
  auto t0 = Clock::now();
  for (u64 q : {3, 5})
    for (int r = 1; r <= 3; ++r) {
      auto V = v_variety_U3(r, static_cast<u32>(q));
      u64 n = count_points(V.ring, V.relations, q);
      u64 want = (1 + (q + 1) * (ipow(q, r) - 1)) * ipow(q, r);
      double e = growth_exponent(n, q);
      bool ok = n == want && std::abs(e - (2 * r + 1)) <= 0.5;
      c.pass = c.pass && ok;
      os << "q=" << q << " r=" << r << ": " << n << " (want " << want << ", log_q " << e << "); ";
    }
  double s = since(t0);
  c.pass = c.pass && s < 30.0;
  os << "total " << s << "s";
  c.measured = os.str();
  return c;
}

inline CriterionResult u4_components() {
  CriterionResult c{3, "U_4/Gamma_3 components at r=2", true, "", 0};
  std::ostringstream os;
  const int r = 2;
  for (u64 q : {3, 5}) {
    auto cand = component_candidates_U4(r, static_cast<u32>(q));
    auto Y = y_variety_system(4, r, static_cast<u32>(q));
    u64 y = count_points(Y.ring, Y.relations, q);
    u64 v1 = count_points(cand[0].ring, cand[0].relations, q);
    u64 v2 = count_points(cand[1].ring, cand[1].relations, q);
    u64 i = count_points(cand[2].ring, cand[2].relations, q);
    long long residual = static_cast<long long>(y) - (static_cast<long long>(v1 + v2) - static_cast<long long>(i));
    double e1 = growth_exponent(v1, q), e2 = growth_exponent(v2, q);
    bool ok = residual == 0 && std::abs(e1 - 2 * r) <= 0.5 && std::abs(e2 - (r + 2)) <= 0.5;
    c.pass = c.pass && ok;
    os << "q=" << q << ": " << v1 << "+" << v2 << "-" << i << " vs " << y << " residual " << residual << ", dims " << e1
       << "/" << e2 << "; ";
  }
  c.measured = os.str();
  return c;
}

inline CriterionResult subdiagrams() {
  CriterionResult c{4, "sub-diagram family and N=5 evidence", true, "", 0};
  std::ostringstream os;
  for (int r = 1; r <= 3; ++r) {
    auto f3 = subdiagram_components(3, r);
    auto f4 = subdiagram_components(4, r);
    bool ok3 = f3.members.size() == 1 && f3.members[0].predicted_dim == r + 1;
    std::multiset<int> d4, want{r + 2, 2 * r};
    for (auto& m : f4.members) d4.insert(m.predicted_dim);
    bool ok4 = f4.members.size() == 2 && d4 == want;
    c.pass = c.pass && ok3 && ok4;
  }
  os << "N=3 and N=4 families match for r=1..3; ";
  auto rep = conjecture_check(5, 2, {3});
  os << "N=5 r=2 q=3: |Y|=" << rep.total[3] << ", " << rep.family.members.size() << " members, residual "
     << rep.residual[3] << ", log_3|Y|=" << rep.observed_exponent[3] << " vs predicted max dim " << rep.predicted_max_dim;
  c.measured = os.str();
  return c;
}

inline CriterionResult relation_power() {
  CriterionResult c{5, "relation-power identity for theta", true, "", 0};
  std::ostringstream os;
  for (auto [p, r] : std::vector<std::pair<u32, int>>{{3, 2}, {3, 3}, {5, 2}}) {
    auto rep = theta_check(full_model_context(typeA(2), r, p));
    bool ok = rep.power_identity_failures == 0 && rep.failures.empty() && rep.relations > 0;
    c.pass = c.pass && ok;
    os << "(p=" << p << ",r=" << r << ") " << rep.power_identity.size() << " relations, "
       << rep.power_identity_failures << " failures; ";
  }
  c.measured = os.str();
  return c;
}

inline CriterionResult spectral_formulas() {
  CriterionResult c{6, "spectral-sequence formula suite", true, "", 0};
  std::ostringstream os;
  size_t kudo = 0, kudo_bad = 0;
  for (int n : {2, 3})
    for (u32 p : {3u, 5u})
      for (int r = 1; r <= 3; ++r) {
        auto page = make_page(typeA(n), 2, r, p);
        for (const Root& b : page.pc.roots_of_level(2))
          for (int l = 0; l < r; ++l) {
            ++kudo;
            if (transgression_power(page, b, l, 0) != steenrod_apply(page, {true, 0}, d2_on_y(page, b, l))) ++kudo_bad;
          }
      }
  size_t zero_bad = 0, zero_cases = 0;
  Root b{{1, 1}};
  for (int r = 1; r <= 3; ++r) {
    auto page = make_page(typeA(2), 2, r, 3);
    for (int l = 0; l <= 3; ++l)
      for (int j = 0; j <= 3; ++j) {
        ++zero_cases;
        bool zero = transgression_power(page, b, l, j).is_zero();
        if (zero != (l + 1 + j >= r)) ++zero_bad;
      }
  }
  auto page = make_page(typeA(2), 2, 2, 3);
  size_t perm_cases = 0, perm_bad = 0;
  for (u64 n0 = 0; 2 * n0 <= 18; ++n0)
    for (u64 n1 = 0; 2 * (n0 + n1) <= 18; ++n1) {
      ++perm_cases;
      bool crit = permanent_cycle_monomial({n0, n1}, 2, 3);
      bool direct = evaluate_fiber_differentials(page, b, {n0, n1}).permanent;
      if (crit != direct) ++perm_bad;
    }
  c.pass = kudo_bad == 0 && zero_bad == 0 && perm_bad == 0;
  os << "Kudo " << kudo - kudo_bad << "/" << kudo << "; vanishing " << zero_cases - zero_bad << "/" << zero_cases
     << "; permanent-cycle agreement " << perm_cases - perm_bad << "/" << perm_cases;
  c.measured = os.str();
  return c;
}

inline CriterionResult aj_uniqueness() {
  CriterionResult c{7, "AJ uniqueness", true, "", 0};
  std::ostringstream os;
  auto u3 = typeA(2);
  Root b{{1, 1}};
  for (u32 p : {3u, 5u}) {
    auto rep = uniqueness_witness(u3, b, 2, p);
    c.pass = c.pass && rep.surviving == 1;
    os << "U_3 (p=" << p << ",r=2) surviving " << rep.surviving << "; ";
  }
  auto u4 = typeA(3);
  for (const Root& g : u4.roots_of_level(2)) {
    auto rep = uniqueness_witness(u4, g, 2, 5);
    c.pass = c.pass && rep.surviving == 1;
    os << "U_4/G_3 " << root_label(g) << " (p=5,r=2) surviving " << rep.surviving << "; ";
  }
  auto raw = uniqueness_witness(u3, b, 2, 3).raw;
  c.pass = c.pass && raw.monomials.size() == 2;
  os << "raw E1 count for U_3 p=3 r=2 degree 6 weight 9b: " << raw.monomials.size() << " (stated 2)";
  c.measured = os.str();
  return c;
}

inline CriterionResult hilbert() {
  CriterionResult c{8, "Hilbert values and splitting", true, "", 0};
  std::ostringstream os;
  auto ctx = full_model_context(typeA(2), 2, 3);
  auto G = buchberger(build_Sbar(ctx).ideal());
  std::map<long long, long long> want{{2, 5}, {4, 15}, {6, 36}, {8, 74}};
  for (auto [d, n] : want) {
    long long got = graded_dimension(G, d);
    c.pass = c.pass && got == n;
    os << "deg" << d << "=" << got << " ";
  }
  auto sp = check_splitting(ctx, 10);
  c.pass = c.pass && sp.by_degree && sp.by_weight;
  os << "; splitting up to 10: degree " << (sp.by_degree ? "ok" : "FAIL") << ", weight " << (sp.by_weight ? "ok" : "FAIL");
  c.measured = os.str();
  return c;
}

inline CriterionResult stabilization() {
  CriterionResult c{9, "stabilization and multiplicativity", true, "", 0};
  std::ostringstream os;
  std::vector<std::pair<std::string, ModelContext>> cfgs = {
      {"U_3", full_model_context(typeA(2), 2, 3)},
      {"U_4/G_3", make_model_context(typeA(3), 1, 3, 2, 3)},
  };
  for (auto& [name, ctx] : cfgs)
    for (int r : {2, 3}) {
      auto rep = bracket_check(ctx.with_r(r), 2, 100, 12345 + r);
      size_t hits = 0;
      for (auto& col : rep.collapse) hits += col.in_image;
      bool ok = hits == 0 && !rep.collapse.empty() && rep.multiplicativity_failures == 0 && rep.relation_failures == 0;
      c.pass = c.pass && ok;
      os << name << " r=" << r << ": " << rep.collapse.size() << " collapse checks, " << hits << " in image, "
         << rep.multiplicativity_failures << "/" << rep.random_pairs << " non-multiplicative, " << rep.relation_failures
         << " relation failures; ";
    }
  c.measured = os.str();
  return c;
}

inline CriterionResult pairing_scan() {
  CriterionResult c{10, "pairing hypothesis scan", true, "", 0};
  std::ostringstream os;
  auto t0 = Clock::now();
  for (u32 p : {3u, 5u}) {
    size_t failing = 0, total = 0;
    std::string first;
    for (int n = 1; n <= 6; ++n) {
      auto sys = build_root_system('A', n);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> J;
        for (int k = 0; k < n; ++k)
          if (mask >> k & 1u) J.push_back(k);
        ++total;
        auto rep = check_pairing_hypothesis(ParabolicContext(sys, J), p);
        if (!rep.holds) {
          if (first.empty()) {
            first = "A_" + std::to_string(n) + " J={";
            for (size_t k = 0; k < J.size(); ++k) first += (k ? "," : "") + std::string("a") + std::to_string(J[k] + 1);
            first += "} beta=" + root_label(rep.witnesses[0].beta);
          }
          ++failing;
        }
      }
    }
    c.pass = c.pass && failing == 0;
    os << "p=" << p << ": " << failing << "/" << total << " subsets fail" << (first.empty() ? "" : " (first " + first + ")")
       << "; ";
  }
  double s = since(t0);
  c.pass = c.pass && s < 60.0;
  os << s << "s";
  c.measured = os.str();
  return c;
}

}  // namespace acceptance

inline std::vector<std::function<CriterionResult()>> acceptance_suite() {
  using namespace acceptance;
  return {theta_degree, v_r_u3,   u4_components, subdiagrams,   relation_power,
          spectral_formulas, aj_uniqueness, hilbert, stabilization, pairing_scan};
}

inline CriterionResult run_criterion(const std::function<CriterionResult()>& f, int id) {
  auto t0 = acceptance::Clock::now();
  CriterionResult c;
  try {
    c = f();
  } catch (const std::exception& e) {
    c = {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what(), 0};
  }
  c.seconds = acceptance::since(t0);
  return c;
}

inline std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  int id = 1;
  for (auto& f : acceptance_suite()) out.push_back(run_criterion(f, id++));
  return out;
}

}  // namespace frobmodel
