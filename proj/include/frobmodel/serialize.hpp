#pragma once

#include <string>

#include "json.hpp"

#include "commvar.hpp"
#include "specseq.hpp"

namespace frobmodel {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

inline json to_json(const Root& r) { return {{"label", root_label(r)}, {"coeffs", r.c}}; }

inline json to_json(const Poly& f) {
  json terms = json::array();
  const Ring& R = *f.ring();
  for (const auto& t : f.terms()) {
    json ex = json::object();
    for (size_t i = 0; i < t.e.size(); ++i)
      if (t.e[i]) ex[R.var(i).id] = t.e[i];
    terms.push_back({{"coeff", R.field().signed_value(t.c)}, {"exponents", ex}});
  }
  return terms;
}

inline json poly_json(const Poly& f) {
  json j = {{"text", f.str()}, {"terms", to_json(f)}};
  if (!f.is_zero()) {
    j["coh_degree"] = f.degree();
    j["weight"] = f.weight();
  }
  return j;
}

inline json to_json(const VariableDescriptor& v) {
  return {{"id", v.id}, {"parity", v.parity == Parity::odd ? "odd" : "even"}, {"coh_degree", v.coh_degree},
          {"weight", v.weight}};
}

inline json context_json(const ParabolicContext& pc) {
  json J = json::array();
  for (int j : pc.J_indices()) J.push_back(pc.system().simple_roots[j]);
  return {{"family", std::string(1, pc.system().family)}, {"rank", pc.rank()}, {"J", J}};
}

inline json to_json(const ModelContext& c) {
  json j = context_json(c.pc);
  j["i"] = c.i;
  j["v_plus_1"] = c.top;
  j["r"] = c.r;
  j["p"] = c.p;
  return j;
}

inline json to_json(const ModelPresentation& P) {
  json gens = json::array();
  for (auto& g : P.gens) {
    const auto& v = P.ring->var(g.var);
    gens.push_back({{"id", v.id}, {"kind", "x"}, {"root", to_json(g.root)}, {"twist", g.twist}, {"power", g.exponent},
                    {"coh_degree", v.coh_degree}, {"weight", v.weight}});
  }
  json rels = json::array();
  for (auto& m : P.relations) {
    json r = {{"family", m.family}, {"beta", to_json(m.beta)}, {"l", m.l}};
    if (m.family == "S2") r["j"] = m.l2 - m.l - 1;
    else r["l2"] = m.l2;
    r["poly"] = poly_json(m.poly);
    rels.push_back(r);
  }
  return {{"kind", P.kind}, {"context", to_json(P.ctx)}, {"generators", gens}, {"relations", rels},
          {"warnings", P.warnings}};
}

inline json to_json(const CoordinatePresentation& C) {
  json vars = json::array();
  for (auto& v : C.vars) {
    json d = to_json(C.ring->var(v.var));
    d["root"] = to_json(v.root);
    d["twist"] = v.twist;
    vars.push_back(d);
  }
  json rels = json::array();
  for (auto& m : C.relations)
    rels.push_back({{"beta", to_json(m.beta)}, {"l", m.l}, {"l2", m.l2}, {"poly", poly_json(m.poly)}});
  return {{"context", to_json(C.ctx)}, {"variables", vars}, {"relations", rels}};
}

inline json to_json(const PairingReport& rep) {
  json per = json::array();
  for (auto& [b, ok] : rep.per_root) per.push_back({{"beta", root_label(b)}, {"holds", ok}});
  json wit = json::array();
  for (auto& w : rep.witnesses) {
    json pairs = json::array();
    for (auto& [a, a2] : w.pairs) pairs.push_back({root_label(a), root_label(a2)});
    wit.push_back({{"beta", root_label(w.beta)}, {"pairs", pairs}});
  }
  return {{"holds", rep.holds}, {"per_root", per}, {"witnesses", wit}};
}

inline json to_json(const UniquenessReport& u) {
  json mons = json::array();
  for (size_t k = 0; k < u.raw.monomials.size(); ++k)
    mons.push_back({{"monomial", Poly::monomial(u.raw.ring, u.raw.monomials[k]).str()}, {"label", u.labels[k]}});
  return {{"beta", to_json(u.beta)},
          {"r", u.r},
          {"p", u.p},
          {"degree", u.degree},
          {"weight", u.weight},
          {"raw_count", u.raw.monomials.size()},
          {"monomials", mons},
          {"classification", "heuristic: boundary = divisible by a twist-1 y pair summing to beta; "
                             "d1-source = contains y_beta^(1)"},
          {"surviving", u.surviving}};
}

inline json to_json(const ComponentReport& c) {
  json members = json::array();
  for (auto& m : c.family.members)
    members.push_back({{"diagram", diagram_label(c.N, m.mask)}, {"nodes", m.nodes}, {"components", m.components},
                       {"predicted_dim", m.predicted_dim}});
  json counts = json::array();
  for (auto& [sub, per_q] : c.counts) {
    json names = json::array();
    for (size_t k = 0; k < c.family.members.size(); ++k)
      if (sub >> k & 1u) names.push_back(diagram_label(c.N, c.family.members[k].mask));
    json pq = json::object();
    for (auto& [q, n] : per_q) pq[std::to_string(q)] = n;
    counts.push_back({{"intersection_of", names}, {"counts", pq}});
  }
  json tot = json::object(), res = json::object(), ex = json::object();
  for (auto& [q, n] : c.total) tot[std::to_string(q)] = n;
  for (auto& [q, n] : c.residual) res[std::to_string(q)] = n;
  for (auto& [q, e] : c.observed_exponent) ex[std::to_string(q)] = e;
  json j = {{"N", c.N}, {"r", c.r}, {"members", members}, {"total", tot}, {"component_counts", counts},
            {"inclusion_exclusion_residual", res}, {"observed_exponent", ex}, {"predicted_max_dim", c.predicted_max_dim},
            {"dimension_match", c.dimension_match}, {"residual_explained", c.residual_explained},
            {"note", "component systems are heuristic; the sub-diagram description is conjectural, a mismatch is a finding"}};
  if (c.qs.size() >= 2) j["two_q_slope"] = c.slope;
  return j;
}

inline std::string component_csv(const ComponentReport& c) {
  std::string s = "system,q,count\n";
  for (auto& [q, n] : c.total) s += "Y," + std::to_string(q) + "," + std::to_string(n) + "\n";
  for (auto& [sub, per_q] : c.counts) {
    std::string name;
    for (size_t k = 0; k < c.family.members.size(); ++k)
      if (sub >> k & 1u) name += (name.empty() ? "" : " & ") + diagram_label(c.N, c.family.members[k].mask);
    for (auto& [q, n] : per_q) s += "\"" + name + "\"," + std::to_string(q) + "," + std::to_string(n) + "\n";
  }
  return s;
}

}  // namespace frobmodel
