#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "acceptance.hpp"
#include "serialize.hpp"

namespace frobmodel::cli {

struct RunConfig {
  std::string family = "A";
  int rank = 2;
  std::string J;
  int i = 1;
  int v = 0;  // 0: top level of the radical
  int r = 1;
  u32 p = 3;
  std::vector<u64> q;
  long long degree = -1;
  u64 budget = 0;
  std::string output;
  std::string csv;
  std::string format = "json";
  u64 seed = 1;
  std::string group = "U3";
  int N = 4;
  std::string beta;
  int l = 0;
  int j = 0;
  std::string op = "bP^0";
  std::string of = "d2";
  int s = 2;
  int pairs = 100;
};

// exit codes
enum Exit { ok = 0, check_failed = 1, config_error = 2, budget_exhausted = 3 };

inline int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::resource: return budget_exhausted;
    case ErrorCode::internal: return check_failed;
    default: return config_error;
  }
}

inline json config_json(const RunConfig& c) {
  return {{"family", c.family}, {"rank", c.rank}, {"J", c.J}, {"i", c.i}, {"v", c.v}, {"r", c.r}, {"p", c.p},
          {"q", c.q}, {"degree", c.degree}, {"budget", c.budget}, {"seed", c.seed}, {"group", c.group}, {"N", c.N},
          {"beta", c.beta}, {"l", c.l}, {"j", c.j}, {"op", c.op}, {"of", c.of}, {"s", c.s}, {"pairs", c.pairs}};
}

inline ParabolicContext make_context(const RunConfig& c) {
  require(c.family.size() == 1, ErrorCode::config, "family must be one of A, B, C, D");
  auto sys = build_root_system(c.family[0], c.rank);
  return ParabolicContext(sys, parse_J(c.J, c.rank));
}

inline ModelContext make_model(const RunConfig& c, const ParabolicContext& pc, int r) {
  int top = c.v > 0 ? c.v + 1 : pc.max_level() + 1;
  return make_model_context(pc, c.i, top, r, c.p);
}

// "a1+a2", "2a2+a3" or a coefficient list "1,1"
inline Root parse_root(const std::string& s, int rank) {
  Root b{std::vector<int>(rank, 0)};
  require(!s.empty(), ErrorCode::config, "--beta is required");
  try {
    if (s.find('a') == std::string::npos) {
      std::stringstream ss(s);
      std::string tok;
      int k = 0;
      while (std::getline(ss, tok, ',')) {
        require(k < rank, ErrorCode::config, "too many coefficients in --beta");
        b.c[k++] = std::stoi(tok);
      }
      require(k == rank, ErrorCode::config, "--beta needs one coefficient per simple root");
    } else {
      std::stringstream ss(s);
      std::string tok;
      while (std::getline(ss, tok, '+')) {
        auto at = tok.find('a');
        require(at != std::string::npos, ErrorCode::config, "bad root term " + tok);
        int coeff = at == 0 ? 1 : std::stoi(tok.substr(0, at));
        int idx = std::stoi(tok.substr(at + 1));
        require(idx >= 1 && idx <= rank, ErrorCode::config, "root label out of range: " + tok);
        b.c[idx - 1] += coeff;
      }
    }
  } catch (const std::logic_error&) {
    fail(ErrorCode::config, "cannot parse root " + s);
  }
  return b;
}

inline SteenrodOp parse_op(std::string s) {
  SteenrodOp op;
  s.erase(std::remove(s.begin(), s.end(), '^'), s.end());
  if (s.rfind("bP", 0) == 0 || s.rfind("betaP", 0) == 0) {
    op.bockstein = true;
    s = s.substr(s[0] == 'b' && s[1] == 'e' ? 5 : 2);
  } else {
    require(!s.empty() && s[0] == 'P', ErrorCode::config, "op must look like P^k or bP^k");
    s = s.substr(1);
  }
  try {
    op.k = std::stoull(s);
  } catch (const std::logic_error&) {
    fail(ErrorCode::config, "bad Steenrod index");
  }
  return op;
}

struct Outcome {
  json result;
  bool checks_pass = true;
  std::string text;  // optional human rendering
};

// ---- subcommands ----

inline Outcome rootsys_info(const RunConfig& c) {
  auto pc = make_context(c);
  json roots = json::array();
  std::map<int, int> hist;
  for (const Root& b : pc.roots()) {
    auto lc = pc.classify_root(b);
    ++hist[lc.level];
    json pairs = json::array();
    if (lc.level >= 2)
      for (auto& [a, a2] : pc.summand_pairs(b)) pairs.push_back({root_label(a), root_label(a2)});
    roots.push_back({{"root", to_json(b)}, {"height", lc.height}, {"level", lc.level}, {"shape", root_label(lc.shape)},
                     {"summand_pairs", pairs}});
  }
  json h = json::object();
  for (auto& [lev, n] : hist) h[std::to_string(lev)] = n;
  json all = json::array();
  for (const Root& b : pc.system().positive_roots) all.push_back(root_label(b));
  Outcome o;
  o.result = {{"context", context_json(pc)},
              {"positive_root_count", pc.system().positive_roots.size()},
              {"positive_roots", all},
              {"radical_root_count", pc.roots().size()},
              {"radical_roots", roots},
              {"level_histogram", h},
              {"pairing_hypothesis", to_json(check_pairing_hypothesis(pc, c.p))}};
  return o;
}

inline Outcome model_build(const RunConfig& c) {
  auto pc = make_context(c);
  auto ctx = make_model(c, pc, c.r);
  auto S = build_Sbar(ctx);
  auto Q = build_Q(ctx);
  auto T = build_top(ctx);
  Outcome o;
  o.result = {{"Sbar", to_json(S)}, {"Q", to_json(Q)}, {"top", to_json(T)}};
  return o;
}

inline Outcome model_hilbert(const RunConfig& c) {
  auto pc = make_context(c);
  auto ctx = make_model(c, pc, c.r);
  long long top = c.degree >= 0 ? c.degree : 8;
  auto S = build_Sbar(ctx);
  auto G = buchberger(S.ideal());
  json dims = json::object();
  for (long long d = 0; d <= top; d += 2) dims["deg" + std::to_string(d)] = graded_dimension(G, d);
  auto sp = check_splitting(ctx, top);
  json conv = json::object();
  for (auto& [d, n] : sp.convolution) conv["deg" + std::to_string(d)] = n;
  Outcome o;
  o.checks_pass = sp.by_degree && sp.by_weight;
  o.result = {{"context", to_json(ctx)}, {"dimensions", dims}, {"splitting", {{"convolution", conv},
              {"by_degree", sp.by_degree}, {"by_weight", sp.by_weight}}}, {"warnings", S.warnings}};
  return o;
}

inline Outcome model_theta_check(const RunConfig& c) {
  auto pc = make_context(c);
  auto ctx = make_model(c, pc, c.r);
  auto rep = theta_check(ctx);
  json fails = json::array();
  for (auto& f : rep.failures) fails.push_back(poly_json(f));
  json pid = json::array();
  for (auto& k : rep.power_identity)
    pid.push_back({{"beta", root_label(k.beta)}, {"l", k.l}, {"l2", k.l2}, {"model_family", k.family},
                   {"exponent", k.exponent}, {"equal_up_to_sign", k.ok}});
  Outcome o;
  o.checks_pass = rep.failures.empty() && rep.power_identity_failures == 0 && rep.generator_powers_in_image;
  o.result = {{"context", to_json(ctx)},
              {"coordinate_algebra", to_json(vr_coordinate_algebra(ctx))},
              {"relation_count", rep.relations},
              {"nonzero_normal_forms", fails},
              {"relation_power_identity", pid},
              {"generator_powers_in_image", rep.generator_powers_in_image}};
  bool u3 = pc.system().family == 'A' && pc.rank() == 2 && pc.J_indices().empty() && ctx.i == 1 && ctx.top == 3;
  if (u3) {
    auto d = theta_degree_U3(c.r, c.p);
    json dj = {{"formula", d.formula}};
    if (d.fiber_count) {
      dj["fiber_count"] = *d.fiber_count;
      o.checks_pass = o.checks_pass && static_cast<u64>(*d.fiber_count) == d.formula;
    }
    o.result["theta_degree"] = dj;
  }
  return o;
}

inline Outcome model_bracket_check(const RunConfig& c) {
  auto pc = make_context(c);
  auto ctx = make_model(c, pc, c.r);
  auto rep = bracket_check(ctx, c.s, c.pairs, c.seed);
  json col = json::array();
  bool ok = rep.relation_failures == 0 && rep.multiplicativity_failures == 0;
  for (auto& k : rep.collapse) {
    col.push_back({{"s", k.s}, {"generator", k.generator}, {"degree", k.degree}, {"in_image", k.in_image}});
    ok = ok && !k.in_image;
  }
  Outcome o;
  o.checks_pass = ok;
  o.result = {{"context", to_json(ctx)}, {"relations_checked", rep.relations}, {"relation_failures", rep.relation_failures},
              {"random_pairs", rep.random_pairs}, {"multiplicativity_failures", rep.multiplicativity_failures},
              {"collapse", col}};
  return o;
}

inline std::vector<u64> qs_or_default(const RunConfig& c) { return c.q.empty() ? std::vector<u64>{3} : c.q; }

inline Outcome variety_count(const RunConfig& c) {
  PointCountOptions opt{c.budget, 0};
  json rows = json::array();
  bool ok = true;
  for (u64 q : qs_or_default(c)) {
    u32 p = split_prime_power(q).first;
    require_odd_prime(p);
    VarietySystem X, Y;
    if (c.group == "U3") {
      X = v_variety_U3(c.r, p);
      Y = y_variety_system(3, c.r, p);
    } else {
      int N = c.N;
      if (c.group == "U4G3") N = 4;
      else require(c.group == "UNG3" || c.group == "Y", ErrorCode::config, "group must be U3, U4G3, UNG3 or Y");
      Y = y_variety_system(N, c.r, p);
      X = c.group == "Y" ? Y : x_variety_system(N, c.r, p);
    }
    u64 nx = count_points(X.ring, X.relations, q, opt);
    u64 ny = count_points(Y.ring, Y.relations, q, opt);
    u64 free = c.group == "Y" ? 0 : Y.free_rank;
    bool product = nx == ny * ipow(q, free);
    ok = ok && product;
    rows.push_back({{"q", q}, {"system", X.name}, {"variables", X.ring->size()}, {"relations", X.relations.size()},
                    {"count", nx}, {"Y_count", ny}, {"free_rank", free}, {"product_law", product},
                    {"log_q_count", growth_exponent(nx, q)}});
  }
  Outcome o;
  o.checks_pass = ok;
  o.result = {{"group", c.group}, {"r", c.r}, {"counts", rows}};
  if (rows.size() == 1) o.result["count"] = rows[0]["count"];
  return o;
}

inline Outcome variety_components(const RunConfig& c) {
  PointCountOptions opt{c.budget, 0};
  json rows = json::array();
  bool ok = true;
  std::string csv = "system,q,count\n";
  for (u64 q : qs_or_default(c)) {
    u32 p = split_prime_power(q).first;
    require_odd_prime(p);
    auto cand = component_candidates_U4(c.r, p);
    auto Y = y_variety_system(4, c.r, p);
    json sys = json::object();
    std::vector<u64> n;
    for (auto& s : cand) {
      n.push_back(count_points(s.ring, s.relations, q, opt));
      sys[s.name] = n.back();
      csv += s.name + "," + std::to_string(q) + "," + std::to_string(n.back()) + "\n";
    }
    u64 y = count_points(Y.ring, Y.relations, q, opt);
    csv += "Y," + std::to_string(q) + "," + std::to_string(y) + "\n";
    long long residual = static_cast<long long>(y) - (static_cast<long long>(n[0] + n[1]) - static_cast<long long>(n[2]));
    bool contained = contained_in(cand[2], {&cand[0], &cand[1]}, q);
    ok = ok && residual == 0 && contained;
    rows.push_back({{"q", q}, {"Y", y}, {"systems", sys}, {"inclusion_exclusion_residual", residual},
                    {"intersection_contained_in_both", contained},
                    {"log_q", {{"V1", growth_exponent(n[0], q)}, {"V2", growth_exponent(n[1], q)},
                               {"Y", growth_exponent(y, q)}}},
                    {"expected_dims", {{"V1", 2 * c.r}, {"V2", c.r + 2}}}});
  }
  Outcome o;
  o.checks_pass = ok;
  o.result = {{"r", c.r}, {"rows", rows}};
  o.text = csv;
  return o;
}

inline BigradedPage page_for(const RunConfig& c, const ParabolicContext& pc, const Root& b) {
  return make_page(pc, pc.classify_root(b).level, c.r, c.p);
}

inline Root beta_or_default(const RunConfig& c, const ParabolicContext& pc) {
  if (!c.beta.empty()) return parse_root(c.beta, pc.rank());
  auto lv2 = pc.roots_of_level(2);
  require(!lv2.empty(), ErrorCode::config, "no level-2 roots; pass --beta");
  return lv2.front();
}

inline Outcome specseq_d2(const RunConfig& c) {
  auto pc = make_context(c);
  Root b = beta_or_default(c, pc);
  auto P = page_for(c, pc, b);
  Poly v = d2_on_y(P, b, c.l);
  Outcome o;
  o.result = {{"class", "y[" + root_label(b) + "](" + std::to_string(c.l) + ")"}, {"page", 2}, {"value", poly_json(v)}};
  return o;
}

inline Outcome specseq_transgression(const RunConfig& c) {
  auto pc = make_context(c);
  Root b = beta_or_default(c, pc);
  auto P = page_for(c, pc, b);
  Poly v = transgression_power(P, b, c.l, c.j);
  Outcome o;
  o.result = {{"class", "x[" + root_label(b) + "](" + std::to_string(c.l) + ")^" + std::to_string(ipow(c.p, c.j))},
              {"page", 2 * ipow(c.p, c.j) + 1},
              {"value", poly_json(v)},
              {"zero", v.is_zero()}};
  return o;
}

inline Outcome specseq_steenrod(const RunConfig& c) {
  auto pc = make_context(c);
  Root b = beta_or_default(c, pc);
  auto P = page_for(c, pc, b);
  SteenrodOp op = parse_op(c.op);
  Poly in(P.ring);
  if (c.of == "d2") in = d2_on_y(P, b, c.l);
  else if (c.of == "transgression") in = transgression_power(P, b, c.l, c.j);
  else if (c.of == "power") in = P.x(b, c.l).pow(ipow(c.p, c.j));
  else if (c.of == "y") in = P.y(b, c.l);
  else fail(ErrorCode::config, "--of must be d2, transgression, power or y");
  Poly out = steenrod_apply(P, op, in);
  Outcome o;
  o.result = {{"op", op.str()}, {"input", poly_json(in)}, {"value", poly_json(out)}};
  return o;
}

inline Outcome specseq_aj(const RunConfig& c) {
  auto pc = make_context(c);
  Root b = beta_or_default(c, pc);
  int v = pc.classify_root(b).level;
  std::vector<Root> lie;
  for (const Root& g : pc.roots())
    if (pc.level(g) <= v) lie.push_back(g);
  long long deg = c.degree >= 0 ? c.degree : 2 * static_cast<long long>(ipow(c.p, c.r - 1));
  Weight w = scaled(b, ipow(c.p, c.r));
  auto e = aj_E1_enumerate(lie, c.r, c.p, deg, w, c.budget ? c.budget : 50000000);
  json mons = json::array();
  for (auto& m : e.monomials) mons.push_back(Poly::monomial(e.ring, m).str());
  json lw = json::array();
  for (auto& g : lie) lw.push_back(root_label(g));
  Outcome o;
  o.result = {{"lie_weights", lw}, {"r", c.r}, {"p", c.p}, {"degree", deg}, {"weight", w},
              {"count", e.monomials.size()}, {"monomials", mons}, {"nodes_visited", e.nodes}};
  return o;
}

inline Outcome specseq_uniqueness(const RunConfig& c) {
  auto pc = make_context(c);
  Root b = beta_or_default(c, pc);
  auto rep = uniqueness_witness(pc, b, c.r, c.p);
  Outcome o;
  o.result = to_json(rep);
  return o;
}

inline Outcome conjecture_subdiagrams(const RunConfig& c) {
  auto rep = conjecture_check(c.N, c.r, qs_or_default(c));
  Outcome o;
  o.result = to_json(rep);
  o.text = component_csv(rep);
  return o;
}

inline Outcome verify_all(const RunConfig&) {
  json rows = json::array();
  bool ok = true;
  std::string text;
  for (auto& r : run_acceptance()) {
    ok = ok && r.pass;
    rows.push_back({{"criterion", r.id}, {"name", r.name}, {"pass", r.pass}, {"measured", r.measured}});
    text += "criterion " + std::to_string(r.id) + ": " + (r.pass ? "PASS" : "FAIL") + " - " + r.name + " | " +
            r.measured + "\n";
  }
  Outcome o;
  o.checks_pass = ok;
  o.result = {{"criteria", rows}, {"all_pass", ok}};
  o.text = text;
  return o;
}

struct Report {
  json doc;
  int code = ok;
};

inline Report execute(const std::string& command, const RunConfig& cfg, const std::function<Outcome(const RunConfig&)>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.doc = {{"schema_version", kSchemaVersion}, {"command", command}, {"config", config_json(cfg)}};
  Outcome out;
  try {
    out = fn(cfg);
    rep.doc["status"] = out.checks_pass ? "ok" : "check_failed";
    rep.doc["result"] = out.result;
    rep.code = out.checks_pass ? ok : check_failed;
  } catch (const Error& e) {
    rep.doc["status"] = code_name(e.code());
    rep.doc["error"] = {{"code", code_name(e.code())}, {"message", e.what()}};
    rep.code = exit_for(e.code());
  }
  rep.doc["budget"] = {{"point_budget", cfg.budget ? cfg.budget : default_point_budget()},
                       {"degree_bound", default_degree_bound(cfg.p)}};
  rep.doc["wall_time_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!out.text.empty()) rep.doc["_text"] = out.text;
  return rep;
}

inline void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--family", c.family, "root system family A, B, C or D");
  app->add_option("--rank", c.rank, "rank");
  app->add_option("--J", c.J, "parabolic subset, e.g. \"a1,a3\"");
  app->add_option("--i", c.i, "bottom level of the quotient");
  app->add_option("--v", c.v, "top level v (quotient by Gamma_{v+1}); 0 means the whole radical");
  app->add_option("--r", c.r, "Frobenius height");
  app->add_option("--p", c.p, "odd prime");
  app->add_option("--q", c.q, "field sizes")->delimiter(',');
  app->add_option("--degree", c.degree, "cohomological degree");
  app->add_option("--budget", c.budget, "enumeration budget (points or search nodes)");
  app->add_option("--output", c.output, "write the JSON report here");
  app->add_option("--csv", c.csv, "write per-q counts as CSV");
  app->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app->add_option("--seed", c.seed, "seed for randomized checks");
  app->add_option("--group", c.group, "U3, U4G3, UNG3 or Y");
  app->add_option("--N", c.N, "matrix size N");
  app->add_option("--beta", c.beta, "root, e.g. a1+a2 or 1,1");
  app->add_option("--l", c.l, "twist");
  app->add_option("--j", c.j, "power index j");
  app->add_option("--op", c.op, "Steenrod operation, e.g. P^0, P^3, bP^0");
  app->add_option("--of", c.of, "Steenrod input: d2, transgression, power or y");
  app->add_option("--s", c.s, "iterations of the p-th power map");
  app->add_option("--pairs", c.pairs, "random pairs for multiplicativity");
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"frobmodel: model algebras, varieties and spectral-sequence data for Frobenius kernels"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string chosen;
  std::function<Outcome(const RunConfig&)> fn;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<Outcome(const RunConfig&)> f) {
    auto* sub = parent->add_subcommand(name, help);
    add_common(sub, cfg);
    std::string full = parent == &app ? name : parent->get_name() + " " + name;
    sub->callback([&, full, f] {
      chosen = full;
      fn = f;
    });
  };
  auto* rs = app.add_subcommand("rootsys", "root system data")->require_subcommand(1);
  leaf(rs, "info", "positive roots, levels, summand pairs", rootsys_info);
  auto* md = app.add_subcommand("model", "model algebras")->require_subcommand(1);
  leaf(md, "build", "presentations of Sbar, Q and the top factor", model_build);
  leaf(md, "hilbert", "graded dimensions and the splitting check", model_hilbert);
  leaf(md, "theta-check", "coordinate algebra, theta well-definedness and relation powers", model_theta_check);
  leaf(md, "bracket-check", "the p-th power map between levels", model_bracket_check);
  auto* va = app.add_subcommand("variety", "point counts")->require_subcommand(1);
  leaf(va, "count", "F_q point counts", variety_count);
  leaf(va, "components", "U_4/Gamma_3 component bookkeeping", variety_components);
  auto* ss = app.add_subcommand("specseq", "spectral-sequence data")->require_subcommand(1);
  leaf(ss, "d2", "d2 on a fiber class y", specseq_d2);
  leaf(ss, "transgression", "d_{2p^j+1} on a p^j-th power", specseq_transgression);
  leaf(ss, "steenrod", "apply a Steenrod operation from the encoded fragment", specseq_steenrod);
  leaf(ss, "aj-enumerate", "E_1 monomials of a given degree and weight", specseq_aj);
  leaf(ss, "uniqueness", "weight-space search for the 1-dimensionality argument", specseq_uniqueness);
  auto* cj = app.add_subcommand("conjecture", "sub-diagram evidence")->require_subcommand(1);
  leaf(cj, "subdiagrams", "count predicted components", conjecture_subdiagrams);
  leaf(&app, "verify-all", "run the acceptance suite", verify_all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return config_error;
  }

  Report rep = execute(chosen, cfg, fn);
  std::string text;
  if (rep.doc.contains("_text")) {
    text = rep.doc["_text"].get<std::string>();
    rep.doc.erase("_text");
  }
  if (!cfg.csv.empty() && !text.empty()) {
    std::ofstream f(cfg.csv);
    if (!f) {
      err << "cannot write " << cfg.csv << "\n";
      return config_error;
    }
    f << text;
  }
  std::string body;
  if (cfg.format == "text") {
    body = "command: " + chosen + "\nstatus: " + rep.doc["status"].get<std::string>() + "\n";
    if (rep.doc.contains("error")) body += "error: " + rep.doc["error"]["message"].get<std::string>() + "\n";
    if (chosen == "verify-all" && !text.empty()) body += text;
    else if (rep.doc.contains("result")) body += rep.doc["result"].dump(2) + "\n";
  } else {
    body = rep.doc.dump(2) + "\n";
  }
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output);
    if (!f) {
      err << "cannot write " << cfg.output << "\n";
      return config_error;
    }
    f << body;
  } else {
    out << body;
  }
  return rep.code;
}

}  // namespace frobmodel::cli
